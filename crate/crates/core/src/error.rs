use thiserror::Error;

use crate::model::ValidationReport;

/// Errors raised by the numeric operations of the kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate arrangement: Gram determinant {det:e} below threshold {threshold:e}")]
    DegenerateArrangement { det: f64, threshold: f64 },

    #[error("dimension mismatch: expected {expected} values, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("convention mismatch: expected {expected} state, found {found}")]
    ConventionMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("coupling mismatch: operation requires {expected} coupling")]
    CouplingMismatch { expected: &'static str },

    #[error(
        "filter property unavailable: M_P * 1 = [{0:e}, {1:e}] is not zero for this arrangement"
    )]
    FilterPropertyUnavailable(f64, f64),

    #[error("off manifold: residual {residual:e} exceeds tolerance {tol:e}")]
    OffManifold { residual: f64, tol: f64 },

    #[error("unsupported arrangement: {0}")]
    UnsupportedArrangement(String),

    #[error("arrangement mismatch between segments {first} and {other}")]
    ArrangementMismatch { first: usize, other: usize },

    #[error("missing {0} for this segment type")]
    MissingJoint(&'static str),

    #[error("invalid robot description:\n{0}")]
    InvalidRobot(ValidationReport),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
