//! Kinematics kernel for displacement-actuated continuum robots.
//!
//! Every segment carries `n >= 2` actuation paths at polar locations
//! `(psi_i, d_i)`. Bending lives on a two-dimensional manifold of the
//! n-dimensional joint space, parameterized by the Clarke coordinates
//! `(rho_re, rho_im)`:
//!
//! * [`clarke`] builds the forward/inverse Clarke matrices and projects
//!   onto the manifold,
//! * [`segment`] adds the length (`beta`) and twist (`alpha`) joints,
//! * [`chain`] composes independent and routed-through segments,
//! * [`arc`] bridges to constant-curvature arc parameters,
//! * [`io`] reads and writes the JSON/CSV formats used by the CLI.
//!
//! The numeric code is generic over [`Scalar`] (`f32` or `f64`); the
//! `*F64`/`*F32` aliases below name the concrete types.
//!
//! ```
//! use dacr::{ClarkeCoordinates, ClarkePairF64, JointArrangementF64};
//!
//! let arr = JointArrangementF64::symmetric(3, 10.0).unwrap();
//! let pair = ClarkePairF64::new(&arr).unwrap();
//! let rho = pair.inverse(ClarkeCoordinates::new(2.0, 0.0));
//! assert!((rho[1] + 1.0).abs() < 1e-12);
//! ```

pub mod arc;
pub mod chain;
pub mod clarke;
pub mod error;
pub mod io;
pub mod model;
pub mod scalar;
pub mod segment;

pub use arc::{ArcParameters, BackbonePolyline, BackboneSample};
pub use chain::{Chain, ChainClarke, ChainState};
pub use clarke::{
    build_pair, ClarkeCoordinates, ClarkePair, DisplacementCheck, DisplacementVector,
};
pub use error::{Error, Result};
pub use model::{
    make_symmetric_arrangement, validate_robot, Coupling, JointArrangement, RobotSpec, SegmentSpec,
    SegmentType, ValidationReport, Violation, ViolationKind,
};
pub use scalar::Scalar;
pub use segment::{ExtendedClarkeState, ExtendedJointState, JointConvention, JointLengthVector};

pub type JointArrangementF64 = JointArrangement<f64>;
pub type JointArrangementF32 = JointArrangement<f32>;
pub type SegmentSpecF64 = SegmentSpec<f64>;
pub type RobotSpecF64 = RobotSpec<f64>;
pub type ClarkePairF64 = ClarkePair<f64>;
pub type ClarkePairF32 = ClarkePair<f32>;
pub type ClarkeCoordinatesF64 = ClarkeCoordinates<f64>;
pub type ClarkeCoordinatesF32 = ClarkeCoordinates<f32>;
pub type DisplacementVectorF64 = DisplacementVector<f64>;
pub type JointLengthVectorF64 = JointLengthVector<f64>;
pub type ExtendedClarkeStateF64 = ExtendedClarkeState<f64>;
pub type ArcParametersF64 = ArcParameters<f64>;
pub type ArcParametersF32 = ArcParameters<f32>;
pub type ChainF64 = Chain<f64>;
