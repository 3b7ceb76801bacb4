//! Per-segment state mappings for segments that extend (`beta`) and/or
//! twist (`alpha`) on top of bending.
//!
//! Joint lengths follow `q = l 1 - rho`. Because a filtering arrangement
//! maps any constant vector to zero, the Clarke coordinates of `q` are
//! `-M_P q`, and the segment length is recovered from `q` through
//! `l = (1/n) 1^T (I + M_P^-1 M_P) q`.

use std::ops::Deref;

use crate::clarke::{ClarkeCoordinates, ClarkePair, DisplacementVector};
use crate::error::{Error, Result};
use crate::model::SegmentType;
use crate::scalar::{norm2, norm_inf, Scalar};

/// Maximum number of twist-compensation refinement passes.
const MAX_TWIST_REFINEMENTS: usize = 100;

/// Joint lengths `q_i = l - rho_i`, length units.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct JointLengthVector<T>(pub Vec<T>);

impl<T> Deref for JointLengthVector<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> From<Vec<T>> for JointLengthVector<T> {
    fn from(v: Vec<T>) -> Self {
        Self(v)
    }
}

impl<T> JointLengthVector<T> {
    pub fn into_inner(self) -> Vec<T> {
        self.0
    }
}

/// Which joint-space representation a state vector uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JointConvention {
    /// Displacements `rho`.
    Rho,
    /// Joint lengths `q = l 1 - rho`.
    Q,
}

impl JointConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            JointConvention::Rho => "rho",
            JointConvention::Q => "q",
        }
    }
}

/// Clarke coordinates extended by the optional length and twist joints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedClarkeState<T> {
    pub cc: ClarkeCoordinates<T>,
    /// Segment-length joint, length units.
    pub beta: Option<T>,
    /// Proximal twist, radians.
    pub alpha: Option<T>,
}

impl<T: Scalar> ExtendedClarkeState<T> {
    pub fn new(cc: ClarkeCoordinates<T>, beta: Option<T>, alpha: Option<T>) -> Self {
        Self { cc, beta, alpha }
    }

    /// Whether `beta`/`alpha` presence matches the segment type.
    pub fn conforms_to(&self, seg_type: SegmentType) -> bool {
        self.beta.is_some() == seg_type.has_beta() && self.alpha.is_some() == seg_type.has_alpha()
    }
}

/// Joint-space state in either convention, with optional `beta`/`alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedJointState<T> {
    pub convention: JointConvention,
    pub values: Vec<T>,
    pub beta: Option<T>,
    pub alpha: Option<T>,
}

impl<T: Scalar> ExtendedJointState<T> {
    pub fn conforms_to(&self, seg_type: SegmentType) -> bool {
        self.beta.is_some() == seg_type.has_beta() && self.alpha.is_some() == seg_type.has_alpha()
    }
}

fn require_beta<T: Scalar>(state: &ExtendedClarkeState<T>) -> Result<T> {
    state.beta.ok_or(Error::MissingJoint("beta"))
}

fn require_alpha<T: Scalar>(state: &ExtendedClarkeState<T>) -> Result<T> {
    state.alpha.ok_or(Error::MissingJoint("alpha"))
}

fn require_common_radius<T: Scalar>(pair: &ClarkePair<T>) -> Result<T> {
    pair.arrangement().common_radius().ok_or_else(|| {
        Error::UnsupportedArrangement(
            "twisting segments need a common radial distance for all joints".into(),
        )
    })
}

/// Default off-manifold tolerance for a joint-length vector:
/// `1e-6 * max(1, ||q||_inf)`.
pub fn default_manifold_tol<T: Scalar>(q: &[T]) -> T {
    T::lit(1e-6) * T::one().max(norm_inf(q))
}

/// `q = l 1 - rho`.
pub fn joint_lengths<T: Scalar>(l: T, rho: &[T]) -> JointLengthVector<T> {
    JointLengthVector(rho.iter().map(|&r| l - r).collect())
}

/// Recovers the segment length from joint lengths,
/// `l = (1/n) 1^T (I + M_P^-1 M_P) q`.
///
/// Requires the filter property. Fails with [`Error::OffManifold`] if
/// `q` minus the recovered constant is not a valid displacement within
/// `tol` (default [`default_manifold_tol`]).
pub fn recover_length<T: Scalar>(pair: &ClarkePair<T>, q: &[T], tol: Option<T>) -> Result<T> {
    pair.check_len(q.len())?;
    pair.require_filter()?;
    let n = T::count(q.len());
    let sum_q = q.iter().fold(T::zero(), |acc, &x| acc + x);
    let pq = pair.project(q)?;
    let sum_pq = pq.iter().fold(T::zero(), |acc, &x| acc + x);
    let length = (sum_q + sum_pq) / n;

    let scale = T::one().max(norm_inf(q));
    debug_assert!(
        (length - sum_q / n).abs()
            <= T::lit(T::SYMMETRY_TOL).max(T::epsilon() * T::lit(64.0)) * scale,
        "1^T P q does not vanish"
    );

    let tol = tol.unwrap_or_else(|| default_manifold_tol(q));
    let rho: Vec<T> = q.iter().map(|&x| length - x).collect();
    let projected = pair.project(&rho)?;
    let residual: Vec<T> = rho
        .iter()
        .zip(projected.iter())
        .map(|(&a, &b)| a - b)
        .collect();
    let residual = norm2(&residual);
    if residual > tol {
        return Err(Error::OffManifold {
            residual: residual.to_f64().unwrap_or(f64::NAN),
            tol: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(length)
}

/// Length-extending segment from displacements: `cc = M_P rho`, `beta`
/// passed through.
pub fn type1_forward<T: Scalar>(
    pair: &ClarkePair<T>,
    rho: &[T],
    beta: T,
) -> Result<ExtendedClarkeState<T>> {
    Ok(ExtendedClarkeState::new(
        pair.forward(rho)?,
        Some(beta),
        None,
    ))
}

/// Inverse of [`type1_forward`]: `rho = M_P^-1 cc`, `beta` passed through.
pub fn type1_inverse<T: Scalar>(
    pair: &ClarkePair<T>,
    state: &ExtendedClarkeState<T>,
) -> Result<(DisplacementVector<T>, T)> {
    let beta = require_beta(state)?;
    Ok((pair.inverse(state.cc), beta))
}

/// Length-extending segment from joint lengths: `cc = -M_P q` and
/// `beta = l` recovered from `q`.
pub fn type1_forward_from_q<T: Scalar>(
    pair: &ClarkePair<T>,
    q: &[T],
    tol: Option<T>,
) -> Result<ExtendedClarkeState<T>> {
    let beta = recover_length(pair, q, tol)?;
    let cc = -pair.forward_offset_free(q)?;
    Ok(ExtendedClarkeState::new(cc, Some(beta), None))
}

/// `q = -M_P^-1 cc + beta 1`.
pub fn type1_inverse_to_q<T: Scalar>(
    pair: &ClarkePair<T>,
    state: &ExtendedClarkeState<T>,
) -> Result<JointLengthVector<T>> {
    let beta = require_beta(state)?;
    Ok(JointLengthVector(
        pair.inverse(state.cc).iter().map(|&r| beta - r).collect(),
    ))
}

/// Extra path length of a joint on a helix of radius `d` twisted by
/// `alpha` over length `l`: `sqrt((alpha d)^2 + l^2) - l`.
pub fn helical_offset<T: Scalar>(alpha: T, d: T, l: T) -> Result<T> {
    if !l.is_finite() || l <= T::zero() {
        return Err(Error::Domain(format!(
            "segment length must be positive, got {l}"
        )));
    }
    if !d.is_finite() || d <= T::zero() {
        return Err(Error::Domain(format!(
            "radial distance must be positive, got {d}"
        )));
    }
    if !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "twist angle must be finite, got {alpha}"
        )));
    }
    let arc = alpha * d;
    Ok((arc * arc + l * l).sqrt() - l)
}

/// Joint lengths of a twisted segment, `q = (l + dl_alpha) 1 - rho`.
pub fn twisted_joint_lengths<T: Scalar>(
    l: T,
    rho: &[T],
    alpha: T,
    d: T,
) -> Result<JointLengthVector<T>> {
    let offset = helical_offset(alpha, d, l)?;
    Ok(joint_lengths(l + offset, rho))
}

/// Bending, extending and twisting segment: `cc = -M_P q` with `beta` and
/// `alpha` passed through.
///
/// The twist offset contained in `q` is a constant and is filtered out.
pub fn type3_forward<T: Scalar>(
    pair: &ClarkePair<T>,
    q: &[T],
    beta: T,
    alpha: T,
) -> Result<ExtendedClarkeState<T>> {
    require_common_radius(pair)?;
    let cc = -pair.forward_offset_free(q)?;
    Ok(ExtendedClarkeState::new(cc, Some(beta), Some(alpha)))
}

/// Bending, extending and twisting segment from joint lengths only.
///
/// `q` is compensated by the helical offset before the segment length is
/// recovered. The offset depends on the unknown length, so the first pass
/// uses `l_hint` and later passes the previously recovered length, until
/// two successive lengths differ by less than `1e-9`.
pub fn type3_forward_from_q<T: Scalar>(
    pair: &ClarkePair<T>,
    q: &[T],
    alpha: T,
    d: T,
    l_hint: T,
    tol: Option<T>,
) -> Result<ExtendedClarkeState<T>> {
    require_common_radius(pair)?;
    pair.check_len(q.len())?;
    pair.require_filter()?;

    let tol = tol.unwrap_or_else(|| default_manifold_tol(q));
    let converged = |a: T, b: T| {
        let eps = T::lit(1e-9).max(T::epsilon() * T::lit(16.0) * a.abs().max(b.abs()));
        (a - b).abs() < eps
    };
    let mut estimate = l_hint;
    let mut beta = estimate;
    for _ in 0..MAX_TWIST_REFINEMENTS {
        let offset = helical_offset(alpha, d, estimate)?;
        let compensated: Vec<T> = q.iter().map(|&x| x - offset).collect();
        beta = recover_length(pair, &compensated, Some(tol))?;
        if converged(beta, estimate) {
            break;
        }
        estimate = beta;
    }
    let cc = -pair.forward_offset_free(q)?;
    Ok(ExtendedClarkeState::new(cc, Some(beta), Some(alpha)))
}

/// Inverse of [`type3_forward_from_q`]:
/// `q = (beta + dl_alpha(beta)) 1 - M_P^-1 cc`.
pub fn type3_inverse_to_q<T: Scalar>(
    pair: &ClarkePair<T>,
    state: &ExtendedClarkeState<T>,
    d: T,
) -> Result<JointLengthVector<T>> {
    require_common_radius(pair)?;
    let beta = require_beta(state)?;
    let alpha = require_alpha(state)?;
    let offset = helical_offset(alpha, d, beta)?;
    let rho = pair.inverse(state.cc);
    Ok(joint_lengths(beta + offset, &rho))
}

/// Bending and twisting segment: `cc = M_P rho`, `alpha` passed through.
pub fn type2_forward<T: Scalar>(
    pair: &ClarkePair<T>,
    rho: &[T],
    alpha: T,
) -> Result<ExtendedClarkeState<T>> {
    require_common_radius(pair)?;
    Ok(ExtendedClarkeState::new(
        pair.forward(rho)?,
        None,
        Some(alpha),
    ))
}

/// Inverse of [`type2_forward`].
pub fn type2_inverse<T: Scalar>(
    pair: &ClarkePair<T>,
    state: &ExtendedClarkeState<T>,
) -> Result<(DisplacementVector<T>, T)> {
    require_common_radius(pair)?;
    let alpha = require_alpha(state)?;
    Ok((pair.inverse(state.cc), alpha))
}
