//! Generalized Clarke transformation for an arbitrary joint arrangement.
//!
//! The inverse matrix `M_P^-1` (n x 2) has rows `[cos psi_i, sin psi_i]`.
//! The forward matrix `M_P` (2 x n) is its Moore-Penrose pseudoinverse
//! `(A^T A)^-1 A^T`, which reduces to `(2/n) A^T` for equally spaced
//! joints at a common radius. `M_P * M_P^-1 = I_2` always holds, and
//! `P = M_P^-1 * M_P` is the orthogonal projector onto the two-dimensional
//! manifold of valid displacements.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::JointArrangement;
use crate::scalar::{norm2, Scalar};

/// Rows of the 2 x n forward matrix.
pub type ForwardMatrix<T> = [Vec<T>; 2];

/// Minimal coordinates `(rho_re, rho_im)` of a bending segment.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ClarkeCoordinates<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> ClarkeCoordinates<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn norm(&self) -> T {
        self.re.hypot(self.im)
    }

    pub fn norm_squared(&self) -> T {
        self.re * self.re + self.im * self.im
    }

    pub fn to_array(self) -> [T; 2] {
        [self.re, self.im]
    }
}

impl<T: Scalar> std::ops::Neg for ClarkeCoordinates<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl<T: Scalar> std::ops::Sub for ClarkeCoordinates<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

/// Joint displacements `rho`, one per actuation path, length units.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DisplacementVector<T>(pub Vec<T>);

impl<T> Deref for DisplacementVector<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> From<Vec<T>> for DisplacementVector<T> {
    fn from(v: Vec<T>) -> Self {
        Self(v)
    }
}

impl<T> DisplacementVector<T> {
    pub fn into_inner(self) -> Vec<T> {
        self.0
    }
}

/// Outcome of [`ClarkePair::validate_displacement`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacementCheck<T> {
    pub valid: bool,
    /// `|| rho - P rho ||_2`
    pub residual_norm: T,
}

/// Rows `[cos psi_i, sin psi_i]` of the inverse Clarke matrix.
pub fn build_mp_inv<T: Scalar>(arr: &JointArrangement<T>) -> Vec<[T; 2]> {
    arr.psi()
        .iter()
        .map(|&psi| [psi.cos(), psi.sin()])
        .collect()
}

/// `(2/n) (M_P^-1)^T`, valid only for symmetric arrangements.
pub fn closed_form_mp<T: Scalar>(mp_inv: &[[T; 2]]) -> ForwardMatrix<T> {
    let scale = T::lit(2.0) / T::count(mp_inv.len());
    [
        mp_inv.iter().map(|r| scale * r[0]).collect(),
        mp_inv.iter().map(|r| scale * r[1]).collect(),
    ]
}

/// Moore-Penrose pseudoinverse `(A^T A)^-1 A^T` of the n x 2 matrix `A`.
///
/// The 2 x 2 Gram matrix is inverted in closed form. A single correction
/// `X <- (2I - X A) X` follows; it keeps the rows of `X` in the column space
/// of `A` and squares the right-inverse residual.
pub fn pseudoinverse_mp<T: Scalar>(mp_inv: &[[T; 2]]) -> Result<ForwardMatrix<T>> {
    let (mut g11, mut g12, mut g22) = (T::zero(), T::zero(), T::zero());
    for &[c, s] in mp_inv {
        g11 = g11 + c * c;
        g12 = g12 + c * s;
        g22 = g22 + s * s;
    }
    let det = g11 * g22 - g12 * g12;
    let half_trace = (g11 + g22) / T::lit(2.0);
    let threshold = T::lit(T::GRAM_SINGULARITY) * half_trace * half_trace;
    if det.is_nan() || det < threshold || det <= T::zero() {
        return Err(Error::DegenerateArrangement {
            det: det.to_f64().unwrap_or(f64::NAN),
            threshold: threshold.to_f64().unwrap_or(f64::NAN),
        });
    }
    let (i11, i12, i22) = (g22 / det, -g12 / det, g11 / det);
    let mut mp: ForwardMatrix<T> = [
        mp_inv.iter().map(|&[c, s]| i11 * c + i12 * s).collect(),
        mp_inv.iter().map(|&[c, s]| i12 * c + i22 * s).collect(),
    ];

    let prod = mat_mul_2(&mp, mp_inv);
    let e = [
        [T::one() - prod[0][0], -prod[0][1]],
        [-prod[1][0], T::one() - prod[1][1]],
    ];
    let corrected: ForwardMatrix<T> = [
        (0..mp_inv.len())
            .map(|i| mp[0][i] + e[0][0] * mp[0][i] + e[0][1] * mp[1][i])
            .collect(),
        (0..mp_inv.len())
            .map(|i| mp[1][i] + e[1][0] * mp[0][i] + e[1][1] * mp[1][i])
            .collect(),
    ];
    mp = corrected;
    Ok(mp)
}

/// `M_P * M_P^-1`, a 2 x 2 product.
pub fn mat_mul_2<T: Scalar>(mp: &ForwardMatrix<T>, mp_inv: &[[T; 2]]) -> [[T; 2]; 2] {
    let mut out = [[T::zero(); 2]; 2];
    for (r, row) in mp.iter().enumerate() {
        for (c, slot) in out[r].iter_mut().enumerate() {
            *slot = row
                .iter()
                .zip(mp_inv)
                .fold(T::zero(), |acc, (&a, b)| acc + a * b[c]);
        }
    }
    out
}

/// The forward/inverse Clarke matrix pair of one segment.
///
/// Immutable once built; all transforms borrow it.
#[derive(Debug, Clone, PartialEq)]
pub struct ClarkePair<T> {
    arrangement: JointArrangement<T>,
    mp: ForwardMatrix<T>,
    mp_inv: Vec<[T; 2]>,
    symmetric: bool,
    filter_residual: [T; 2],
    filter_ok: bool,
}

impl<T: Scalar> ClarkePair<T> {
    /// Builds the matrix pair. Symmetric arrangements use the closed form,
    /// everything else the pseudoinverse.
    pub fn new(arr: &JointArrangement<T>) -> Result<Self> {
        build_pair(arr)
    }

    pub fn n(&self) -> usize {
        self.mp_inv.len()
    }

    pub fn arrangement(&self) -> &JointArrangement<T> {
        &self.arrangement
    }

    /// Forward matrix `M_P`, as two rows of length n.
    pub fn mp(&self) -> &ForwardMatrix<T> {
        &self.mp
    }

    /// Inverse matrix `M_P^-1`, as n rows of length 2.
    pub fn mp_inv(&self) -> &[[T; 2]] {
        &self.mp_inv
    }

    /// Whether the closed-form (symmetric) path produced `M_P`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// `M_P * 1`, which vanishes exactly when constant offsets are filtered.
    pub fn filter_residual(&self) -> [T; 2] {
        self.filter_residual
    }

    /// True when `M_P * 1 = 0` within tolerance, i.e. constant joint offsets
    /// (segment length, twist-induced path length) are annihilated.
    pub fn filter_ok(&self) -> bool {
        self.filter_ok
    }

    pub(crate) fn require_filter(&self) -> Result<()> {
        if self.filter_ok {
            Ok(())
        } else {
            Err(Error::FilterPropertyUnavailable(
                self.filter_residual[0].to_f64().unwrap_or(f64::NAN),
                self.filter_residual[1].to_f64().unwrap_or(f64::NAN),
            ))
        }
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len == self.n() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n(),
                found: len,
            })
        }
    }

    fn apply_mp(&self, v: &[T]) -> ClarkeCoordinates<T> {
        let row = |r: &Vec<T>| r.iter().zip(v).fold(T::zero(), |acc, (&m, &x)| acc + m * x);
        ClarkeCoordinates::new(row(&self.mp[0]), row(&self.mp[1]))
    }

    /// The projector `P = M_P^-1 * M_P` as an n x n row-major matrix.
    pub fn projector(&self) -> Vec<Vec<T>> {
        self.mp_inv
            .iter()
            .map(|&[c, s]| {
                (0..self.n())
                    .map(|j| c * self.mp[0][j] + s * self.mp[1][j])
                    .collect()
            })
            .collect()
    }

    /// `rho_c = M_P rho`.
    pub fn forward(&self, rho: &[T]) -> Result<ClarkeCoordinates<T>> {
        self.check_len(rho.len())?;
        Ok(self.apply_mp(rho))
    }

    /// `M_P v` for a vector carrying an arbitrary common offset.
    ///
    /// The first entry is subtracted from every entry before the product.
    /// With the filter property this equals `M_P v`, but the result no
    /// longer depends on the rounding of the offset.
    pub fn forward_offset_free(&self, v: &[T]) -> Result<ClarkeCoordinates<T>> {
        self.check_len(v.len())?;
        self.require_filter()?;
        let reference = v[0];
        let centered: Vec<T> = v.iter().map(|&x| x - reference).collect();
        Ok(self.apply_mp(&centered))
    }

    /// `rho = M_P^-1 rho_c`. The result always lies on the manifold.
    pub fn inverse(&self, cc: ClarkeCoordinates<T>) -> DisplacementVector<T> {
        DisplacementVector(
            self.mp_inv
                .iter()
                .map(|&[c, s]| cc.re * c + cc.im * s)
                .collect(),
        )
    }

    /// `P v`: the on-manifold vector with the same Clarke coordinates.
    pub fn project(&self, v: &[T]) -> Result<DisplacementVector<T>> {
        Ok(self.inverse(self.forward(v)?))
    }

    /// Distance of `rho` from the manifold, `|| rho - P rho ||_2`, and
    /// whether it is within `tol`.
    pub fn validate_displacement(&self, rho: &[T], tol: T) -> Result<DisplacementCheck<T>> {
        let projected = self.project(rho)?;
        let residual: Vec<T> = rho
            .iter()
            .zip(projected.iter())
            .map(|(&a, &b)| a - b)
            .collect();
        let residual_norm = norm2(&residual);
        Ok(DisplacementCheck {
            valid: residual_norm <= tol,
            residual_norm,
        })
    }
}

/// Distance of `rho` from the hyperplane `sum(rho_i) = 0`, i.e.
/// `|sum(rho_i)| / sqrt(n)`.
///
/// Every valid displacement of a symmetric arrangement satisfies this
/// constraint; it is also the whole constraint for two antipodal paths in
/// the plane, where no Clarke pair can be built.
pub fn check_sum_constraint<T: Scalar>(rho: &[T], tol: T) -> DisplacementCheck<T> {
    let sum = rho.iter().fold(T::zero(), |acc, &x| acc + x);
    let residual_norm = if rho.is_empty() {
        T::zero()
    } else {
        sum.abs() / T::count(rho.len()).sqrt()
    };
    DisplacementCheck {
        valid: residual_norm <= tol,
        residual_norm,
    }
}

/// Builds the Clarke matrix pair for an arrangement.
pub fn build_pair<T: Scalar>(arr: &JointArrangement<T>) -> Result<ClarkePair<T>> {
    if let Some((_, kind)) = arr.violations().into_iter().next() {
        return Err(Error::Domain(kind.to_string()));
    }
    let mp_inv = build_mp_inv(arr);
    let general = pseudoinverse_mp(&mp_inv)?;
    let symmetric = arr.is_symmetric();
    let mp = if symmetric {
        let closed = closed_form_mp(&mp_inv);
        debug_assert!(
            closed
                .iter()
                .flatten()
                .zip(general.iter().flatten())
                .all(|(&a, &b)| (a - b).abs() <= T::lit(T::SYMMETRY_TOL)),
            "closed-form and pseudoinverse paths disagree"
        );
        closed
    } else {
        general
    };
    let filter_residual = [
        mp[0].iter().fold(T::zero(), |acc, &x| acc + x),
        mp[1].iter().fold(T::zero(), |acc, &x| acc + x),
    ];
    let tol = T::lit(T::SYMMETRY_TOL);
    let filter_ok = filter_residual[0].abs() <= tol && filter_residual[1].abs() <= tol;
    Ok(ClarkePair {
        arrangement: arr.clone(),
        mp,
        mp_inv,
        symmetric,
        filter_residual,
        filter_ok,
    })
}
