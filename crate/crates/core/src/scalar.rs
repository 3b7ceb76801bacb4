//! Floating point scalar abstraction shared by every numeric routine.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar the kinematics kernel is generic over: `f32` or `f64`.
///
/// Besides the arithmetic supplied by [`num_traits::Float`], each scalar
/// carries the structural tolerances used when deciding whether an
/// arrangement is symmetric and whether a Gram matrix is singular. These
/// scale with the precision of the type.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance in radians (and relative tolerance on radial
    /// distances) for symmetric-arrangement detection.
    const SYMMETRY_TOL: f64;

    /// Relative threshold on the 2x2 Gram determinant below which an
    /// arrangement is considered degenerate.
    const GRAM_SINGULARITY: f64;

    /// Default absolute tolerance for displacement validation, length units.
    const DEFAULT_TOL: f64;

    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable in scalar type")
    }

    /// Converts a count into this scalar.
    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl Scalar for f64 {
    const SYMMETRY_TOL: f64 = 1e-9;
    const GRAM_SINGULARITY: f64 = 1e-12;
    const DEFAULT_TOL: f64 = 1e-9;
}

impl Scalar for f32 {
    const SYMMETRY_TOL: f64 = 1e-5;
    const GRAM_SINGULARITY: f64 = 1e-6;
    const DEFAULT_TOL: f64 = 1e-4;
}

/// Reduces an angle onto `[0, 2π)`.
pub fn normalize_angle<T: Scalar>(angle: T) -> T {
    let tau = T::TAU();
    let mut r = angle % tau;
    if r < T::zero() {
        r = r + tau;
    }
    // `r + tau` can round up to exactly tau for tiny negative inputs.
    if r >= tau {
        r = T::zero();
    }
    r
}

/// Shortest signed distance between two angles, in `[-π, π]`.
pub fn angle_difference<T: Scalar>(a: T, b: T) -> T {
    let pi = T::PI();
    let tau = T::TAU();
    let mut diff = (a - b) % tau;
    if diff > pi {
        diff = diff - tau;
    } else if diff < -pi {
        diff = diff + tau;
    }
    diff
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

pub(crate) fn norm2<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

pub(crate) fn norm_inf<T: Scalar>(a: &[T]) -> T {
    a.iter().fold(T::zero(), |acc, &x| acc.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn normalize_wraps_into_half_open_interval() {
        assert_eq!(normalize_angle(0.0_f64), 0.0);
        assert!((normalize_angle(-PI / 2.0) - 1.5 * PI).abs() < 1e-15);
        assert!((normalize_angle(TAU + 1.0) - 1.0).abs() < 1e-15);
        assert_eq!(normalize_angle(TAU), 0.0);
        assert_eq!(normalize_angle(-1e-300_f64), 0.0);
        assert!(normalize_angle(-1e-17_f64) < TAU);
    }

    #[test]
    fn angle_difference_is_circular() {
        assert!((angle_difference(0.1_f64, TAU - 0.1) - 0.2).abs() < 1e-12);
        assert!((angle_difference(TAU - 0.1, 0.1_f64) + 0.2).abs() < 1e-12);
    }

    #[test]
    fn f32_tolerances_are_looser() {
        let (wide, narrow) = (<f32 as Scalar>::SYMMETRY_TOL, <f64 as Scalar>::SYMMETRY_TOL);
        assert!(wide > narrow);
        assert_eq!(<f32 as Scalar>::lit(0.5), 0.5_f32);
    }
}
