//! Bridge between Clarke coordinates and constant-curvature arc parameters,
//! `cc = d l kappa [cos theta, sin theta]`, plus backbone sampling.
//!
//! Frame convention for sampled backbones: the base tangent is `+z`, and
//! `theta` is measured from `+x` in the base cross-section plane. A segment
//! with `theta = 0` bends towards `+x`.

use crate::clarke::{ClarkeCoordinates, ClarkePair, DisplacementVector};
use crate::error::{Error, Result};
use crate::scalar::{normalize_angle, Scalar};

/// Constant-curvature description of one segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcParameters<T> {
    kappa: T,
    theta: T,
    l: T,
}

impl<T: Scalar> ArcParameters<T> {
    /// `kappa >= 0` (1/length), `theta` any angle (normalized onto
    /// `[0, 2π)`), `l > 0`.
    pub fn new(kappa: T, theta: T, l: T) -> Result<Self> {
        if !kappa.is_finite() || kappa < T::zero() {
            return Err(Error::Domain(format!(
                "curvature must be non-negative, got {kappa}"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::Domain(format!(
                "bending-plane angle must be finite, got {theta}"
            )));
        }
        check_positive("segment length", l)?;
        Ok(Self {
            kappa,
            theta: normalize_angle(theta),
            l,
        })
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn l(&self) -> T {
        self.l
    }

    /// Bending angle `phi = l kappa`.
    pub fn phi(&self) -> T {
        self.l * self.kappa
    }

    /// In the straight configuration the bending plane is undefined and
    /// `theta` is reported as 0.
    pub fn theta_undefined(&self) -> bool {
        self.kappa == T::zero()
    }
}

fn check_positive<T: Scalar>(what: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be positive, got {v}")))
    }
}

/// `cc = (d l kappa cos theta, d l kappa sin theta)`.
pub fn arc_to_clarke<T: Scalar>(arc: &ArcParameters<T>, d: T) -> Result<ClarkeCoordinates<T>> {
    check_positive("radial distance", d)?;
    let m = d * arc.phi();
    Ok(ClarkeCoordinates::new(
        m * arc.theta.cos(),
        m * arc.theta.sin(),
    ))
}

/// Arc parameters from Clarke coordinates; the segment length cannot be
/// recovered from `cc` and has to be supplied.
pub fn clarke_to_arc<T: Scalar>(cc: ClarkeCoordinates<T>, d: T, l: T) -> Result<ArcParameters<T>> {
    check_positive("radial distance", d)?;
    check_positive("segment length", l)?;
    let magnitude = cc.norm();
    if magnitude == T::zero() {
        return ArcParameters::new(T::zero(), T::zero(), l);
    }
    ArcParameters::new(magnitude / (d * l), cc.im.atan2(cc.re), l)
}

/// `rho_i = d l kappa cos(theta - psi_i)`.
pub fn arc_to_displacements<T: Scalar>(
    pair: &ClarkePair<T>,
    arc: &ArcParameters<T>,
    d: T,
) -> Result<DisplacementVector<T>> {
    check_positive("radial distance", d)?;
    let m = d * arc.phi();
    Ok(DisplacementVector(
        pair.arrangement()
            .psi()
            .iter()
            .map(|&psi| m * (arc.theta - psi).cos())
            .collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackboneSample<T> {
    /// Arc length from the base.
    pub s: T,
    pub point: [T; 3],
}

/// Backbone points sampled uniformly in arc length over `[0, l]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BackbonePolyline<T> {
    pub samples: Vec<BackboneSample<T>>,
}

impl<T: Scalar> BackbonePolyline<T> {
    /// Sum of the chord lengths between consecutive samples.
    pub fn chord_length(&self) -> T {
        self.samples
            .windows(2)
            .map(|w| {
                let [a, b] = [w[0].point, w[1].point];
                ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2) + (b[2] - a[2]).powi(2)).sqrt()
            })
            .fold(T::zero(), |acc, x| acc + x)
    }

    pub fn end(&self) -> Option<[T; 3]> {
        self.samples.last().map(|s| s.point)
    }
}

/// Point at arc length `s` on the constant-curvature backbone.
pub fn backbone_point<T: Scalar>(arc: &ArcParameters<T>, s: T) -> [T; 3] {
    let kappa = arc.kappa;
    if kappa == T::zero() {
        return [T::zero(), T::zero(), s];
    }
    let half = kappa * s / T::lit(2.0);
    // 1 - cos(ks) = 2 sin^2(ks / 2), without cancellation for small ks
    let radial = T::lit(2.0) * half.sin() * half.sin() / kappa;
    let axial = (kappa * s).sin() / kappa;
    [radial * arc.theta.cos(), radial * arc.theta.sin(), axial]
}

/// Samples `points >= 2` backbone positions, evenly spaced in arc length.
pub fn sample_backbone<T: Scalar>(
    arc: &ArcParameters<T>,
    points: usize,
) -> Result<BackbonePolyline<T>> {
    if points < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 sample points, got {points}"
        )));
    }
    let last = T::count(points - 1);
    let samples = (0..points)
        .map(|k| {
            let s = if k == points - 1 {
                arc.l
            } else {
                arc.l * T::count(k) / last
            };
            BackboneSample {
                s,
                point: backbone_point(arc, s),
            }
        })
        .collect();
    Ok(BackbonePolyline { samples })
}
