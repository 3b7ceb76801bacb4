//! Robot description data model: joint arrangements, segments and their
//! coupling, plus structural validation run before any numerics.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{angle_difference, normalize_angle, Scalar};

/// Polar locations `(psi_i, d_i)` of the actuation paths on a segment
/// cross-section.
///
/// Angles are stored reduced onto `[0, 2π)`. The arrangement may be built
/// unchecked with [`JointArrangement::from_raw`] so that a description can
/// be loaded first and reported on by [`validate_robot`]; the numeric
/// routines re-check the invariants they depend on.
#[derive(Debug, Clone, PartialEq)]
pub struct JointArrangement<T> {
    psi: Vec<T>,
    d: Vec<T>,
}

impl<T: Scalar> JointArrangement<T> {
    /// Builds an arrangement, normalizing the angles and rejecting any
    /// invariant violation.
    pub fn new(psi: Vec<T>, d: Vec<T>) -> Result<Self> {
        let arr = Self::from_raw(psi, d);
        match arr.violations().first() {
            None => Ok(arr),
            Some((_, kind)) => Err(Error::Domain(kind.to_string())),
        }
    }

    /// Builds an arrangement without checking invariants. Angles are still
    /// normalized onto `[0, 2π)`.
    pub fn from_raw(psi: Vec<T>, d: Vec<T>) -> Self {
        let psi = psi
            .into_iter()
            .map(|a| if a.is_finite() { normalize_angle(a) } else { a })
            .collect();
        Self { psi, d }
    }

    /// Equally spaced joints `psi_i = 2π(i-1)/n` at common radius `d`.
    pub fn symmetric(n: usize, d: T) -> Result<Self> {
        make_symmetric_arrangement(n, d)
    }

    pub fn n(&self) -> usize {
        self.psi.len()
    }

    pub fn psi(&self) -> &[T] {
        &self.psi
    }

    pub fn d(&self) -> &[T] {
        &self.d
    }

    /// The shared radial distance, if every `d_i` agrees within the
    /// symmetry tolerance (relative).
    pub fn common_radius(&self) -> Option<T> {
        let first = *self.d.first()?;
        let tol = T::lit(T::SYMMETRY_TOL) * first.abs();
        self.d
            .iter()
            .all(|&di| (di - first).abs() <= tol)
            .then_some(first)
    }

    /// True when `psi_i = 2π(i-1)/n` and all `d_i` agree, within
    /// tolerance. Requires `n >= 3`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        if n < 3 || self.d.len() != n || self.common_radius().is_none() {
            return false;
        }
        let tol = T::lit(T::SYMMETRY_TOL);
        self.psi.iter().enumerate().all(|(i, &psi)| {
            let expected = T::TAU() * T::count(i) / T::count(n);
            angle_difference(psi, expected).abs() <= tol
        })
    }

    /// Same joint count and element-wise equal angles within tolerance.
    pub fn same_routing(&self, other: &Self) -> bool {
        let tol = T::lit(T::SYMMETRY_TOL);
        self.n() == other.n()
            && self
                .psi
                .iter()
                .zip(&other.psi)
                .all(|(&a, &b)| angle_difference(a, b).abs() <= tol)
    }

    /// Every invariant violation as `(field, kind)`.
    pub fn violations(&self) -> Vec<(&'static str, ViolationKind)> {
        let mut out = Vec::new();
        if self.psi.len() != self.d.len() {
            out.push((
                "joints",
                ViolationKind::JointListLengthMismatch {
                    psi: self.psi.len(),
                    d: self.d.len(),
                },
            ));
        }
        if self.psi.len() < 2 {
            out.push(("joints", ViolationKind::TooFewJoints(self.psi.len())));
        }
        if self.psi.iter().any(|a| !a.is_finite()) {
            out.push(("psi", ViolationKind::NonFiniteValue));
        }
        if self.d.iter().any(|d| !d.is_finite()) {
            out.push(("d", ViolationKind::NonFiniteValue));
        }
        if self.d.iter().any(|&d| d.is_finite() && d <= T::zero()) {
            out.push(("d", ViolationKind::NonPositiveRadialDistance));
        }
        out
    }
}

/// Equally spaced joint locations at a common radius.
pub fn make_symmetric_arrangement<T: Scalar>(n: usize, d: T) -> Result<JointArrangement<T>> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "symmetric arrangement needs n >= 3 joints, got {n}"
        )));
    }
    if !d.is_finite() || d <= T::zero() {
        return Err(Error::Domain(format!(
            "radial distance must be positive, got {d}"
        )));
    }
    let psi = (0..n)
        .map(|i| T::TAU() * T::count(i) / T::count(n))
        .collect();
    Ok(JointArrangement { psi, d: vec![d; n] })
}

/// Degrees of freedom a segment carries on top of bending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentType {
    /// Bending only.
    Type0,
    /// Bending and length change (`beta`).
    TypeI,
    /// Bending and twist (`alpha`).
    TypeII,
    /// Bending, length change and twist.
    TypeIII,
}

impl SegmentType {
    pub fn has_beta(self) -> bool {
        matches!(self, SegmentType::TypeI | SegmentType::TypeIII)
    }

    pub fn has_alpha(self) -> bool {
        matches!(self, SegmentType::TypeII | SegmentType::TypeIII)
    }

    /// Identifier used in robot description files.
    pub fn as_str(self) -> &'static str {
        match self {
            SegmentType::Type0 => "type0",
            SegmentType::TypeI => "type1",
            SegmentType::TypeII => "type2",
            SegmentType::TypeIII => "type3",
        }
    }
}

impl fmt::Display for SegmentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentSpec<T> {
    pub arrangement: JointArrangement<T>,
    /// Initial segment length, length units.
    pub length: T,
    pub seg_type: SegmentType,
}

impl<T: Scalar> SegmentSpec<T> {
    pub fn new(arrangement: JointArrangement<T>, length: T, seg_type: SegmentType) -> Self {
        Self {
            arrangement,
            length,
            seg_type,
        }
    }
}

/// How the actuation paths of consecutive segments relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    /// Every segment has its own actuators.
    Independent,
    /// Distal actuation paths are routed through the proximal segments.
    Interdependent,
}

impl Coupling {
    pub fn as_str(self) -> &'static str {
        match self {
            Coupling::Independent => "independent",
            Coupling::Interdependent => "interdependent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RobotSpec<T> {
    pub segments: Vec<SegmentSpec<T>>,
    pub coupling: Coupling,
}

impl<T: Scalar> RobotSpec<T> {
    pub fn new(segments: Vec<SegmentSpec<T>>, coupling: Coupling) -> Self {
        Self { segments, coupling }
    }

    /// Validates and returns the description, or the full report.
    pub fn validated(self) -> Result<Self> {
        let report = validate_robot(&self);
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidRobot(report))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ViolationKind {
    NoSegments,
    TooFewJoints(usize),
    JointListLengthMismatch {
        psi: usize,
        d: usize,
    },
    NonFiniteValue,
    NonPositiveRadialDistance,
    NonPositiveLength,
    ArrangementMismatch,
    /// Multi-segment composition is only defined for type-0 segments.
    UnsupportedChainSegment(SegmentType),
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::NoSegments => write!(f, "robot has no segments"),
            ViolationKind::TooFewJoints(n) => write!(f, "too few joints ({n} < 2)"),
            ViolationKind::JointListLengthMismatch { psi, d } => {
                write!(f, "joint list length mismatch (psi: {psi}, d: {d})")
            }
            ViolationKind::NonFiniteValue => write!(f, "non-finite value"),
            ViolationKind::NonPositiveRadialDistance => write!(f, "non-positive radial distance"),
            ViolationKind::NonPositiveLength => write!(f, "non-positive segment length"),
            ViolationKind::ArrangementMismatch => write!(f, "arrangement mismatch"),
            ViolationKind::UnsupportedChainSegment(t) => {
                write!(
                    f,
                    "segment type {t} is not supported in a multi-segment chain"
                )
            }
        }
    }
}

/// One invariant violation found in a robot description.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Index of the offending segment; `None` for robot-level problems.
    pub segment: Option<usize>,
    pub field: &'static str,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.segment {
            Some(i) => write!(f, "segment {i}, {}: {}", self.field, self.kind),
            None => write!(f, "{}: {}", self.field, self.kind),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Reports every invariant violation of a robot description.
pub fn validate_robot<T: Scalar>(spec: &RobotSpec<T>) -> ValidationReport {
    let mut violations = Vec::new();
    if spec.segments.is_empty() {
        violations.push(Violation {
            segment: None,
            field: "segments",
            kind: ViolationKind::NoSegments,
        });
    }
    for (i, seg) in spec.segments.iter().enumerate() {
        for (field, kind) in seg.arrangement.violations() {
            violations.push(Violation {
                segment: Some(i),
                field,
                kind,
            });
        }
        if !seg.length.is_finite() {
            violations.push(Violation {
                segment: Some(i),
                field: "length",
                kind: ViolationKind::NonFiniteValue,
            });
        } else if seg.length <= T::zero() {
            violations.push(Violation {
                segment: Some(i),
                field: "length",
                kind: ViolationKind::NonPositiveLength,
            });
        }
    }
    if spec.coupling == Coupling::Interdependent {
        if let Some(first) = spec.segments.first() {
            for (i, seg) in spec.segments.iter().enumerate().skip(1) {
                if !seg.arrangement.same_routing(&first.arrangement) {
                    violations.push(Violation {
                        segment: Some(i),
                        field: "joints",
                        kind: ViolationKind::ArrangementMismatch,
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// Extra constraints for multi-segment composition: every segment must be
/// type-0, on top of [`validate_robot`].
pub fn validate_chain<T: Scalar>(spec: &RobotSpec<T>) -> ValidationReport {
    let mut report = validate_robot(spec);
    for (i, seg) in spec.segments.iter().enumerate() {
        if seg.seg_type != SegmentType::Type0 {
            report.violations.push(Violation {
                segment: Some(i),
                field: "type",
                kind: ViolationKind::UnsupportedChainSegment(seg.seg_type),
            });
        }
    }
    report
}
