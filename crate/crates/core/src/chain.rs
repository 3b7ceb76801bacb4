//! Multi-segment composition.
//!
//! Independent segments transform block-diagonally, one `M_P` per segment.
//! Interdependent segments route distal actuation paths through every
//! proximal segment, so joint lengths accumulate,
//! `q^j = l^j 1 - rho^j + q^(j-1)`, and the Clarke coordinates follow from
//! the block lower-bidiagonal map with `-M_P` on the diagonal and `M_P` on
//! the first subdiagonal: `cc^j = M_P q^(j-1) - M_P q^j`.

use crate::clarke::{build_pair, ClarkeCoordinates, ClarkePair};
use crate::error::{Error, Result};
use crate::model::{validate_chain, Coupling, RobotSpec};
use crate::scalar::Scalar;
use crate::segment::JointConvention;

/// Per-segment joint-space vectors in a single convention.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState<T> {
    pub convention: JointConvention,
    pub per_segment: Vec<Vec<T>>,
}

impl<T: Scalar> ChainState<T> {
    pub fn new(convention: JointConvention, per_segment: Vec<Vec<T>>) -> Self {
        Self {
            convention,
            per_segment,
        }
    }
}

/// Per-segment Clarke coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainClarke<T> {
    pub per_segment: Vec<ClarkeCoordinates<T>>,
}

/// A validated multi-segment robot with its Clarke pairs.
#[derive(Debug, Clone)]
pub struct Chain<T> {
    coupling: Coupling,
    pairs: Vec<ClarkePair<T>>,
    lengths: Vec<T>,
}

impl<T: Scalar> Chain<T> {
    /// Validates the robot for composition (type-0 segments only, aligned
    /// routing when interdependent) and builds every segment's pair.
    pub fn new(robot: &RobotSpec<T>) -> Result<Self> {
        if robot.coupling == Coupling::Interdependent {
            if let Some(first) = robot.segments.first() {
                for (i, seg) in robot.segments.iter().enumerate().skip(1) {
                    if !seg.arrangement.same_routing(&first.arrangement) {
                        return Err(Error::ArrangementMismatch { first: 0, other: i });
                    }
                }
            }
        }
        let report = validate_chain(robot);
        if !report.is_valid() {
            return Err(Error::InvalidRobot(report));
        }
        let pairs = robot
            .segments
            .iter()
            .map(|s| build_pair(&s.arrangement))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            coupling: robot.coupling,
            pairs,
            lengths: robot.segments.iter().map(|s| s.length).collect(),
        })
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    pub fn segment_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[ClarkePair<T>] {
        &self.pairs
    }

    /// Initial segment lengths from the robot description.
    pub fn lengths(&self) -> &[T] {
        &self.lengths
    }

    fn require_coupling(&self, coupling: Coupling) -> Result<()> {
        if self.coupling == coupling {
            Ok(())
        } else {
            Err(Error::CouplingMismatch {
                expected: coupling.as_str(),
            })
        }
    }

    fn check_count(&self, found: usize) -> Result<()> {
        if found == self.pairs.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.pairs.len(),
                found,
            })
        }
    }

    fn require_convention(state: &ChainState<T>, expected: JointConvention) -> Result<()> {
        if state.convention == expected {
            Ok(())
        } else {
            Err(Error::ConventionMismatch {
                expected: expected.as_str(),
                found: state.convention.as_str(),
            })
        }
    }

    /// `cc^j = M_P^(j) rho^(j)` for each independent segment.
    pub fn independent_forward(&self, state: &ChainState<T>) -> Result<ChainClarke<T>> {
        self.require_coupling(Coupling::Independent)?;
        Self::require_convention(state, JointConvention::Rho)?;
        self.check_count(state.per_segment.len())?;
        let per_segment = self
            .pairs
            .iter()
            .zip(&state.per_segment)
            .map(|(pair, rho)| pair.forward(rho))
            .collect::<Result<_>>()?;
        Ok(ChainClarke { per_segment })
    }

    /// `rho^j = M_P^-1(j) cc^j` for each independent segment.
    pub fn independent_inverse(&self, cc: &ChainClarke<T>) -> Result<ChainState<T>> {
        self.require_coupling(Coupling::Independent)?;
        self.check_count(cc.per_segment.len())?;
        let per_segment = self
            .pairs
            .iter()
            .zip(&cc.per_segment)
            .map(|(pair, &c)| pair.inverse(c).into_inner())
            .collect();
        Ok(ChainState::new(JointConvention::Rho, per_segment))
    }

    /// Accumulated joint lengths of routed-through segments:
    /// `q^1 = l^1 1 - rho^1`, `q^j = l^j 1 - rho^j + q^(j-1)`.
    pub fn interdependent_accumulate(
        &self,
        rho_per_seg: &[Vec<T>],
        l_per_seg: &[T],
    ) -> Result<ChainState<T>> {
        self.require_coupling(Coupling::Interdependent)?;
        self.check_count(rho_per_seg.len())?;
        self.check_count(l_per_seg.len())?;
        let mut per_segment: Vec<Vec<T>> = Vec::with_capacity(rho_per_seg.len());
        for ((pair, rho), &l) in self.pairs.iter().zip(rho_per_seg).zip(l_per_seg) {
            pair.check_len(rho.len())?;
            let q: Vec<T> = match per_segment.last() {
                None => rho.iter().map(|&r| l - r).collect(),
                Some(prev) => rho.iter().zip(prev).map(|(&r, &p)| l - r + p).collect(),
            };
            per_segment.push(q);
        }
        Ok(ChainState::new(JointConvention::Q, per_segment))
    }

    /// Clarke coordinates of routed-through segments from accumulated joint
    /// lengths: `cc^1 = -M_P q^1`, `cc^j = M_P q^(j-1) - M_P q^j`.
    pub fn interdependent_forward(&self, state: &ChainState<T>) -> Result<ChainClarke<T>> {
        self.require_coupling(Coupling::Interdependent)?;
        Self::require_convention(state, JointConvention::Q)?;
        self.check_count(state.per_segment.len())?;
        let mut per_segment = Vec::with_capacity(self.pairs.len());
        let mut prev: Option<&Vec<T>> = None;
        for (pair, q) in self.pairs.iter().zip(&state.per_segment) {
            pair.check_len(q.len())?;
            let cc = match prev {
                None => -pair.forward_offset_free(q)?,
                Some(p) => {
                    let diff: Vec<T> = q.iter().zip(p).map(|(&a, &b)| a - b).collect();
                    -pair.forward_offset_free(&diff)?
                }
            };
            per_segment.push(cc);
            prev = Some(q);
        }
        Ok(ChainClarke { per_segment })
    }

    /// Accumulated joint lengths reproducing the given Clarke coordinates:
    /// `rho^j = M_P^-1 cc^j`, then accumulated with `l_per_seg`.
    pub fn interdependent_inverse(
        &self,
        cc: &ChainClarke<T>,
        l_per_seg: &[T],
    ) -> Result<ChainState<T>> {
        self.require_coupling(Coupling::Interdependent)?;
        self.check_count(cc.per_segment.len())?;
        let rho: Vec<Vec<T>> = self
            .pairs
            .iter()
            .zip(&cc.per_segment)
            .map(|(pair, &c)| pair.inverse(c).into_inner())
            .collect();
        self.interdependent_accumulate(&rho, l_per_seg)
    }
}
