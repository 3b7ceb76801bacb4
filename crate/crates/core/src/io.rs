//! JSON/CSV file formats: robot descriptions, joint and Clarke states,
//! chain states, arc parameters, matrices and backbone polylines.
//!
//! Numbers are written with 17 significant digits (`%.17g`), so every
//! `f64` round-trips and output is byte-stable across IEEE-754 platforms.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arc::{ArcParameters, BackbonePolyline};
use crate::chain::{ChainClarke, ChainState};
use crate::clarke::{ClarkeCoordinates, ClarkePair};
use crate::model::{
    make_symmetric_arrangement, Coupling, JointArrangement, RobotSpec, SegmentSpec, SegmentType,
};
use crate::segment::{ExtendedClarkeState, ExtendedJointState, JointConvention};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingJson {
    Independent,
    Interdependent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentTypeJson {
    Type0,
    Type1,
    Type2,
    Type3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointJson {
    pub psi: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JointsJson {
    Symmetric { n: usize, d: f64 },
    Explicit(Vec<JointJson>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentJson {
    #[serde(rename = "type")]
    pub seg_type: SegmentTypeJson,
    pub length: f64,
    pub joints: JointsJson,
}

/// Robot description file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotJson {
    pub coupling: CouplingJson,
    pub segments: Vec<SegmentJson>,
}

impl RobotJson {
    /// Converts to the data model. Structural problems that the model can
    /// represent (e.g. a non-positive radius) are left for
    /// [`crate::model::validate_robot`] to report.
    pub fn into_spec(self) -> Result<RobotSpec<f64>, FormatError> {
        let segments = self
            .segments
            .into_iter()
            .enumerate()
            .map(|(i, seg)| {
                let arrangement = match seg.joints {
                    JointsJson::Symmetric { n, d } => {
                        if n < 3 {
                            return Err(FormatError::Invalid(format!(
                                "segment {i}: symmetric arrangement needs n >= 3, got {n}"
                            )));
                        }
                        // Radius checks are deferred to validation.
                        let unit = make_symmetric_arrangement(n, 1.0)
                            .map_err(|e| FormatError::Invalid(e.to_string()))?;
                        JointArrangement::from_raw(unit.psi().to_vec(), vec![d; n])
                    }
                    JointsJson::Explicit(joints) => JointArrangement::from_raw(
                        joints.iter().map(|j| j.psi).collect(),
                        joints.iter().map(|j| j.d).collect(),
                    ),
                };
                let seg_type = match seg.seg_type {
                    SegmentTypeJson::Type0 => SegmentType::Type0,
                    SegmentTypeJson::Type1 => SegmentType::TypeI,
                    SegmentTypeJson::Type2 => SegmentType::TypeII,
                    SegmentTypeJson::Type3 => SegmentType::TypeIII,
                };
                Ok(SegmentSpec::new(arrangement, seg.length, seg_type))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let coupling = match self.coupling {
            CouplingJson::Independent => Coupling::Independent,
            CouplingJson::Interdependent => Coupling::Interdependent,
        };
        Ok(RobotSpec::new(segments, coupling))
    }
}

/// Parses a robot description. The result is not yet validated.
pub fn parse_robot(text: &str) -> Result<RobotSpec<f64>, FormatError> {
    serde_json::from_str::<RobotJson>(text)?.into_spec()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionJson {
    Rho,
    Q,
}

impl From<ConventionJson> for JointConvention {
    fn from(c: ConventionJson) -> Self {
        match c {
            ConventionJson::Rho => JointConvention::Rho,
            ConventionJson::Q => JointConvention::Q,
        }
    }
}

impl From<JointConvention> for ConventionJson {
    fn from(c: JointConvention) -> Self {
        match c {
            JointConvention::Rho => ConventionJson::Rho,
            JointConvention::Q => ConventionJson::Q,
        }
    }
}

/// `{ "convention": "rho"|"q", "values": [...], "beta"?: x, "alpha"?: x }`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointStateJson {
    pub convention: ConventionJson,
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

impl From<JointStateJson> for ExtendedJointState<f64> {
    fn from(j: JointStateJson) -> Self {
        ExtendedJointState {
            convention: j.convention.into(),
            values: j.values,
            beta: j.beta,
            alpha: j.alpha,
        }
    }
}

impl From<ExtendedJointState<f64>> for JointStateJson {
    fn from(s: ExtendedJointState<f64>) -> Self {
        JointStateJson {
            convention: s.convention.into(),
            values: s.values,
            beta: s.beta,
            alpha: s.alpha,
        }
    }
}

/// `{ "cc": [re, im], "beta"?: x, "alpha"?: x }`; `helical_offset` is only
/// written, never required.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClarkeStateJson {
    pub cc: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub helical_offset: Option<f64>,
}

impl From<&ClarkeStateJson> for ExtendedClarkeState<f64> {
    fn from(j: &ClarkeStateJson) -> Self {
        ExtendedClarkeState::new(ClarkeCoordinates::new(j.cc[0], j.cc[1]), j.beta, j.alpha)
    }
}

impl From<ExtendedClarkeState<f64>> for ClarkeStateJson {
    fn from(s: ExtendedClarkeState<f64>) -> Self {
        ClarkeStateJson {
            cc: s.cc.to_array(),
            beta: s.beta,
            alpha: s.alpha,
            helical_offset: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentValuesJson {
    pub values: Vec<f64>,
}

/// `{ "convention": "rho"|"q", "segments": [ { "values": [...] }, ... ] }`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainStateJson {
    pub convention: ConventionJson,
    pub segments: Vec<SegmentValuesJson>,
}

impl From<ChainStateJson> for ChainState<f64> {
    fn from(j: ChainStateJson) -> Self {
        ChainState::new(
            j.convention.into(),
            j.segments.into_iter().map(|s| s.values).collect(),
        )
    }
}

impl From<ChainState<f64>> for ChainStateJson {
    fn from(s: ChainState<f64>) -> Self {
        ChainStateJson {
            convention: s.convention.into(),
            segments: s
                .per_segment
                .into_iter()
                .map(|values| SegmentValuesJson { values })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentClarkeJson {
    pub cc: [f64; 2],
}

/// `{ "segments": [ { "cc": [re, im] }, ... ] }`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainClarkeJson {
    pub segments: Vec<SegmentClarkeJson>,
}

impl From<&ChainClarkeJson> for ChainClarke<f64> {
    fn from(j: &ChainClarkeJson) -> Self {
        ChainClarke {
            per_segment: j
                .segments
                .iter()
                .map(|s| ClarkeCoordinates::new(s.cc[0], s.cc[1]))
                .collect(),
        }
    }
}

impl From<ChainClarke<f64>> for ChainClarkeJson {
    fn from(c: ChainClarke<f64>) -> Self {
        ChainClarkeJson {
            segments: c
                .per_segment
                .into_iter()
                .map(|cc| SegmentClarkeJson { cc: cc.to_array() })
                .collect(),
        }
    }
}

/// Arc parameters; `phi` and `theta_undefined` are derived on output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcJson {
    pub kappa: f64,
    pub theta: f64,
    pub l: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_undefined: Option<bool>,
}

impl ArcJson {
    pub fn to_arc(&self) -> crate::error::Result<ArcParameters<f64>> {
        ArcParameters::new(self.kappa, self.theta, self.l)
    }
}

impl From<&ArcParameters<f64>> for ArcJson {
    fn from(a: &ArcParameters<f64>) -> Self {
        ArcJson {
            kappa: a.kappa(),
            theta: a.theta(),
            l: a.l(),
            phi: Some(a.phi()),
            theta_undefined: Some(a.theta_undefined()),
        }
    }
}

/// Matrices of one segment's Clarke pair, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixReportJson {
    pub segment: usize,
    pub n: usize,
    pub symmetric: bool,
    pub filter_ok: bool,
    pub filter_residual: [f64; 2],
    pub mp: Vec<Vec<f64>>,
    pub mp_inv: Vec<Vec<f64>>,
    pub projector: Vec<Vec<f64>>,
}

impl MatrixReportJson {
    pub fn new(segment: usize, pair: &ClarkePair<f64>) -> Self {
        MatrixReportJson {
            segment,
            n: pair.n(),
            symmetric: pair.is_symmetric(),
            filter_ok: pair.filter_ok(),
            filter_residual: pair.filter_residual(),
            mp: pair.mp().to_vec(),
            mp_inv: pair.mp_inv().iter().map(|r| r.to_vec()).collect(),
            projector: pair.projector(),
        }
    }

    /// One matrix row per line, each matrix introduced by a `# name` line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (name, rows) in [
            ("mp", &self.mp),
            ("mp_inv", &self.mp_inv),
            ("projector", &self.projector),
        ] {
            out.push_str("# ");
            out.push_str(name);
            out.push('\n');
            out.push_str(&rows_to_csv(rows));
        }
        out
    }
}

/// Formats like C's `%.17g`, except that `-0` is written as `0`.
pub fn format_g17(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return format!("{value}");
    }
    let sci = format!("{value:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = strip_fraction_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp) as usize;
    strip_fraction_zeros(&format!("{value:.decimals$}")).to_string()
}

fn strip_fraction_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `serde_json` formatter writing floats through [`format_g17`].
#[derive(Debug, Default, Clone, Copy)]
pub struct G17Formatter;

impl serde_json::ser::Formatter for G17Formatter {
    fn write_f64<W: ?Sized + std::io::Write>(
        &mut self,
        writer: &mut W,
        value: f64,
    ) -> std::io::Result<()> {
        writer.write_all(format_g17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + std::io::Write>(
        &mut self,
        writer: &mut W,
        value: f32,
    ) -> std::io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON with 17-significant-digit floats.
pub fn to_json<S: Serialize + ?Sized>(value: &S) -> Result<String, FormatError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17Formatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// Comma-separated rows, one per line.
pub fn rows_to_csv(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|&x| format_g17(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Polyline CSV with header `s,x,y,z`.
pub fn polyline_to_csv(line: &BackbonePolyline<f64>) -> String {
    let rows: Vec<Vec<f64>> = line
        .samples
        .iter()
        .map(|s| vec![s.s, s.point[0], s.point[1], s.point[2]])
        .collect();
    format!("s,x,y,z\n{}", rows_to_csv(&rows))
}
