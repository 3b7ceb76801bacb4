use std::fs;
use std::io::Read;

use dacr::arc::{arc_to_clarke, clarke_to_arc, sample_backbone};
use dacr::io::{
    format_g17, parse_robot, polyline_to_csv, to_json, ArcJson, ChainClarkeJson, ChainStateJson,
    ClarkeStateJson, ConventionJson, JointStateJson, MatrixReportJson,
};
use dacr::segment::{
    helical_offset, recover_length, type1_forward, type1_forward_from_q, type1_inverse_to_q,
    type2_forward, type2_inverse, type3_forward, type3_forward_from_q, type3_inverse_to_q,
};
use dacr::{
    build_pair, Chain, ChainClarke, ChainState, ClarkeCoordinates, ClarkePair, Coupling, Error,
    ExtendedClarkeState, RobotSpec, SegmentSpec, SegmentType,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CliError, CliResult, Status};
use crate::{Format, Options};

/// What a command writes, in both output formats.
pub struct Report {
    pub status: Status,
    pub json: String,
    pub csv: String,
}

impl Report {
    fn ok<S: Serialize>(value: &S, csv: String) -> CliResult<Self> {
        Ok(Self {
            status: Status::Ok,
            json: to_json(value)?,
            csv,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.json),
            Format::Csv => self.csv.clone(),
        }
    }
}

fn csv_table(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| format_g17(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn read_text(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::schema(format!("cannot read standard input: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| CliError::schema(format!("cannot read {path}: {e}")))
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::schema(format!("malformed {what}: {e}")))
}

fn read_input<T: DeserializeOwned>(opts: &Options, what: &str) -> CliResult<T> {
    let path = opts.input.as_deref().unwrap_or("-");
    parse_json(&read_text(path)?, what)
}

fn load_robot(opts: &Options) -> CliResult<RobotSpec<f64>> {
    let path = opts
        .robot
        .as_deref()
        .ok_or_else(|| CliError::schema("this command needs --robot"))?;
    Ok(parse_robot(&read_text(path)?)?.validated()?)
}

fn select_segment(robot: &RobotSpec<f64>, index: usize) -> CliResult<SegmentSpec<f64>> {
    robot.segments.get(index).cloned().ok_or_else(|| {
        CliError::schema(format!(
            "segment {index} out of range, robot has {} segment(s)",
            robot.segments.len()
        ))
    })
}

struct Segment {
    spec: SegmentSpec<f64>,
    pair: ClarkePair<f64>,
}

fn load_segment(opts: &Options) -> CliResult<Segment> {
    let robot = load_robot(opts)?;
    let spec = select_segment(&robot, opts.segment)?;
    let pair = build_pair(&spec.arrangement)?;
    Ok(Segment { spec, pair })
}

fn require<T>(value: Option<T>, name: &'static str) -> CliResult<T> {
    value.ok_or_else(|| Error::MissingJoint(name).into())
}

fn mismatch(expected: &'static str, found: ConventionJson) -> CliError {
    let found = match found {
        ConventionJson::Rho => "rho",
        ConventionJson::Q => "q",
    };
    Error::ConventionMismatch { expected, found }.into()
}

fn radius(opts: &Options, pair: &ClarkePair<f64>) -> CliResult<f64> {
    match opts.d {
        Some(d) => Ok(d),
        None => pair
            .arrangement()
            .common_radius()
            .ok_or_else(|| CliError::schema("joints have different radial distances, pass --d")),
    }
}

fn state_csv(state: &ClarkeStateJson) -> String {
    let mut header = vec!["re", "im"];
    let mut row = state.cc.to_vec();
    for (name, value) in [
        ("beta", state.beta),
        ("alpha", state.alpha),
        ("helical_offset", state.helical_offset),
    ] {
        if let Some(v) = value {
            header.push(name);
            row.push(v);
        }
    }
    csv_table(&header, &[row])
}

fn joint_state_csv(state: &JointStateJson) -> String {
    let header: Vec<String> = (0..state.values.len())
        .map(|i| {
            format!(
                "{}{i}",
                match state.convention {
                    ConventionJson::Rho => "rho",
                    ConventionJson::Q => "q",
                }
            )
        })
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    csv_table(&header, std::slice::from_ref(&state.values))
}

pub fn matrix(opts: &Options) -> CliResult<Report> {
    let seg = load_segment(opts)?;
    let report = MatrixReportJson::new(opts.segment, &seg.pair);
    Report::ok(&report, report.to_csv())
}

pub fn forward(opts: &Options) -> CliResult<Report> {
    let Segment { spec, pair } = load_segment(opts)?;
    let input: JointStateJson = read_input(opts, "joint state")?;
    let alpha = input.alpha.or(opts.alpha);
    let values = &input.values;
    let mut offset = None;
    let state: ExtendedClarkeState<f64> = match (spec.seg_type, input.convention) {
        (SegmentType::Type0, ConventionJson::Rho) => {
            ExtendedClarkeState::new(pair.forward(values)?, None, None)
        }
        (SegmentType::TypeI, ConventionJson::Rho) => {
            type1_forward(&pair, values, require(input.beta, "beta")?)?
        }
        (SegmentType::TypeI, ConventionJson::Q) => type1_forward_from_q(&pair, values, opts.tol)?,
        (SegmentType::TypeII, ConventionJson::Rho) => {
            type2_forward(&pair, values, require(alpha, "alpha")?)?
        }
        (SegmentType::TypeIII, ConventionJson::Rho) => ExtendedClarkeState::new(
            pair.forward(values)?,
            Some(require(input.beta, "beta")?),
            Some(require(alpha, "alpha")?),
        ),
        (SegmentType::TypeIII, ConventionJson::Q) => {
            let alpha = require(alpha, "alpha")?;
            match input.beta {
                Some(beta) => type3_forward(&pair, values, beta, alpha)?,
                None => {
                    let d = radius(opts, &pair)?;
                    let hint = opts.l.unwrap_or(spec.length);
                    let state = type3_forward_from_q(&pair, values, alpha, d, hint, opts.tol)?;
                    offset = Some(helical_offset(alpha, d, require(state.beta, "beta")?)?);
                    state
                }
            }
        }
        (SegmentType::Type0 | SegmentType::TypeII, found) => return Err(mismatch("rho", found)),
    };
    let mut out = ClarkeStateJson::from(state);
    out.helical_offset = offset;
    Report::ok(&out, state_csv(&out))
}

pub fn inverse(opts: &Options) -> CliResult<Report> {
    let Segment { spec, pair } = load_segment(opts)?;
    let input: ClarkeStateJson = read_input(opts, "Clarke state")?;
    let mut state = ExtendedClarkeState::from(&input);
    state.beta = state.beta.or(opts.l);
    state.alpha = state.alpha.or(opts.alpha);
    let out = match spec.seg_type {
        SegmentType::Type0 => JointStateJson {
            convention: ConventionJson::Rho,
            values: pair.inverse(state.cc).into_inner(),
            beta: None,
            alpha: None,
        },
        SegmentType::TypeI => JointStateJson {
            convention: ConventionJson::Q,
            values: type1_inverse_to_q(&pair, &state)?.into_inner(),
            beta: state.beta,
            alpha: None,
        },
        SegmentType::TypeII => {
            let (rho, alpha) = type2_inverse(&pair, &state)?;
            JointStateJson {
                convention: ConventionJson::Rho,
                values: rho.into_inner(),
                beta: None,
                alpha: Some(alpha),
            }
        }
        SegmentType::TypeIII => {
            let d = radius(opts, &pair)?;
            JointStateJson {
                convention: ConventionJson::Q,
                values: type3_inverse_to_q(&pair, &state, d)?.into_inner(),
                beta: state.beta,
                alpha: state.alpha,
            }
        }
    };
    Report::ok(&out, joint_state_csv(&out))
}

#[derive(Serialize)]
struct SegmentCheck {
    segment: usize,
    valid: bool,
    residual_norm: f64,
}

#[derive(Serialize)]
struct ValidationJson {
    valid: bool,
    residual_norm: f64,
    tol: f64,
    segments: Vec<SegmentCheck>,
}

pub fn validate(opts: &Options) -> CliResult<Report> {
    let robot = load_robot(opts)?;
    let tol = opts.tol.unwrap_or(1e-9);
    let text = read_text(opts.input.as_deref().unwrap_or("-"))?;
    let value: serde_json::Value = parse_json(&text, "state")?;
    let states: Vec<(usize, Vec<f64>)> = if value.get("segments").is_some() {
        let chain: ChainStateJson = parse_json(&text, "chain state")?;
        if chain.convention != ConventionJson::Rho {
            return Err(mismatch("rho", chain.convention));
        }
        if chain.segments.len() != robot.segments.len() {
            return Err(Error::DimensionMismatch {
                expected: robot.segments.len(),
                found: chain.segments.len(),
            }
            .into());
        }
        chain
            .segments
            .into_iter()
            .map(|s| s.values)
            .enumerate()
            .collect()
    } else {
        let state: JointStateJson = parse_json(&text, "joint state")?;
        if state.convention != ConventionJson::Rho {
            return Err(mismatch("rho", state.convention));
        }
        select_segment(&robot, opts.segment)?;
        vec![(opts.segment, state.values)]
    };

    let mut segments = Vec::with_capacity(states.len());
    for (index, rho) in states {
        let pair = build_pair(&robot.segments[index].arrangement)?;
        let check = pair.validate_displacement(&rho, tol)?;
        segments.push(SegmentCheck {
            segment: index,
            valid: check.valid,
            residual_norm: check.residual_norm,
        });
    }
    let report = ValidationJson {
        valid: segments.iter().all(|s| s.valid),
        residual_norm: segments.iter().map(|s| s.residual_norm).fold(0.0, f64::max),
        tol,
        segments,
    };
    let rows: Vec<Vec<f64>> = report
        .segments
        .iter()
        .map(|s| {
            vec![
                s.segment as f64,
                f64::from(u8::from(s.valid)),
                s.residual_norm,
            ]
        })
        .collect();
    let mut out = Report::ok(
        &report,
        csv_table(&["segment", "valid", "residual_norm"], &rows),
    )?;
    if !report.valid {
        out.status = Status::Invalid;
    }
    Ok(out)
}

pub fn project(opts: &Options) -> CliResult<Report> {
    let seg = load_segment(opts)?;
    let input: JointStateJson = read_input(opts, "joint state")?;
    if input.convention != ConventionJson::Rho {
        return Err(mismatch("rho", input.convention));
    }
    let out = JointStateJson {
        values: seg.pair.project(&input.values)?.into_inner(),
        ..input
    };
    Report::ok(&out, joint_state_csv(&out))
}

#[derive(Serialize)]
struct LengthJson {
    length: f64,
}

pub fn recover(opts: &Options) -> CliResult<Report> {
    let seg = load_segment(opts)?;
    let input: JointStateJson = read_input(opts, "joint state")?;
    if input.convention != ConventionJson::Q {
        return Err(mismatch("q", input.convention));
    }
    let length = recover_length(&seg.pair, &input.values, opts.tol)?;
    Report::ok(
        &LengthJson { length },
        csv_table(&["length"], &[vec![length]]),
    )
}

/// `--d`, falling back to the common radius of the selected segment.
fn arc_radius(opts: &Options) -> CliResult<f64> {
    if let Some(d) = opts.d {
        return Ok(d);
    }
    if opts.robot.is_none() {
        return Err(CliError::schema("this command needs --d or --robot"));
    }
    let seg = load_segment(opts)?;
    radius(opts, &seg.pair)
}

#[derive(Serialize)]
struct CoordinatesJson {
    cc: [f64; 2],
}

pub fn arc_to(opts: &Options) -> CliResult<Report> {
    let input: ArcJson = read_input(opts, "arc parameters")?;
    let arc = input.to_arc()?;
    let cc = arc_to_clarke(&arc, arc_radius(opts)?)?;
    let out = CoordinatesJson { cc: cc.to_array() };
    Report::ok(&out, csv_table(&["re", "im"], &[out.cc.to_vec()]))
}

pub fn arc_from(opts: &Options) -> CliResult<Report> {
    let input: ClarkeStateJson = read_input(opts, "Clarke state")?;
    let d = arc_radius(opts)?;
    let l = match opts.l.or(input.beta) {
        Some(l) => l,
        None if opts.robot.is_some() => select_segment(&load_robot(opts)?, opts.segment)?.length,
        None => return Err(CliError::schema("this command needs --l or --robot")),
    };
    let arc = clarke_to_arc(ClarkeCoordinates::new(input.cc[0], input.cc[1]), d, l)?;
    let out = ArcJson::from(&arc);
    let row = vec![
        out.kappa,
        out.theta,
        out.l,
        arc.phi(),
        f64::from(u8::from(arc.theta_undefined())),
    ];
    Report::ok(
        &out,
        csv_table(&["kappa", "theta", "l", "phi", "theta_undefined"], &[row]),
    )
}

#[derive(Serialize)]
struct SampleJson {
    s: f64,
    x: f64,
    y: f64,
    z: f64,
}

#[derive(Serialize)]
struct PolylineJson {
    samples: Vec<SampleJson>,
}

pub fn sample(opts: &Options) -> CliResult<Report> {
    let input: ArcJson = read_input(opts, "arc parameters")?;
    let arc = input.to_arc()?;
    let line = sample_backbone(&arc, opts.points)?;
    let out = PolylineJson {
        samples: line
            .samples
            .iter()
            .map(|s| SampleJson {
                s: s.s,
                x: s.point[0],
                y: s.point[1],
                z: s.point[2],
            })
            .collect(),
    };
    Report::ok(&out, polyline_to_csv(&line))
}

fn load_chain(opts: &Options) -> CliResult<(Chain<f64>, Vec<f64>)> {
    let robot = load_robot(opts)?;
    let chain = Chain::new(&robot)?;
    let lengths = chain.lengths().to_vec();
    Ok((chain, lengths))
}

fn chain_clarke_report(cc: ChainClarke<f64>) -> CliResult<Report> {
    let out = ChainClarkeJson::from(cc);
    let rows: Vec<Vec<f64>> = out.segments.iter().map(|s| s.cc.to_vec()).collect();
    Report::ok(&out, csv_table(&["re", "im"], &rows))
}

fn chain_state_report(state: ChainState<f64>) -> CliResult<Report> {
    let out = ChainStateJson::from(state);
    let rows: Vec<Vec<f64>> = out.segments.iter().map(|s| s.values.clone()).collect();
    Report::ok(&out, dacr::io::rows_to_csv(&rows))
}

pub fn chain_forward(opts: &Options) -> CliResult<Report> {
    let (chain, _) = load_chain(opts)?;
    let input: ChainStateJson = read_input(opts, "chain state")?;
    let state = ChainState::from(input);
    let cc = match chain.coupling() {
        Coupling::Independent => chain.independent_forward(&state)?,
        Coupling::Interdependent => chain.interdependent_forward(&state)?,
    };
    chain_clarke_report(cc)
}

pub fn chain_inverse(opts: &Options) -> CliResult<Report> {
    let (chain, lengths) = load_chain(opts)?;
    let input: ChainClarkeJson = read_input(opts, "chain Clarke state")?;
    let cc = ChainClarke::from(&input);
    let state = match chain.coupling() {
        Coupling::Independent => chain.independent_inverse(&cc)?,
        Coupling::Interdependent => chain.interdependent_inverse(&cc, &lengths)?,
    };
    chain_state_report(state)
}

pub fn chain_accumulate(opts: &Options) -> CliResult<Report> {
    let (chain, lengths) = load_chain(opts)?;
    let input: ChainStateJson = read_input(opts, "chain state")?;
    if input.convention != ConventionJson::Rho {
        return Err(mismatch("rho", input.convention));
    }
    let rho: Vec<Vec<f64>> = input.segments.into_iter().map(|s| s.values).collect();
    chain_state_report(chain.interdependent_accumulate(&rho, &lengths)?)
}
