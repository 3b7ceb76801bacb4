//! `dacr`: Clarke-transform kinematics for displacement-actuated continuum
//! robots from the command line.
//!
//! Exit status: 0 ok, 1 well-formed but invalid, 2 bad input, 3 degenerate
//! arrangement, 4 dimension or convention mismatch, 5 filter property
//! unavailable.

mod commands;
mod error;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Report;
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "dacr",
    version,
    about = "Clarke-transform kinematics for continuum robots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Robot description (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    pub robot: Option<String>,
    /// Input state (JSON); standard input if omitted or `-`.
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Option<String>,
    /// Segment index.
    #[arg(long, global = true, default_value_t = 0)]
    pub segment: usize,
    /// Validation tolerance (length units).
    #[arg(long, global = true, value_name = "X")]
    pub tol: Option<f64>,
    /// Output format; `sample` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output if omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<String>,
    /// Number of backbone samples.
    #[arg(long, global = true, default_value_t = 20)]
    pub points: usize,
    /// Segment length (arc conversion, twist length hint, missing beta).
    #[arg(long, global = true, value_name = "X", allow_negative_numbers = true)]
    pub l: Option<f64>,
    /// Radial joint distance.
    #[arg(long, global = true, value_name = "X", allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// Twist angle (rad) when the input state has none.
    #[arg(long, global = true, value_name = "X", allow_negative_numbers = true)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the Clarke matrices of one segment.
    Matrix,
    /// Joint state to Clarke state for one segment.
    Forward,
    /// Clarke state to joint state for one segment.
    Inverse,
    /// Check displacements against the manifold; exit 1 if invalid.
    Validate,
    /// Project displacements onto the manifold.
    Project,
    /// Recover the segment length from joint lengths.
    RecoverLength,
    /// Convert between arc parameters and Clarke coordinates.
    #[command(subcommand)]
    Arc(ArcCommand),
    /// Sample the constant-curvature backbone.
    Sample,
    /// Multi-segment transforms.
    #[command(subcommand)]
    Chain(ChainCommand),
}

#[derive(Debug, Subcommand)]
enum ArcCommand {
    ToClarke,
    FromClarke,
}

#[derive(Debug, Subcommand)]
enum ChainCommand {
    Forward,
    Inverse,
    /// Accumulate joint lengths of routed-through segments from displacements.
    Accumulate,
}

fn execute(cli: &Cli) -> CliResult<Report> {
    let opts = &cli.options;
    match &cli.command {
        Command::Matrix => commands::matrix(opts),
        Command::Forward => commands::forward(opts),
        Command::Inverse => commands::inverse(opts),
        Command::Validate => commands::validate(opts),
        Command::Project => commands::project(opts),
        Command::RecoverLength => commands::recover(opts),
        Command::Arc(ArcCommand::ToClarke) => commands::arc_to(opts),
        Command::Arc(ArcCommand::FromClarke) => commands::arc_from(opts),
        Command::Sample => commands::sample(opts),
        Command::Chain(ChainCommand::Forward) => commands::chain_forward(opts),
        Command::Chain(ChainCommand::Inverse) => commands::chain_inverse(opts),
        Command::Chain(ChainCommand::Accumulate) => commands::chain_accumulate(opts),
    }
}

fn write_output(opts: &Options, text: &str) -> CliResult<()> {
    match &opts.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::schema(format!("cannot write {path}: {e}")))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_format = match cli.command {
        Command::Sample => Format::Csv,
        _ => Format::Json,
    };
    let format = cli.options.format.unwrap_or(default_format);
    let result = execute(&cli).and_then(|report| {
        write_output(&cli.options, &report.render(format))?;
        Ok(report.status)
    });
    match result {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            e.status.into()
        }
    }
}
