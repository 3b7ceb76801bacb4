#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dacr"))
        .args(args)
        .output()
        .expect("failed to launch dacr")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

/// A worked example run through the CLI, compared against its golden file.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: Vec<String>,
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let case = |name, args: &[&str]| GoldenCase {
        name,
        args: args
            .iter()
            .map(|a| match a.strip_prefix('@') {
                Some(file) => data(file),
                None => a.to_string(),
            })
            .collect(),
    };
    vec![
        case(
            "matrix_asymmetric",
            &["matrix", "--robot", "@robot_asymmetric.json"],
        ),
        case(
            "matrix_symmetric3",
            &["matrix", "--robot", "@robot_symmetric3.json"],
        ),
        case(
            "recover_length",
            &[
                "recover-length",
                "--robot",
                "@robot_type1.json",
                "--input",
                "@q_type1.json",
            ],
        ),
        case(
            "forward_type1",
            &[
                "forward",
                "--robot",
                "@robot_type1.json",
                "--input",
                "@q_type1.json",
            ],
        ),
        case(
            "forward_type3",
            &[
                "forward",
                "--robot",
                "@robot_type3.json",
                "--input",
                "@q_type3.json",
                "--d",
                "10",
                "--l",
                "4",
            ],
        ),
        case(
            "chain_forward",
            &[
                "chain",
                "forward",
                "--robot",
                "@robot_chain2.json",
                "--input",
                "@chain_q.json",
            ],
        ),
        case(
            "arc_from_clarke",
            &[
                "arc",
                "from-clarke",
                "--input",
                "@cc_bent.json",
                "--d",
                "10",
                "--l",
                "100",
            ],
        ),
        case(
            "arc_from_clarke_straight",
            &[
                "arc",
                "from-clarke",
                "--input",
                "@cc_straight.json",
                "--d",
                "10",
                "--l",
                "100",
            ],
        ),
    ]
}

impl GoldenCase {
    pub fn output(&self) -> Output {
        let args: Vec<&str> = self.args.iter().map(String::as_str).collect();
        run(&args)
    }

    pub fn expected(&self) -> String {
        std::fs::read_to_string(golden_path(self.name))
            .unwrap_or_else(|e| panic!("missing golden file for {}: {e}", self.name))
    }
}

pub fn parse(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("output is valid JSON")
}

pub fn num(v: &serde_json::Value) -> f64 {
    v.as_f64().expect("number")
}
