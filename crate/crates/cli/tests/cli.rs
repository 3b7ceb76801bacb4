mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use common::{data, golden_cases, num, parse, run, stderr, stdout};

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn run_stdin(args: &[&str], input: &str) -> std::process::Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dacr"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn degenerate_arrangement_exits_3() {
    let out = run(&["matrix", "--robot", &data("robot_degenerate.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("degenerate arrangement"));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"coupling\": ").unwrap();
    assert_eq!(code(&["matrix", "--robot", path.to_str().unwrap()]), 2);
    std::fs::write(&path, r#"{"coupling":"independent","segments":[{"type":"type9","length":1,"joints":{"symmetric":{"n":3,"d":1}}}]}"#).unwrap();
    assert_eq!(code(&["matrix", "--robot", path.to_str().unwrap()]), 2);
}

#[test]
fn invalid_robot_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("robot.json");
    std::fs::write(&path, r#"{"coupling":"independent","segments":[{"type":"type0","length":1,"joints":{"symmetric":{"n":3,"d":-1}}}]}"#).unwrap();
    let out = run(&["matrix", "--robot", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("non-positive radial distance"));
}

#[test]
fn missing_files_and_flags_exit_2() {
    assert_eq!(code(&["matrix", "--robot", "/nonexistent/robot.json"]), 2);
    assert_eq!(code(&["matrix"]), 2);
    assert_eq!(
        code(&[
            "matrix",
            "--robot",
            &data("robot_symmetric3.json"),
            "--segment",
            "4"
        ]),
        2
    );
    assert_eq!(code(&["no-such-command"]), 2);
}

#[test]
fn validate_reports_and_exit_codes() {
    let robot = data("robot_symmetric3.json");
    let ok = run(&[
        "validate",
        "--robot",
        &robot,
        "--input",
        &data("rho_valid.json"),
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let v = parse(&stdout(&ok));
    assert_eq!(v["valid"], true);
    assert!(num(&v["residual_norm"]) < 1e-12);

    let bad = run(&[
        "validate",
        "--robot",
        &robot,
        "--input",
        &data("rho_invalid.json"),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let v = parse(&stdout(&bad));
    assert_eq!(v["valid"], false);
    assert!((num(&v["residual_norm"]) - 3f64.sqrt()).abs() < 1e-12);

    let loose = run(&[
        "validate",
        "--robot",
        &robot,
        "--input",
        &data("rho_invalid.json"),
        "--tol",
        "2.0",
    ]);
    assert_eq!(loose.status.code(), Some(0));
    assert_eq!(parse(&stdout(&loose))["valid"], true);
}

#[test]
fn validate_accepts_chain_states() {
    let robot = data("robot_chain2.json");
    let input = r#"{"convention":"rho","segments":[{"values":[2,-1,-1]},{"values":[1,1,1]}]}"#;
    let out = run_stdin(&["validate", "--robot", &robot], input);
    assert_eq!(out.status.code(), Some(1));
    let v = parse(&stdout(&out));
    assert_eq!(v["segments"][0]["valid"], true);
    assert_eq!(v["segments"][1]["valid"], false);
}

#[test]
fn dimension_and_convention_errors_exit_4() {
    let robot = data("robot_symmetric3.json");
    let short = run_stdin(
        &["forward", "--robot", &robot],
        r#"{"convention":"rho","values":[1,2]}"#,
    );
    assert_eq!(short.status.code(), Some(4));
    let wrong = run_stdin(
        &["forward", "--robot", &robot],
        r#"{"convention":"q","values":[1,2,3]}"#,
    );
    assert_eq!(wrong.status.code(), Some(4));
    let no_alpha = run(&[
        "forward",
        "--robot",
        &data("robot_type3.json"),
        "--input",
        &data("q_type1.json"),
    ]);
    assert_eq!(no_alpha.status.code(), Some(4));
    let chain = run_stdin(
        &["chain", "forward", "--robot", &data("robot_chain2.json")],
        r#"{"convention":"rho","segments":[{"values":[2,-1,-1]},{"values":[2,-1,-1]}]}"#,
    );
    assert_eq!(chain.status.code(), Some(4));
}

#[test]
fn filter_property_unavailable_exits_5() {
    let out = run_stdin(
        &["recover-length", "--robot", &data("robot_asymmetric.json")],
        r#"{"convention":"q","values":[1,1,1]}"#,
    );
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn off_manifold_joint_lengths_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("robot.json");
    std::fs::write(&path, r#"{"coupling":"independent","segments":[{"type":"type1","length":1,"joints":{"symmetric":{"n":4,"d":1}}}]}"#).unwrap();
    let out = run_stdin(
        &["recover-length", "--robot", path.to_str().unwrap()],
        r#"{"convention":"q","values":[2,1,1,1]}"#,
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn type0_forward_and_inverse() {
    let robot = data("robot_symmetric3.json");
    let fwd = run(&[
        "forward",
        "--robot",
        &robot,
        "--input",
        &data("rho_valid.json"),
    ]);
    let v = parse(&stdout(&fwd));
    assert!((num(&v["cc"][0]) - 2.0).abs() < 1e-12 && num(&v["cc"][1]).abs() < 1e-12);
    let inv = run_stdin(&["inverse", "--robot", &robot], r#"{"cc":[2,0]}"#);
    let v = parse(&stdout(&inv));
    assert_eq!(v["convention"], "rho");
    for (x, e) in v["values"]
        .as_array()
        .unwrap()
        .iter()
        .zip([2.0, -1.0, -1.0])
    {
        assert!((num(x) - e).abs() < 1e-12);
    }
}

#[test]
fn twisted_inverse_reproduces_joint_lengths() {
    let out = run_stdin(
        &["inverse", "--robot", &data("robot_type3.json")],
        r#"{"cc":[2,0],"beta":4,"alpha":0.3}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = parse(&stdout(&out));
    assert_eq!(v["convention"], "q");
    for (x, e) in v["values"].as_array().unwrap().iter().zip([3.0, 6.0, 6.0]) {
        assert!((num(x) - e).abs() < 1e-12);
    }
}

#[test]
fn project_lands_on_manifold() {
    let out = run(&[
        "project",
        "--robot",
        &data("robot_symmetric3.json"),
        "--input",
        &data("rho_invalid.json"),
    ]);
    let v = parse(&stdout(&out));
    for x in v["values"].as_array().unwrap() {
        assert!(num(x).abs() < 1e-12);
    }
}

#[test]
fn chain_accumulate_then_inverse() {
    let robot = data("robot_chain2.json");
    let acc = run_stdin(
        &["chain", "accumulate", "--robot", &robot],
        r#"{"convention":"rho","segments":[{"values":[2,-1,-1]},{"values":[-2,1,1]}]}"#,
    );
    let v = parse(&stdout(&acc));
    assert_eq!(v["convention"], "q");
    let expected = [[8.0, 11.0, 11.0], [30.0, 30.0, 30.0]];
    for (seg, e) in v["segments"].as_array().unwrap().iter().zip(expected) {
        for (x, y) in seg["values"].as_array().unwrap().iter().zip(e) {
            assert!((num(x) - y).abs() < 1e-12);
        }
    }
    let inv = run_stdin(
        &["chain", "inverse", "--robot", &robot],
        r#"{"segments":[{"cc":[2,0]},{"cc":[-2,0]}]}"#,
    );
    let w = parse(&stdout(&inv));
    for (seg, e) in w["segments"].as_array().unwrap().iter().zip(expected) {
        for (x, y) in seg["values"].as_array().unwrap().iter().zip(e) {
            assert!((num(x) - y).abs() < 1e-12);
        }
    }
}

#[test]
fn arc_to_clarke_uses_robot_radius() {
    let out = run_stdin(
        &[
            "arc",
            "to-clarke",
            "--robot",
            &data("robot_symmetric3.json"),
        ],
        r#"{"kappa":0.005,"theta":0,"l":100}"#,
    );
    let v = parse(&stdout(&out));
    assert!((num(&v["cc"][0]) - 5.0).abs() < 1e-12 && num(&v["cc"][1]).abs() < 1e-12);
    assert_eq!(
        code(&["arc", "to-clarke", "--input", &data("arc_straight.json")]),
        2
    );
}

#[test]
fn sample_writes_polyline_csv() {
    let out = run(&[
        "sample",
        "--input",
        &data("arc_straight.json"),
        "--points",
        "2",
    ]);
    assert_eq!(stdout(&out), "s,x,y,z\n0,0,0,0\n100,0,0,100\n");
    let json = run(&[
        "sample",
        "--input",
        &data("arc_straight.json"),
        "--points",
        "2",
        "--format",
        "json",
    ]);
    let v = parse(&stdout(&json));
    assert_eq!(v["samples"].as_array().unwrap().len(), 2);
    assert_eq!(
        code(&[
            "sample",
            "--input",
            &data("arc_straight.json"),
            "--points",
            "1"
        ]),
        2
    );
}

#[test]
fn matrix_csv_has_one_row_per_line() {
    let out = run(&[
        "matrix",
        "--robot",
        &data("robot_asymmetric.json"),
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# mp");
    assert_eq!(lines[1].split(',').count(), 3);
    assert_eq!(lines.len(), 1 + 2 + 1 + 3 + 1 + 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("length.json");
    let out = run(&[
        "recover-length",
        "--robot",
        &data("robot_type1.json"),
        "--input",
        &data("q_type1.json"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "{\"length\":100}\n");
}

#[test]
fn outputs_are_deterministic() {
    for case in golden_cases() {
        let a = case.output();
        let b = case.output();
        assert_eq!(a.stdout, b.stdout, "{}", case.name);
        assert_eq!(a.status, b.status);
    }
}
