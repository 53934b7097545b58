use std::process::Command;

use metabelian::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("metabelian").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn normal_form_of_a_bracket() {
    let (code, out, _) = run(&["nf", "[x1,x2]"]);
    assert_eq!(code, 0);
    assert!(out.contains("-y2"), "{out}");
    let (code, out, _) = run(&["--format", "structured", "nf", "[x1,x2]", "--rank", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tpart"], serde_json::json!(["-y2", "y1", "0"]));
}

#[test]
fn parse_errors_exit_one() {
    let (code, out, err) = run(&["nf", "[x1,,x2]"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn jacobian_and_inverse_of_an_elementary_map() {
    let (code, out, _) = run(&["jac", "x1 + [x2,x3]; x2; x3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    let (code, out, _) = run(&["inverse", "x1 + [x2,x3]; x2; x3"]);
    assert_eq!(code, 0);
    assert!(out.contains("x1 -> x1 - [x2,x3]"), "{out}");
}

#[test]
fn singular_linear_part_is_a_verdict_not_an_error() {
    let (code, out, _) = run(&["inverse", "x1; x1; x3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("not an automorphism"), "{out}");
    let (code, out, _) = run(&["--format", "structured", "inverse", "x1; x1; x3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["automorphism"], false);
}

#[test]
fn iaut_level_of_the_rank_four_perturbation() {
    let (code, out, _) = run(&["iaut-level", "x1 + [[x1,[x2,x3]],x4]; x2; x3; x4"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "level: 3");
}

#[test]
fn compose_with_inverse_is_identity() {
    let (_, inv, _) = run(&["--format", "structured", "inverse", "x1 + [x2,x3]; x2; x3"]);
    let v: serde_json::Value = serde_json::from_str(&inv).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inv.json");
    std::fs::write(&path, serde_json::to_string(&v["inverse"]).unwrap()).unwrap();
    let (code, out, err) = run(&["compose", "x1 + [x2,x3]; x2; x3", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), "x1 -> x1\nx2 -> x2\nx3 -> x3");
}

#[test]
fn rank_mismatch_is_rejected() {
    let (code, _, err) = run(&["jac", "x1; x2", "--rank", "3"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn malformed_endo_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"rank\": 2}").unwrap();
    let (code, _, _) = run(&["jac", path.to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn replays() {
    let (code, out, _) = run(&["replay-bn"]);
    assert_eq!(code, 0);
    assert!(out.contains("λ21*Ψ1 + λ23*Ψ3 = 0"), "{out}");
    assert_eq!(run(&["replay-bn", "--factors", "1"]).0, 1);
    let (code, out, _) = run(&["--format", "structured", "replay-oe", "--witness"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["s_in_commutator_subspace"], false);
    assert_eq!(v["witness_search"]["solvable"], true);
    assert_eq!(v["witness_search"]["witness_verified"], true);
    assert_eq!(run(&["replay-oe", "--rank", "3"]).0, 1);
}

#[test]
fn structured_output_is_deterministic() {
    let a = run(&["--format", "structured", "verify", "--suite", "dyadic", "--seed", "7"]);
    let b = run(&["--format", "structured", "verify", "--suite", "dyadic", "--seed", "7"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn unknown_suite_and_help() {
    assert_eq!(run(&["verify", "--suite", "bogus"]).0, 1);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("replay-oe"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_metabelian");
    let ok = Command::new(bin).args(["nf", "[x1,x2]"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["nf", "[x1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
}
