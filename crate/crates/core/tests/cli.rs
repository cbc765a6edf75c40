//! Exit-code and output contract of the command-line binary.

use std::path::Path;
use std::process::{Command, Output};

fn monolat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monolat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

#[test]
fn translate_matches_the_star_map() {
    let out = monolat(&["translate", "--to-modal", "A x P0(x)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "□p0");

    let out = monolat(&["translate", "--to-fo", "box p0 -> dia p1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "∀x P0(x) → ∃x P1(x)");
}

#[test]
fn prove_exit_codes_partition_the_outcomes() {
    assert_eq!(monolat(&["prove", "--calc", "fle", "P0(x) |- P0(x)"]).status.code(), Some(0));
    assert_eq!(
        monolat(&["prove", "--calc", "fle", "P0(x) |- P0(x) * P0(x)"]).status.code(),
        Some(1)
    );
    assert_eq!(
        monolat(&[
            "prove",
            "--calc",
            "flec",
            "--contraction-budget",
            "0",
            "P0(x) |- P0(x) * P0(x)"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(monolat(&["prove", "garbage"]).status.code(), Some(3));
}

#[test]
fn prove_json_output_contains_the_derivation() {
    let out = monolat(&["prove", "--json", "--calc", "flec", "P0(x) |- P0(x) * P0(x)"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outcome"], "derivable");
    assert!(v["derivation"]["rule"].is_object() || v["derivation"]["rule"].is_string());
}

#[test]
fn interpolate_reports_the_guarded_interpolant() {
    let out = monolat(&["interpolate", "--gamma", "0", "A x P0(x) |- P0(x1)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("interpolant: e · ∀x P0(x)"), "{}", stdout(&out));
}

#[test]
fn check_algebra_refutes_the_distribution_equation() {
    let l3 = fixture("l3.json");
    let out = monolat(&["check-algebra", &l3, "--m-axioms", "--fle", "plain"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out =
        monolat(&["check-algebra", &l3, "--equation", "dia p0 * dia p0 = dia (p0 * p0)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("lhs = 2, rhs = 0"), "{}", stdout(&out));

    let out = monolat(&["check-algebra", &l3, "--fle", "c"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn consequence_over_generated_batteries() {
    let holds = monolat(&["consequence", "--mode", "fo", "--gen", "chains:3", "A x P0(x) <= P0(x)"]);
    assert_eq!(holds.status.code(), Some(0), "{}", stdout(&holds));

    let refuted =
        monolat(&["countermodel", "--mode", "fo", "--gen", "lattices:2", "P0(x) <= A x P0(x)"]);
    assert_eq!(refuted.status.code(), Some(1), "{}", stdout(&refuted));

    let eq = monolat(&[
        "consequence",
        "--mode",
        "eq",
        "--gen",
        "chains:2",
        "--jobs",
        "2",
        "box p0 ≈ box box p0",
    ]);
    assert_eq!(eq.status.code(), Some(0), "{}", stdout(&eq));
}

#[test]
fn machine_output_roundtrips_through_serde() {
    let out = monolat(&[
        "consequence",
        "--json",
        "--mode",
        "eq",
        "--gen",
        "chains:2",
        "box p0 ≈ box (p0 /\\ p1)",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let verdict: monolat::algebra::ConsequenceVerdict =
        serde_json::from_value(v["verdict"].clone()).unwrap();
    assert!(matches!(verdict, monolat::algebra::ConsequenceVerdict::Fails(_)));
}

#[test]
fn usage_errors_exit_with_three() {
    assert_eq!(monolat(&["prove"]).status.code(), Some(3));
    assert_eq!(monolat(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(monolat(&["consequence", "--mode", "eq", "p0 ≈ p0"]).status.code(), Some(3));
    assert_eq!(monolat(&["--help"]).status.code(), Some(0));
}
