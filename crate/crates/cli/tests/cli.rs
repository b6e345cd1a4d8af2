//! End-to-end tests of the binary: command output, JSON shape, exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratdec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn degree_command() {
    let out = run(&["degree", "x^2 + 1/x^2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "4");
}

#[test]
fn fixgroup_of_reference_function() {
    let out = run(&["fixgroup", "x^2+1/x^2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let units: Vec<&str> = text.lines().collect();
    assert_eq!(units.len(), 4);
    assert!(units.contains(&"x"));
    assert!(units.contains(&"-x"));
}

#[test]
fn compose_associates_left_to_right() {
    let out = run(&["compose", "x^3", "x*(x - 12)/(x - 3)", "x*(x + 6)/(x - 3)"]);
    assert!(out.status.success());
    let printed = stdout(&out);
    let direct = run(&["degree", printed.trim()]);
    assert_eq!(stdout(&direct).trim(), "12");
}

#[test]
fn decompose_complete_degree12() {
    let out = run(&[
        "decompose",
        "--complete",
        "(x^3*(x+6)^3*(x^2-6*x+36)^3)/((x-3)^3*(x^2+3*x+9)^3)",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("length 3"));
    assert!(text.contains("length 2"));
}

#[test]
fn bound_is_36_for_degree4() {
    let out = run(&[
        "bound",
        "(2*x^4 - 2*x^3 - 8*x - 1)/(4*x^4 + 2*x^3 - 16*x + 1)",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "36");
}

#[test]
fn samefield_witness() {
    let out = run(&["samefield", "x^2", "2*x^2+3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1/2*x - 3/2");
}

#[test]
fn classify_c4_over_qi() {
    let out = run(&[
        "--field",
        "Q[i]/(i^2+1)",
        "classify",
        "x",
        "i*x",
        "-x",
        "-i*x",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "C4");
}

#[test]
fn fixfield_of_sign_flip() {
    let out = run(&["fixfield", "x", "-x"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x^2");
}

#[test]
fn json_output_is_deterministic_and_shaped() {
    let a = run(&["--json", "fixgroup", "x^2+1/x^2"]);
    let b = run(&["--json", "fixgroup", "x^2+1/x^2"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let obj = v.as_object().unwrap();
    for key in ["command", "field", "inputs", "result", "witnesses"] {
        assert!(obj.contains_key(key), "missing key {key}");
    }
    assert_eq!(obj["command"], "fixgroup");
    assert_eq!(obj["field"], "Q");
    assert_eq!(obj["result"].as_array().unwrap().len(), 4);
}

#[test]
fn timing_flag_appends_json_field() {
    let out = run(&["--json", "--timing", "degree", "x^3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.as_object().unwrap().contains_key("timing_ms"));
}

#[test]
fn parse_error_exits_2() {
    let out = run(&["degree", "x +"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["degree", "x + y"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_violation_exits_3() {
    // chains requires |G(f)| = deg f; x^4 over Q has |G| = 2
    let out = run(&["chains", "x^4"]);
    assert_eq!(out.status.code(), Some(3));
    // reducible modulus
    let out = run(&["--field", "Q[e]/(e^2-1)", "degree", "x"]);
    assert_eq!(out.status.code(), Some(3));
    // constant input
    let out = run(&["normalform", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_paper_single_case_passes() {
    for id in ["CB-1", "CB-2", "CB-3", "CB-4", "CB-6", "CB-7"] {
        let out = run(&["verify-paper", id]);
        assert!(out.status.success(), "{id} failed:\n{}", stdout(&out));
        assert!(stdout(&out).starts_with(&format!("PASS {id}")));
    }
}

#[test]
fn verify_paper_reports_known_chain_count_defect() {
    // CB-5 carries one deliberately failing check: the reference text lists
    // two complete chains, but the function also equals
    // (x(x+216)^3/(x-27)^3) o x^3, a third inequivalent complete chain.
    let out = run(&["verify-paper", "CB-5"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let failing: Vec<&str> = text.lines().filter(|l| l.contains("[FAIL]")).collect();
    assert_eq!(failing.len(), 1, "exactly one known-failing check:\n{text}");
    assert!(failing[0].contains("exactly two classes"));
}

#[test]
fn verify_paper_all_cases_nonzero_on_failure() {
    let out = run(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    for id in ["CB-1", "CB-2", "CB-3", "CB-4", "CB-6", "CB-7"] {
        assert!(
            text.contains(&format!("PASS {id}")),
            "{id} not passing:\n{text}"
        );
    }
    assert!(text.contains("FAIL CB-5"));
}

#[test]
fn unknown_case_exits_2() {
    let out = run(&["verify-paper", "CB-9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn print_parse_roundtrip_through_cli() {
    // normalform output must reparse: feed each printed function back in
    let out = run(&["normalform", "(x^2+1)/(x-1)"]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let expr = line.split(" = ").nth(1).unwrap();
        let again = run(&["degree", expr]);
        assert!(again.status.success(), "reparse failed for {expr}");
    }
}
