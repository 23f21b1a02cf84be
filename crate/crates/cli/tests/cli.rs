use std::process::{Command, Output};

use serde_json::Value;

const MODELS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/models");
const SUNITS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sunits");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_f2curves"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn model(name: &str) -> String {
    format!("{MODELS}/{name}.model")
}

#[test]
fn zeta_of_the_elliptic_curve() {
    let text = stdout(&["zeta", "--h", "t+2", "--q", "2", "--dmax", "6"]);
    assert!(text.contains("a = [5, 0, 0, 5, 4, 10]\n"), "{text}");

    let v: Value = serde_json::from_str(&stdout(&["zeta", "--h", "t+2", "--dmax", "6", "--json"])).unwrap();
    assert_eq!(v["q"], 2);
    assert_eq!(v["g"], 1);
    assert_eq!(v["h"], serde_json::json!([2, 1]));
    assert_eq!(v["L"], serde_json::json!([1, 2, 2]));
    assert_eq!(v["N"], serde_json::json!([5, 5, 5, 25, 25, 65]));
    assert_eq!(v["a"], serde_json::json!([5, 0, 0, 5, 4, 10]));
}

#[test]
fn enumerate_genus_six_has_three_candidates() {
    let v: Value =
        serde_json::from_str(&stdout(&["enumerate", "--genus", "6", "--points", "10", "--json"])).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    let text = stdout(&["enumerate", "--genus", "6", "--points", "10"]);
    assert!(text.starts_with("genus 6, N_1 = 10: 3 candidates\n"), "{text}");
    assert_eq!(text.matches("excluded:").count(), 1);
}

#[test]
fn count_and_places() {
    assert_eq!(stdout(&["count", "--model", &model("e"), "--n", "4"]), "N_4 = 25\n");
    assert_eq!(stdout(&["count", "--model", &model("c5"), "--n", "1"]), "N_1 = 5\n");
    assert_eq!(stdout(&["places", "--model", &model("c"), "--degree", "2"]), "a_2 = 2\n");
    let text = stdout(&["places", "--model", &model("e"), "--degree", "5", "--coords"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a_5 = 4");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.starts_with("P(b")));
}

#[test]
fn divisor_of_functions() {
    let text = stdout(&["divisor", "--model", &model("c5"), "--function", "y+1"]);
    assert_eq!(text, "div(y+1) = 3*P(0,1) + 2*P(1,1) - 5*P(inf)\ndegree 0\n");
    let text = stdout(&["divisor", "--model", &model("c"), "--function", "x"]);
    assert_eq!(text, "div(x) = 2*P(0,0) - 2*P(inf)\ndegree 0\n");
}

#[test]
fn rayclass_at_infinity_of_genus_two_curve() {
    let text = stdout(&[
        "rayclass",
        "--model",
        &model("c5"),
        "--conductor",
        "4*P(inf)",
        "--split",
        "P(0,0), P(0,1), P(1,0), P(1,1)",
        "--sunits",
        &format!("{SUNITS}/c5-infinity.txt"),
    ]);
    assert!(text.contains("v1 | (y+x^3)/x^3 | (1+t)\n"), "{text}");
    assert!(text.contains("v2 | (y+1)/y | 1\n"), "{text}");
    assert!(text.contains("quotient: Z_2 (order 2)\n"), "{text}");
}

#[test]
fn rayclass_verdicts_at_degree_four_places() {
    let places = stdout(&["places", "--model", &model("e"), "--degree", "4", "--coords"]);
    let list: Vec<&str> = places.lines().skip(1).collect();
    let text = stdout(&[
        "rayclass",
        "--model",
        &model("e"),
        "--conductor",
        "2*P(c,c^4+c^3+c^2+1)",
        "--split",
        "P(inf), P(0,0), P(0,1), P(1,0), P(1,1)",
        "--sunits",
        &format!("{SUNITS}/e-rational.txt"),
        "--verdicts",
        &list.join(", "),
    ]);
    assert!(text.contains("quotient: Z_2 + Z_2 (order 4)\n"), "{text}");
    // each degree 4 place splits in exactly one of the three quadratic
    // subextensions, so none splits in the full quotient
    assert_eq!(text.matches("| inert\n").count(), 5, "{text}");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["zeta", "--h", "t+2", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--model", &model("e")]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_with_one() {
    let out = run(&["zeta", "--h", "2t+1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(run(&["count", "--model", "/nonexistent.model", "--n", "1"]).status.code(), Some(1));
    let out = run(&["divisor", "--model", &model("e"), "--function", "y/0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(&["verify-paper", "--only", "no-such-tag"]).status.code(), Some(1));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["enumerate", "--genus", "4", "--points", "8", "--json"][..],
        &["places", "--model", &model("e"), "--degree", "6", "--coords"][..],
        &["verify-paper", "--only", "rayclass"][..],
        &["verify-paper", "--json", "--only", "split"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}
