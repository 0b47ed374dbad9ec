use std::process::{Command, Output};

use serde_json::Value;
use zslab::invariants::{DenseSet, SolveResult, WidenessReport};
use zslab::verify::{CheckReport, CheckStatus};
use zslab::Rational;

fn zslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zslab"))
        .args(args)
        .env_remove("ZSLAB_GROUP_CAP")
        .output()
        .expect("binary runs")
}

fn payloads(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

fn single(out: &Output, key: &str) -> Value {
    let mut p = payloads(out);
    assert_eq!(p.len(), 1);
    let p = p.remove(0);
    assert!(p["config"]["group_cap"].is_u64(), "config echoed");
    p[key].clone()
}

fn solve(args: &[&str]) -> SolveResult {
    let out = zslab(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_value(single(&out, "result")).expect("payload re-parses")
}

fn report(args: &[&str]) -> (i32, CheckReport) {
    let out = zslab(args);
    let r = serde_json::from_value(single(&out, "report")).expect("payload re-parses");
    (out.status.code().unwrap(), r)
}

#[test]
fn invariant_examples() {
    let r = solve(&["invariant", "--group", "2,3", "--which", "K1"]);
    assert_eq!(r.value, Rational::integer(2));
    let r = solve(&["invariant", "--group", "1", "--which", "D"]);
    assert_eq!(r.value, Rational::zero());
    assert!(r.witness.is_empty());
    let r = solve(&["invariant", "--group", "4,3", "--which", "k"]);
    assert_eq!(r.value, Rational::new(17, 12));
    let r = solve(&[
        "invariant",
        "--group",
        "6",
        "--which",
        "k",
        "--weight",
        "dyadic",
        "--threads",
        "4",
    ]);
    assert_eq!(r.value, Rational::integer(1));
}

#[test]
fn rationals_are_integer_pairs() {
    let out = zslab(&["invariant", "--group", "4,3", "--which", "k"]);
    let v = single(&out, "result")["value"].clone();
    assert_eq!(v, serde_json::json!({"num": 17, "den": 12}));
}

#[test]
fn formula_examples() {
    for (g, which, want) in [
        ("4,3", "K1star", Rational::new(5, 2)),
        ("4,3", "kstar", Rational::new(17, 12)),
        ("2,2", "Kstar", Rational::new(3, 2)),
    ] {
        let out = zslab(&["formula", "--group", g, "--which", which]);
        assert_eq!(out.status.code(), Some(0));
        let v: Rational = serde_json::from_value(single(&out, "result")["value"].clone()).unwrap();
        assert_eq!(v, want, "{which}({g})");
    }
}

#[test]
fn wide_examples() {
    let out = zslab(&["wide", "--p", "2", "--n", "15", "--two"]);
    let r: WidenessReport = serde_json::from_value(single(&out, "result")).unwrap();
    assert!(!r.holds);
    assert_eq!(r.rhs, Rational::new(8, 5));
    let out = zslab(&["wide", "--n", "30"]);
    assert_eq!(single(&out, "result")["holds"], true);
    let out = zslab(&["wide", "--p", "4", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_examples() {
    let (code, r) = report(&["verify", "--check", "gao_n1", "--p", "3", "--n", "2"]);
    assert_eq!((code, r.status), (0, CheckStatus::Pass));
    assert_eq!(r.value_lhs, Some(Rational::integer(6)));

    let (code, r) = report(&[
        "verify",
        "--check",
        "additivity_K1",
        "--p",
        "2",
        "--alpha",
        "1",
        "--group",
        "3",
    ]);
    assert_eq!((code, r.status), (0, CheckStatus::Pass));
    assert_eq!(r.value_lhs, Some(Rational::integer(2)));

    let (code, r) = report(&[
        "verify",
        "--check",
        "conj5",
        "--p",
        "2",
        "--k",
        "3",
        "--len-cap",
        "6",
    ]);
    assert_eq!((code, r.status), (0, CheckStatus::Pass));
    assert_eq!(r.details["exhaustive"]["complete"], true);

    let (code, r) = report(&["verify", "--check", "toplift", "--p", "2", "--alphas", "2,1"]);
    assert_eq!((code, r.status), (0, CheckStatus::Pass));
}

#[test]
fn failing_check_exits_nonzero_with_its_report() {
    let (code, r) = report(&[
        "verify",
        "--check",
        "conj6",
        "--p",
        "5",
        "--k",
        "2",
        "--len-cap",
        "4",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r.status, CheckStatus::Fail);
    assert_eq!(r.witnesses[0].sequence.length(), 4);
}

#[test]
fn dense_all_round_trips() {
    let out = zslab(&["dense", "--group", "4", "--kind", "zsf", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let d: DenseSet = serde_json::from_value(single(&out, "result")).unwrap();
    assert_eq!(d.length, 2);
    assert_eq!(d.witnesses.len(), 2);
    assert_eq!(d.value, Rational::new(3, 4));
}

#[test]
fn exit_codes() {
    let over = zslab(&["invariant", "--group", "11,7", "--which", "k"]);
    assert_eq!(over.status.code(), Some(2));
    assert!(over.stdout.is_empty());
    assert!(!over.stderr.is_empty());

    let capped = Command::new(env!("CARGO_BIN_EXE_zslab"))
        .args(["invariant", "--group", "6", "--which", "k"])
        .env("ZSLAB_GROUP_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));

    // The flag wins over the environment.
    let raised = Command::new(env!("CARGO_BIN_EXE_zslab"))
        .args(["invariant", "--group", "6", "--which", "k", "--group-cap", "8"])
        .env("ZSLAB_GROUP_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(raised.status.code(), Some(0));

    for bad in [
        vec!["invariant", "--group", "x", "--which", "k"],
        vec!["invariant", "--group", "6", "--which", "D", "--weight", "dyadic"],
        vec!["verify", "--check", "nope"],
        vec!["verify", "--check", "gao_n1", "--p", "3"],
        vec![
            "verify",
            "--check",
            "amalgamation",
            "--group",
            "2,2",
            "--ell",
            "2",
            "--kind",
            "zsf",
        ],
        vec!["invariant", "--group", "6", "--which", "k", "--group-cap", "0"],
        vec!["frobnicate"],
    ] {
        let out = zslab(&bad);
        assert_eq!(out.status.code(), Some(1), "{bad:?}");
        assert!(out.stdout.is_empty(), "{bad:?}");
    }
    assert_eq!(zslab(&["--help"]).status.code(), Some(0));
}

#[test]
fn csv_and_table_echo_config() {
    let out = zslab(&[
        "invariant",
        "--group",
        "4,3",
        "--which",
        "k",
        "--output",
        "csv",
        "--seed",
        "9",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(header.contains(&"value") && header.contains(&"group_cap") && header.contains(&"seed"));
    let row = lines.next().unwrap();
    assert!(row.contains("17/12") && row.ends_with(",9"), "{row}");

    let out = zslab(&[
        "formula", "--group", "2,2", "--which", "Kstar", "--output", "table",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("group"));
    assert!(text.contains("3/2"));
}

#[test]
fn suite_has_no_release_blockers() {
    let out = zslab(&["suite", "--threads", "2"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let reports: Vec<CheckReport> = payloads(&out)
        .into_iter()
        .map(|p| serde_json::from_value(p["report"].clone()).unwrap())
        .collect();
    assert!(reports.len() > 100);
    assert!(reports.iter().all(|r| !r.is_release_blocker()));
    // The preserved conjecture counterexamples show up as ordinary fails.
    assert!(reports.iter().any(|r| r.check_id == "conj6" && r.failed()));
}
