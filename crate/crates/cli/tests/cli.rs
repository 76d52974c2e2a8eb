//! End-to-end checks of the binary: catalog outputs, byte-level determinism,
//! payload handling, and error objects.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_iwagr"));
    cmd.args(args);
    cmd.stdin(Stdio::piped());
    cmd.stdout(Stdio::piped());
    cmd.stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary runs")
}

fn json_of(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn gr_measure_reports_exact_and_empirical() {
    let out = run(
        &["--p", "2", "--seed", "11", "--samples", "2000", "gr-measure", "--d", "2", "--i", "1", "--n", "1"],
        None,
    );
    let report = json_of(&out);
    assert_eq!(report["exact"], "1/3");
    assert_eq!(report["classes"], "3");
    assert_eq!(report["config"]["seed"], 11);
    let hits = report["empirical"]["hits"].as_u64().unwrap();
    assert!((500..900).contains(&hits), "hits = {hits}");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = [
        "--p", "3", "--seed", "5", "--samples", "500", "gr-sample", "--d", "3", "--i", "1",
    ];
    let first = run(&args, None);
    let second = run(&args, None);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn weierstrass_catalog_output() {
    let out = run(&["--p", "3", "weierstrass", "--f", "9+3T"], None);
    let report = json_of(&out);
    assert_eq!(report["mu"], 1);
    assert_eq!(report["lambda"], 1);
    assert_eq!(report["distinguished"], serde_json::json!([3, 1]));
}

#[test]
fn fukuda_flags_and_csv_agree() {
    let flags = run(&["--p", "3", "fukuda", "--s", "1", "--n0", "0", "--e", "0,1,2"], None);
    let report = json_of(&flags);
    assert_eq!(report["conclusive"], true);
    assert_eq!(report["rank"], 1);
    assert_eq!(report["witness"], 0);
    assert_eq!(report["radius"], 1);

    let csv = "n,e_n\n0,0\n1,1\n2,2\n";
    let from_csv = run(&["--p", "3", "fukuda", "--s", "1"], Some(csv));
    let csv_report = json_of(&from_csv);
    assert_eq!(csv_report["conclusive"], report["conclusive"]);
    assert_eq!(csv_report["rank"], report["rank"]);
    assert_eq!(csv_report["radius"], report["radius"]);
}

#[test]
fn fukuda_json_payload() {
    let payload = r#"{"p": 2, "n0": 0, "s": 0, "e": [3, 3, 3]}"#;
    let out = run(&["fukuda"], Some(payload));
    let report = json_of(&out);
    assert_eq!(report["conclusive"], true);
    assert_eq!(report["rank"], 0);
    assert_eq!(report["p"], 2);
}

#[test]
fn dagger_subcommand_catalog() {
    let out = run(&["--p", "3", "dagger", "--f", "T"], None);
    let report = json_of(&out);
    assert_eq!(report["dagger_pseudo_null"], true);
    assert_eq!(report["prime_to_higher_cyclotomic"], true);

    let out = run(&["--p", "3", "dagger", "--f", "T+3"], None);
    let report = json_of(&out);
    assert_eq!(report["dagger_pseudo_null"], false);
    assert_eq!(report["prime_to_higher_cyclotomic"], true);
}

#[test]
fn salpha_membership_catalog() {
    let out = run(&["--p", "3", "salpha-membership", "--ideal", "p,T1", "--alpha", "0"], None);
    assert_eq!(json_of(&out)["member"], true);
    let out = run(&["--p", "3", "salpha-membership", "--ideal", "p,T2", "--alpha", "0"], None);
    assert_eq!(json_of(&out)["member"], false);
}

#[test]
fn descend_routes_agree() {
    // f = T_1 - 3 at p = 3
    let payload = r#"{"p": 3, "a": 8, "d": 2, "D": 12,
        "terms": [{"exp": [1, 0], "c": 1}, {"exp": [0, 0], "c": 6558}]}"#;
    let out = run(&["--p", "3", "descend", "--alpha", "1"], Some(payload));
    let report = json_of(&out);
    assert_eq!(report["routes_agree"], true);
    assert_eq!(report["char_ideal"]["mu"], 0);
    assert_eq!(report["char_ideal"]["lambda"], 1);
}

#[test]
fn generic_rank_over_a_family_payload() {
    let payload = r#"{"d": 3, "p": 3, "a": 8, "i": 2,
        "L": [[1, 0, 0, 1, 0, 0]]}"#;
    let out = run(
        &["--p", "3", "--seed", "3", "--samples", "400", "generic-rank"],
        Some(payload),
    );
    let report = json_of(&out);
    assert_eq!(report["report"]["certificate_used"], true);
    assert!(report["report"]["failures"].as_u64().unwrap() <= 2);
}

#[test]
fn s_invariant_profile_and_inertia() {
    let profile = r#"{"profile": {"class": "imaginary_quadratic", "degree": 2,
        "r2": 1, "primes": [{"e": 1, "f": 1}, {"e": 1, "f": 1}], "delta": 0}}"#;
    let out = run(&["--p", "3", "s-invariant"], Some(profile));
    let report = json_of(&out);
    assert_eq!(report["s"], 1);
    assert_eq!(report["d"], 2);
    assert_eq!(report["source"], "catalog");

    let inertia = r#"{"inertia": {"d": 2, "p": 3, "a": 6, "i": 1,
        "L": [[1, 0], [0, 1]]}}"#;
    let out = run(&["--p", "3", "s-invariant", "--level", "1"], Some(inertia));
    let report = json_of(&out);
    assert_eq!(report["s"], 1);
    assert_eq!(report["source"], "enumeration");
    assert_eq!(report["s_report"]["stable_at_next_level"], true);
}

#[test]
fn ci_mode_requires_a_seed() {
    let out = run(&["--ci", "--p", "2", "gr-sample", "--d", "2", "--i", "1"], None);
    assert!(!out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["error"]["kind"], "invalid-input");
}

#[test]
fn errors_are_machine_readable() {
    let out = run(&["--p", "4", "weierstrass", "--f", "T"], None);
    assert!(!out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["error"]["kind"], "not-prime");

    let out = run(&["--p", "3", "salpha-membership", "--ideal", "q", "--alpha", "0"], None);
    assert!(!out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["error"]["kind"], "unsupported-ideal");
}

#[test]
fn text_format_renders_key_value_lines() {
    let out = run(
        &["--p", "3", "--format", "text", "weierstrass", "--f", "9+3T"],
        None,
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("mu: 1"));
    assert!(text.contains("lambda: 1"));
}
