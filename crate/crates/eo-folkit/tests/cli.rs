//! End-to-end tests of the eofol binary: exit codes, JSON round-trips,
//! DOT well-formedness, and determinism of the verification suite.

use std::process::{Command, Output};

use eo_folkit::report;

fn eofol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eofol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn strata_dot_is_well_formed() {
    let out = eofol(&["strata", "--n", "4", "--m", "2", "--format", "dot"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches('{').count(), dot.matches('}').count());
    assert_eq!(dot.matches("\" -> \"").count(), 21);
    // every node name is quoted
    for line in dot.lines().filter(|l| l.contains("label=")) {
        assert!(line.trim_start().starts_with('"'));
    }
    // 9 distinct lengths, one rank group each
    assert_eq!(dot.matches("rank=same").count(), 9);
}

#[test]
fn strata_json_round_trips() {
    let out = eofol(&["strata", "--n", "3", "--m", "2", "--format", "json"]);
    assert!(out.status.success());
    let rep: report::StrataReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rep.schema, report::SCHEMA);
    assert_eq!(rep.strata.len(), 10);
    let again = serde_json::to_string(&rep).unwrap();
    let back: report::StrataReport = serde_json::from_str(&again).unwrap();
    assert_eq!(rep, back);
}

#[test]
fn stratum_report_values() {
    let out = eofol(&[
        "stratum", "--n", "4", "--m", "2", "--w", "125634", "--format", "json",
    ]);
    assert!(out.status.success());
    let rep: report::StratumReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rep.length, 4);
    assert!(rep.in_s_sharp && rep.is_fol && !rep.is_ordinary);
    assert_eq!(rep.fiber_dim, 0);
}

#[test]
fn dieudonne_json_round_trips() {
    let out = eofol(&[
        "dieudonne", "--n", "4", "--m", "2", "--p", "3", "--format", "json",
    ]);
    assert!(out.status.success());
    let rep: report::DieudonneReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(rep.hasse_is_zero);
    assert_eq!(rep.kernel_v.e, vec![1, 2, 3, 4]);
    assert_eq!(rep.vq_image.e, vec![1, 2]);
}

#[test]
fn canfilt_json_round_trips() {
    let out = eofol(&[
        "canfilt", "--n", "5", "--m", "4", "--p", "3", "--format", "json",
    ]);
    assert!(out.status.success());
    let rep: report::CanfiltReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rep.r, 3);
    assert_eq!((rep.result_a, rep.result_b), (8, 7));
    assert_eq!(rep.trace.len(), 4 * rep.r + 2);
}

#[test]
fn deform_json_round_trips() {
    let out = eofol(&[
        "deform", "--n", "3", "--m", "2", "--p", "3", "--format", "json",
    ]);
    assert!(out.status.success());
    let rep: report::DeformReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rep.ideal, vec!["u_1_1", "u_1_2"]);
    assert_eq!((rep.total_dim, rep.foliation_dim, rep.fiber_dim), (6, 4, 0));
}

#[test]
fn count_json_matches_known_values() {
    let out = eofol(&[
        "count", "--p", "3", "--n", "2", "--m", "1", "--oracle", "--format", "json",
    ]);
    assert!(out.status.success());
    let rep: report::CountReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rep.closed_form, "27");
    assert_eq!(rep.brute_force.as_deref(), Some("27"));
    assert_eq!(rep.oracle.as_deref(), Some("27"));
    assert_eq!(rep.degrees.pi_et, "27");
}

#[test]
fn derivation_demo_passes() {
    let out = eofol(&["derivation-demo", "--p", "5", "--format", "json"]);
    assert!(out.status.success());
    let rep: report::DerivationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.degree_bound, 10);
}

#[test]
fn usage_errors_exit_2() {
    // m >= n
    let out = eofol(&["strata", "--n", "2", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown subcommand
    let out = eofol(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // r undefined when 2m <= n
    let out = eofol(&["canfilt", "--n", "4", "--m", "2", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // not a prime
    let out = eofol(&["count", "--p", "9", "--n", "2", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // not a shuffle
    let out = eofol(&["stratum", "--n", "4", "--m", "2", "--w", "654321"]);
    assert_eq!(out.status.code(), Some(2));
    // guard exceeded reports the needed size
    let out = eofol(&[
        "count", "--p", "3", "--n", "3", "--m", "2", "--guard", "100",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("531441"));
}

#[test]
fn verify_is_deterministic_and_green() {
    let run1 = eofol(&["verify", "--max-nm", "5", "--p", "3"]);
    let run2 = eofol(&["verify", "--max-nm", "5", "--p", "3"]);
    assert!(run1.status.success());
    assert_eq!(run1.stdout, run2.stdout);
    let text = stdout(&run1);
    assert!(text.contains("OK:"));
    assert!(!text.contains("FAIL "));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join("eofol-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("strata.json");
    let out = eofol(&[
        "strata",
        "--n",
        "2",
        "--m",
        "1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    let rep: report::StrataReport = serde_json::from_str(&contents).unwrap();
    assert_eq!(rep.strata.len(), 3);
    std::fs::remove_file(&path).ok();
}
