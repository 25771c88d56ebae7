use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn scratch(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).expect("scratch file is writable");
    path.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobisim")).args(args).env_remove("COBISIM_CAPS").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn check(left: &str, right: &str, kind: &str, rel: &str, extra: &[&str]) -> Output {
    let (l, r, rel) = (fixture(left), fixture(right), fixture(rel));
    let mut args = vec!["check", &l, &r, "--kind", kind, "--relation", &rel];
    args.extend_from_slice(extra);
    run(&args)
}

fn pairs(json: &str) -> Vec<(String, String)> {
    let v: Value = serde_json::from_str(json).expect("valid json");
    v["pairs"]
        .as_array()
        .expect("pairs array")
        .iter()
        .map(|p| (p[0].as_str().expect("string").to_string(), p[1].as_str().expect("string").to_string()))
        .collect()
}

#[test]
fn separation_instance_is_regular_but_not_am() {
    assert_eq!(code(&check("sep_x.json", "sep_y.json", "am", "sep_r.json", &[])), 1);
    for kind in ["regular", "hj", "behavioural", "toposal"] {
        let out = check("sep_x.json", "sep_y.json", kind, "sep_r.json", &[]);
        assert_eq!(code(&out), 0, "{kind}: {}", stdout(&out));
        assert!(stdout(&out).starts_with(&format!("{kind}: true")));
    }
}

#[test]
fn diagonal_is_a_regular_bisimulation() {
    let out = check("cycle.json", "cycle.json", "regular", "cycle_diag.json", &[]);
    assert_eq!(code(&out), 0);
}

#[test]
fn mismatched_systems_exit_with_incompatible() {
    let out = check("loop.json", "sep_y.json", "regular", "sep_r.json", &[]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error[incompatible]"), "{}", stderr(&out));
    let out = check("loop.json", "pair_upair.json", "behavioural", "cycle_diag.json", &[]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error[incompatible]"), "{}", stderr(&out));
}

#[test]
fn missing_and_malformed_files_are_reported() {
    let out = check("nope.json", "loop.json", "regular", "cycle_diag.json", &[]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error[io]"));
    let bad = scratch("malformed.json", "{ \"format\": 1, ");
    let out = run(&["check", &bad, &fixture("loop.json"), "--kind", "regular", "--relation", &fixture("cycle_diag.json")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error[syntax]"), "{}", stderr(&out));
}

#[test]
fn bisimilarity_of_loop_and_cycle_is_full() {
    let out = run(&["bisimilarity", &fixture("loop.json"), &fixture("cycle.json")]);
    assert_eq!(code(&out), 0);
    let want = vec![("p".to_string(), "s0".to_string()), ("p".to_string(), "s1".to_string())];
    assert_eq!(pairs(&stdout(&out)), want);
    let full = std::fs::read_to_string(fixture("loop_cycle_full.json")).expect("fixture");
    assert_eq!(pairs(&full), want);
}

#[test]
fn bisimilarity_of_disjoint_behaviours_is_empty() {
    let out = run(&["bisimilarity", &fixture("only_a.json"), &fixture("only_b.json")]);
    assert_eq!(code(&out), 0);
    assert!(pairs(&stdout(&out)).is_empty());
}

#[test]
fn self_bisimilarity_contains_the_diagonal_and_round_trips() {
    let cycle = fixture("cycle.json");
    let out = run(&["bisimilarity", &cycle, &cycle]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let got = pairs(&text);
    for s in ["s0", "s1"] {
        assert!(got.contains(&(s.to_string(), s.to_string())));
    }
    let value: Value = serde_json::from_str(&text).expect("valid json");
    assert_eq!(value["dom"], Value::String(cycle.clone()));
    let rel = scratch("cycle_bisimilarity.json", &text);
    let again = run(&["check", &cycle, &cycle, "--kind", "regular", "--relation", &rel]);
    assert_eq!(code(&again), 0);
    assert_eq!(stdout(&run(&["bisimilarity", &cycle, &cycle])), text, "output is canonical and deterministic");
}

#[test]
fn json_reports_are_canonical() {
    let out = check("sep_x.json", "sep_y.json", "hj", "sep_r.json", &["--json"]);
    let text = stdout(&out);
    let value: Value = serde_json::from_str(&text).expect("valid json");
    let reprinted = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
    assert_eq!(text.trim_end(), reprinted.trim_end());
    let keys: Vec<&String> = value.as_object().expect("object").keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn witnesses_reverify() {
    for (kind, name) in [("regular", "reg"), ("hj", "hj"), ("behavioural", "beh"), ("toposal", "top")] {
        let out = check("sep_x.json", "sep_y.json", kind, "sep_r.json", &["--json"]);
        assert_eq!(code(&out), 0);
        let report = scratch(&format!("sep_{name}_report.json"), &stdout(&out));
        let v = run(&["verify-witness", &fixture("sep_x.json"), &fixture("sep_y.json"), "--relation", &fixture("sep_r.json"), "--report", &report]);
        assert_eq!(code(&v), 0, "{kind}: {}{}", stdout(&v), stderr(&v));
        assert!(stdout(&v).starts_with("verified"));
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let out = check("sep_x.json", "sep_y.json", "regular", "sep_r.json", &["--json"]);
    let mut report: Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let pairs = report["witness"]["relation"]["pairs"].as_array_mut().expect("witness pairs");
    pairs.retain(|p| p[1] != "(x,y)");
    let path = scratch("sep_tampered_report.json", &serde_json::to_string(&report).expect("serializable"));
    let v = run(&["verify-witness", &fixture("sep_x.json"), &fixture("sep_y.json"), "--relation", &fixture("sep_r.json"), "--report", &path]);
    assert_eq!(code(&v), 1, "{}{}", stdout(&v), stderr(&v));
    assert!(stdout(&v).starts_with("rejected"));
}

#[test]
fn simulation_of_two_branches_by_one() {
    let out = check("two_branch.json", "one_branch.json", "simulation", "two_one_sim.json", &[]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = check("two_branch.json", "one_branch.json", "toposal-simulation", "two_one_sim.json", &["--json"]);
    assert_eq!(code(&out), 0);
    let report = scratch("two_one_report.json", &stdout(&out));
    let v = run(&[
        "verify-witness",
        &fixture("two_branch.json"),
        &fixture("one_branch.json"),
        "--relation",
        &fixture("two_one_sim.json"),
        "--report",
        &report,
    ]);
    assert_eq!(code(&v), 0, "{}{}", stdout(&v), stderr(&v));
    let sim = run(&["similarity", &fixture("two_branch.json"), &fixture("one_branch.json")]);
    assert_eq!(code(&sim), 0);
    let largest = pairs(&stdout(&sim));
    let given = pairs(&std::fs::read_to_string(fixture("two_one_sim.json")).expect("fixture"));
    assert!(given.iter().all(|p| largest.contains(p)), "similarity contains every simulation");
    let reverse = run(&["similarity", &fixture("one_branch.json"), &fixture("two_branch.json")]);
    assert!(!pairs(&stdout(&reverse)).contains(&("p0".to_string(), "q0".to_string())));
}

#[test]
fn unknown_order_is_invalid() {
    let out = check("two_branch.json", "one_branch.json", "simulation", "two_one_sim.json", &["--order", "bogus"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error[invalid]"));
}

#[test]
fn weighted_automata() {
    assert_eq!(code(&check("wa_1.json", "wa_2.json", "regular", "wa_rel.json", &[])), 0);
    assert_eq!(code(&check("wa_1.json", "wa_2.json", "hj", "wa_bad_rel.json", &[])), 1);
    let out = check("wa_1.json", "wa_2.json", "toposal", "wa_rel.json", &[]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error[capability]"));
    let out = run(&["similarity", &fixture("wa_1.json"), &fixture("wa_2.json")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error[capability]"));
    let out = check("wa_1.json", "wa_2.json", "hj", "wa_rel.json", &["--json"]);
    assert_eq!(code(&out), 0);
    let report = scratch("wa_hj_report.json", &stdout(&out));
    let v = run(&["verify-witness", &fixture("wa_1.json"), &fixture("wa_2.json"), "--relation", &fixture("wa_rel.json"), "--report", &report]);
    assert_eq!(code(&v), 0, "{}{}", stdout(&v), stderr(&v));
    let out = run(&["bisimilarity", &fixture("wa_1.json"), &fixture("wa_2.json")]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["basis"].as_array().expect("basis").len(), 2);
}

#[test]
fn laws_are_deterministic_per_seed() {
    let args = ["laws", "--suite", "allegory", "--backend", "finset", "--seed", "7", "--trials", "20", "--json"];
    let first = run(&args);
    assert_eq!(code(&first), 0, "{}", stdout(&first));
    assert_eq!(stdout(&first), stdout(&run(&args)));
    let v: Value = serde_json::from_str(&stdout(&first)).expect("valid json");
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["reports"][0]["seed"], 7);
}

#[test]
fn caps_come_from_env_and_flags() {
    let base = ["laws", "--suite", "maps", "--backend", "finset", "--trials", "5", "--json"];
    let with_env = Command::new(env!("CARGO_BIN_EXE_cobisim")).args(base).env("COBISIM_CAPS", "states=3,labels=1").output().expect("runs");
    assert_eq!(code(&with_env), 0);
    let v: Value = serde_json::from_str(&stdout(&with_env)).expect("valid json");
    assert_eq!(v["caps"]["states"], 3);
    assert_eq!(v["caps"]["labels"], 1);
    let mut args = base.to_vec();
    args.extend(["--max-states", "2"]);
    let flagged = Command::new(env!("CARGO_BIN_EXE_cobisim")).args(&args).env("COBISIM_CAPS", "states=3").output().expect("runs");
    let v: Value = serde_json::from_str(&stdout(&flagged)).expect("valid json");
    assert_eq!(v["caps"]["states"], 2, "flags override the environment");
    let bad = run(&["laws", "--caps", "states=many"]);
    assert_eq!(code(&bad), 2);
    assert!(stderr(&bad).contains("error[invalid]"));
}

#[test]
fn suites_refuse_unsupported_backends() {
    let out = run(&["laws", "--suite", "monad", "--backend", "vect"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error[capability]"));
    let out = run(&["laws", "--suite", "nonsense"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn distributive_suite_exhibits_the_full_law_failure() {
    let out = run(&["laws", "--suite", "distributive", "--seed", "1", "--trials", "40"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("exhibit for"), "{}", stdout(&out));
}
