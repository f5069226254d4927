use std::process::{Command, Output};

use serde_json::Value;

fn tbtop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbtop")).args(args).env_remove("TBTOP_BUDGET").output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = tbtop(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

const EVENS: &str = r#"{"kind":"basisDirectSum","ambient":{"kind":"constant","order":[2,1]},"support":{"kind":"affine","slope":2,"offset":0,"value":1},"S":{"kind":"residue","modulus":2,"residues":[1]}}"#;
const EVEN_CHAR: &str = r#"{"kind":"sum","ambient":{"kind":"constant","order":[2,1]},"index_set":{"kind":"finite","members":[0,2,4,6,8,10]}}"#;

#[test]
fn certify_factorial_example() {
    let r = report(&["certify", "--theorem", "5.2", "--p", "2", "--digits", "const:1", "--index-set", "fac:all", "--n-max", "7", "--json"]);
    assert_eq!(r["command"], "certify");
    let out = &r["outputs"];
    assert_eq!(out["verdict"], "certified");
    assert_eq!(out["theorem"], "T52_subsetFac");
    let ns: Vec<u64> = out["values"].as_array().unwrap().iter().map(|v| v["n"].as_u64().unwrap()).collect();
    assert_eq!(ns, vec![3, 4, 5, 6, 7]);
    assert_eq!(out["values"][0]["value"], "3/32");
    assert_eq!(out["values"][0]["bound"], "3/8");
}

#[test]
fn separate_example() {
    let r = report(&["separate", "--ambient", "dsum2", "--x", r#"{"5":[1,2]}"#, "--y", "{}", "--json"]);
    let ch = &r["outputs"]["character"];
    assert_eq!(ch["kind"], "sum");
    assert_eq!(ch["index_set"]["members"], serde_json::json!([5]));
    assert_eq!(r["outputs"]["left"], "1/2");
}

#[test]
fn snf_example() {
    let r = report(&["snf", "--matrix", "[[2,4],[6,8]]", "--json"]);
    assert_eq!(r["outputs"]["diagonal"], serde_json::json!(["2", "4"]));
    assert_eq!(r["outputs"]["d"], serde_json::json!([["2", "0"], ["0", "4"]]));
    let text = String::from_utf8(tbtop(&["snf", "--matrix", r#"[["2","4"],["6","8"]]"#]).stdout).unwrap();
    assert!(text.starts_with("D = diag(2, 4)"), "{text}");
}

#[test]
fn malformed_input_names_the_field() {
    for (args, field) in [
        (vec!["snf", "--matrix", "[[1,x]]"], "--matrix"),
        (vec!["certify", "--theorem", "5.2", "--p", "4", "--digits", "const:1", "--index-set", "fac:all"], "--digits"),
        (vec!["certify", "--theorem", "5.2", "--p", "2", "--digits", "const:1", "--index-set", "fac:some"], "--index-set"),
        (vec!["certify", "--theorem", "5.2", "--p", "2", "--digits", "const:1", "--index-set", "fac:all", "--n-max", "12"], "--n-max"),
        (vec!["separate", "--ambient", "dsum2", "--x", r#"{"5":[1,3]}"#, "--y", "{}"], "--x"),
        (vec!["separate", "--ambient", "dsum2", "--x", "{}", "--y", "{}"], "--y"),
        (vec!["extend", "--group", "2,4", "--chi", r#"[[[0,2],"1/3"]]"#], "--chi"),
        (vec!["certify", "--theorem", "6.1"], "--theorem"),
    ] {
        let out = tbtop(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(field), "{args:?}: {err}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn refuted_scan_exits_2() {
    let out = tbtop(&["certify", "--theorem", "scan", "--character", EVEN_CHAR, "--sequence", EVENS, "--n-max", "4", "--threshold", "0:1/4", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["outputs"]["verdict"], "refuted");
    assert_eq!(r["outputs"]["counterexample"], 0);
}

#[test]
fn evidence_only_exit_depends_on_flag() {
    let base = ["certify", "--theorem", "scan", "--character", EVEN_CHAR, "--sequence", EVENS, "--n-max", "4"];
    assert_eq!(tbtop(&base).status.code(), Some(0));
    let mut strict = base.to_vec();
    strict.push("--require-certified");
    assert_eq!(tbtop(&strict).status.code(), Some(3));
}

#[test]
fn certified_basis_certificate_ignores_require_flag() {
    let r = report(&["certify", "--theorem", "5.1", "--sequence", EVENS, "--index-set", "finite:0,2,4", "--require-certified", "--json"]);
    let out = &r["outputs"];
    assert_eq!(out["verdict"], "certified");
    assert_eq!(out["theorem"], "T51_finite");
    assert_eq!(out["tail_start"], 3);
}

#[test]
fn combination_of_certificates() {
    let r = report(&[
        "certify", "--theorem", "comb", "--p", "3", "--digits", "alt:1,2", "--index-set", "fac:all", "--index-set", "finite:1,6",
        "--coeffs", "2,-3", "--n-max", "5", "--json",
    ]);
    assert_eq!(r["outputs"]["theorem"], "combination");
    assert_eq!(r["outputs"]["verdict"], "certified");
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["thm17", "--group", "2,4", "--h", "[[0,2]]", "--json"];
    assert_eq!(tbtop(&args).stdout, tbtop(&args).stdout);
    let r = report(&args);
    assert_eq!(r["inputs"]["budget"], 4096);
    assert_eq!(r["outputs"]["count"], 3);
}

#[test]
fn budget_env_is_enforced() {
    let out = Command::new(env!("CARGO_BIN_EXE_tbtop"))
        .args(["subgroups", "--group", "4,4"])
        .env("TBTOP_BUDGET", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn finite_lab_commands() {
    let q = report(&["quotient", "--relations", "[[2,4],[6,8]]", "--p", "2", "--json"]);
    assert_eq!(q["outputs"]["ranks"]["total"], 2);
    let s = report(&["subgroups", "--group", "2,4", "--json"]);
    assert_eq!(s["outputs"]["count"], 7);
    let e = report(&["extend", "--group", "2,4", "--chi", r#"[[[0,2],"1/2"]]"#, "--json"]);
    assert_eq!(e["outputs"]["lift_count"], 4);
    assert_eq!(e["outputs"]["index"], 4);
    let d = report(&["dualcheck", "--group", "2,4", "--characters", r#"[["1/2","0"]]"#, "--json"]);
    assert_eq!(d["outputs"]["separates"], false);
    assert_eq!(d["outputs"]["equals_dual"], false);
}

#[test]
fn point_commands() {
    let r = report(&["separate", "--ambient", "pruefer:3", "--x", "2/9", "--y", "1/3", "--json"]);
    assert_ne!(r["outputs"]["left"], r["outputs"]["right"]);
    let r = report(&["separate", "--ambient", "int", "--x", "12", "--y", "0", "--json"]);
    assert_eq!(r["outputs"]["character"]["kind"], "rotation");
    let r = report(&["distinguish", "--ambient", "dsum2", "--h", "finite:1,3", "--h2", "finite:1", "--json"]);
    assert_eq!(r["outputs"]["index"], 3);
    let r = report(&["eval", "--character", EVEN_CHAR, "--element", r#"{"kind":"dsum","orders":{"kind":"constant","order":[2,1]},"support":{"2":[1,2],"4":[1,2]}}"#, "--json"]);
    assert_eq!(r["outputs"]["value"]["kind"], "exact");
}

#[test]
fn generate_and_validate() {
    let g = report(&["generate", "--p", "2", "--digits", "const:1", "--count", "4", "--json"]);
    assert_eq!(g["outputs"]["terms"].as_array().unwrap().len(), 4);
    let v = report(&["validate", "--conditions", "5.1", "--sequence", EVENS, "--json"]);
    assert_eq!(v["outputs"]["structural"], true);
    let v = report(&["validate", "--conditions", "growth", "--sequence", r#"{"kind":"integerGrowth","rule":{"kind":"power","base":2}}"#, "--json"]);
    assert_eq!(v["outputs"]["raczkowski"], false);
}
