use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_rigidkit")).args(args).output().expect("spawn");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), report)
}

fn tmp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("rigidkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn rigidity_of_s3() {
    let (code, r) = run(&["rigidity", "--group", "sym:3", "--relative-to", "aut"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["results"]["rigid"], true);
    assert_eq!(r["claims"][0]["pass"], true);
}

#[test]
fn z4_is_not_rigid() {
    let (code, r) = run(&["rigidity", "--group", "cyclic:4"]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["classes"], 2);
}

#[test]
fn field_and_linear_actions() {
    let (code, r) = run(&["rigidity", "--group", "add:1:8", "--relative-to", "units"]);
    assert_eq!((code, &r["results"]["rigid"]), (0, &Value::Bool(true)));
    let (code, _) = run(&["rigidity", "--group", "add:2:2", "--relative-to", "glaction:2:2"]);
    assert_eq!(code, 0);
    let (code, _) = run(&["rigidity", "--group", "cyclic:4", "--relative-to", "units"]);
    assert_eq!(code, 2);
}

#[test]
fn permutation_file_action() {
    let p = tmp("neg.json", "[[0, 3, 2, 1]]");
    let rel = format!("@{}", p.display());
    let (code, r) = run(&["rigidity", "--group", "cyclic:4", "--relative-to", &rel]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["acting_order"], 2);
}

#[test]
fn schur_of_sl2f3() {
    let (code, r) = run(&["schur", "--group", "sl:2:3"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["schur_order"], 1);
}

#[test]
fn too_large_and_usage_errors() {
    let (code, r) = run(&["construct", "--group", "sl:9:9"]);
    assert_eq!(code, 3);
    assert!(r["error"].as_str().unwrap().contains("too large"));
    assert_eq!(run(&["construct", "--group", "nope:3"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["toddcox", "--name", "sym", "--n", "6", "--max-cosets", "100"]).0, 3);
}

#[test]
fn basic_commands() {
    let (_, r) = run(&["construct", "--group", "pgl:2:3"]);
    assert_eq!(r["results"]["order"], 24);
    let (_, r) = run(&["aut", "--group", "psl:2:5"]);
    assert_eq!((r["results"]["aut_order"].as_u64(), r["results"]["out_order"].as_u64()), (Some(120), Some(2)));
    let (code, _) = run(&["iso", "--group", "atilde:5", "--other", "sl:2:5"]);
    assert_eq!(code, 0);
    let (code, _) = run(&["iso", "--group", "sl:2:3", "--other", "sym:4"]);
    assert_eq!(code, 1);
    let (_, r) = run(&["sylow", "--group", "sl:2:5", "--prime", "5"]);
    assert_eq!(r["results"]["count"], 6);
    let (_, r) = run(&["fixpoints", "--group", "sl:2:5", "--matrix", "1,1;0,1"]);
    assert_eq!(r["results"]["fixed_points"], 10);
    let (_, r) = run(&["toddcox", "--name", "stilde", "--n", "4"]);
    assert_eq!(r["results"]["order"], 48);
    let (_, r) = run(&["h1", "--steinberg", "3:2"]);
    assert_eq!(r["results"]["h1"]["order"], 2);
    let (_, r) = run(&["h2", "--group", "cyclic:2*cyclic:2", "--modulus", "2"]);
    assert_eq!(r["results"]["order"], 8);
    let (_, r) = run(&["bichar", "--group", "cyclic:2*cyclic:2"]);
    assert_eq!(r["results"]["count"], 16);
}

#[test]
fn presentations_from_files() {
    let p = tmp("s3.json", r#"{"generators": ["a", "b"], "relators": ["aa", "bbb", "abab"]}"#);
    let (code, r) = run(&["toddcox", "--file", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["order"], 6);
    let spec = format!("present:@{}", p.display());
    let (_, r) = run(&["iso", "--group", &spec, "--other", "sym:3"]);
    assert_eq!(r["results"]["isomorphic"], true);
    let (code, r) = run(&["present", "--name", "sym", "--n", "3", "--check-in", "sym:3", "--images", "(1 2);(1 3);(2 3)"]);
    assert_eq!((code, &r["results"]["check"]["holds"]), (0, &Value::Bool(true)));
}

#[test]
fn cocycle_files() {
    // g_1 h_2 on Z/2 x Z/2, elements indexed 2 a + b.
    let w = tmp("w.json", r#"[{"g": 2, "h": 1, "value": 1}, {"g": 2, "h": 3, "value": 1}, {"g": 3, "h": 1, "value": 1}, {"g": 3, "h": 3, "value": 1}]"#);
    let args = ["cocycle-verify", "--group", "cyclic:2*cyclic:2", "--file", w.to_str().unwrap(), "--modulus", "2"];
    let (code, r) = run(&args);
    assert_eq!(code, 0);
    assert_eq!((&r["results"]["is_cocycle"], &r["results"]["is_coboundary"]), (&Value::Bool(true), &Value::Bool(false)));
    let bad = tmp("bad.json", r#"[{"g": 1, "h": 1, "value": 1}]"#);
    let (code, _) = run(&["cocycle-verify", "--group", "cyclic:4", "--file", bad.to_str().unwrap(), "--modulus", "2"]);
    assert_eq!(code, 1);
    let (code, r) = run(&["cocycle-verify", "--builtin", "remark"]);
    assert_eq!((code, &r["results"]["is_coboundary"]), (0, &Value::Bool(false)));
    let (code, _) = run(&["cocycle-verify", "--builtin", "affine:3"]);
    assert_eq!(code, 0);
}

#[test]
fn reports_are_deterministic() {
    let args = ["paper-suite", "--criterion", "11"];
    let a = Command::new(env!("CARGO_BIN_EXE_rigidkit")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_rigidkit")).args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn out_file_and_timing() {
    let dir = std::env::temp_dir().join(format!("rigidkit-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("r.json");
    let (code, _) = run(&["--timing", "--out", out.to_str().unwrap(), "paper-suite", "--criterion", "1"]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(r["timing"]["seconds"].is_number());
    assert_eq!(r["results"]["criteria"][0]["within_limit"], true);
}

#[test]
fn suite_reports_the_known_failure_only() {
    let (code, r) = run(&["paper-suite", "--criterion", "8"]);
    assert_eq!(code, 1);
    let failing: Vec<&str> = r["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["affine.cocycle.q2"]);
}
