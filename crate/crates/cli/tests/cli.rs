use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nojunta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nojunta")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn address_file() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nojunta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("address.json");
    std::fs::write(&path, r#"{"n": 6, "hex": "FEDCBA9876543210"}"#).unwrap();
    path
}

#[test]
fn analyze_address() {
    let path = address_file();
    let out = nojunta(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["useless"], serde_json::json!([]));
    assert_eq!(v["result"]["symmetric"], false);
    assert_eq!(v["config"]["command"], "analyze");
}

#[test]
fn analyze_restricted_address() {
    let path = address_file();
    let out = nojunta(&["analyze", path.to_str().unwrap(), "--restrict", "1=1,6=0"]);
    let v = json(&out);
    assert_eq!(v["result"]["variables"], serde_json::json!([2, 3, 4, 5]));
    assert_eq!(v["result"]["useless"], serde_json::json!([3, 5]));
}

#[test]
fn analyze_constant() {
    let v = json(&nojunta(&["analyze", "--hex", "F", "--n", "2"]));
    assert_eq!(v["result"]["useless"], serde_json::json!([1, 2]));
    assert_eq!(v["result"]["nondegenerate"], false);
}

#[test]
fn malformed_input_exits_2() {
    let out = nojunta(&["analyze", "--hex", "XYZ", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(nojunta(&["analyze", "--hex", "6"]).status.code(), Some(2));
    assert_eq!(nojunta(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nojunta(&["experiment", "second-moment", "--n", "8", "--k", "2"]).status.code(), Some(2));
    assert_eq!(nojunta(&["analyze", "--hex", "6", "--n", "2", "-f", "dot"]).status.code(), Some(2));
}

#[test]
fn degree_of_parity_mod_2() {
    let v = json(&nojunta(&["degree", "--hex", "6", "--n", "2", "-m", "2"]));
    assert_eq!(v["result"]["degree"], 1);
    let v = json(&nojunta(&["degree", "--hex", "6", "--n", "2"]));
    assert_eq!(v["result"]["m"], "Z");
    assert_eq!(v["result"]["degree"], 2);
}

#[test]
fn degree_terms_of_restricted_address() {
    let path = address_file();
    let out = nojunta(&["degree", path.to_str().unwrap(), "--restrict", "1=1,6=0", "-m", "7", "--terms"]);
    let terms = &json(&out)["result"]["polynomial"]["terms"];
    assert_eq!(*terms, serde_json::json!([{"vars": [4], "coeff": 1}, {"vars": [2, 4], "coeff": 6}]));
}

#[test]
fn find_nojunta_on_address_and_degenerate_input() {
    let path = address_file();
    let v = json(&nojunta(&["find-nojunta", path.to_str().unwrap()]));
    assert_eq!((v["result"]["pivot"].clone(), v["result"]["bit"].clone()), (3.into(), 0.into()));
    assert_eq!(nojunta(&["find-nojunta", "--hex", "C", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn digraph_dot() {
    let out = nojunta(&["digraph", "--hex", "6", "--n", "2", "--dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph G_f {"));
    let v = json(&nojunta(&["digraph", "--hex", "6", "--n", "2"]));
    assert_eq!(v["result"]["violations"], serde_json::json!([]));
}

#[test]
fn witness_or4() {
    let v = json(&nojunta(&["witness", "--hex", "FFFE", "--n", "4", "-m", "6"]));
    assert_eq!(v["result"]["witness"]["periods"], serde_json::json!([8, 9]));
    assert_eq!(v["result"]["witness"]["a_size"], 9);
    let out = nojunta(&["witness", "--hex", "FEDCBA9876543210", "--n", "6", "-m", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_nojunta_n4() {
    let out = nojunta(&["verify", "nojunta", "--n", "4", "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["checked"], 64_594);
    assert_eq!(v["result"]["failures"], serde_json::json!([]));
    assert!(v["result"].get("elapsed_ms").is_none());
    let part = json(&nojunta(&["verify", "nojunta", "--n", "3", "--partition", "1/2"]));
    let other = json(&nojunta(&["verify", "nojunta", "--n", "3", "--partition", "0/2"]));
    let total = part["result"]["checked"].as_u64().unwrap() + other["result"]["checked"].as_u64().unwrap();
    assert_eq!(total, 218);
}

#[test]
fn output_is_reproducible_without_timing() {
    let a =
        nojunta(&["experiment", "second-moment", "--n", "10", "--k", "2", "--samples", "30", "--seed", "4"]);
    let b = nojunta(&[
        "experiment",
        "second-moment",
        "--n",
        "10",
        "--k",
        "2",
        "--samples",
        "30",
        "--seed",
        "4",
        "-w",
        "3",
    ]);
    let strip_workers = |o: &Output| {
        let mut v = json(o);
        v["config"]["workers"] = Value::Null;
        v
    };
    assert_eq!(strip_workers(&a), strip_workers(&b));
    let c =
        nojunta(&["experiment", "second-moment", "--n", "10", "--k", "2", "--samples", "30", "--seed", "4"]);
    assert_eq!(a.stdout, c.stdout);
    let timed = json(&nojunta(&["verify", "nojunta", "--n", "2", "--timing"]));
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn second_moment_csv() {
    let out = nojunta(&[
        "experiment",
        "second-moment",
        "--n",
        "12",
        "--k",
        "2",
        "--samples",
        "20",
        "--seed",
        "7",
        "-f",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,k,expected,empirical_mean,stderr,pr_zero"));
    assert!(lines.next().unwrap().starts_with("12,2,25344,"));
}

#[test]
fn sym_bound_scan() {
    let out = nojunta(&["verify", "sym-bound", "--n", "4", "-m", "6", "-m", "10", "-f", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("4,6,30,24,true,0"));
    // A prime-power modulus breaks the bound and is reported as a violation.
    assert_eq!(nojunta(&["verify", "sym-bound", "--n", "4", "-m", "2"]).status.code(), Some(1));
    let single = json(&nojunta(&["verify", "sym-bound", "--hex", "6996", "--n", "4", "-m", "6"]));
    assert_eq!(single["result"][0]["bound"]["degrees"], serde_json::json!([1, 4]));
}

#[test]
fn nonsym_bound_random_and_table() {
    let out = nojunta(&["verify", "nonsym-bound", "--n", "16", "--seed", "1", "--count", "4", "-m", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["functions"], 4);
    assert_eq!(v["result"]["results"][0]["report"]["k"], 3);
    assert_eq!(nojunta(&["verify", "nonsym-bound", "--n", "16", "-m", "6"]).status.code(), Some(2));
    let x = json(&nojunta(&["verify", "nonsym-bound", "--hex", "6996", "--n", "4", "-m", "6"]));
    assert_eq!(x["result"]["results"][0]["report"]["holds"], true);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("nojunta-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = nojunta(&["analyze", "--hex", "8", "--n", "2", "-o", path.to_str().unwrap()]);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["hex"], "8");
}
