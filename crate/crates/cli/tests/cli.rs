use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn oddarc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddarc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("oddarc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn parity_records() {
    let out = oddarc(&["parity", "--m-range", "1..16", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let records = json(&out);
    let records = records.as_array().unwrap();
    assert_eq!(records.len(), 16);
    for r in records {
        let m = r["m"].as_u64().unwrap();
        let odd = r["order_parity"] == "odd";
        assert_eq!(odd, (m + 1).is_power_of_two());
        assert_eq!(r["m_plus_1_pow2"].as_bool().unwrap(), odd);
    }
}

#[test]
fn exceptional_pairs_in_window() {
    let out = oddarc(&["--format", "json", "verify", "thm2", "--degrees", "7..9"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["schema"], "census-v1");
    assert_eq!(report["config"]["subcommand"], "verify thm2");
    assert!(report["version"].is_string());
    let result = &report["result"];
    assert_eq!(result["consistent"], true);
    let mut found: Vec<(String, u64)> = result["exceptions_found"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["group"].as_str().unwrap().to_string(), e["order"].as_u64().unwrap()))
        .collect();
    found.dedup();
    assert_eq!(
        found,
        vec![("A7".into(), 168), ("A8".into(), 1344), ("A9".into(), 1344)]
    );
}

#[test]
fn graph_families_at_degree_5() {
    let path = scratch("thm1.json");
    let out = oddarc(&["verify", "thm1", "--degrees", "5..5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let degree = &report["result"]["degrees"][0];
    assert_eq!(degree["degree"], 5);
    assert_eq!(degree["found"], serde_json::json!(["complete(5)"]));
    assert_eq!(report["result"]["verdict"], "pass");
}

#[test]
fn usage_errors_exit_2() {
    let out = oddarc(&["parity", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(oddarc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(oddarc(&["--max-index", "0", "verify", "thm1", "--degrees", "5..5"]).status.code(), Some(2));
    assert_eq!(oddarc(&["subgroups", "--group", "Q8"]).status.code(), Some(2));
}

#[test]
fn resource_caps_exit_3() {
    let out = oddarc(&["--max-order", "10", "verify", "thm2", "--degrees", "7..7"]);
    assert_eq!(out.status.code(), Some(3));
    let out = oddarc(&["--max-index", "3", "verify", "thm1", "--degrees", "7..7"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn coset_graph_from_files() {
    let group = scratch("a5.json");
    let subgroup = scratch("a4.json");
    std::fs::write(&group, r#"{"degree": 5, "generators": ["(0 1 2)", "(0 1 2 3 4)"]}"#).unwrap();
    std::fs::write(&subgroup, r#"{"degree": 5, "generators": ["(0 1 2)", [1, 0, 3, 2, 4]]}"#).unwrap();
    let report = scratch("coset.json");
    let args = [
        "--format",
        "json",
        "coset-graph",
        "--group-file",
        group.to_str().unwrap(),
        "--subgroup-file",
        subgroup.to_str().unwrap(),
        "--arc",
        "(0 4)(1 2)",
    ];
    let out = oddarc(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema"], "census-v1");
    let graph = &v["result"];
    assert_eq!(graph["vertex_count"], 5);
    assert_eq!(graph["valency"], 4);
    assert_eq!(graph["family"], "complete(5)");

    let mut with_report = args.to_vec();
    with_report.extend(["--report", report.to_str().unwrap()]);
    assert_eq!(oddarc(&with_report).status.code(), Some(0));
    assert!(std::fs::metadata(&report).unwrap().len() > 0);

    let local = oddarc(&[
        "--format",
        "json",
        "local",
        "--group-file",
        group.to_str().unwrap(),
        "--subgroup-file",
        subgroup.to_str().unwrap(),
        "--arc",
        "(0 4)(1 2)",
    ]);
    assert_eq!(local.status.code(), Some(0));
    let text = String::from_utf8_lossy(&local.stdout);
    assert!(text.contains("\"local_group_order\": 12"), "{text}");

    // arc element inside the subgroup
    let bad = oddarc(&[
        "coset-graph",
        "--group-file",
        group.to_str().unwrap(),
        "--subgroup-file",
        subgroup.to_str().unwrap(),
        "--arc",
        "(0 1)(2 3)",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn graph_subcommands() {
    let out = oddarc(&["graph", "odd", "--m", "3", "--check-2at", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["vertex_count"], 35);
    assert_eq!(v["valency"], 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 70);
    assert_eq!(v["family"], "odd(3)");
    let out = oddarc(&["graph", "complete", "--n", "4", "--json"]);
    assert_eq!(json(&out)["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn subgroup_listing() {
    let out = oddarc(&["--format", "json", "subgroups", "--group", "S7", "--odd-index", "--maximal"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let text = v.to_string();
    assert!(text.contains("intransitive"), "{text}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["--format", "json", "verify", "thm2", "--degrees", "5..8"];
    let a = oddarc(&args);
    let b = oddarc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["--format", "json", "subgroups", "--group", "A8"];
    assert_eq!(oddarc(&args).stdout, oddarc(&args).stdout);
}
