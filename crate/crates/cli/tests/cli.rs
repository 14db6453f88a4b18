use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use gpmc_cli::report::Report;
use gpmc_cli::validate::revalidate;

fn gpmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpmc"))
        .args(args)
        .env_remove("GPMC_JOBS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = gpmc(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text)
        .unwrap_or_else(|e| panic!("{e}: {text}\n{}", String::from_utf8_lossy(&out.stderr)));
    let problems = revalidate(&report).unwrap();
    assert!(problems.is_empty(), "{problems:?}");
    (report, out.status.code().unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn topology_summaries() {
    let (r, code) = json(&["topology", "hypercube", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["vertices"], 8);
    assert_eq!(r.result["edges"], 12);
    assert_eq!(r.result["min_degree"], 3);
    assert_eq!(r.result["girth"], 4);
    let (c4, _) = json(&["topology", "--topology", "cycle", "--n", "4"]);
    let summary: Vec<&Value> = ["vertices", "edges", "min_degree", "girth"]
        .iter()
        .map(|k| &c4.result[*k])
        .collect();
    assert_eq!(summary, [4, 4, 2, 4]);
}

#[test]
fn malformed_edge_list_names_the_line() {
    let path = scratch("bad.edges");
    fs::write(&path, "3 2\n0 1\na b\n").unwrap();
    let out = gpmc(&["topology", "--edge-list", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn edge_list_roundtrip_through_export() {
    let out = gpmc(&["topology", "cycle", "5", "--export", "edge-list"]);
    assert_eq!(out.status.code(), Some(0));
    let path = scratch("c5.edges");
    fs::write(&path, &out.stdout).unwrap();
    let (r, _) = json(&["topology", "--edge-list", path.to_str().unwrap()]);
    assert_eq!((r.result["vertices"].as_u64(), r.result["edges"].as_u64()), (Some(5), Some(5)));
    assert_eq!(r.config["topology"]["kind"], "custom");
    let dot = String::from_utf8(gpmc(&["topology", "hypercube", "2", "--export", "dot"]).stdout).unwrap();
    assert!(dot.starts_with("graph") && dot.contains("0 -- 1;"), "{dot}");
}

#[test]
fn conflicting_topology_sources_are_input_errors() {
    let out = gpmc(&["topology", "hypercube", "3", "--topology", "cycle", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gpmc(&["topology", "--topology", "random", "--n", "6", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(2), "random graphs need a seed");
    assert_eq!(gpmc(&["topology", "torus", "3"]).status.code(), Some(2));
}

#[test]
fn diagnose_recovers_a_hybrid_fault() {
    let (r, code) = json(&[
        "diagnose", "hypercube", "3", "--faulty-vertices", "0", "--faulty-edges", "3-7",
        "--t", "1", "--s", "1", "--adversary", "all-fail",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.result["status"], "unique");
    assert_eq!(r.result["recovered"], true);
    assert_eq!(r.result["candidates"][0], serde_json::json!({ "F": [0], "S": [[3, 7]] }));
}

#[test]
fn diagnose_fault_free() {
    let (r, _) = json(&["diagnose", "hypercube", "3", "--t", "2", "--s", "1"]);
    assert_eq!(r.result["status"], "unique");
    assert_eq!(r.result["candidates"][0], serde_json::json!({ "F": [], "S": [] }));
}

#[test]
fn diagnose_witness_syndrome_is_ambiguous() {
    // F_1 of the neighbourhood witness around 000 with h = 1.
    let (r, code) = json(&[
        "diagnose", "hypercube", "3", "--faulty-vertices", "0,2,4", "--t", "3", "--s", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.result["status"], "ambiguous");
    assert_eq!(r.result["recovered"], false);
    assert!(r.result["candidate_count"].as_u64().unwrap() >= 2);
}

#[test]
fn inconsistent_fault_spec_is_rejected() {
    let out = gpmc(&["diagnose", "hypercube", "3", "--faulty-vertices", "3", "--faulty-edges", "3-7", "--t", "1", "--s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("3-7"));
}

#[test]
fn inject_then_diagnose_from_file() {
    let path = scratch("inject.json");
    let out = gpmc(&[
        "inject", "hypercube", "4", "--random-vertices", "2", "--random-edges", "1", "--fault-seed", "9",
        "--adversary", "random", "--seed", "3", "--format", "json", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let injected: Report = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(revalidate(&injected).unwrap().is_empty());
    let (r, _) = json(&["diagnose", "hypercube", "4", "--syndrome", path.to_str().unwrap(), "--t", "2", "--s", "1"]);
    assert_eq!(r.result["status"], "unique");
    assert_eq!(r.result["candidates"][0], injected.result["truth"]);
    assert_eq!(r.result["truth"], Value::Null);
}

#[test]
fn diagnosability_examples() {
    let cases: [(&[&str], u64); 3] = [
        (&["--h", "1", "hypercube", "3"], 2),
        (&["--r", "1", "hypercube", "4"], 2),
        (&["--edge-restricted", "0", "hypercube", "3"], 3),
    ];
    for (args, value) in cases {
        let mut full = vec!["diagnosability"];
        full.extend_from_slice(args);
        let (r, code) = json(&full);
        assert_eq!(code, 0);
        assert_eq!(r.result["value"], value, "{args:?}");
        assert!(r.result["witness"].is_array());
        assert!(r.stats["candidates_examined"].as_u64().unwrap() > 0);
        assert!(r.stats.get("elapsed_ms").is_none());
    }
}

#[test]
fn diagnosability_audit_agrees() {
    let (r, code) = json(&["diagnosability", "--h", "2", "hypercube", "4", "--audit-full-enumeration"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["audit"]["agrees"], true);
    let (t, _) = json(&["diagnosability", "--h", "1", "cycle", "5", "--timings"]);
    assert!(t.stats["elapsed_ms"].is_number());
}

#[test]
fn diagnosability_needs_exactly_one_level() {
    assert_eq!(gpmc(&["diagnosability", "hypercube", "3"]).status.code(), Some(2));
    assert_eq!(gpmc(&["diagnosability", "--h", "1", "--r", "1", "hypercube", "3"]).status.code(), Some(2));
}

#[test]
fn verify_theorems_is_byte_identical_across_processes_and_jobs() {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_gpmc"))
            .args(["verify-theorems", "--n-max", "3", "--format", "json"])
            .env("GPMC_JOBS", jobs)
            .output()
            .unwrap()
    };
    let first = run("1");
    for jobs in ["1", "1", "4"] {
        assert_eq!(run(jobs).stdout, first.stdout);
    }
    let report: Report = serde_json::from_slice(&first.stdout).unwrap();
    assert!(revalidate(&report).unwrap().is_empty());
    let explicit = gpmc(&["verify-theorems", "--n-max", "3", "--format", "json", "--jobs", "2"]);
    assert_eq!(explicit.stdout, first.stdout);
}

#[test]
fn verify_theorems_reports_mismatches_with_exit_one() {
    let (r, code) = json(&["verify-theorems", "--n-min", "3", "--n-max", "3"]);
    let rows = r.result["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let failing: Vec<(&Value, &Value)> = rows
        .iter()
        .filter(|row| row["match"] == false)
        .map(|row| (&row["claim"], &row["level"]))
        .collect();
    // t_2(Q_3) is 0: one faulty vertex and two faulty edges already defeat
    // Q_3, so the closed form n - h only holds for h != n - 1.
    assert_eq!(failing, [(&Value::from("edge_restricted"), &Value::from(2))]);
    assert_eq!(code, 1);
}

#[test]
fn verify_theorems_gates_large_dimensions() {
    let out = gpmc(&["verify-theorems", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(gpmc(&["verify-theorems", "--n-min", "1"]).status.code(), Some(2));
}

#[test]
fn csv_and_table_render_the_same_rows() {
    let csv = String::from_utf8(gpmc(&["verify-theorems", "--n-max", "2", "--format", "csv"]).stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("claim,n,level,predicted,computed,match,audit"));
    assert_eq!(lines.count(), 4);
    let table = String::from_utf8(gpmc(&["verify-theorems", "--n-max", "2"]).stdout).unwrap();
    assert!(table.contains("mismatches  2"), "{table}");
    assert_eq!(table.lines().filter(|l| l.starts_with("edge_restricted")).count(), 2);
}
