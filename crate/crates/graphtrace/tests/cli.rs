//! End-to-end checks of the `graphtrace` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_graphtrace"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_dataset_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for (out, workers) in [(&a, "1"), (&b, "4")] {
        let result = run(&[
            "gen-dataset",
            "--tasks",
            "mis",
            "--count",
            "100",
            "--size",
            "small",
            "--seed",
            "7",
            "--workers",
            workers,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(result.status.success(), "{result:?}");
    }
    // Same seed, different worker counts: identical bytes.
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let manifest = fs::read_to_string(dir.path().join("a.jsonl.manifest.json")).unwrap();
    assert!(manifest.contains("\"master_seed\": 7"), "{manifest}");
}

#[test]
fn solve_reports_the_edit_distance_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ged.txt");
    fs::write(&path, graphtrace::fixtures::GED_TEXT).unwrap();
    let result = run(&["solve", "--task", "ged", "--instance", path.to_str().unwrap()]);
    assert!(result.status.success());
    let text = stdout(&result);
    assert!(text.contains("objective: 6"), "{text}");
    assert!(text.contains("exact: true"), "{text}");
}

#[test]
fn solve_oracle_flag_uses_the_brute_force_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mis.txt");
    fs::write(&path, graphtrace::fixtures::MIS_TEXT).unwrap();
    let result = run(&["solve", "--task", "mis", "--oracle", "--instance", path.to_str().unwrap()]);
    assert!(result.status.success());
    let text = stdout(&result);
    assert!(text.contains("objective: 6"), "{text}");
    assert!(text.contains("solver: oracle"), "{text}");
}

fn write_candidates_from_traces(instances: &Path, candidates: &Path) {
    let mut lines = String::new();
    for line in fs::read_to_string(instances).unwrap().lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        let kind: graphtrace::graph::TaskKind =
            record["kind"].as_str().unwrap().parse().unwrap();
        let inst =
            graphtrace::graph::parse_instance_text(record["text"].as_str().unwrap(), kind).unwrap();
        let trace = graphtrace::thought::generate_trace(&inst).unwrap();
        let entry = serde_json::json!({
            "instance_id": record["instance_id"],
            "candidates": [trace.render()],
        });
        lines.push_str(&entry.to_string());
        lines.push('\n');
    }
    fs::write(candidates, lines).unwrap();
}

#[test]
fn score_file_self_grades_generator_candidates_at_rate_one() {
    let dir = tempfile::tempdir().unwrap();
    let instances = dir.path().join("instances.jsonl");
    let candidates = dir.path().join("candidates.jsonl");
    let report = dir.path().join("report.json");
    let outcomes = dir.path().join("outcomes.jsonl");
    let result = run(&[
        "gen-instances",
        "--tasks",
        "all",
        "--size",
        "small",
        "--count",
        "2",
        "--seed",
        "3",
        "--out",
        instances.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    write_candidates_from_traces(&instances, &candidates);
    let result = run(&[
        "score-file",
        "--instances",
        instances.to_str().unwrap(),
        "--candidates",
        candidates.to_str().unwrap(),
        "--format",
        "structured",
        "--out",
        report.to_str().unwrap(),
        "--outcomes",
        outcomes.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{result:?}");
    let parsed: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed["total_count"], 20);
    assert_eq!(parsed["overall_optimality_rate"], 1.0);
    assert_eq!(fs::read_to_string(&outcomes).unwrap().lines().count(), 20);

    // The same outcomes re-render through the report subcommand.
    let result = run(&["report", "--outcomes", outcomes.to_str().unwrap()]);
    assert!(result.status.success());
    assert!(stdout(&result).contains("1.0000"));
}

#[test]
fn exit_codes_distinguish_failure_classes() {
    // Unknown flag: clap's usage error.
    assert_eq!(run(&["solve", "--bogus"]).status.code(), Some(2));
    // Malformed instance text: parse error.
    let result = bin()
        .args(["solve", "--task", "mis", "--text", "The graph has zebra nodes."])
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(3));
    // Unreadable file: io error.
    let result = run(&["solve", "--task", "mis", "--instance", "/nonexistent/x.txt"]);
    assert_eq!(result.status.code(), Some(4));
    // Unreachable endpoint: remote error.
    let dir = tempfile::tempdir().unwrap();
    let instances = dir.path().join("instances.jsonl");
    assert!(run(&[
        "gen-instances",
        "--tasks",
        "mis",
        "--size",
        "small",
        "--count",
        "1",
        "--seed",
        "1",
        "--out",
        instances.to_str().unwrap(),
    ])
    .status
    .success());
    let result = run(&[
        "query-and-score",
        "--instances",
        instances.to_str().unwrap(),
        "--base-url",
        "http://127.0.0.1:9/v1",
        "--retries",
        "0",
        "--timeout",
        "1",
    ]);
    assert_eq!(result.status.code(), Some(5));
    // Invalid spec: config error.
    let result = run(&["gen-dataset", "--tasks", "nosuch", "--count", "1", "--out", "/tmp/x.jsonl"]);
    assert_eq!(result.status.code(), Some(6));
}

#[test]
fn query_and_score_against_the_stub_is_optimal_everywhere() {
    let dir = tempfile::tempdir().unwrap();
    let instances = dir.path().join("instances.jsonl");
    assert!(run(&[
        "gen-instances",
        "--tasks",
        "mvc,ged",
        "--size",
        "small",
        "--count",
        "2",
        "--seed",
        "9",
        "--out",
        instances.to_str().unwrap(),
    ])
    .status
    .success());
    let result = run(&[
        "query-and-score",
        "--instances",
        instances.to_str().unwrap(),
        "--stub",
        "--format",
        "structured",
    ]);
    assert!(result.status.success(), "{result:?}");
    let text = stdout(&result);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["overall_optimality_rate"], 1.0, "{text}");
}
