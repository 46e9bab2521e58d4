use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::NamedTempFile;

fn pathcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn edge_list(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn complete(n: usize) -> NamedTempFile {
    let mut text = format!("n {n}\n");
    for i in 0..n {
        for j in i + 1..n {
            text.push_str(&format!("{i} {j}\n"));
        }
    }
    edge_list(&text)
}

const C4: &str = "n 4\n0 1\n1 2\n2 3\n3 0\n";

#[test]
fn count_json_for_every_method() {
    let f = complete(5);
    let path = f.path().to_str().unwrap();
    for method in ["p3", "labeled", "subset", "recursive", "oracle"] {
        let out = pathcount(&["count", "--input", path, "--k", "3", "--method", method]);
        assert!(
            out.status.success(),
            "{method}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["method"], method);
        assert_eq!(v["k"], 3);
        assert_eq!(v["n"], 5);
        assert_eq!(v["rows"][0][0], "0");
        assert_eq!(v["rows"][0][1], "6", "{method}");
    }
}

#[test]
fn count_csv() {
    let f = edge_list(C4);
    let out = pathcount(&[
        "count",
        "--input",
        f.path().to_str().unwrap(),
        "--method",
        "p2",
        "--output",
        "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "source,0,1,2,3\n0,0,0,2,0\n1,0,0,0,2\n2,2,0,0,0\n3,0,2,0,0\n"
    );
}

#[test]
fn hamiltonian_json() {
    let f = complete(5);
    let out = pathcount(&[
        "hamiltonian",
        "--input",
        f.path().to_str().unwrap(),
        "--output",
        "json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total_hamiltonian_paths"], "60");
    assert_eq!(v["rows"][1][4], "6");
}

#[test]
fn enumerate_lists_paths_in_order() {
    let f = edge_list(C4);
    let path = f.path().to_str().unwrap();
    let out = pathcount(&[
        "enumerate",
        "--input",
        path,
        "--min-hops",
        "1",
        "--max-hops",
        "3",
        "--limit",
        "7",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 1\n0 1 2\n0 1 2 3\n0 3\n0 3 2\n0 3 2 1\n1 0\n");
    let all = pathcount(&["enumerate", "--input", path, "--min-hops", "2", "--max-hops", "2"]);
    assert_eq!(stdout(&all).lines().count(), 8);
}

#[test]
fn validate_reports_agreement() {
    let f = complete(4);
    let out = pathcount(&["validate", "--input", f.path().to_str().unwrap(), "--kmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("all methods agree"), "{text}");
    assert!(text.contains("hamiltonian"));
}

#[test]
fn complexity_csv() {
    let out = pathcount(&["complexity", "--n", "20", "--output", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 20);
    assert!(lines[0].starts_with("k,cost_repeating,cost_labeled,cost_subset"));
    assert!(lines[5].starts_with("5,"));
    assert!(lines[5].contains(",4800000,"));
}

#[test]
fn er_sweep_is_reproducible() {
    let args = [
        "er-sweep",
        "--n",
        "6",
        "--p",
        "0.2:1.0:0.2",
        "--reps",
        "5",
        "--seed",
        "11",
        "--output",
        "csv",
    ];
    let first = pathcount(&args);
    let second = pathcount(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert_eq!(text.lines().count(), 1 + 5 * 5);
    assert!(text.lines().last().unwrap().ends_with(",975,ok"));
}

#[test]
fn enumerate_is_reproducible() {
    let f = complete(6);
    let args = ["enumerate", "--input", f.path().to_str().unwrap()];
    assert_eq!(pathcount(&args).stdout, pathcount(&args).stdout);
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pathcount"))
        .args(["count", "--input", "-", "--method", "p1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0 1\n0 1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"], serde_json::json!([["0", "1"], ["1", "0"]]));
}

#[test]
fn input_errors_exit_with_two() {
    let bad = edge_list("0 0\n");
    let out = pathcount(&["count", "--input", bad.path().to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("self-loop"));

    let f = edge_list(C4);
    let path = f.path().to_str().unwrap();
    for args in [
        vec!["count", "--input", path, "--k", "4"],
        vec!["count", "--input", path, "--method", "p2", "--k", "3"],
        vec!["count", "--input", path, "--method", "subset"],
        vec!["count", "--input", "/nonexistent/graph.txt", "--k", "1"],
        vec!["complexity", "--n", "1"],
        vec!["er-sweep", "--n", "5", "--p", "0.5:0.1:0.1"],
        vec!["count", "--input", path, "--method", "bogus", "--k", "1"],
    ] {
        assert_eq!(pathcount(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn guard_exits_with_three() {
    let f = complete(14);
    let out = pathcount(&[
        "count",
        "--input",
        f.path().to_str().unwrap(),
        "--k",
        "13",
        "--method",
        "recursive",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}
