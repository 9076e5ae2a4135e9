use std::io::Write;
use std::process::{Command, Output, Stdio};

use ghzppt::json::parse_report;

fn ghzppt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghzppt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const GHZ3: &str = r#"{"n": 3, "weights": [{"beta": "000", "plus": 1.0}]}"#;
const MIXED3: &str = r#"{"n": 3, "weights": [
    {"beta": "000", "plus": 0.125, "minus": 0.125}, {"beta": "001", "plus": 0.125, "minus": 0.125},
    {"beta": "010", "plus": 0.125, "minus": 0.125}, {"beta": "011", "plus": 0.125, "minus": 0.125}]}"#;

#[test]
fn classify_pure_ghz_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ghz.json");
    std::fs::write(&path, GHZ3).unwrap();
    let out = ghzppt(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = parse_report(stdout(&out).trim()).unwrap();
    assert!(report.full_entangled);
    assert_eq!(report.partitions.len(), 3);
    assert!(report.ppt_partitions.is_empty());
    assert!(stdout(&out).starts_with(
        r#"{"n":3,"full_entangled":true,"partitions":[{"alpha1":"100","ppt":false,"worst":{"beta":"000","coeff":"E","value":-1.0}}"#
    ));
}

#[test]
fn classify_maximally_mixed_exits_one() {
    let out = ghzppt(&["classify", "--input", MIXED3]);
    assert_eq!(out.status.code(), Some(1));
    let report = parse_report(stdout(&out).trim()).unwrap();
    assert_eq!(report.ppt_partitions.len(), 3);
}

#[test]
fn classify_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ghzppt"))
        .args(["classify", "--input", "-", "--format", "table"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(GHZ3.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0/3 splits PPT"));
}

#[test]
fn input_errors_exit_two_with_one_line() {
    let cases = [
        (r#"{"n": 3, "weights": [{"beta": "000", "plus": 0.9}]}"#, "normalization"),
        (r#"{"n": 3, "weights": [{"beta": "000", "plus": 1.1, "minus": -0.1}]}"#, "weights[0].minus"),
        (r#"{"n": 3, "weights": [{"beta": "0x0", "plus": 1.0}]}"#, "weights[0].beta"),
        ("{ broken", "json"),
        ("/nonexistent/state.json", "reading"),
    ];
    for (input, needle) in cases {
        let out = ghzppt(&["classify", "--input", input]);
        assert_eq!(out.status.code(), Some(2), "{input}");
        let err = stderr(&out);
        assert!(err.contains(needle), "{input}: {err}");
        assert_eq!(err.lines().count(), 1, "{err}");
    }
    assert_eq!(ghzppt(&["classify"]).status.code(), Some(2));
}

#[test]
fn oracle_check() {
    let out = ghzppt(&["oracle-check", "--n", "3", "--count", "200", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["mismatches"], 0);
    assert_eq!(doc["comparisons"], 600);

    let out = ghzppt(&["oracle-check", "--n", "2", "--count", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["spectrum_deviation"].as_f64().unwrap() <= 1e-9);

    assert_eq!(ghzppt(&["oracle-check", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn thresholds() {
    let out = ghzppt(&["threshold", "--input", GHZ3]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for p in doc["partitions"].as_array().unwrap() {
        assert!((p["threshold"].as_f64().unwrap() - 0.8).abs() < 1e-12);
    }
    assert!((doc["ghz_closed_form"].as_f64().unwrap() - 0.8).abs() < 1e-12);

    let ghz4 = r#"{"n": 4, "weights": [{"beta": "0000", "plus": 1.0}]}"#;
    let doc: serde_json::Value = serde_json::from_str(&stdout(&ghzppt(&["threshold", "--input", ghz4]))).unwrap();
    assert!((doc["full_entanglement_threshold"].as_f64().unwrap() - 8.0 / 9.0).abs() < 1e-12);

    let doc: serde_json::Value = serde_json::from_str(&stdout(&ghzppt(&["threshold", "--input", MIXED3]))).unwrap();
    assert_eq!(doc["full_entanglement_threshold"], 0.0);
    assert!(doc["ghz_closed_form"].is_null());
}

#[test]
fn random_is_deterministic_and_classifiable() {
    let a = ghzppt(&["random", "--n", "4", "--seed", "11"]);
    let b = ghzppt(&["random", "--n", "4", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let state = stdout(&a);
    let first = ghzppt(&["classify", "--input", &state]);
    let second = ghzppt(&["classify", "--input", &state]);
    assert!(matches!(first.status.code(), Some(0 | 1)));
    assert_eq!(first.stdout, second.stdout);

    let many = ghzppt(&["random", "--n", "3", "--count", "5", "--seed", "2"]);
    let lines: Vec<_> = stdout(&many).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 5);
    for l in &lines {
        ghzppt::json::parse_state(l).unwrap();
    }
}

#[test]
fn basis_lists_every_vector() {
    let out = ghzppt(&["basis", "--n", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = doc.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0]["beta"], "000");
    assert_eq!(rows[0]["support"], serde_json::json!([0, 7]));
    assert_eq!(rows[3]["sign"], "-");
    assert_eq!(rows[3]["support"], serde_json::json!([1, 6]));
}

#[test]
fn bench_csv_header() {
    let out = ghzppt(&[
        "bench",
        "--count",
        "1",
        "--analytic-min",
        "4",
        "--analytic-max",
        "5",
        "--dense-min",
        "3",
        "--dense-max",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("path,n,partitions,median_ms"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2 + 2 * 2);
    assert_eq!(rows[0][..3], ["analytic_classify", "4", "7"]);
    assert!(rows.iter().any(|r| r[0] == "dense_single_partition" && r[1] == "4"));
    for r in &rows {
        assert!(r[3].parse::<f64>().unwrap() >= 0.0);
    }
    assert_eq!(ghzppt(&["bench", "--dense-max", "9"]).status.code(), Some(2));
}
