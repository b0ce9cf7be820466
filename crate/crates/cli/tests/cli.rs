use std::io::Write;
use std::process::{Command, Output, Stdio};

const FIVE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/five.json");
const M5_CSV: &str = "4\n5,1\n1,5,2\n2,3,5,3\n3,2,3,5,5\n";

fn vine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vine"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn vine_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vine"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_line(o: &Output) -> String {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    err.lines().last().unwrap_or_default().to_string()
}

#[test]
fn encode_napoles_with_counter() {
    let o = vine(&["encode", FIVE, "--algorithm", "napoles", "--count-comparisons"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), format!("{M5_CSV}comparisons=36\n"));
}

#[test]
fn encode_cherry_with_given_peo() {
    let o = vine(&[
        "encode",
        FIVE,
        "--algorithm",
        "cherry",
        "--peo",
        "4,1,2,3,5",
        "--count-comparisons",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), format!("{M5_CSV}comparisons=30\n"));
}

#[test]
fn equivalence_reports_identical() {
    let o = vine(&["equivalence", FIVE]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "IDENTICAL\n");
}

#[test]
fn enumerate_counts() {
    assert_eq!(stdout(&vine(&["enumerate", "--n", "4", "--count-only"])), "24\n");
    let lines = stdout(&vine(&["enumerate", "--n", "3"]));
    assert_eq!(lines.lines().count(), 3);
    for line in lines.lines() {
        assert!(vine_stdin(&["validate", "-"], line).status.success());
    }
}

#[test]
fn enumerate_out_of_range() {
    let o = vine(&["enumerate", "--n", "7", "--count-only"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(error_line(&o).starts_with("error: out-of-bounds: "));
}

#[test]
fn decode_round_trips_through_stdin() {
    let o = vine_stdin(&["decode", "-"], M5_CSV);
    assert!(o.status.success());
    let json = stdout(&o);
    let again = vine_stdin(&["encode", "-", "--algorithm", "napoles"], &json);
    assert_eq!(stdout(&again), M5_CSV);
}

#[test]
fn peo_single_and_all() {
    assert_eq!(stdout(&vine(&["peo", FIVE])), "4,5,1,2,3\n");
    let all = stdout(&vine(&["peo", FIVE, "--all"]));
    let list: Vec<&str> = all.lines().collect();
    assert_eq!(list.len(), 16);
    assert!(list.contains(&"4,1,2,3,5"));
    assert!(list.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn representations_are_json() {
    let cherry: serde_json::Value = serde_json::from_str(&stdout(&vine(&["to-cherry", FIVE]))).unwrap();
    assert_eq!(cherry["trees"].as_array().unwrap().len(), 4);
    let top: serde_json::Value = serde_json::from_str(&stdout(&vine(&["to-cherry", FIVE, "--level", "4"]))).unwrap();
    assert_eq!(top["clusters"], serde_json::json!([[1, 2, 3, 4], [1, 2, 3, 5]]));
    assert_eq!(top["edges"][0]["separator"], serde_json::json!([1, 2, 3]));

    let g: serde_json::Value = serde_json::from_str(&stdout(&vine(&["to-chordal", FIVE, "--level", "3"]))).unwrap();
    assert_eq!(
        g["edges"],
        serde_json::json!([[1, 2], [1, 3], [2, 3], [2, 4], [2, 5], [3, 4], [3, 5]])
    );
    let o = vine(&["to-chordal", FIVE, "--level", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn random_is_reproducible() {
    let a = vine(&["random", "--n", "7", "--seed", "42"]);
    let b = vine(&["random", "--n", "7", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).contains("seed=42"));
    assert!(vine_stdin(&["validate", "-"], &stdout(&a)).status.success());
}

#[test]
fn output_is_deterministic() {
    let a = vine(&["to-chordal", FIVE]);
    let b = vine(&["to-chordal", FIVE]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn validation_failures_exit_one() {
    // 1,5|2,4 joins clusters that are not in level 2
    let text = std::fs::read_to_string(FIVE)
        .unwrap()
        .replace("[1, 5], \"conditioning\": [2, 3]", "[1, 5], \"conditioning\": [2, 4]");
    let o = vine_stdin(&["validate", "-"], &text);
    assert_eq!(o.status.code(), Some(1));
    assert!(error_line(&o).starts_with("error: invalid-vine: "));

    let o = vine(&["encode", FIVE, "--algorithm", "cherry", "--peo", "2,1,3,4,5"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        error_line(&o),
        "error: not-vine-peo: not a perfect elimination ordering of the vine"
    );

    let o = vine_stdin(&["decode", "-"], "1\n3,2\n4,4,3\n2,3,4,4\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(error_line(&o).starts_with("error: not-a-vine-matrix: "));

    let o = vine_stdin(&["decode", "-"], "1\n2,1\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(error_line(&o).starts_with("error: invalid-matrix: "));
}

#[test]
fn parse_failures_exit_two() {
    let o = vine_stdin(&["decode", "-"], "1\n2\n");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_line(&o), "error: parse: row 2 must have 2 entries");

    let o = vine_stdin(&["validate", "-"], "{\"n\": 3,");
    assert_eq!(o.status.code(), Some(2));
    assert!(error_line(&o).starts_with("error: parse: line 1"));

    let o = vine(&["validate", "/nonexistent/vine.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(error_line(&o).starts_with("error: io: "));

    let o = vine(&["encode", FIVE, "--algorithm", "fast"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(error_line(&o).starts_with("error: usage: "));

    let o = vine(&["encode", FIVE, "--algorithm", "napoles", "--peo", "1,2,3,4,5"]);
    assert_eq!(o.status.code(), Some(2));
}
