use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run_text(text: &str, extra: &[&str]) -> Output {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    Command::new(env!("CARGO_BIN_EXE_arcsub"))
        .arg("run")
        .arg(file.path())
        .args(extra)
        .output()
        .unwrap()
}

#[test]
fn lift_reports_both_square_roots() {
    let out = run_text(
        "vars x y z1 z2;\nvariety x^8 - (z1^2+z2^2)*y^8;\nlift T^4 - (z1^2+z2^2) along (0,0,0,t);\n",
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("liftings: 2"), "{text}");
    assert!(text.contains("    -t^(1/2)  [ord 1/2"), "{text}");
    assert!(text.contains("    t^(1/2)  [ord 1/2"), "{text}");
}

#[test]
fn witness_reports_two_limits() {
    let out = run_text(
        "vars x y z1 z2; variety x^8 - (z1^2+z2^2)*y^8; witness (x)/(y) at (0,0,1,0) budget 20;",
        &["--workers", "2"],
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("outcome: TWO-LIMITS"), "{text}");
    assert!(
        text.contains("-> -1\n") && text.contains("-> 1\n"),
        "{text}"
    );
}

#[test]
fn exit_codes() {
    let empty = run_text("", &[]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(empty.stdout.is_empty());
    let bad = run_text("vars x;\narc A = (t^(1/0));", &[]);
    assert_eq!(bad.status.code(), Some(2));
    let err = String::from_utf8(bad.stderr).unwrap();
    assert!(err.contains(":2:12: malformed exponent"), "{err}");
    // a failing query does not stop later ones
    let partial = run_text(
        "vars x; pointlift x*T at (0); pointlift T^2 - x at (1);",
        &[],
    );
    assert_eq!(partial.status.code(), Some(1));
    let text = String::from_utf8(partial.stdout).unwrap();
    assert!(
        text.contains("[1]") && text.contains("error:") && text.contains("values: {-1, 1}"),
        "{text}"
    );
}

#[test]
fn machine_records() {
    let out = run_text(
        "vars x; relation P = T^2 - (1+x^2); pointlift P at (0); limit (1)/(x) along (t);",
        &["--machine"],
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let recs: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["schema"], arcsub_cli::SCHEMA);
    assert_eq!(recs[0]["result"]["values"], serde_json::json!(["-1", "1"]));
    assert_eq!(recs[1]["result"]["limit"]["kind"], "DIVERGES");
}

#[test]
fn order_flag_changes_truncation() {
    let out = run_text("branches Y^2 - (1 + t^2);", &["--order", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 + 1/2*t^2 + O(t^4)"), "{text}");
}

#[test]
fn check_corpus_command() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let out = Command::new(env!("CARGO_BIN_EXE_arcsub"))
        .args(["check-corpus", dir, "--workers", "4"])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}
