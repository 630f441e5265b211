use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lagrange3"))
}

#[test]
fn enumerative_markdown_exits_zero() {
    let out = bin().arg("enumerative").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# Verification report"));
    assert!(text.contains("| enumerative.q_3 | pass |"));
    assert!(!text.contains("| ring."));
}

#[test]
fn json_output_to_file() {
    let path = std::env::temp_dir().join(format!("lagrange3-cli-{}.json", std::process::id()));
    let out = bin().args(["curve", "--format", "json", "--out"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.trim_start().starts_with('{'));
    assert!(text.contains("\"id\": \"curve.discriminant\""));
    assert!(!text.contains("\"status\": \"fail\""));
}

#[test]
fn output_is_reproducible() {
    let run = || bin().args(["hodge", "--format", "json", "--seed", "7"]).output().unwrap().stdout;
    assert_eq!(run(), run());
}

#[test]
fn out_of_range_scan_bound_is_a_usage_error() {
    let out = bin().args(["integral", "--scan-bound", "40"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scan bound"));
}

#[test]
fn unknown_subcommand_and_format_are_usage_errors() {
    assert_eq!(bin().arg("nonsense").output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["ring", "--format", "xml"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn unwritable_output_is_reported() {
    let out = bin().args(["enumerative", "--out", "/nonexistent-dir/report.md"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
