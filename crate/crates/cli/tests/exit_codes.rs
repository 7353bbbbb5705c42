use std::process::Command;

fn drw(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_drw")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn success_is_zero() {
    let (code, out, _) = drw(&["--vars", "x", "normalize", "d[x]*[x]"]);
    assert_eq!(code, 0);
    assert!(out.contains("command: normalize"));
}

#[test]
fn parse_errors_exit_with_two() {
    let (code, _, err) = drw(&["--vars", "x", "normalize", "d[x"]);
    assert_eq!(code, 2);
    assert!(err.contains("parse error"), "{err}");
    let (code, _, _) = drw(&["--vars", "x,F", "normalize", "[x]"]);
    assert_eq!(code, 2);
    let (code, _, _) = drw(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn domain_errors_exit_with_one() {
    let (code, _, err) = drw(&["--p", "4", "--vars", "x", "normalize", "[x]"]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = drw(&["--p", "3", "--vars", "t", "divisor", "t-t"]);
    assert_eq!(code, 1);
}

#[test]
fn structured_errors_are_documents() {
    let (code, _, err) = drw(&["--format", "structured", "--vars", "x", "normalize", "[y]"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["exit_code"], 2);
}

#[test]
fn suite_reports_failures_without_failing() {
    let (code, out, _) = drw(&["suite", "--only", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("[ 7] FAIL"), "{out}");
}
