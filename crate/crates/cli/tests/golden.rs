//! Runs the binary on each pinned invocation and compares bytes.
//! Set DRW_BLESS=1 to rewrite the files instead.

use std::path::PathBuf;
use std::process::Command;

use drw_cli::golden::GOLDEN;

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_drw")).args(args).output().expect("binary runs");
    (String::from_utf8(out.stdout).expect("utf-8 output"), out.status.code().unwrap_or(-1))
}

#[test]
fn golden_outputs_are_byte_identical() {
    let bless = std::env::var_os("DRW_BLESS").is_some();
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut stale = Vec::new();
    for g in GOLDEN {
        let (out, code) = run(&g.args[1..]);
        assert_eq!(code, 0, "{} exited with {code}", g.name);
        if bless {
            std::fs::write(dir.join(format!("{}.json", g.name)), &out).unwrap();
        } else if out != g.expected {
            stale.push(g.name);
        }
    }
    assert!(stale.is_empty(), "golden mismatch: {stale:?}");
}

#[test]
fn repeated_runs_agree() {
    for g in GOLDEN.iter().take(6) {
        assert_eq!(run(&g.args[1..]), run(&g.args[1..]), "{}", g.name);
    }
}

#[test]
fn golden_files_are_json() {
    for g in GOLDEN {
        let v: serde_json::Value = serde_json::from_str(g.expected).unwrap_or_else(|e| panic!("{}: {e}", g.name));
        assert!(v.get("result").is_some(), "{}", g.name);
    }
}

#[test]
fn documented_examples() {
    let get = |name: &str| -> serde_json::Value {
        let g = GOLDEN.iter().find(|g| g.name == name).unwrap();
        serde_json::from_str(g.expected).unwrap()
    };
    let steinberg = get("normalize_steinberg");
    assert_eq!(steinberg["result"]["result"]["terms"], serde_json::json!([]));
    assert_eq!(get("fixed_point")["result"]["classification"], "log-fixed");
    let chern = get("chern");
    let bundles = chern["result"]["bundles"].as_array().unwrap();
    let values: Vec<_> = bundles.iter().map(|b| (b["c1_milnor"]["value"].clone(), b["pairing"].clone())).collect();
    assert_eq!(values, vec![("1".into(), 1.into()), ("4".into(), 4.into())]);
    assert!(bundles.iter().all(|b| b["comparison"] == "PASS"));
    assert_eq!(get("divisor")["result"]["degree"], 0);
}
