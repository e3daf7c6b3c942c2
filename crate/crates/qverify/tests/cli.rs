//! Black-box tests of the `verify` binary: flags, exit codes, output shape.

use std::path::PathBuf;
use std::process::{Command, Output};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("failed to spawn the verify binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn temp_suite(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn single_identity_exits_zero() {
    let out = verify(&["--only", "euler-pentagonal"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("euler-pentagonal"));
    assert!(text.contains("summary: 1 ok, 0 fail, 0 error"));
}

#[test]
fn tag_filter_and_json_schema() {
    let path = std::env::temp_dir().join("qverify-cli-oracle.json");
    let out = verify(&["--tag", "oracle", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let _ = std::fs::remove_file(&path);
    let arr = v.as_array().expect("report must be a JSON array");
    let names: Vec<&str> = arr
        .iter()
        .map(|e| e["identity"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        ["euler-pentagonal", "jacobi-triple-product"],
        "sorted by name"
    );
    for entry in arr {
        let obj = entry.as_object().unwrap();
        assert_eq!(obj.len(), 5, "exactly five keys per report: {obj:?}");
        for key in ["identity", "order", "status", "first_mismatch", "ms"] {
            assert!(obj.contains_key(key), "missing key {key}");
        }
        assert_eq!(obj["status"], "ok");
        assert!(obj["first_mismatch"].is_null());
        assert!(obj["order"].is_i64());
        assert!(obj["ms"].is_u64());
    }
}

#[test]
fn failing_identity_exits_one_with_mismatch_detail() {
    let suite = temp_suite(
        "qverify-cli-fail.suite",
        "always-wrong @20 #custom-fail : pinf(q,1) == pinf(-q,1)\n",
    );
    let path = std::env::temp_dir().join("qverify-cli-fail.json");
    let out = verify(&[
        "--suite",
        suite.to_str().unwrap(),
        "--only",
        "always-wrong",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("fail"));

    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let _ = std::fs::remove_file(&path);
    let _ = std::fs::remove_file(&suite);
    let entry = &v.as_array().unwrap()[0];
    assert_eq!(entry["status"], "fail");
    let m = entry["first_mismatch"].as_object().unwrap();
    assert_eq!(m.len(), 3);
    assert_eq!(m["exponent"], "1");
    assert_eq!(m["lhs"], "-1");
    assert_eq!(m["rhs"], "1");
}

#[test]
fn errors_trump_failures_in_the_exit_code() {
    let suite = temp_suite(
        "qverify-cli-mixed.suite",
        "wrong @10 #cli-mixed : pinf(q,1) == pinf(-q,1)\n\
         divergent @10 #cli-mixed : pinf(q,1) == pinf(q^(-1),1)\n",
    );
    let out = verify(&["--suite", suite.to_str().unwrap(), "--tag", "cli-mixed"]);
    let _ = std::fs::remove_file(&suite);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("summary: 0 ok, 1 fail, 1 error"));
    assert!(
        text.contains("error:"),
        "human output should carry the error detail"
    );
}

#[test]
fn empty_selection_warns_and_exits_zero() {
    let out = verify(&["--only", "no-such-identity"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("no identities matched"));
}

#[test]
fn list_mode_prints_without_running() {
    let out = verify(&["--list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("thm-main"));
    assert!(text.contains("@100"));
    assert!(text.contains("#main"));
    assert!(!text.contains("summary:"), "--list must not run anything");

    let filtered = verify(&["--list", "--tag", "hm"]);
    let listing = stdout(&filtered);
    let lines: Vec<&str> = listing.lines().collect();
    assert_eq!(
        lines.len(),
        5,
        "five identities carry the hm tag: {lines:?}"
    );
}

#[test]
fn only_and_tag_conflict() {
    let out = verify(&["--only", "fofq", "--tag", "mock"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("cannot be used with"));
}

#[test]
fn missing_suite_file_is_an_error() {
    let out = verify(&["--suite", "/nonexistent/nowhere.suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn malformed_suite_reports_the_line_number() {
    let suite = temp_suite(
        "qverify-cli-bad.suite",
        "fine @10 #cli-bad : pinf(q,1) == pinf(q,1)\nthis line has no separator\n",
    );
    let out = verify(&["--suite", suite.to_str().unwrap()]);
    let _ = std::fs::remove_file(&suite);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains(":2:"), "stderr: {}", stderr(&out));
}

#[test]
fn order_override_is_reflected_in_reports() {
    let path = std::env::temp_dir().join("qverify-cli-order.json");
    let out = verify(&[
        "--only",
        "euler-pentagonal",
        "--order",
        "15",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let _ = std::fs::remove_file(&path);
    let entry = &v.as_array().unwrap()[0];
    assert_eq!(entry["order"], 15);
    assert_eq!(entry["status"], "ok");
}

#[test]
fn user_suite_extends_the_builtin_registry() {
    let suite = temp_suite(
        "qverify-cli-extra.suite",
        "# a user identity on top of the registry\n\
         euler-square @25 #cli-extra : pinf(q,1)^2 == pinf(q,1)*pinf(q,1)\n",
    );
    let out = verify(&["--suite", suite.to_str().unwrap(), "--only", "euler-square"]);
    let _ = std::fs::remove_file(&suite);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("summary: 1 ok, 0 fail, 0 error"));
}
