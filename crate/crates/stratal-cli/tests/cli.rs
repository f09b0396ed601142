//! End-to-end tests of the `stratal` binary against the checked-in fixtures.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().expect("workspace root")
}

fn stratal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stratal"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn check_nerve_fixture_passes() {
    let out = stratal(&[
        "check",
        "fixtures/nerve_walking_iso.json",
        "--class",
        "weak-inf-bicat",
        "--nmax",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "check");
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["bound"], 4);
}

#[test]
fn check_reports_counterexample_on_flat_boundary() {
    let out = stratal(&[
        "check",
        "fixtures/boundary2_flat.json",
        "--class",
        "weak-inf-bicat",
        "--nmax",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "fail");
    let gen = v["counterexample"]["generator"].as_str().expect("generator token");
    assert_eq!(gen, "scaled-S:inner:n=2,i=1");
    assert!(v["counterexample"]["map"].is_object());
}

#[test]
fn verify_cert_accepts_fixture_certificates() {
    for (goal, cert) in [
        ("fixtures/j1_goal.json", "fixtures/j1_cert.json"),
        ("fixtures/j2_goal.json", "fixtures/j2_cert.json"),
    ] {
        let out = stratal(&["verify-cert", goal, cert]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{goal}: stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let v = stdout_json(&out);
        assert_eq!(v["verdict"], "pass");
    }
}

#[test]
fn verify_cert_rejects_mismatched_certificate() {
    // The j2 certificate attaches to the other saturation goal; replay must fail.
    let out = stratal(&["verify-cert", "fixtures/j1_goal.json", "fixtures/j2_cert.json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "fail");
    assert!(v["error"].is_string());
}

#[test]
fn nerve2_matches_fixture_bytes() {
    let out = stratal(&["nerve2", "fixtures/walking_iso_twocat.json", "--nmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let fixture = std::fs::read(workspace_root().join("fixtures/nerve_walking_iso.json"))
        .expect("fixture exists");
    assert_eq!(out.stdout, fixture, "nerve2 output drifted from the stored fixture");
}

#[test]
fn output_is_deterministic_and_jobs_independent() {
    let a = stratal(&["check", "fixtures/nerve_walking_iso.json", "--class", "weak-inf-bicat", "--nmax", "3"]);
    let b = stratal(&["check", "fixtures/nerve_walking_iso.json", "--class", "weak-inf-bicat", "--nmax", "3"]);
    let c = stratal(&["--jobs", "4", "check", "fixtures/nerve_walking_iso.json", "--class", "weak-inf-bicat", "--nmax", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn usage_errors_exit_2() {
    // Unknown class.
    let out = stratal(&["check", "fixtures/boundary2_flat.json", "--class", "nonsense", "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown object class"));

    // Missing input file.
    let out = stratal(&["check", "fixtures/no_such_file.json", "--class", "weak-inf-bicat", "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(2));

    // Missing required --nmax flag (clap rejects before we run).
    let out = stratal(&["check", "fixtures/boundary2_flat.json", "--class", "weak-inf-bicat"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generators_lists_reduced_thinness_family() {
    let out = stratal(&["generators", "thinness-2trivial", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let tokens: Vec<&str> = v["instances"]
        .as_array()
        .expect("instances array")
        .iter()
        .map(|i| i["token"].as_str().expect("token"))
        .collect();
    assert_eq!(tokens.len(), 7, "three maps in dimension 2, four in dimension 3");
    assert!(tokens.contains(&"thinness-2trivial:n=2,i=1"));
    assert!(tokens.contains(&"thinness-2trivial:n=3,i=3"));
}
