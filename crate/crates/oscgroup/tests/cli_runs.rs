use std::path::PathBuf;
use std::process::Command;

use oscgroup::cli::run;

fn golden(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../golden")
        .join(name)
        .display()
        .to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("oscgroup").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn qybe_reports_symbolic_zero() {
    let (code, out, _) = call(&["qybe", "--family", "I-II-A"]);
    assert_eq!(code, 0);
    assert!(out.contains("residual: symbolic zero"), "{out}");
}

#[test]
fn relations_against_golden_file() {
    let (code, out, _) = call(&["relations", "--family", "FB-NONDEF", "--golden", &golden("fb.txt")]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = call(&["relations", "--family", "I-II-D", "--golden", &golden("d.txt")]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("[FAIL] I-II-D golden relations"));
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(call(&["qybe", "--family", "NOPE"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["qybe"]).0, 2);
    assert_eq!(call(&["dual-verify", "--family", "a", "--degree", "0"]).0, 2);
    assert_eq!(call(&["fock-verify", "--family", "APPB-9"]).0, 2);
    assert_eq!(call(&["fock-verify", "--family", "APPB-1", "--n-boson", "4"]).0, 2);
    assert_eq!(
        call(&["coherent", "--variant", "iso", "--x", "0.4", "--z", "0.3", "--omega", "1", "--Z", "1"]).0,
        2
    );
    assert_eq!(
        call(&["coherent", "--variant", "iso", "--x", "0", "--z", "0.3", "--omega", "1", "--Z", "0,0"]).0,
        2
    );
    let (code, _, err) = call(&["relations", "--family", "a", "--golden", "/nonexistent/a.txt"]);
    assert_eq!(code, 2);
    assert!(err.contains("error:"));
}

#[test]
fn help_exits_0() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("dual-verify"));
}

#[test]
fn params_files_feed_the_numeric_suites() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("point.txt");
    std::fs::write(&p, "x = 0.4\nz = 0.7\np = 1/5\nq = -0.3\nρ = 0.2\nτ = 0.1\nr11_13 = 1/2\nr13_53 = 2\nsigma = 0.6\n").unwrap();
    let (code, out, _) = call(&["qybe", "--family", "d", "--params", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("qybe at point"));
    let f = dir.path().join("fock.txt");
    std::fs::write(&f, "x = 0.5\nz = 0.25\np = 0.1\nq = 0.2\nrho = 0.3\ntau = -0.4\nc2 = 0.9\nsign = -1\n").unwrap();
    let (code, out, _) = call(&["fock-verify", "--family", "APPB-4", "--params", f.to_str().unwrap(), "--n-boson", "30"]);
    assert_eq!(code, 0, "{out}");
    std::fs::write(&f, "x = 0.5\nz = 0.25\nbogus = 1\n").unwrap();
    assert_eq!(call(&["fock-verify", "--family", "APPB-4", "--params", f.to_str().unwrap()]).0, 2);
}

#[test]
fn dual_report_written_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("dual.json");
    let (code, out, _) = call(&[
        "--format", "json", "dual-verify", "--family", "I-II-C", "--degree", "3", "--lambda-r", "3", "--report",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["tool"], "oscgroup");
    assert_eq!(v["command"], "dual-verify");
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 8 + 16 + 3);
    assert!(checks.iter().all(|c| c["status"] == "pass" && c["residual"]["kind"] == "symbolic"));
}

#[test]
fn structured_reports_are_deterministic() {
    let args = ["--format", "json", "--seed", "11", "fock-verify", "--family", "APPB-3", "--n-boson", "20", "--draws", "4"];
    let (c1, a, _) = call(&args);
    let (c2, b, _) = call(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let (_, other, _) = call(&["--format", "json", "--seed", "12", "fock-verify", "--family", "APPB-3", "--n-boson", "20", "--draws", "4"]);
    assert_ne!(a, other);
    let cons = ["--format", "json", "consistency", "--family", "c"];
    assert_eq!(call(&cons).1, call(&cons).1);
}

#[test]
fn coherent_report_fields() {
    let (code, out, _) = call(&[
        "--format", "json", "coherent", "--variant", "iso", "--x", "0.45", "--z", "0.3", "--omega", "1.3", "--Z",
        "-0.7,0.4", "--rho-tilde", "0.3", "--tau-tilde", "0.2", "--n-boson", "40",
    ]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let spectrum = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "ISO H0 spectrum").unwrap();
    assert_eq!(spectrum["data"]["degeneracy"].as_array().unwrap().len(), 11);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_oscgroup");
    let st = Command::new(bin).args(["qybe", "--family", "fb"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let st = Command::new(bin).args(["qybe", "--family", "NOPE"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(!st.stderr.is_empty());
}
