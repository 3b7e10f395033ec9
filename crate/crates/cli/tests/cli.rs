use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", self.stdout))
    }
}

fn qsaa_env(args: &[&str], env: &[(&str, &str)], stdin: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qsaa"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("spawn qsaa");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn qsaa(args: &[&str]) -> Run {
    qsaa_env(args, &[], None)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn pideg_values() {
    let r = qsaa(&["pideg", "--algebra", "qsaa", "--l", "5"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["pideg"], 25);
    assert_eq!(v["factors"], serde_json::json!([1, 1, 2, 2]));
    assert_eq!(v["status"], "pass");
    for (alg, l, want) in [("qsaa", "4", 8), ("A", "3", 9), ("B", "6", 18), ("A", "8", 32)] {
        let v = qsaa(&["pideg", "--algebra", alg, "--l", l, "--bruteforce"]).json();
        assert_eq!(v["pideg"], want, "{alg} at l={l}");
        assert_eq!(v["bruteforce_h"], want * want);
    }
}

#[test]
fn pideg_custom_matrix() {
    let r = qsaa(&["pideg", "--l", "6", "--matrix", "[[0,2],[-2,0]]", "--bruteforce"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["factors"], serde_json::json!([2, 2]));
    assert_eq!(v["pideg"], 3);
    assert_eq!(v["bruteforce_h"], 9);
    assert_eq!(qsaa(&["pideg", "--l", "6", "--matrix", "[[0,1],[1,0]]"]).code, 2);
}

#[test]
fn enumeration_guard() {
    let r = qsaa(&["pideg", "--l", "12", "--bruteforce", "--max-enumeration", "1000"]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    let r = qsaa(&["pideg", "--l", "12", "--bruteforce", "--max-enumeration", "100000"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["bruteforce_h"], 72 * 72);
}

#[test]
fn build_verify_classify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, l, mu) in [("m1", "3", "1,2,1,1"), ("m2", "4", "q,1,2"), ("m3", "3", "2,q^2")] {
        let built = qsaa(&["build", kind, "--l", l, "--mu", mu]);
        assert_eq!(built.code, 0, "{}", built.stderr);
        let path = write(dir.path(), &format!("{kind}.json"), &built.stdout);

        let v = qsaa(&["verify", "--module", &path, "--expect-simple"]);
        assert_eq!(v.code, 0, "{}", v.stdout);
        let vj = v.json();
        assert_eq!(vj["status"], "pass");
        assert_eq!(vj["simplicity"]["verdict"], "simple");

        let c = qsaa(&["classify", "--module", &path]);
        assert_eq!(c.code, 0, "{}", c.stderr);
        let cj = c.json();
        assert_eq!(cj["type"], kind);
        assert_eq!(cj["status"], "pass");

        let iso = qsaa(&[
            "iso",
            kind,
            "--l",
            l,
            "--mu",
            mu,
            "--gamma",
            &cj["params"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect::<Vec<_>>().join(","),
        ]);
        assert_eq!(iso.json()["isomorphic"], true);
    }
}

#[test]
fn module_from_stdin() {
    let built = qsaa(&["build", "m2", "--l", "3", "--mu", "1,2,3"]);
    let v = qsaa_env(&["verify", "--module", "-"], &[], Some(&built.stdout));
    assert_eq!(v.code, 0, "{}", v.stderr);
}

#[test]
fn iso_example() {
    let r = qsaa(&["iso", "m1", "--l", "3", "--mu", "q^2,1,1,1", "--gamma", "1,1,1,1", "--oracle"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["r1"], 1);
    assert_eq!(v["r2"], 1);
    assert!(v["results"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));

    let r = qsaa(&["iso", "m1", "--l", "3", "--mu", "2,1,1,1", "--gamma", "1,1,1,1", "--oracle"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["isomorphic"], false);
    assert_eq!(r.json()["witness"], Value::Null);
}

#[test]
fn z_and_q_are_interchangeable() {
    let a = qsaa(&["build", "m3", "--l", "5", "--mu", "q^2+1,-q"]);
    let b = qsaa(&["build", "m3", "--l", "5", "--mu", "z^2+1,-z"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"l\": 3, \"presentation\": \"qsaa\"");
    for args in [
        vec!["build", "m1", "--l", "3", "--mu", "1,2,1"],
        vec!["build", "m1", "--l", "3", "--mu", "0,1,1,1"],
        vec!["build", "m2", "--l", "2", "--mu", "1,1,1"],
        vec!["build", "m1", "--l", "3", "--mu", "1,2,(1,1"],
        vec!["build", "m9", "--l", "3", "--mu", "1"],
        vec!["verify", "--module", &bad],
        vec!["verify", "--module", "/nonexistent/module.json"],
        vec!["verma", "--l", "4", "--p", "1"],
        vec!["smash", "build-n1", "--l", "3", "--params", "1,1,1"],
    ] {
        let r = qsaa(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
    }
    let r = qsaa_env(&["suite", "--l", "3"], &[("QSAA_WORKERS", "zero")], None);
    assert_eq!(r.code, 2);
}

#[test]
fn broken_module_exits_1() {
    let built = qsaa(&["build", "m1", "--l", "3", "--mu", "1,2,1,1"]);
    let mut v: Value = serde_json::from_str(&built.stdout).unwrap();
    v["matrices"]["X"][0] = serde_json::json!(["5", "0"]);
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "broken.json", &v.to_string());
    let r = qsaa(&["verify", "--module", &path]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["results"][0]["status"], "fail");
    assert_eq!(qsaa(&["classify", "--module", &path]).code, 1);
}

#[test]
fn non_simple_module_fails_expectation() {
    let r = qsaa(&["verma", "--l", "3", "--p", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["verdicts"]["simple"], false);
    assert_eq!(v["verdicts"]["indecomposable"], true);
    assert_eq!(v["verdicts"]["witness_dim"], 9);
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "q.json", &v["module"].to_string());
    let plain = qsaa(&["verify", "--module", &path]);
    assert_eq!(plain.code, 0);
    assert_eq!(plain.json()["simplicity"]["verdict"], "not-simple");
    assert_eq!(qsaa(&["verify", "--module", &path, "--expect-simple"]).code, 1);
}

#[test]
fn closure_guard_exits_3() {
    let built = qsaa(&["build", "m1", "--l", "3", "--mu", "1,2,1,1"]);
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "m.json", &built.stdout);
    assert_eq!(qsaa(&["verify", "--module", &path, "--max-closure-dim", "4"]).code, 3);
    assert_eq!(qsaa(&["classify", "--module", &path, "--max-closure-dim", "4"]).code, 3);
    assert_eq!(qsaa(&["verma", "--l", "3", "--p", "3", "--max-closure-dim", "20"]).code, 3);
    assert_eq!(qsaa(&["verma", "--l", "3", "--p", "3", "--max-closure-dim", "27"]).code, 0);
}

#[test]
fn verma_census() {
    let v = qsaa(&["verma", "--l", "3", "--p", "2", "--lambda1", "2", "--lambda2", "q", "--census"]).json();
    let census = v["census"].as_array().unwrap();
    assert_eq!(census.len(), 18);
    assert_eq!(census.iter().filter(|c| c["member"] == 1).count(), 9);
    assert_eq!(census[0]["vector"], "f(0,0)");
    assert_eq!(census[0]["member"], "full");
}

#[test]
fn smash_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let n1 = qsaa(&["smash", "build-n1", "--l", "3", "--params", "1,1,q,2,1"]);
    assert_eq!(n1.code, 0, "{}", n1.stderr);
    let n1_path = write(dir.path(), "n1.json", &n1.stdout);
    assert_eq!(n1.json()["presentation"], "B");

    let lifted = qsaa(&["smash", "lift", "--module", &n1_path]);
    assert_eq!(lifted.code, 0, "{}", lifted.stderr);
    assert_eq!(lifted.json()["presentation"], "A");
    let a_path = write(dir.path(), "a.json", &lifted.stdout);
    let v = qsaa(&["verify", "--module", &a_path, "--expect-simple"]);
    assert_eq!(v.code, 0, "{}", v.stdout);

    let e = qsaa(&["smash", "eigen", "--module", &n1_path]).json();
    assert_eq!(e["params"]["xi"], "2");
    assert_eq!(e["params"]["alpha"], "1");

    let p = qsaa(&["smash", "pideg", "--l", "7"]).json();
    assert_eq!(p["pideg"], 49);
    assert_eq!(p["qsaa_pideg"], 49);

    assert_eq!(qsaa(&["smash", "lift", "--module", &a_path]).code, 2);
}

#[test]
fn normal_form_command() {
    let v = qsaa(&["normal-form", "--l", "3", "--expr", "Y^3*X - X*Y^3"]).json();
    assert_eq!(v["normal_form"], "0");
    let v = qsaa(&["normal-form", "--algebra", "A", "--l", "4", "--expr", "K*K^-1"]).json();
    assert_eq!(v["normal_form"], "1");
}

#[test]
fn csv_output() {
    let r = qsaa(&["pideg", "--l", "5", "--bruteforce", "--format", "csv"]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("check,status,details"));
    assert!(lines.all(|l| l.split(',').nth(1) == Some("pass")));
    let m = qsaa(&["build", "m3", "--l", "3", "--mu", "1,1", "--format", "csv"]);
    assert!(m.stdout.starts_with("generator,row,col,value\n"));
}

#[test]
fn suite_is_deterministic_across_pool_sizes() {
    let one = qsaa_env(&["suite", "--l", "3"], &[("QSAA_WORKERS", "1")], None);
    let four = qsaa_env(&["suite", "--l", "3"], &[("QSAA_WORKERS", "4")], None);
    assert_eq!(one.code, 0, "{}", one.stdout);
    assert_eq!(four.code, 0);
    assert_eq!(strip_timing(one.json()), strip_timing(four.json()));
    let v = one.json();
    let results = v["results"].as_array().unwrap();
    assert!(results.len() >= 30);
    assert!(results.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn suite_reports_guarded_checks() {
    let r = qsaa_env(&["suite", "--l", "4", "--max-closure-dim", "4"], &[("QSAA_WORKERS", "2")], None);
    assert_eq!(r.code, 3, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["status"], "undetermined");
    assert_eq!(v["skipped"], serde_json::json!(["verma quotients", "subalgebra modules"]));
}
