use std::process::Command;

use serde_json::Value;
use singer_cli::{run, EXIT_ARGUMENTS, EXIT_CAP, EXIT_MISMATCH, EXIT_OK};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("singer").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = call(&full);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_singer")).args(args).output().unwrap()
}

#[test]
fn qp_dimension() {
    let (code, out, _) = call(&["qp", "--k", "4", "--d", "13"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("35"), "{out}");
    assert_eq!(json(&["qp", "--k", "4", "--d", "13"])["result"]["dim"], 35);
}

#[test]
fn homology_names_d0() {
    let v = json(&["lambda", "homology", "--s", "4", "--w", "14"]);
    assert_eq!(v["result"]["dim"], 1);
    assert_eq!(v["result"]["names"][0], "d0");
}

#[test]
fn transfer_c0() {
    let v = json(&["transfer", "--k", "3", "--d", "8"]);
    assert_eq!(v["result"]["verdict"], "iso");
    assert_eq!(v["result"]["images"][0]["names"][0], "c0");
    assert_eq!(v["result"]["images"][0]["cycle"], "L2 L3 L3");
}

#[test]
fn lambda_normalize_and_diff() {
    let v = json(&["lambda", "normalize", "--expr", "L1 L1 L6"]);
    assert_eq!(v["result"]["normal_form"], "L2 L3 L3");
    let (code, out, _) = call(&["lambda", "diff", "--expr", "L7"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.trim_end().ends_with('0'), "{out}");
}

#[test]
fn invariants_and_dual_side() {
    let v = json(&["invariants", "--k", "3", "--d", "8", "--group", "gl"]);
    assert_eq!(v["result"]["dim"], 1);
    let v = json(&["coinvariants", "--k", "3", "--d", "8"]);
    assert_eq!(v["result"]["dim"], 1);
    let v = json(&["primitives", "--k", "3", "--d", "8"]);
    assert_eq!(v["result"]["dim"], 15);
    let v = json(&["kameko", "--k", "3", "--m", "2"]);
    assert_eq!(v["result"]["rank"], 3);
}

#[test]
fn json_round_trips_byte_for_byte() {
    let commands: [&[&str]; 5] = [
        &["--json", "qp", "--k", "3", "--d", "14", "--basis"],
        &["--json", "lambda", "homology", "--s", "3", "--w", "8"],
        &["--json", "transfer", "--k", "4", "--d", "14"],
        &["--json", "kameko", "--k", "4", "--m", "5"],
        &["--json", "lambda", "normalize", "--expr", "L0 L5 + L3 L3"],
    ];
    for args in commands {
        let (code, out, err) = call(args);
        assert_eq!(code, EXIT_OK, "{err}");
        let line = out.trim_end_matches('\n');
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), line);
        for key in ["command", "inputs", "result", "timing"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn argument_errors_exit_2() {
    assert_eq!(call(&["qp", "--k", "4"]).0, EXIT_ARGUMENTS);
    assert_eq!(call(&["qp", "--k", "x", "--d", "3"]).0, EXIT_ARGUMENTS);
    assert_eq!(call(&["table", "--name", "nope"]).0, EXIT_ARGUMENTS);
    assert_eq!(call(&["lambda", "normalize", "--expr", "L1 +"]).0, EXIT_ARGUMENTS);
    assert_eq!(call(&["kameko", "--k", "0", "--m", "1"]).0, EXIT_ARGUMENTS);
}

#[test]
fn caps_exit_3() {
    let (code, _, err) = call(&["qp", "--k", "2", "--d", "500"]);
    assert_eq!(code, EXIT_CAP);
    assert!(!err.is_empty());
    assert_eq!(call(&["lambda", "homology", "--s", "30", "--w", "10"]).0, EXIT_CAP);
    // the flag moves the cap; a separate process keeps it from leaking
    let o = binary(&["--max-degree", "10", "qp", "--k", "2", "--d", "11"]);
    assert_eq!(o.status.code(), Some(EXIT_CAP));
    let o = binary(&["--max-degree", "10", "qp", "--k", "2", "--d", "10"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
}

#[test]
fn doctored_table_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name": "bad", "title": "wrong on purpose", "entries": [
            {"label": "x", "quantity": "qp_dim", "k": 4, "degree": 13, "expected": 35},
            {"label": "y", "quantity": "qp_dim", "k": 4, "degree": 5, "expected": 16}
        ]}"#,
    )
    .unwrap();
    let (code, out, _) = call(&["table", "--file", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("MISMATCH"), "{out}");
}

#[test]
fn every_bundled_table_reproduces() {
    for name in singer_cli::tables::NAMES {
        let (code, out, err) = call(&["table", "--name", name]);
        assert_eq!(code, EXIT_OK, "{name}: {out}{err}");
        assert!(!out.contains("MISMATCH"));
    }
}

#[test]
fn threads_do_not_change_output() {
    let one = without_timing(json(&["--threads", "1", "table", "--name", "qp3"]));
    let four = without_timing(json(&["--threads", "4", "table", "--name", "qp3"]));
    assert_eq!(one, four);
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let strip = |o: std::process::Output| {
        assert_eq!(o.status.code(), Some(EXIT_OK));
        without_timing(serde_json::from_slice(&o.stdout).unwrap())
    };
    let args = ["--json", "qp", "--k", "4", "--d", "15", "--basis"];
    let plain = strip(binary(&args));
    let mut cached_args = vec!["--cache", cache];
    cached_args.extend(args);
    let cold = strip(binary(&cached_args));
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
    let warm = strip(binary(&cached_args));
    assert_eq!(plain, cold);
    assert_eq!(plain, warm);
}
