use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tamecurve")).args(args).env_remove("TAMECURVE_MAX_DEGREE").output().unwrap()
}

fn run_spec(command: &str, name: &str, extra: &[&str]) -> Output {
    let path = spec(name);
    let mut args = vec![command, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_noncommutative_tower() {
    let out = run_spec("classify", "f2_u4", &[]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("Noncommutative (s = 2); k(X) = k<U,V>/(UV+VU+1, V^2+u^4*U^2)"));
}

#[test]
fn classify_kronecker() {
    let out = run_spec("classify", "kronecker_f5", &["--json"]);
    let v = json(&out);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["ok"], true);
    assert_eq!(v["result"]["summary"], "Commutative (Brauer-Severi); k(X) = k(T)");
}

#[test]
fn points_table() {
    let out = run_spec("points", "f3_tower", &["--max-degree", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let primes: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(primes, ["X", "Y^2", "Y^2+X^2", "Y^2+2*X^2"]);
}

#[test]
fn max_degree_from_environment() {
    let path = spec("f3_tower");
    let out = Command::new(env!("CARGO_BIN_EXE_tamecurve"))
        .args(["points", path.to_str().unwrap(), "--json"])
        .env("TAMECURVE_MAX_DEGREE", "1")
        .output()
        .unwrap();
    assert_eq!(json(&out)["result"]["max_degree"], 1);
}

#[test]
fn ladder_verify_passes() {
    let dir = std::env::temp_dir().join(format!("tamecurve-dump-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dump = dir.join("ladder.json");
    let out = run_spec("ladder-verify", "hamilton", &["--depth", "3", "--dump-matrices", dump.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.starts_with("relations: XY-YX, XZ-ZX, ZY-YZ, Z^2+Y^2+X^2"));
    assert_eq!(text.lines().filter(|l| l.trim_end().ends_with("pass")).count(), 3);
    let dumped: Value = serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(dumped.as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ghosts_and_translation() {
    let out = run_spec("ghosts", "q_sqrt2_sqrt3", &["--json"]);
    assert_eq!(json(&out)["result"]["structure"], "Klein four");
    let out = run_spec("ghosts", "twotwo_f9", &[]);
    assert!(stdout(&out).starts_with("ghost group: cyclic of order 2"));
    let out = run_spec("ar-translate", "q_sqrt2_sqrt3", &["--json"]);
    let v = json(&out);
    assert_eq!(v["result"]["ghost"], "X -> -X, Y -> Y, Z -> Z");
    assert_eq!(v["result"]["twisted_relations"][3], "Z^2+3*Y^2+2*X^2");
}

#[test]
fn split_quaternions_have_no_ghost_group() {
    let out = run_spec("ghosts", "f2_quaternion", &["--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["ok"], false);
    assert_eq!(v["error"]["kind"], "NotDivisionAlgebra");
}

#[test]
fn bad_spec_exits_with_two() {
    let dir = std::env::temp_dir().join(format!("tamecurve-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"base_field": {"kind": "finite", "p": 4}, "bimodule": {"kind": "kronecker"}}"#).unwrap();
    let out = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&path, r#"{"base_field": {"kind": "rationals"}, "bimodule": {"kind": "kronecker"}, "colour": 1}"#).unwrap();
    let out = run(&["classify", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "Parse");
    let out = run(&["classify", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output_is_deterministic() {
    for (command, name) in
        [("algebra", "f3_tower"), ("points", "f3_tower"), ("ghosts", "q_fourth_root_2"), ("algebra", "twotwo_f8")]
    {
        let first = run_spec(command, name, &["--json", "--seed", "5"]);
        let second = run_spec(command, name, &["--json", "--seed", "5"]);
        assert!(first.status.success(), "{command} {name}");
        assert_eq!(first.stdout, second.stdout, "{command} {name}");
    }
}

#[test]
fn every_bundled_spec_loads() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs");
    let mut count = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap();
        if !name.ends_with(".json") || name.ends_with(".schema.json") {
            continue;
        }
        let out = run(&["function-field", path.to_str().unwrap(), "--json"]);
        let v = json(&out);
        if name == "f2_quaternion.json" {
            // split, so there is no curve
            assert_eq!(v["error"]["kind"], "NotDivisionAlgebra");
        } else {
            assert_eq!(v["ok"], true, "{name}: {v}");
            assert!(v["result"]["s"].as_u64().unwrap() >= 1);
        }
        count += 1;
    }
    assert_eq!(count, 11);
}
