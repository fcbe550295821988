use std::path::Path;
use std::process::{Command, Output};

use macsym::coeffring::RationalFunction;
use macsym::symfunc::{JsonTerm, SymFunc};
use serde_json::Value;

fn macsym(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_macsym"));
    cmd.args(args).env_remove("MACDONALD_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("MACDONALD_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rf(s: &str) -> RationalFunction {
    RationalFunction::parse(s).unwrap()
}

#[test]
fn printed_coefficient_and_catalan() {
    let o = macsym(&["ccoef", "--factors", "[2,2];[2,1,1]", "--target", "[2,1,1]"], None);
    assert!(o.status.success());
    assert_eq!(rf(stdout(&o).trim()), rf("-q^3*t - q^2*t^2 - q*t^3 - q^2*t - t^2*q + q^2 + q*t + t^2"));
    let o = macsym(&["catalan", "--n", "2", "--m", "1"], None);
    assert_eq!(stdout(&o).trim(), "q + t");
}

#[test]
fn exit_codes() {
    let o = macsym(&["ccoef", "--factors", "[2]", "--target", "[1,1,1]"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("HashtagError"));
    assert_eq!(macsym(&["catalan", "--n", "two"], None).status.code(), Some(2));
    assert_eq!(macsym(&["ccoef", "--factors", "[1,2]", "--target", "[3]"], None).status.code(), Some(2));
    assert_eq!(macsym(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(macsym(&["--max-n", "3", "macdonald", "--n", "4"], None).status.code(), Some(2));
}

#[test]
fn json_output_parses_back() {
    let o = macsym(&["--json", "macdonald", "--n", "3"], None);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    for item in v["polynomials"].as_array().unwrap() {
        let terms: Vec<JsonTerm> = serde_json::from_value(item["schur"].clone()).unwrap();
        let f = SymFunc::from_json(1, &terms).unwrap();
        assert_eq!(f.eval_at_one(), RationalFunction::one());
    }
    let o = macsym(&["--json", "kostka", "--n", "3"], None);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in v["matrix"].as_array().unwrap() {
        for entry in row.as_array().unwrap() {
            rf(entry.as_str().unwrap());
        }
    }
    let o = macsym(&["--json", "nabla", "--n", "2"], None);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let terms: Vec<JsonTerm> = serde_json::from_value(v["result"].clone()).unwrap();
    let text = stdout(&macsym(&["nabla", "--n", "2"], None));
    assert_eq!(SymFunc::from_json(1, &terms).unwrap(), macsym::symfunc::parse_symfunc(text.trim()).unwrap());
    let o = macsym(&["--json", "kernel", "--n", "1", "--genus", "1", "--points", "2"], None);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let term = &v["schur"][0];
    assert_eq!(rf(term["base"].as_str().unwrap()), rf("Z + W"));
    assert_eq!(rf(term["epsilon"].as_str().unwrap()), rf("-2"));
}

#[test]
fn cache_directory_is_populated_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let first = macsym(&["kostka", "--n", "3"], Some(dir.path()));
    assert!(first.status.success());
    for n in 1..=3 {
        assert!(dir.path().join(format!("macdonald-{n}.json")).exists());
    }
    let second = macsym(&["kostka", "--n", "3"], Some(dir.path()));
    assert_eq!(stdout(&first), stdout(&second));
    std::fs::write(dir.path().join("macdonald-3.json"), "garbage").unwrap();
    let third = macsym(&["kostka", "--n", "3"], Some(dir.path()));
    assert_eq!(stdout(&third), stdout(&first));
    assert!(String::from_utf8_lossy(&third.stderr).contains("warning"));
}

#[test]
fn geometry_commands() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let rs = r#"{"multiplicities": [1, 1], "jordan": [[1], [1]]}"#;
    std::fs::write(&spec, format!(r#"{{"genus": 0, "n": 2, "punctures": [{rs}, {rs}, {rs}, {rs}]}}"#)).unwrap();
    let o = macsym(&["poincare", "--spec", spec.to_str().unwrap()], None);
    assert_eq!(rf(stdout(&o).trim()), rf("v^4 + 4*v^2"));
    let twist = dir.path().join("twist.json");
    std::fs::write(&twist, r#"[{"puncture": 0, "classes": [{"block_size": 1, "cycle_type": [1, 1]}]}]"#).unwrap();
    let o = macsym(&["poincare", "--spec", spec.to_str().unwrap(), "--twist", twist.to_str().unwrap()], None);
    assert_eq!(rf(stdout(&o).trim()), rf("v^4 + 4*v^2"));
    let o = macsym(&["ctrace", "--mu", "[1,1]", "--nu", "[1,1]"], None);
    assert_eq!(stdout(&o).trim(), "t");
    let o = macsym(&["mixed-hodge", "--mu", "[2,1]", "--nu", "[1,1,1]"], None);
    assert_eq!(rf(stdout(&o).trim()), rf("q^2 + q*t + t^2 + q + t"));
    let missing = macsym(&["poincare", "--spec", "/nonexistent.json"], None);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_macdonald_suite() {
    let o = macsym(&["verify", "--suite", "macdonald", "--max-n", "5"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains(" PASS: ")).count(), 3);
}
