use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_flagorbit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).unwrap()
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("flagorbit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const P_G_EXAMPLE: &str = r#"{"field":"rational","n":2,"lines":[["1","0"],["0","1"],["1","1"],["1","0"]]}"#;

#[test]
fn count_only() {
    let out = run(&["enumerate-ptypes", "--n", "2", "--m", "3", "--count-only"], None);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"count":5}"#);
    let out = run(&["enumerate-ptypes", "--n", "2", "--m", "4"], None);
    let v = json(&out.stdout);
    assert_eq!(v["count"], 9);
    assert_eq!(v["ptypes"].as_array().unwrap().len(), 9);
}

#[test]
fn classify_worked_example_from_stdin() {
    let out = run(&["classify"], Some(P_G_EXAMPLE));
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["components"][0]["q"], serde_json::json!([["1", "0"]]));
    assert_eq!(v["ptype"]["K"][0]["rank"], 2);
}

#[test]
fn classify_from_file() {
    let path = temp_file("pg.json", P_G_EXAMPLE);
    let out = run(&["classify", "--input", path.to_str().unwrap()], None);
    assert!(out.status.success());
    assert_eq!(json(&out.stdout)["free_multiplicity"], 0);
}

#[test]
fn represent_then_classify() {
    let req = r#"{"n":4,"ptype":{"I":[[6]],"J":[],"K":[{"indices":[1,2,3,4,5],"rank":2}]},"q":[[["1","3/2"],["0","1"]]]}"#;
    let rep = run(&["represent"], Some(req));
    assert!(rep.status.success(), "{}", String::from_utf8_lossy(&rep.stderr));
    let rec = run(&["classify"], Some(std::str::from_utf8(&rep.stdout).unwrap()));
    let v = json(&rec.stdout);
    assert_eq!(v["ptype"], json(br#"{"I":[[6]],"J":[],"K":[{"indices":[1,2,3,4,5],"rank":2}]}"#));
    assert_eq!(v["components"][0]["q"], serde_json::json!([["1", "3/2"], ["0", "1"]]));
    assert_eq!(v["free_multiplicity"], 1);
}

#[test]
fn equiv_with_witness() {
    let a = temp_file("a.json", r#"{"field":"rational","n":2,"lines":[["1","0"],["1","0"],["0","1"],["1","1"]]}"#);
    let b = temp_file("b.json", r#"{"field":"rational","n":2,"lines":[["0","1"],["0","1"],["1","0"],["1","1"]]}"#);
    let out = run(&["equiv", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()], None);
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["witness"], serde_json::json!([["0", "1"], ["1", "0"]]));

    let c = temp_file("c.json", r#"{"field":"rational","n":2,"lines":[["1","0"],["0","1"],["1","1"],["1","0"]]}"#);
    let out = run(&["equiv", "--a", a.to_str().unwrap(), "--b", c.to_str().unwrap()], None);
    assert_eq!(json(&out.stdout), serde_json::json!({"equivalent": false, "witness": null}));
}

#[test]
fn census_check() {
    let out = run(&["census", "--n", "2", "--m", "4", "--prime", "2", "--check"], None);
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["brute_force_orbits"], 14);
    assert_eq!(v["burnside_orbits"], 14);
    assert_eq!(v["agreement"], true);
}

#[test]
fn invariants_report() {
    let p = temp_file("pg-ptype.json", r#"{"I":[],"J":[],"K":[{"indices":[1,2,3,4],"rank":2}]}"#);
    let out = run(&["invariants", "--n", "2", "--m", "4", "--ptype", p.to_str().unwrap()], None);
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["open_orbit"]["exists"], false);
    assert_eq!(v["finite_type"], false);
    assert_eq!(v["ambient_tits_form"], 0);
    assert_eq!(v["stratum"]["orbit_dimension"], 3);
    assert_eq!(v["stratum"]["stabilizer"]["dimension"], 1);
}

#[test]
fn domain_errors_exit_one_with_code() {
    let out = run(&["census", "--n", "2", "--m", "3", "--prime", "4"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert_eq!(json(&out.stderr)["error"]["code"], "not_prime");

    let out = run(&["classify"], Some(r#"{"field":"rational","n":2,"lines":[["0","0"]]}"#));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stderr)["error"]["code"], "zero_vector");

    let out = run(&["classify"], Some("not json"));
    assert_eq!(json(&out.stderr)["error"]["code"], "format");

    let out = run(&["census", "--n", "3", "--m", "6", "--prime", "3"], None);
    assert_eq!(json(&out.stderr)["error"]["code"], "budget_exceeded");
}

#[test]
fn unknown_flags_are_errors() {
    let out = run(&["enumerate-ptypes", "--n", "2", "--m", "3", "--verbose"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stderr)["error"]["code"], "usage");
}

#[test]
fn output_is_deterministic_across_runs_and_threads() {
    let args = ["census", "--n", "2", "--m", "4", "--prime", "3"];
    let one = run(&[&["--threads", "1"], &args[..]].concat(), None).stdout;
    let many = run(&[&["--threads", "4"], &args[..]].concat(), None).stdout;
    let again = run(&args, None).stdout;
    assert_eq!(one, many);
    assert_eq!(one, again);
    let e1 = run(&["enumerate-ptypes", "--n", "3", "--m", "5", "--threads", "1"], None).stdout;
    let e2 = run(&["enumerate-ptypes", "--n", "3", "--m", "5", "--threads", "3"], None).stdout;
    assert_eq!(e1, e2);
}

#[test]
fn selfcheck_passes() {
    let out = run(&["selfcheck"], None);
    assert!(out.status.success());
    assert_eq!(json(&out.stdout)["passed"], true);
}
