use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn eph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eph")).env_remove("EPH_SEED").args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = eph(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn transform_is_exact() {
    let v = json(&["--json", "transform", "--g", "2,1,1,1", "--point", "1/3,1/2"]);
    // (2z + 1)/(z + 1) at z = 1/3 + i/2 with i² = −1
    let u: f64 = 1.0 / 3.0;
    let w: f64 = 0.5;
    let den = (u + 1.0).powi(2) + w * w;
    let expect_u = ((2.0 * u + 1.0) * (u + 1.0) + 2.0 * w * w) / den;
    let expect_v = w / den;
    let p = v["point"].as_array().unwrap();
    let parse = |s: &Value| {
        let s = s.as_str().unwrap();
        match s.split_once('/') {
            Some((a, b)) => a.parse::<f64>().unwrap() / b.parse::<f64>().unwrap(),
            None => s.parse().unwrap(),
        }
    };
    assert!((parse(&p[0]) - expect_u).abs() < 1e-12);
    assert!((parse(&p[1]) - expect_v).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(eph(&["--sigma", "2", "measure", "--p1", "0,1", "--p2", "1,1"]).status.code(), Some(2));
    assert_eq!(eph(&["transform", "--g", "1,1,1,1", "--point", "0,1"]).status.code(), Some(2));
    assert_eq!(eph(&["figure", "no-such-figure"]).status.code(), Some(2));
    assert_eq!(eph(&["verify", "--group", "no.such-group", "--trials", "1"]).status.code(), Some(2));
}

#[test]
fn stdin_supplies_arguments() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_eph"))
        .args(["--json", "--stdin", "relate"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"c1": [1, 0, 0, -1], "c2": [1, 2, 0, 3]}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn verify_is_seeded() {
    let args = ["--json", "verify", "--trials", "3", "--group", "moebius.group-action"];
    let a = eph(&args).stdout;
    assert_eq!(a, eph(&args).stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_eph")).env("EPH_SEED", "1").args(args).output().unwrap();
    assert_eq!(env.stdout, a);
    let other = Command::new(env!("CARGO_BIN_EXE_eph")).env("EPH_SEED", "2").args(args).output().unwrap();
    let seed = |o: &[u8]| serde_json::from_slice::<Value>(o).unwrap()["seed"].clone();
    assert_eq!(seed(&other.stdout), 2);
}

#[test]
fn figures_list_and_render() {
    let out = eph(&["figure", "--list"]);
    let names = String::from_utf8(out.stdout).unwrap();
    assert_eq!(names.lines().count(), 10);
    let svg = eph(&["figure", "eph-cycle"]).stdout;
    assert!(svg.starts_with(b"<svg"));
}
