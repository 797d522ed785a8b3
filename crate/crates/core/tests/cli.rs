//! The `stripes` binary: formats, determinism and exit codes.

use std::process::{Command, Output};

fn stripes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stripes"))
        .args(args)
        .env_remove("STRIPES_ABS_TOL")
        .output()
        .expect("run stripes")
}

#[test]
fn scan_writes_one_csv_row_per_cell() {
    let out = stripes(&["scan", "--J", "4", "--h-max", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("h1,h2,class,energy,err_bound"));
    // 36 finite cells h1 >= h2 and 8 stripe cells
    assert_eq!(lines.count(), 36 + 8);
}

#[test]
fn output_is_deterministic() {
    let args = ["--seed", "5", "verify", "rp", "--L", "12", "--J", "2", "--samples", "4"];
    let a = stripes(&args);
    let b = stripes(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(stripes(&["stripe", "--J", "6"]).status.code(), Some(0));
    assert_eq!(stripes(&["stripe", "--J", "0"]).status.code(), Some(2));
    assert_eq!(stripes(&["checkerboard", "--J", "2", "--h1", "0", "--h2", "1"]).status.code(), Some(2));
    assert_eq!(stripes(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(stripes(&["--abs-tol", "1e-30", "stripe", "--J", "2", "--h", "3"]).status.code(), Some(3));
}

#[test]
fn tolerance_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_stripes"))
        .args(["stripe", "--J", "2", "--h", "3"])
        .env("STRIPES_ABS_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn checkerboard_json_record() {
    let out = stripes(&["checkerboard", "--J", "3", "--h1", "2", "--h2", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let e = v["energy"].as_f64().expect("energy field");
    assert_eq!(v["class"], "long");
    assert!(e.is_finite());
}
