use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn neumann(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_neumann"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = neumann(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\nstdout: {out}\nstderr: {err}"));
    (code, v)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("neumann-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_single_zone() {
    let (code, v) = json(&["verify", "--zone", "I"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], true);
    let zones = v["zones"].as_array().unwrap();
    assert_eq!(zones.len(), 1);
    assert!(zones[0]["certified_upper"].as_f64().unwrap() < 0.0);
    assert_eq!(zones[0]["points_evaluated"], 23_556);
    assert_eq!(v["lip_source"], "paper");
}

#[test]
fn verify_with_computed_constants() {
    let (code, v) = json(&["verify", "--zone", "II", "--lip", "computed", "--workers", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["lip_source"], "computed");
    let la = v["zones"][0]["lip_a"].as_f64().unwrap();
    assert!(la > 0.0 && la < 1048.9639);
}

#[test]
fn verify_dumps_grid() {
    let path = scratch("grid.csv");
    let (code, _) = json(&["verify", "--zone", "I", "--dump-grid", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,c,F"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 23_556);
    let f: f64 = rows[0].split(',').nth(2).unwrap().parse().unwrap();
    assert!(f < 0.0);
}

#[test]
fn failed_verdict_exits_two() {
    let (code, v) = json(&["verify", "--zone", "I", "--slack", "1.0"]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], false);
    assert!(!v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn bounds_of_named_shapes() {
    let (code, v) = json(&["bounds", "--shape", "square"]);
    assert_eq!(code, 0);
    assert!((v["scaled"]["width_upper"].as_f64().unwrap() - 16.0 * PI * PI).abs() < 1e-10);

    let (code, v) = json(&["bounds", "--shape", "hexagon:0.25"]);
    assert_eq!(code, 0);
    let (p, a) = (v["metrics"]["perimeter"].as_f64().unwrap(), v["metrics"]["area"].as_f64().unwrap());
    assert!((p * p / a - 42.0 * 3f64.sqrt() / 5.0).abs() < 1e-12);
}

#[test]
fn bounds_from_polygon_file_with_fem() {
    let path = scratch("tri.json");
    std::fs::write(&path, r#"{"vertices": [[0.0, 0.0], [1.0, 0.0], [0.5, 0.8660254037844386]]}"#).unwrap();
    let (code, v) = json(&["bounds", "--polygon", path.to_str().unwrap(), "--fem", "--h", "0.05"]);
    assert_eq!(code, 0);
    assert_eq!(v["fem"]["sandwich"], true);
    let mu = v["fem"]["mu1"].as_f64().unwrap();
    assert!((mu / (16.0 * PI * PI / 9.0) - 1.0).abs() < 5e-3);
}

#[test]
fn fem_on_square_writes_mesh_and_report() {
    let (mesh, report) = (scratch("mesh.json"), scratch("fem.json"));
    let (code, out, _) = neumann(&[
        "--output",
        report.to_str().unwrap(),
        "fem",
        "--shape",
        "square",
        "--h",
        "0.05",
        "--dump-mesh",
        mesh.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!((v["mu1"].as_f64().unwrap() / (PI * PI) - 1.0).abs() < 1e-2);
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&mesh).unwrap()).unwrap();
    assert!(m["nodes"].as_array().unwrap().len() > 100 && m["elements"].is_array());
}

#[test]
fn crossval_small_run() {
    let (code, v) = json(&["crossval", "--samples", "8", "--near", "2", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert!(v["max_error"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn sweep_is_reproducible() {
    let args = ["sweep", "--count", "4", "--seed", "9", "--h-rel", "0.08"];
    let (code, a, _) = neumann(&args);
    let (_, b, _) = neumann(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn demo_exceeds_target() {
    let (code, v) = json(&["demo-nonexistence", "--a", "0.2", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["exceeds_target"], true);
    assert!(v["p2_mu1"].as_f64().unwrap() > 16.0 * PI * PI);
}

#[test]
fn operational_errors_exit_one() {
    assert_eq!(neumann(&["bounds", "--shape", "blob"]).0, 1);
    assert_eq!(neumann(&["bounds", "--shape", "zigzag:0.2:4"]).0, 1);
    assert_eq!(neumann(&["bounds", "--polygon", "/nonexistent/poly.json"]).0, 1);
    assert_eq!(neumann(&["verify", "--zone", "IV"]).0, 1);
    assert_eq!(neumann(&["demo-nonexistence", "--a", "0.2", "--n", "4", "--h", "0.1"]).0, 1);
    assert_eq!(neumann(&[]).0, 1);
    assert_eq!(neumann(&["--help"]).0, 0);
}
