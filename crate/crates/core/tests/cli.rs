use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zetawalk"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn re(v: &Value) -> f64 {
    v[0].as_f64().unwrap()
}

const TRIANGLE: &str = "0 1\n1 2\n2 0\n";
const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn zeta_of_triangle() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "c3.txt", TRIANGLE);
    let v = json(&run(&["zeta", "--graph", s(&g), "--order", "7"]));
    assert_eq!(v["preset"], "ihara");
    for key in ["exponential", "euler", "hashimoto"] {
        let coeffs: Vec<f64> = v["series"][key].as_array().unwrap().iter().map(re).collect();
        assert_eq!(coeffs, [1.0, 0.0, 0.0, 2.0, 0.0, 0.0, 3.0, 0.0], "{key}");
    }
    assert!(v["max_ihara_residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn zeta_of_tree_is_one() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p4.txt", "0 1\n1 2\n2 3\n");
    let v = json(&run(&["zeta", "--graph", s(&g)]));
    let coeffs: Vec<f64> = v["series"]["hashimoto"].as_array().unwrap().iter().map(re).collect();
    assert_eq!(coeffs[0], 1.0);
    assert!(coeffs[1..].iter().all(|&x| x == 0.0));
}

#[test]
fn missing_file_exits_with_io_code() {
    let out = run(&["zeta", "--graph", "/nonexistent/graph.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/graph.txt"));
}

#[test]
fn malformed_graph_exits_with_parse_code() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "bad.txt", "0 1\n1 x\n");
    let out = run(&["spectrum", "--graph", s(&g)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn walk_on_triangle_returns_after_three_steps() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "c3.txt", TRIANGLE);
    let amps = dir.path().join("amps.json");
    let out = run(&["walk", "--graph", s(&g), "--steps", "3", "--start-arc", "0", "--amplitudes", s(&amps)]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("step,vertex,probability"));
    let rows: Vec<(u64, usize, f64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 4 * 3);
    // Arc 0 is 0 -> 1, so all probability starts at vertex 1.
    assert_eq!(rows[1], (0, 1, 1.0));
    for v in 0..3 {
        assert!((rows[9 + v].2 - rows[v].2).abs() < 1e-12);
    }
    let a: Value = serde_json::from_str(&fs::read_to_string(&amps).unwrap()).unwrap();
    assert_eq!(a["time"], 3);
    assert!((a["amplitudes"][0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn walk_json_output() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.txt", K4);
    let v = json(&run(&["walk", "--graph", s(&g), "--steps", "50", "--format", "json"]));
    assert_eq!(v["steps"].as_array().unwrap().len(), 51);
    assert!(v["norm_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn spectrum_of_k4() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.txt", K4);
    let v = json(&run(&["spectrum", "--graph", s(&g)]));
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 12);
    assert_eq!(v["periodicity"]["periodic"], false);
    assert!(v["periodicity"]["period"].is_null());
    assert_eq!(v["konno_sato"]["hypothesis_holds"], true);
    assert!(v["konno_sato"]["residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["cyclotomic"]["all_roots_of_unity"], false);
    assert_eq!(v["char_poly"]["exact"][12], "1");
}

#[test]
fn spectrum_of_cycle_is_periodic() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let v = json(&run(&["spectrum", "--graph", s(&g)]));
    assert_eq!(v["periodicity"]["period"], 5);
    assert_eq!(v["cyclotomic"]["period"], 5);
}

#[test]
fn construct_sato_at_zero_phase_gives_grover_weights() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.txt", K4);
    let v = json(&run(&["construct", "--graph", s(&g), "--sato", "--phase", "0"]));
    assert_eq!(v["family"], "sato");
    let tau = v["tau"].as_array().unwrap();
    assert_eq!(tau.len(), 12);
    for t in tau {
        assert!((re(t) - 2.0 / 3.0).abs() < 1e-14 && t[1].as_f64().unwrap() == 0.0);
    }
    assert!(v["upsilon"].as_array().unwrap().iter().all(|u| re(u) == 1.0));

    // The emitted file feeds back into the other commands.
    let w = dir.path().join("w.json");
    assert!(run(&["--out", s(&w), "construct", "--graph", s(&g), "--sato", "--phase", "0.4"]).status.success());
    let u = json(&run(&["unitarity", "--graph", s(&g), "--weights", s(&w)]));
    assert_eq!(u["unitary"], true);
    assert_eq!(u["criterion"], "sato");
    let sp = json(&run(&["spectrum", "--graph", s(&g), "--weights", s(&w)]));
    assert!(sp["konno_sato"].is_null());
}

#[test]
fn construct_gw_round_trips_through_unitarity() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "mg.txt", "0 1\n0 1\n1 1\n1 2\n");
    let w = dir.path().join("w.json");
    let out = run(&["--out", s(&w), "construct", "--graph", s(&g), "--gw", "--r-fraction", "0.5", "--upsilon-phases", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let u = json(&run(&["unitarity", "--graph", s(&g), "--weights", s(&w), "--criterion", "gw"]));
    assert_eq!(u["unitary"], true);
    assert_eq!(u["direct_unitary"], true);
}

#[test]
fn unitarity_reports_violations() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.txt", K4);
    let w = write(dir.path(), "w.json", &format!(r#"{{"preset": "sato", "params": {{"tau": [{}]}}}}"#, ["0.5"; 12].join(", ")));
    let v = json(&run(&["unitarity", "--graph", s(&g), "--weights", s(&w)]));
    assert_eq!(v["unitary"], false);
    assert_eq!(v["direct_unitary"], false);
    assert_eq!(v["agrees"], true);
    let viol = v["violations"].as_array().unwrap();
    assert!(!viol.is_empty());
    assert!(viol.iter().all(|x| x["condition"].as_str().unwrap().contains("tau magnitude")));
}

#[test]
fn non_unitary_walk_is_a_precondition_failure() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.txt", K4);
    let out = run(&["walk", "--graph", s(&g), "--preset", "ihara"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unitary"));
}

#[test]
fn invalid_arguments_are_rejected() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "c3.txt", TRIANGLE);
    assert!(!run(&["zeta", "--graph", s(&g), "--order", "0"]).status.success());
    assert!(!run(&["spectrum", "--graph", s(&g), "--tol", "0.5"]).status.success());
    assert!(!run(&["construct", "--graph", s(&g)]).status.success());
    assert_eq!(run(&["walk", "--graph", s(&g), "--start-arc", "6"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "mg.txt", "n 4\n0 1\n1 2\n2 0\n2 3\n3 3\n0 1\n");
    for args in [
        vec!["zeta", "--graph", s(&g), "--preset", "bartholdi", "--q", "0.5,0.25"],
        vec!["spectrum", "--graph", s(&g)],
        vec!["walk", "--graph", s(&g), "--steps", "25"],
        vec!["construct", "--graph", s(&g), "--gw", "--r-fraction", "-0.3"],
    ] {
        let (a, b) = (run(&args), run(&args));
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "c3.txt", TRIANGLE);
    let target = dir.path().join("z.json");
    let out = run(&["zeta", "--graph", s(&g), "--out", s(&target)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let direct = run(&["zeta", "--graph", s(&g)]);
    assert_eq!(fs::read(&target).unwrap(), direct.stdout);
}
