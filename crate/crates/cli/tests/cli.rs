use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn spinorsurf(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinorsurf"))
        .args(args)
        .current_dir(dir)
        .env_remove("SPINORSURF_OUT_DIR")
        .output()
        .expect("spawn spinorsurf")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('\t')))
        .unwrap_or_else(|| panic!("no `{key}` in\n{report}"))
}

#[test]
fn invalid_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = spinorsurf(dir.path(), &["soliton-surface"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("--mu"));

    // 2i lambda = mu is the pole of the Jost solution.
    let pole = spinorsurf(dir.path(), &["soliton-surface", "--mu", "1", "--lambda", "0,-0.5"]);
    assert_eq!(pole.status.code(), Some(2));

    let sign = spinorsurf(dir.path(), &["soliton-surface", "--mu", "1", "--sign", "0.5"]);
    assert_eq!(sign.status.code(), Some(2));

    let suite = spinorsurf(dir.path(), &["verify", "--suite", "nope"]);
    assert_eq!(suite.status.code(), Some(2));
}

#[test]
fn default_obj_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let out = spinorsurf(dir.path(), &["soliton-surface", "--mu", "1", "--lambda", "0,1", "--out", "s.obj"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout(&out);
    assert_eq!(field(&report, "vertices"), "7744");
    let text = fs::read_to_string(dir.path().join("s.obj")).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 121 * 64);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 120 * 63);
    let leak: f64 = field(&report, "imaginary_leakage").parse().unwrap();
    assert!(leak < 1e-10);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.toml"), "mu = 1.5\nnx = 11\nny = 7\nformat = \"csv\"\nout = \"cfg.csv\"\n").unwrap();
    let out = spinorsurf(dir.path(), &["soliton-surface", "--config", "run.toml", "--nx", "9"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(field(&stdout(&out), "vertices"), "63");
    let rows = fs::read_to_string(dir.path().join("cfg.csv")).unwrap().lines().count();
    assert_eq!(rows, 64);

    fs::write(dir.path().join("bad.toml"), "mu = 1\nbogus = 3\n").unwrap();
    let bad = spinorsurf(dir.path(), &["soliton-surface", "--config", "bad.toml"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn evolve_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_spinorsurf"))
        .args(["evolve", "--n", "128", "--dt", "1e-3", "--t-end", "0.01", "--record-every", "5"])
        .args(["--mesh-format", "csv", "--nx", "5", "--ny", "4"])
        .current_dir(dir.path())
        .env("SPINORSURF_OUT_DIR", "runs")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout(&out);
    assert_eq!(field(&report, "snapshots"), "3");
    assert!(field(&report, "tracking_error").parse::<f64>().unwrap() < 1e-3);
    let runs = dir.path().join("runs");
    let traj = fs::read_to_string(runs.join("trajectory.csv")).unwrap();
    assert_eq!(traj.lines().next(), Some("t,x,u"));
    assert_eq!(traj.lines().count(), 1 + 3 * 128);
    let inv = fs::read_to_string(runs.join("trajectory_invariants.csv")).unwrap();
    assert_eq!(inv.lines().next(), Some("t,I1,I2,I3"));
    for k in 0..3 {
        assert!(runs.join(format!("trajectory_mesh_{k:04}.csv")).exists());
    }

    let zero = spinorsurf(dir.path(), &["evolve", "--n", "64", "--t-end", "0", "--out", "z.csv"]);
    assert!(zero.status.success());
    assert_eq!(field(&stdout(&zero), "snapshots"), "1");
    assert_eq!(fs::read_to_string(dir.path().join("z.csv")).unwrap().lines().count(), 65);
}

#[test]
fn evolve_from_file_round_trips_grid() {
    let dir = tempfile::tempdir().unwrap();
    let n = 64;
    let mut csv = String::from("x,u\n");
    for j in 0..n {
        let x = -20.0 + 40.0 * j as f64 / n as f64;
        csv.push_str(&format!("{x},{}\n", 2.0 / x.cosh()));
    }
    fs::write(dir.path().join("u0.csv"), &csv).unwrap();
    let ok = spinorsurf(dir.path(), &["evolve", "--init", "file", "--init-file", "u0.csv", "--n", "64", "--t-end", "0"]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(field(&stdout(&ok), "translation_deviation").parse::<f64>().unwrap() < 1e-12);

    let off_grid = spinorsurf(dir.path(), &["evolve", "--init", "file", "--init-file", "u0.csv", "--length", "30", "--t-end", "0"]);
    assert_eq!(off_grid.status.code(), Some(2));
}

#[test]
fn verify_mkdv_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = spinorsurf(dir.path(), &["verify", "--suite", "mkdv", "--out", "report.tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    let line = report.lines().find(|l| l.starts_with("paper_formula_residual")).unwrap();
    assert!(line.contains("PASS"));
    assert!(!report.contains("FAIL"));
    assert_eq!(fs::read_to_string(dir.path().join("report.tsv")).unwrap(), report);
}
