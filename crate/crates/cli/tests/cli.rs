use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fdkp::spectral::SpectralField2D;

fn fdkp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdkp")).args(args).current_dir(dir).env_remove("FDKP_THREADS").output().unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

#[test]
fn symbol_check_f_beta_in_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = fdkp(&["symbol-check", "--beta", "1", "--out", "s.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let f = column(&fs::read_to_string(dir.path().join("s.csv")).unwrap(), "f_beta");
    assert_eq!(f.len(), 601);
    assert!(f.iter().all(|&v| v > 1.0 && v <= 3.0));
}

#[test]
fn missing_flag_is_usage_error_without_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = fdkp(&["symbol-check", "--out", "s.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    assert_eq!(fdkp(&["no-such-command"], dir.path()).status.code(), Some(2));
    assert_eq!(fdkp(&["decay", "--beta", "1", "--lambda", "1", "--bogus"], dir.path()).status.code(), Some(2));
    assert_eq!(fdkp(&["symbol-check", "--beta", "-1"], dir.path()).status.code(), Some(2));
    assert_eq!(fdkp(&["evolve", "--config", "missing.toml"], dir.path()).status.code(), Some(2));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["twin-run", "--beta", "1", "--n", "32", "--t-end", "0.1", "--out"];
    for name in ["a.csv", "b.csv"] {
        let mut a = args.to_vec();
        a.push(name);
        assert_eq!(fdkp(&a, dir.path()).status.code(), Some(0));
    }
    let (a, b) = (fs::read(dir.path().join("a.csv")).unwrap(), fs::read(dir.path().join("b.csv")).unwrap());
    assert_eq!(a, b);
    for name in ["c.json", "d.json"] {
        assert_eq!(fdkp(&["bessel-check", "--points", "8", "--r-max", "100", "--seed", "3", "--out", name], dir.path()).status.code(), Some(0));
    }
    assert_eq!(fs::read(dir.path().join("c.json")).unwrap(), fs::read(dir.path().join("d.json")).unwrap());
}

#[test]
fn csv_round_trips_floats() {
    let dir = tempfile::tempdir().unwrap();
    let out = fdkp(&["symbol-check", "--beta", "0", "--points", "3"], dir.path());
    let text = String::from_utf8(out.stdout).unwrap();
    let r = column(&text, "r");
    assert_eq!(r, vec![1e-3, 1.0, 1e3]);
    assert!(column(&text, "f_beta").iter().all(|&v| v == -1.0));
}

#[test]
fn evolve_writes_ledger_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"
[solver]
beta = 1.0
n1 = 32
n2 = 32
l1 = 12.566370614359172
l2 = 12.566370614359172
dt = 0.01

[run]
t_end = 0.2
record_every = 5
snapshot_every = 2

[initial]
kind = "constrained-bump"
amplitude = 0.3

[output]
dir = "out"
"#;
    fs::write(dir.path().join("run.toml"), cfg).unwrap();
    let out = fdkp(&["evolve", "--config", "run.toml"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let o = dir.path().join("out");
    let ledger = fs::read_to_string(o.join("ledger.csv")).unwrap();
    let time = column(&ledger, "time");
    assert_eq!(time.len(), 5);
    assert!((time[4] - 0.2).abs() < 1e-12);
    let l2 = column(&ledger, "l2");
    assert!((l2[4] - l2[0]).abs() < 1e-8 * l2[0]);
    assert!(fs::read_to_string(o.join("ledger.dat")).unwrap().starts_with("# time"));
    assert!(o.join("ledger.gp").exists());
    let (field, t) = SpectralField2D::read_snapshot(fs::File::open(o.join("final.bin")).unwrap()).unwrap();
    assert!((t - 0.2).abs() < 1e-12);
    assert_eq!(field.grid().n1, 32);
    assert!(o.join("snapshot_00002.bin").exists());

    fs::write(dir.path().join("bad.toml"), cfg.replace("dt = 0.01", "dt = 0.0")).unwrap();
    assert_eq!(fdkp(&["evolve", "--config", "bad.toml"], dir.path()).status.code(), Some(2));
}

#[test]
fn whitham_compare_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = fdkp(&["whitham-compare", "--beta", "0", "--n", "64", "--t-end", "0.5", "--dat", "w.dat"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("x,u_2d,u_1d,difference\n"));
    assert!(dir.path().join("w.dat").exists());
}

#[test]
fn verify_subset_and_thread_cap() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_fdkp"))
        .args(["verify-all", "--quick", "--only", "6,1", "--out", "v.json"])
        .env("FDKP_THREADS", "1")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] 6 ") && text.contains("[PASS] 1 "));
    let v: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("v.json")).unwrap()).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);

    let bad = Command::new(env!("CARGO_BIN_EXE_fdkp"))
        .args(["verify-all", "--only", "6"])
        .env("FDKP_THREADS", "zero")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(fdkp(&["verify-all", "--only", "9"], dir.path()).status.code(), Some(2));
}
