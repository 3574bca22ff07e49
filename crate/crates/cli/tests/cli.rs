//! End-to-end tests of the `circlaw` binary: report correctness, exit codes,
//! and byte-identical reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn circlaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circlaw"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn density_matches_marchenko_pastur() {
    let dir = tempfile::tempdir().unwrap();
    let out = circlaw(&[
        "density", "--z", "0", "--xmin", "0.05", "--xmax", "3.95", "--points", "80",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let body = read(dir.path(), "density.csv");
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "x,rho");
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let (x, rho) = (cols[0], cols[1]);
        let mp = ((4.0 - x) / x).sqrt() / (2.0 * std::f64::consts::PI);
        assert!((rho - mp).abs() < 1e-10, "x = {x}: {rho} vs {mp}");
    }
    // the plot-data twin is monotone in x with comment headers
    let dat = read(dir.path(), "density.dat");
    assert!(dat.starts_with('#'));
}

#[test]
fn critical_center_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = circlaw(&[
        "circular", "--z0", "1.0+0.0i", "--Ns", "64", "--seeds", "2",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("hypothesis"), "stderr: {msg}");
    assert!(msg.contains("|z0|"), "stderr: {msg}");
}

#[test]
fn minors_residuals_at_machine_precision() {
    let dir = tempfile::tempdir().unwrap();
    let out = circlaw(&[
        "minors", "--N", "50", "--seed0", "1", "--z", "0.5", "--w", "1+0.1i",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&read(dir.path(), "minors.json")).unwrap();
    assert!(v["max_residual"].as_f64().unwrap() <= 1e-10);
    assert!(v["inequalities_hold"].as_bool().unwrap());
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn config_file_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("config.json");
    std::fs::write(&cfg_path, r#"{"dimension": 32, "seeds": 3, "z": "0.4"}"#).unwrap();
    let out_dir = dir.path().join("run");
    let out = circlaw(&[
        "smallest", "--config", cfg_path.to_str().unwrap(), "--seeds", "4",
        "--out", out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: serde_json::Value =
        serde_json::from_str(&read(&out_dir, "manifest.json")).unwrap();
    assert_eq!(manifest["config"]["dimension"], 32); // from file
    assert_eq!(manifest["config"]["seeds"], 4); // flag wins
    assert_eq!(manifest["config"]["z"], "0.4");
    assert_eq!(manifest["rng_algorithm"], "chacha8");
    assert_eq!(manifest["status"], "complete");
    // 4 seeds in the per-seed table
    assert_eq!(read(&out_dir, "smallest.csv").lines().count(), 5);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args_for = |run: &str| {
        vec![
            "grid-sweep".to_string(),
            "--N".into(), "48".into(),
            "--z".into(), "0.5".into(),
            "--seeds".into(), "3".into(),
            "--grid-ne".into(), "6".into(),
            "--grid-neta".into(), "5".into(),
            "--alpha".into(), "0".into(),
            "--threads".into(), "2".into(),
            "--out".into(), dir.path().join(run).to_str().unwrap().to_string(),
        ]
    };
    for run in ["a", "b"] {
        let args: Vec<String> = args_for(run);
        let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let out = circlaw(&refs);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let ma: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("a"), "manifest.json")).unwrap();
    let mb: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("b"), "manifest.json")).unwrap();
    assert_eq!(ma["checksums"], mb["checksums"]);
    assert!(!ma["checksums"].as_object().unwrap().is_empty());
    assert_eq!(
        read(&dir.path().join("a"), "local_law.csv"),
        read(&dir.path().join("b"), "local_law.csv")
    );
}
