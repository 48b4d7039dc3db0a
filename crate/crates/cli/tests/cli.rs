use std::path::{Path, PathBuf};
use std::process::Command;

use vqls_cli::{validate_config, ExperimentConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vqls-negf"))
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

const SMALL: &str = r#"{
  "experiment": "solve_single",
  "device": { "n_sites": 4, "length_nm": 2.0, "potential": { "kind": "flat" } },
  "energy": 0.3,
  "vqls": { "cost": "normalized_residual", "ansatz": "ry_rx_cry_circular", "layers": [2], "restarts": 2, "max_iterations": 100 },
  "seed": 3
}"#;

#[test]
fn sample_configs_are_valid() {
    let mut seen = 0;
    for entry in std::fs::read_dir(configs_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            assert_eq!(validate_config(&path).unwrap(), Vec::<String>::new(), "{}", path.display());
            seen += 1;
        }
    }
    assert_eq!(seen, 6);
}

#[test]
fn missing_device_is_reported() {
    let v = ExperimentConfig::from_json(r#"{"experiment": "solve_single"}"#).unwrap_err();
    assert!(v.to_string().contains("device: required"), "{v}");
}

#[test]
fn non_power_of_two_sites_is_reported() {
    let cfg = ExperimentConfig::from_json(r#"{"device": {"n_sites": 24}}"#).unwrap();
    let v = cfg.violations();
    assert!(v.iter().any(|m| m.contains("power of two required")), "{v:?}");
}

#[test]
fn parallel_grid_must_be_power_of_two() {
    let cfg = ExperimentConfig::from_json(
        r#"{"experiment": "solve_parallel", "device": {"n_sites": 8}, "grid": {"values": [0.1, 0.2, 0.3]}}"#,
    )
    .unwrap();
    assert!(cfg.violations().iter().any(|m| m.starts_with("grid: power of two")));
}

#[test]
fn validate_only_does_not_write() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", SMALL);
    let out = dir.path().join("out");
    let st = bin()
        .args(["solve-single", "--validate-only", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(st.success());
    assert!(!out.exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"device": {"n_sites": 24}}"#);
    let code = |args: &[&str], cfg: &Path| {
        bin().args(args).arg("--config").arg(cfg).arg("--out").arg(dir.path().join("o")).status().unwrap().code()
    };
    assert_eq!(code(&["solve-single"], &bad), Some(2));
    assert_eq!(code(&["solve-single"], &dir.path().join("missing.json")), Some(3));

    let gated = SMALL.replace(r#""seed": 3"#, r#""seed": 3, "gate": {"min_converged_fraction": 1.0}"#).replace(
        r#""max_iterations": 100"#,
        r#""max_iterations": 1"#,
    );
    let gated = write(dir.path(), "gated.json", &gated);
    assert_eq!(code(&["solve-single", "--strict"], &gated), Some(4));
    assert_eq!(code(&["solve-single"], &gated), Some(0));
}

#[test]
fn kind_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", SMALL);
    let out = bin().args(["oracle-sweep", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("solve_single"));
}

#[test]
fn solve_single_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", SMALL);
    let out = dir.path().join("o");
    assert!(bin().arg("solve-single").arg("--config").arg(&cfg).arg("--out").arg(&out).status().unwrap().success());

    let (h, rows) = read_csv(&out.join("cost_history.csv"));
    assert_eq!(h, ["run", "iteration", "cost"]);
    assert!(!rows.is_empty());

    let (h, rows) = read_csv(&out.join("runs.csv"));
    assert_eq!(h[0], "run");
    assert_eq!(rows.len(), 2);
    let seeds: Vec<&str> = rows.iter().map(|r| r[h.iter().position(|c| c == "seed").unwrap()].as_str()).collect();
    assert_eq!(seeds, ["3", "4"]);

    let (h, _) = read_csv(&out.join("mse_stats.csv"));
    assert!(h.contains(&"median".to_string()));
    assert!(out.join("solution.csv").exists());
}

#[test]
fn floats_round_trip() {
    for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE, f64::EPSILON] {
        let s = vqls_cli::output::float(x);
        assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
    }
    assert_eq!(vqls_cli::output::float(f64::NAN), "nan");
    assert_eq!(vqls_cli::output::opt_float(None), "");
}

#[test]
fn flat_band_oracle_sweep_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{
  "experiment": "oracle_sweep",
  "device": { "n_sites": 16, "potential": { "kind": "flat" }, "eta": 1e-12 },
  "grid": { "start": 0.05, "stop": 0.5, "count": 16 }
}"#,
    );
    let out = dir.path().join("o");
    assert!(bin().arg("oracle-sweep").arg("--config").arg(&cfg).arg("--out").arg(&out).status().unwrap().success());
    let (h, rows) = read_csv(&out.join("transport.csv"));
    assert_eq!(h, ["energy", "T_oracle", "T_vqls", "J_oracle", "J_vqls"]);
    assert_eq!(rows.len(), 16);
    for r in &rows {
        assert!((r[1].parse::<f64>().unwrap() - 1.0).abs() < 1e-6, "{r:?}");
        assert!(r[2].is_empty());
    }
    let (h, rows) = read_csv(&out.join("ldos.csv"));
    assert_eq!(h, ["site", "energy", "ldos_oracle", "ldos_vqls"]);
    assert_eq!(rows.len(), 16 * 16);
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", &SMALL.replace(r#""restarts": 2"#, r#""restarts": 4"#));
    let run = |threads: &str| {
        let out = dir.path().join(format!("o{threads}"));
        let st = bin()
            .args(["solve-single", "--threads", threads, "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert!(st.success());
        ["cost_history.csv", "runs.csv", "mse_stats.csv", "solution.csv"]
            .map(|f| std::fs::read(out.join(f)).unwrap())
    };
    assert_eq!(run("1"), run("4"));
}
