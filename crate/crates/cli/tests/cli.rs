use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

fn circuitq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circuitq"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = circuitq(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows of a CSV body, skipping metadata comments and the header.
fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

fn meta<'a>(csv: &'a str, key: &str) -> Option<&'a str> {
    csv.lines()
        .filter_map(|l| l.strip_prefix("# "))
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

#[test]
fn calibrated_levels_are_integer_steps() {
    let body = stdout(&["schrodinger-levels", "--m-max", "4"]);
    assert_eq!(body.lines().find(|l| !l.starts_with('#')), Some("m,G"));
    let quantum = 1.0 / (2.0 * PI);
    for (m, row) in rows(&body).iter().enumerate() {
        assert_eq!(row[0], m as f64);
        assert!((row[1] - m as f64 * quantum).abs() <= 1e-15);
    }
    assert_eq!(meta(&body, "beta_source"), Some("calibrated"));
}

#[test]
fn si_levels_use_the_conductance_quantum() {
    let body = stdout(&["--units", "si", "schrodinger-levels", "--m-max", "1"]);
    let g1 = rows(&body)[1][1];
    let quantum = 1.602176634e-19_f64.powi(2) / (2.0 * PI * 1.054571817e-34);
    assert!((g1 - quantum).abs() / quantum < 1e-12);
}

#[test]
fn energy_levels_round_trip() {
    let body = stdout(&["schrodinger-levels", "--V", "2", "--energy", "1.3"]);
    for row in rows(&body) {
        assert!((row[2] - 1.3).abs() < 1e-12);
    }
}

#[test]
fn energy_outside_band_is_a_usage_error() {
    let out = circuitq(&["schrodinger-levels", "--energy", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn periodic_band_reports_pass() {
    let body = stdout(&["schrodinger-band", "--n-sites", "32", "--V", "0.5"]);
    assert_eq!(meta(&body, "passed"), Some("true"));
    let r = rows(&body);
    assert_eq!(r.len(), 32);
    for row in &r {
        assert!((row[1] - row[2]).abs() < 1e-10 * 0.5);
    }
}

#[test]
fn open_band_has_no_analytic_column() {
    let body = stdout(&["schrodinger-band", "--n-sites", "5", "--boundary", "open"]);
    assert_eq!(
        body.lines().find(|l| !l.starts_with('#')),
        Some("index,E_numeric")
    );
}

#[test]
fn dirac_dispersion_is_symmetric() {
    let body = stdout(&["dirac-dispersion", "--I0", "0.02", "--g-points", "17"]);
    let r = rows(&body);
    assert_eq!(r.len(), 17);
    for row in &r {
        assert_eq!(row[1], -row[2]);
    }
    assert!(meta(&body, "root_m0").is_some());
    let skipped = stdout(&["dirac-dispersion", "--no-roots"]);
    assert_eq!(meta(&skipped, "roots"), Some("skipped"));
}

#[test]
fn dirac_roots_without_solution_fail() {
    let out = circuitq(&["dirac-roots", "--V", "1", "--I0", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no solution"));
}

#[test]
fn dirac_roots_calibrated_first_root() {
    let body = stdout(&[
        "dirac-roots",
        "--vf-over-c",
        "0.01",
        "--calibrate-G0",
        "1e-4",
        "--m-max",
        "2",
    ]);
    let r = rows(&body);
    assert!((r[0][1] - 1e-4).abs() < 1e-16);
    // roots are spaced by the scaled step
    let step: f64 = meta(&body, "step").unwrap().parse().unwrap();
    assert!(((r[1][1] - r[0][1]) - step).abs() < 1e-12 * step);
}

#[test]
fn landauer_worked_case() {
    let body = stdout(&[
        "landauer-staircase",
        "--from",
        "12",
        "--to",
        "13",
        "--points",
        "3",
    ]);
    let r = rows(&body);
    assert_eq!(r[1][0], 12.5);
    assert_eq!(r[1][1], 4.0);
    assert_eq!(r[1][2], 8.0 / (2.0 * PI));
}

#[test]
fn landauer_width_sweep_is_monotone() {
    let body = stdout(&[
        "landauer-staircase",
        "--sweep",
        "width",
        "--from",
        "0.5",
        "--to",
        "9",
        "--points",
        "60",
    ]);
    let r = rows(&body);
    assert_eq!(r.len(), 60);
    assert!(r
        .windows(2)
        .all(|w| w[1][2] >= w[0][2] && w[1][0] > w[0][0]));
}

#[test]
fn json_output_parses() {
    let body = stdout(&["--format", "json", "calibrate", "--vf-over-c", "0.5"]);
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    let columns = v["columns"].as_array().unwrap();
    assert!(columns.iter().any(|c| c == "beta_prime"));
    assert_eq!(v["metadata"]["command"], "calibrate");
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn validate_passes_and_negative_control_fails() {
    for units in ["dimensionless", "si"] {
        let out = circuitq(&["--units", units, "validate", "--n-sites", "128"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stdout)
        );
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 13);
        assert!(!text.contains("FAIL"));
    }
    let out = circuitq(&["validate", "--inject-corrupt-beta"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL step_calibration_dimensionless"));
}

#[test]
fn validate_json_report() {
    let body = stdout(&["validate", "--format", "json", "--seed", "4"]);
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    for check in v["checks"].as_array().unwrap() {
        assert_eq!(check["passed"], true, "{check}");
    }
}

#[test]
fn config_defaults_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# defaults\nV=2\nm-max=5\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let body = stdout(&["--config", cfg, "schrodinger-levels"]);
    assert_eq!(meta(&body, "m_max"), Some("5"));
    assert_eq!(rows(&body).len(), 6);

    let body = stdout(&["--config", cfg, "schrodinger-levels", "--m-max", "1"]);
    assert_eq!(meta(&body, "m_max"), Some("1"));
    assert_eq!(meta(&body, "V"), Some("2.0000000000000000e0"));
}

#[test]
fn bad_config_key_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "no-such-flag=1\n").unwrap();
    let out = circuitq(&["--config", cfg.to_str().unwrap(), "calibrate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("levels.csv");
    let out = circuitq(&["schrodinger-levels", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(
        fs::read_to_string(&path).unwrap(),
        stdout(&["schrodinger-levels"])
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["landauer-staircase", "--from", "0"][..],
        &["schrodinger-levels", "--beta", "-1"],
        &["schrodinger-levels", "--beta", "1", "--calibrated"],
        &["--units", "furlongs", "calibrate"],
        &["schrodinger-band", "--n-sites", "0"],
        &["nonsense"],
    ] {
        assert_eq!(circuitq(args).status.code(), Some(2), "{args:?}");
    }
}
