use std::process::Command;

fn rbl() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rbl"));
    c.env_remove("RBL_SEED");
    c
}

fn run_csv(args: &[&str], seed_env: Option<&str>) -> String {
    let mut c = rbl();
    c.arg("run").args(args);
    if let Some(s) = seed_env {
        c.env("RBL_SEED", s);
    }
    let out = c.output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn fig7_run_has_one_row_per_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let out = rbl()
        .args([
            "run", "--preset", "fig7", "--runs", "100", "--seed", "42", "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "policy,n,mean_subopt,std_subopt,mean_subopt_over_ln_n,mean_regret,std_regret,runs"
    );
    assert_eq!(lines.len(), 1 + 9);
    assert!(lines[1..]
        .iter()
        .all(|l| l.starts_with("recency_c2,") && l.ends_with(",100")));
}

#[test]
fn identical_flags_give_identical_bytes() {
    let args = ["--preset", "fig12", "--runs", "6", "--horizon", "700"];
    let a = run_csv(&args, None);
    let b = run_csv(&[&args[..], &["--workers", "3"]].concat(), None);
    assert_eq!(a, b);
}

#[test]
fn env_seed_overrides_flag() {
    let base = ["--preset", "fig8", "--runs", "3", "--horizon", "400"];
    let flag7 = run_csv(&[&base[..], &["--seed", "7"]].concat(), None);
    let flag8 = run_csv(&[&base[..], &["--seed", "8"]].concat(), None);
    let env7 = run_csv(&[&base[..], &["--seed", "8"]].concat(), Some("7"));
    assert_ne!(flag7, flag8);
    assert_eq!(flag7, env7);
}

#[test]
fn policies_and_band_columns() {
    let text = run_csv(
        &[
            "--preset",
            "fig8",
            "--runs",
            "2",
            "--horizon",
            "256",
            "--policies",
            "klucb,recency_c0.5",
            "--band-counts",
        ],
        None,
    );
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].ends_with(",runs,mean_m_1,mean_m_2,mean_m_3,mean_m_4,mean_m_5"));
    assert_eq!(lines.len(), 1 + 2 * 2);
    assert!(lines[1].starts_with("klucb,128,"));
    assert!(lines[3].starts_with("recency_c0.5,128,"));
}

#[test]
fn config_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let mut cfg = rbl::Preset::Fig11.expand();
    cfg.runs = 2;
    cfg.set_horizon(300);
    std::fs::write(&path, cfg.to_json().unwrap()).unwrap();
    let out = rbl()
        .arg("run")
        .arg("--config")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().lines().count(),
        1 + 5 * 3
    );
}

#[test]
fn failures_exit_nonzero() {
    let bogus = rbl().args(["run", "--preset", "bogus"]).output().unwrap();
    assert!(!bogus.status.success());
    let unwritable = rbl()
        .args([
            "run",
            "--preset",
            "fig7",
            "--runs",
            "1",
            "--horizon",
            "200",
            "--out",
            "/nonexistent/dir/x.csv",
        ])
        .output()
        .unwrap();
    assert!(!unwritable.status.success());
    assert!(!unwritable.stderr.is_empty());
    let bad_cfg = rbl()
        .args(["run", "--config", "/nonexistent.json"])
        .output()
        .unwrap();
    assert!(!bad_cfg.status.success());
    let bad_env = rbl()
        .args(["run", "--preset", "fig7", "--runs", "1", "--horizon", "200"])
        .env("RBL_SEED", "x")
        .output()
        .unwrap();
    assert!(!bad_env.status.success());
}

#[test]
fn validate_passes() {
    let out = rbl().arg("validate").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 6);
}

#[test]
fn presets_listing() {
    let out = rbl().args(["presets", "--json"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for name in ["fig7", "fig8", "fig9", "fig11", "fig12"] {
        let cfg: rbl::ScenarioConfig = serde_json::from_value(v[name].clone()).unwrap();
        assert_eq!(cfg, rbl::expand_preset(name).unwrap());
    }
    let table = rbl().arg("presets").output().unwrap();
    assert!(String::from_utf8(table.stdout)
        .unwrap()
        .contains("fig11: ten slowly varying"));
}
