use std::process::{Command, Output};

fn aeromacs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aeromacs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = aeromacs(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn every_command_tags_its_json() {
    let cases: &[&[&str]] = &[
        &["params", "--format", "json"],
        &["coverage", "--format", "json"],
        &["doppler-sweep", "--v-min", "0", "--v-max", "10", "--step", "5", "--format", "json"],
        &["max-speed", "--format", "json"],
        &["simulate", "ici", "--fd-ts", "0.05", "--trials", "50", "--seed", "1"],
        &["simulate", "cp", "--cp-samples", "64", "--echo-delay", "50", "--echo-gain", "0.5", "--trials", "20", "--seed", "1"],
        &["plan", "--length", "2.5km", "--radius", "1100", "--format", "json"],
    ];
    for args in cases {
        let v = json(args);
        assert_eq!(v["schema"], "aeromacs-toolkit/1", "{args:?}");
        assert!(v["command"].is_string(), "{args:?}");
    }
}

#[test]
fn ici_run_reports_a_passing_verdict() {
    let v = json(&["simulate", "ici", "--fd-ts", "0.05", "--trials", "3000", "--seed", "5"]);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["result"]["trials_run"], 3000);
    let empirical = v["result"]["empirical_ici_norm"].as_f64().unwrap();
    assert!(empirical > 0.0 && empirical < 0.01);
}

#[test]
fn static_channel_has_no_interference() {
    let v = json(&["simulate", "ici", "--fd-ts", "0", "--trials", "20", "--seed", "3"]);
    assert_eq!(v["result"]["empirical_ici_norm"].as_f64(), Some(0.0));
}

#[test]
fn different_seeds_differ() {
    let a = aeromacs(&["simulate", "ici", "--fd-ts", "0.1", "--trials", "100", "--seed", "1"]);
    let b = aeromacs(&["simulate", "ici", "--fd-ts", "0.1", "--trials", "100", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn input_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["doppler-sweep", "--v-min", "10", "--v-max", "1", "--step", "1"],
        &["doppler-sweep", "--v-min", "0", "--v-max", "1", "--step", "0"],
        &["coverage", "--alpha", "20"],
        &["coverage", "--carrier-freq-hz", "2.4e9"],
        &["params", "--cp-ratio-log2", "9"],
        &["params", "--profile", "lte"],
        &["plan", "--length", "1000", "--radius", "-5"],
        &["simulate", "ici", "--fd-ts", "0.1", "--n-subcarriers", "100", "--seed", "1"],
        &["simulate", "ici", "--fd-ts", "0.1"],
        &["no-such-command"],
    ];
    for args in cases {
        let out = aeromacs(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn alpha_override_lifts_the_envelope() {
    let out = aeromacs(&["coverage", "--alpha", "20", "--alpha-override"]);
    assert!(out.status.success());
}

#[test]
fn sweep_csv_shape() {
    let out = aeromacs(&["doppler-sweep", "--v-min", "0", "--v-max", "150kmh", "--step", "5kmh"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "speed_mps,speed_kmh,doppler_hz,ici_dbm,signal_to_ici_db,coherence_ms");
    assert_eq!(lines.len(), 32);
    assert!(lines.iter().all(|l| l.split(',').count() == 6));
    assert!(lines.last().unwrap().starts_with("41.6667,150,"));
}

#[test]
fn max_speed_flags_the_quoted_limit() {
    let v = json(&["max-speed", "--format", "json"]);
    let vmax = v["chain"]["max_speed_mps"].as_f64().unwrap();
    assert!((vmax - 49.748).abs() < 1e-3);
    assert_eq!(v["published_max_speed"]["mps"], 35.9);
    assert_eq!(v["published_max_speed"]["consistent_with_chain"], false);
    let p = json(&["max-speed", "--spacing-from-profile", "--format", "json"]);
    assert!((p["chain"]["max_speed_mps"].as_f64().unwrap() - 48.4876).abs() < 1e-3);
}

#[test]
fn config_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("cov.json");
    std::fs::write(
        &cfg,
        r#"{"excess_loss_alpha": 5.0, "format": "json", "profile": "aeromacs-default"}"#,
    )
    .unwrap();
    let status = aeromacs(&[
        "--config",
        cfg.to_str().unwrap(),
        "coverage",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let range = v["effective_cell_range_m"].as_f64().unwrap();
    assert!((range - 2612.188).abs() < 1e-2);

    std::fs::write(&cfg, r#"{"alpha": 5.0}"#).unwrap();
    let bad = aeromacs(&["--config", cfg.to_str().unwrap(), "coverage"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn params_overrides_recompute() {
    let v = json(&["params", "--bandwidth-hz", "10e6", "--fft-size", "1024", "--format", "json"]);
    let df = v["subcarrier_spacing_hz"].as_f64().unwrap();
    assert!((df - 9756.09756097561).abs() < 1e-6);
    assert!(v["profile_name"].as_str().unwrap().ends_with("+overrides"));
}
