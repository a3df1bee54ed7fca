use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gg_cli::{run_text, Overrides, ProblemConfig, EXIT_FAIL, EXIT_INVALID};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn gg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gg")).args(args).output().expect("binary runs")
}

fn config_path(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

#[test]
fn gauss_config_passes_and_matches_the_golden_report() {
    let first = gg(&["--config", &config_path("gauss.json")]);
    let second = gg(&["--config", &config_path("gauss.json")]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, second.stdout);
    let golden = std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/gauss.report.json")).unwrap();
    assert_eq!(first.stdout, golden);
}

#[test]
fn out_flag_and_quiet() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = gg(&["--config", &config_path("gauss.json"), "--out", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty() && o.stderr.is_empty());
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["seed"], 7);
}

#[test]
fn seed_override_changes_samples_only() {
    let a = gg(&["--config", &config_path("gauss.json"), "--seed", "8"]);
    assert_eq!(a.status.code(), Some(0));
    let base = gg(&["--config", &config_path("gauss.json")]);
    assert_ne!(a.stdout, base.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["config"]["seed"], 8);
}

#[test]
fn perturbed_evaluator_fails_verification() {
    let o = gg(&["--config", &config_path("gauss-perturbed.json")]);
    assert_eq!(o.status.code(), Some(EXIT_FAIL));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn malformed_omega_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(configs().join("gauss.json")).unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, text.replacen("[[1, 0], [0, 0], [0, 0]]", "[[1, 0, 7], [0, 0], [0, 0]]", 1)).unwrap();
    let o = gg(&["--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    let msg = String::from_utf8_lossy(&o.stderr);
    assert!(msg.contains("line 6"), "{msg}");

    let short = dir.path().join("short.json");
    std::fs::write(&short, text.replacen("[[0, 0], [1, 0], [0, 0]]", "[[0, 0], [1, 0]]", 1)).unwrap();
    let o = gg(&["--config", short.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(String::from_utf8_lossy(&o.stderr).contains("omega[1]"));

    let o = gg(&["--config", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
}

#[test]
fn dependent_vectors_are_invalid_input() {
    let text = r#"{"task": "bases", "n": 2, "N": 2, "omega": [[[1, 0], [2, 0]], [[2, 0], [4, 0]]]}"#;
    let (code, msg) = run_text(text, &Overrides::default()).unwrap_err();
    assert_eq!(code, EXIT_INVALID, "{msg}");
}

#[test]
fn every_bundled_config_validates() {
    for entry in std::fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        let cfg = ProblemConfig::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        cfg.validate().unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

fn run_config(name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(configs().join(name)).unwrap();
    let report = run_text(&text, &Overrides::default()).unwrap_or_else(|e| panic!("{name}: {e:?}"));
    assert!(report.pass, "{name}: {}", report.summary);
    serde_json::from_str(&report.to_json()).unwrap()
}

#[test]
fn bases_and_reduce_tasks() {
    let r = run_config("gauss-bases.json");
    assert_eq!(r["results"]["bases"].as_array().unwrap().len(), 4);
    assert_eq!(r["results"]["reducibility"]["is_reduced"], true);
    let r = run_config("gauss-reduce.json");
    let v = &r["results"]["variables"][0];
    assert_eq!(v["index"], 4);
    assert_eq!(v["gamma"], serde_json::json!([[1.0, 0.0], [1.0, 0.0], [-1.0, 0.0]]));
    assert_eq!(v["l_condition"], true);
}

#[test]
fn eval_task_gives_bessel_values() {
    // F_0(0, x) = sum x^m / m!^2 = I_0(2 sqrt(x)); I_0(sqrt 2) = 1.5660829297563505
    let r = run_config("bessel-eval.json");
    let v = &r["results"]["values"][0]["value"];
    assert!((v[0].as_f64().unwrap() - 1.566_082_929_756_350_5).abs() < 1e-14);
    assert_eq!(r["results"]["series"]["truncation"], 40);
}

#[test]
fn lattice_task_finds_order_two() {
    let r = run_config("lattice.json");
    let q = &r["results"]["quotients"][0];
    assert_eq!(q["order"], 2);
    assert_eq!(q["brute_force"]["confirmed"], true);
}

#[test]
fn integral_tasks_pass() {
    for name in ["hankel.json", "shifted-plane.json", "euler.json"] {
        let r = run_config(name);
        assert_eq!(r["residuals"].as_array().unwrap().len(), 2, "{name}");
    }
    // 2 pi i I_0(sqrt 2) at β = 0, x = 1/2
    let r = run_config("hankel.json");
    let v = &r["results"]["values"][0]["value"];
    assert!((v[1].as_f64().unwrap() - 9.839_989_254_069_862).abs() < 1e-8);
}

#[test]
fn resonance_family_and_distribution_tasks() {
    let r = run_config("grassmannian.json");
    assert!(r["results"]["consistent_vectors"].as_array().unwrap().len() >= 6);
    let r = run_config("family.json");
    assert_eq!(r["results"]["rank"], 2);
    let r = run_config("distribution.json");
    let v = &r["results"]["values"][0]["value"];
    assert!((v[0].as_f64().unwrap() - std::f64::consts::E.powi(2)).abs() < 1e-9);
    run_config("fourier.json");
}

#[test]
fn ell_convention_negates_the_rows() {
    let text = std::fs::read_to_string(configs().join("bessel-eval.json")).unwrap();
    let flipped = text.replace(r#""omega": [[[1, 0]], [[-1, 0]]]"#, r#""omega": [[[-1, 0]], [[1, 0]]]"#);
    let ell = Overrides {
        convention: Some(gg_cli::Convention::Ell),
        ..Overrides::default()
    };
    let a = run_text(&text, &Overrides::default()).unwrap();
    let b = run_text(&flipped, &ell).unwrap();
    assert_eq!(a.results, b.results);
}
