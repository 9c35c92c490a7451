//! End-to-end tests of the command-line surface: scenario loading,
//! table/CSV emission, exit codes, and run-to-run determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use uffsim_cli::scenario::{load_scenario_str, Scenario};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uffsim"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .args(args)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

#[test]
fn shipped_defaults_file_is_the_nominal_scenario_and_fully_cited() {
    let path = repo_root().join("scenarios/nominal.toml");
    let text = std::fs::read_to_string(&path).expect("defaults file ships with the repo");
    let (scenario, warnings) = load_scenario_str(&text).expect("defaults file parses");
    assert!(
        warnings.is_empty(),
        "defaults file has unknown keys: {warnings:?}"
    );
    assert_eq!(
        scenario,
        Scenario::default(),
        "defaults file drifted from the built-in nominal"
    );

    // every value line carries a citation comment
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('[') {
            continue;
        }
        assert!(
            line.contains('=') && line.contains('#'),
            "defaults line {} lacks a citation comment: {line}",
            i + 1
        );
    }
}

#[test]
fn budget_command_reproduces_the_published_total() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["budget", "--strict"]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("total (correlated combination)"));
    assert!(text.contains("7.9177"));
    assert!(text.contains("Eotvos-ratio error"));
    assert!(dir.path().join("out/budget.csv").exists());
}

#[test]
fn noise_command_reproduces_the_published_sum() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["noise", "--strict"]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("sum (root-sum-square)"));
    assert!(text.contains("3.21"));
    assert!(dir.path().join("out/noise.csv").exists());
}

#[test]
fn orbit_command_writes_the_ephemeris() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["orbit"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0.780427"));
    let csv = std::fs::read_to_string(dir.path().join("out/ephemeris.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "time_s,x_m,y_m,z_m,vx_m_s,vy_m_s,vz_m_s,altitude_m,g_proj_m_s2,tzz_proj_s2"
    );
    assert_eq!(csv.lines().count(), 1442); // header + 1441 samples
    assert!(!csv.contains('\r'), "CSV must use LF endings");
}

#[test]
fn mission_command_with_scenario_override() {
    let dir = tempfile::tempdir().unwrap();
    let scenario_path = dir.path().join("small.toml");
    std::fs::write(
        &scenario_path,
        "[mission]\nrevolutions = 4\nperigee_profile = \"constant\"\n",
    )
    .unwrap();
    let out = bin()
        .args(["mission", "--strict", "--scenario"])
        .arg(&scenario_path)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("mission sigma_eta"));
    // 4 identical passes: half of one pass
    assert!(text.contains("2.4524e-14"), "got:\n{text}");
    let csv = std::fs::read_to_string(dir.path().join("out/mission_revolutions.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(dir.path().join("out/eta_profile.csv").exists());
}

#[test]
fn ellipse_demo_is_deterministic_for_a_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let scenario_path = dir.path().join("mc.toml");
    std::fs::write(&scenario_path, "[ellipse]\nrepetitions = 40\n").unwrap();
    let run = || {
        bin()
            .args(["ellipse-demo", "--seed", "77", "--scenario"])
            .arg(&scenario_path)
            .arg("--out")
            .arg(dir.path().join("out"))
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(
        stdout(&a),
        stdout(&b),
        "identical scenario + seed must give identical output"
    );
    assert!(stdout(&a).contains("recovered phase"));
}

#[test]
fn timeline_command_prints_the_budget_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["timeline", "--strict"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("9.3605"));
    assert!(text.contains("chip distance 11.8 mm"));
    let csv = std::fs::read_to_string(dir.path().join("out/timeline.csv")).unwrap();
    assert!(csv.starts_with("step,start_s,duration_s,n87_after,n85_after,temperature_k,notes"));
}

#[test]
fn invalid_scenario_fails_with_exit_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let scenario_path = dir.path().join("bad.toml");
    std::fs::write(
        &scenario_path,
        "[interferometer]\nfree_evolution_time_s = -1.0\n",
    )
    .unwrap();
    let out = bin()
        .args(["budget", "--scenario"])
        .arg(&scenario_path)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("free_evolution_time_s"), "stderr: {err}");
}

#[test]
fn strict_mode_flags_out_of_family_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let scenario_path = dir.path().join("hot.toml");
    // ten times the allowed overlap blows the gravity-gradient rows
    std::fs::write(
        &scenario_path,
        "[overlap]\ndz_m = 1.1e-8\ndvz_m_s = 3.1e-9\n",
    )
    .unwrap();
    let strict = bin()
        .args(["budget", "--strict", "--scenario"])
        .arg(&scenario_path)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(
        strict.status.code(),
        Some(1),
        "strict run must flag the deviation"
    );
    // without --strict the deviations are informational
    let loose = bin()
        .args(["budget", "--scenario"])
        .arg(&scenario_path)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert!(loose.status.success());
}

#[test]
fn unknown_keys_warn_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let scenario_path = dir.path().join("extra.toml");
    std::fs::write(&scenario_path, "[orbit]\nnot_a_key = 1.0\n").unwrap();
    let out = bin()
        .args(["orbit", "--scenario"])
        .arg(&scenario_path)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown key orbit.not_a_key"));
}

#[test]
fn csv_format_prints_csv_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["budget", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first = text.lines().next().unwrap();
    assert_eq!(
        first,
        "error source,limit [1e-15 m/s2],reference,deviation,conditions"
    );
}
