use std::path::Path;
use std::process::{Command, Output};

fn rskp(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rskp"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("RSKP_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn chi_square_moment_prints_exact_integer() {
    let dir = tempfile::tempdir().unwrap();
    let o = rskp(dir.path(), &["eval", "chi2-moment", "--m", "8", "--k", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn measure_prints_reduced_fraction() {
    let dir = tempfile::tempdir().unwrap();
    let o = rskp(dir.path(), &["eval", "measure", "--p", "2", "--ell", "2", "--lambda", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "3/4");
}

#[test]
fn scalar_hermitian_ratio_is_one_half() {
    let dir = tempfile::tempdir().unwrap();
    let o = rskp(dir.path(), &["eval", "hermitian-ratio", "--p", "1", "--q", "1", "--s", "0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "0.5");
}

#[test]
fn q_below_p_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["eval", "hermitian-ratio", "--p", "2", "--q", "1"][..],
        &["study", "theorem12", "--p", "3", "--q", "2"][..],
        &["verify", "measures", "--p", "2", "--q", "1"][..],
    ] {
        let o = rskp(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains("q >= p"), "{}", stderr(&o));
    }
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["eval", "measure", "--p", "1", "--lambda", "1,2"][..],
        &["eval", "chi2-moment", "--m", "0", "--k", "1"][..],
        &["study", "theorem12", "--n", "40:10:10"][..],
        &["study", "nonsense"][..],
        &["verify", "nonsense"][..],
        &["eval", "tau", "--weight", "{\"family\":\"gaussian-power\",\"a_exp\":-2,\"support\":\"real-line\"}"][..],
    ] {
        let o = rskp(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn two_row_moment_study_writes_four_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = rskp(dir.path(), &["study", "theorem12", "--p", "2", "--q", "2", "--k", "0", "--n", "10:40:10"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("study-theorem12.csv")).unwrap();
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    let gaps: Vec<f64> = rows.iter().map(|r| (r[3] - 1.0).abs()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    assert!(stdout(&o).contains("final ratio"));
}

#[test]
fn word_event_study_prints_exact_probability() {
    let dir = tempfile::tempdir().unwrap();
    let o = rskp(dir.path(), &["study", "corollary13", "--p", "2", "--N", "3", "--k", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("= 7/32"), "{}", stdout(&o));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("study-corollary13.json")).unwrap()).unwrap();
    assert_eq!(report["result"]["probabilities"][0], "7/32");
}

#[test]
fn monte_carlo_cross_check_is_seeded() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["study", "corollary13", "--p", "2", "--N", "3", "--k", "1", "--seed", "11", "--samples", "4000"];
    let (oa, ob) = (rskp(a.path(), &args), rskp(b.path(), &args));
    assert_eq!(stdout(&oa).lines().nth(2), stdout(&ob).lines().nth(2));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(a.path().join("study-corollary13.json")).unwrap()).unwrap();
    let f = report["result"]["monte_carlo"][0]["frequency"].as_f64().unwrap();
    assert!((f - 7.0 / 32.0).abs() < 0.03, "{f}");
}

#[test]
fn scaling_study_gaps_decrease() {
    let dir = tempfile::tempdir().unwrap();
    let o = rskp(dir.path(), &["study", "scaling", "--p", "1", "--q", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("study-scaling.json")).unwrap()).unwrap();
    assert_eq!(report["result"]["gaps_decreasing"], true);
}

#[test]
fn remaining_studies_run() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["study", "theorem14", "--s", "0"][..], &["study", "prop51", "--p", "1"][..]] {
        let o = rskp(dir.path(), args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn verify_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = rskp(dir.path(), &["verify", "combinatorics"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = rskp(dir.path(), &["verify", "all", "--precision", "40"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify-all.json")).unwrap()).unwrap();
    let checks = report["result"]["checks"].as_array().unwrap();
    for suite in ["combinatorics", "measures", "tau", "painleve", "asymptotics"] {
        assert!(checks.iter().any(|c| c["suite"] == suite), "{suite} missing");
    }
    assert!(checks.iter().all(|c| c["passed"] == true));
    assert!(std::fs::read_to_string(dir.path().join("verify-all.txt")).unwrap().contains("all"));
}

#[test]
fn identical_configs_give_identical_reports() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["study", "theorem14", "--p", "1", "--q", "2", "--s", "0.5", "--x", "10,20", "--precision", "30"];
    rskp(a.path(), &args);
    rskp(b.path(), &args);
    let read = |d: &Path| std::fs::read(d.join("study-theorem14.json")).unwrap();
    let (ja, jb) = (read(a.path()), read(b.path()));
    // the output directory is part of the recorded config
    let norm = |bytes: Vec<u8>, dir: &Path| String::from_utf8(bytes).unwrap().replace(&dir.display().to_string(), "OUT");
    assert_eq!(norm(ja, a.path()), norm(jb, b.path()));
    assert!(a.path().join("study-theorem14.meta.json").exists());
}

#[test]
fn replay_reproduces_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = rskp(dir.path(), &["eval", "h", "--n", "2", "--a", "1", "--s", "0,0.5", "--precision", "30"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let path = dir.path().join("eval-h.json");
    let first = std::fs::read(&path).unwrap();
    let saved = dir.path().join("saved.json");
    std::fs::copy(&path, &saved).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_rskp")).arg("replay").arg(&saved).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn precision_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_rskp"))
        .args(["eval", "hermitian-ratio", "--s", "1", "--out"])
        .arg(dir.path())
        .env("RSKP_PRECISION", "20")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("eval-hermitian-ratio.json")).unwrap()).unwrap();
    assert_eq!(report["config"]["digits"], 20);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    // erfc(1) / 2
    assert!((v - 0.078_649_603_525_142_1).abs() < 1e-12, "{v}");
}
