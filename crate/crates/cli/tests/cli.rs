use std::path::Path;
use std::process::Command;

use qwalk_cli::{run, ExperimentConfig, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

fn qwalk(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qwalk").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn field(report: &str, key: &str) -> String {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {report}"))
        .to_string()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'), "CSV must use LF line endings");
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

fn max_row(rows: &[Vec<f64>]) -> &Vec<f64> {
    rows.iter()
        .fold(None, |best: Option<&Vec<f64>>, r| match best {
            Some(b) if b.last() >= r.last() => Some(b),
            _ => Some(r),
        })
        .unwrap()
}

#[test]
fn simulate_game1_wins() {
    let (code, out, _) = qwalk(&["simulate", "--preset", "game1", "--steps", "100"]);
    assert_eq!(code, EXIT_OK);
    let payoff: f64 = field(&out, "payoff").parse().unwrap();
    assert!((payoff - 0.00673).abs() < 5e-4);
    assert_eq!(field(&out, "verdict"), "Win");
    assert_eq!(field(&out, "payoff"), "0.00673456989428");
}

#[test]
fn simulate_balanced_coin_draws() {
    let (code, out, _) = in_process(&["simulate", "--coin", "0,45,0", "--steps", "100"]);
    assert_eq!(code, EXIT_OK);
    assert!(field(&out, "payoff").parse::<f64>().unwrap().abs() < 1e-12);
    assert_eq!(field(&out, "verdict"), "Draw");
}

#[test]
fn zero_steps_distribution_is_a_delta() {
    let dir = tempfile::tempdir().unwrap();
    let dist = dir.path().join("dist.csv");
    let (code, _, _) = in_process(&[
        "simulate",
        "--coin",
        "0,45,0",
        "--steps",
        "0",
        "--distribution",
        dist.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let (header, rows) = read_csv(&dist);
    assert_eq!(
        header,
        ["x", "p", "amp_down_re", "amp_down_im", "amp_up_re", "amp_up_im"]
    );
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], 0.0);
    assert!((rows[0][1] - 1.0).abs() < 1e-11);
}

#[test]
fn distribution_sums_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let dist = dir.path().join("dist.csv");
    in_process(&["simulate", "--distribution", dist.to_str().unwrap()]);
    let (_, rows) = read_csv(&dist);
    let total: f64 = rows.iter().map(|r| r[1]).sum();
    assert!((total - 1.0).abs() < 1e-9);
    assert!(rows.iter().all(|r| (r[0] as i64 - 100).rem_euclid(2) == 0));
}

#[test]
fn fig4_sweep_peaks_at_paper_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig4.csv");
    let (code, out, _) = qwalk(&[
        "sweep",
        "--coin-a",
        "0,45,0",
        "--coin-b",
        "0,88,0",
        "--q",
        "3",
        "--axis1",
        "alpha_a=-180:0",
        "--axis2",
        "gamma_b=-180:0",
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("argmax: (-51, -16)"), "{out}");
    let (header, rows) = read_csv(&csv);
    assert_eq!(header, ["alpha_a_deg", "gamma_b_deg", "payoff"]);
    assert_eq!(rows.len(), 181 * 181);
    let best = max_row(&rows);
    assert_eq!((best[0], best[1]), (-51.0, -16.0));
    assert!((best[2] - 0.00673).abs() < 5e-4);

    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(csv.with_extension("json")).unwrap()).unwrap();
    assert_eq!(sidecar["argmax"]["coords"], serde_json::json!([-51.0, -16.0]));
    assert_eq!(sidecar["points"], 181 * 181);
}

#[test]
fn fig2_sweep_peaks_at_88() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig2.csv");
    let (code, _, _) = in_process(&[
        "sweep",
        "--coin",
        "0,0,90",
        "--axis1",
        "beta=0:90",
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let (header, rows) = read_csv(&csv);
    assert_eq!(header, ["beta_deg", "payoff"]);
    assert_eq!(max_row(&rows)[0], 88.0);
}

#[test]
fn single_point_sweep_matches_simulate() {
    let (code, csv, err) = in_process(&[
        "sweep",
        "--preset",
        "game1",
        "--axis1",
        "gamma_b=-16",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(err.starts_with("argmax: (-16)"));
    let (_, sim, _) = in_process(&["simulate", "--preset", "game1"]);
    let row = csv.lines().nth(1).unwrap();
    assert_eq!(row, format!("-16,{}", field(&sim, "payoff")));
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn sweep_errors_exit_with_usage_code() {
    assert_eq!(in_process(&["sweep", "--preset", "game1"]).0, EXIT_USAGE);
    assert_eq!(
        in_process(&["sweep", "--axis1", "gamma_b=0:-10"]).0,
        EXIT_USAGE
    );
    let (code, _, err) = in_process(&["sweep", "--coin", "0,45,0", "--axis1", "gamma_b=0:10"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("does not apply"), "{err}");
}

#[test]
fn single_coin_step_series_loses_throughout() {
    let (code, csv, _) = in_process(&["series", "--coin", "-51,45,0", "--steps", "100"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,payoff"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (t, v) = l.split_once(',').unwrap();
            (t.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|&(t, v)| (t as usize).is_multiple_of(2) && v < 0.0));
}

#[test]
fn all_steps_flag_records_odd_t() {
    let (_, csv, _) = in_process(&["series", "--preset", "game1", "--steps", "7", "--all-steps"]);
    assert_eq!(csv.lines().count(), 8);
    assert!(csv.lines().nth(1).unwrap().starts_with("1,"));
}

#[test]
fn period_series_has_nine_rows() {
    let (code, csv, _) = in_process(&["series", "--preset", "game1", "--kind", "period"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "q,payoff");
    assert_eq!(lines.len(), 10);
    assert!(lines[1].starts_with("2,"));
    assert!(lines[2].starts_with("3,0.00673456989428"));
}

#[test]
fn step_series_end_matches_simulate() {
    let (_, csv, _) = in_process(&["series", "--preset", "game1", "--steps", "100"]);
    let (_, sim, _) = in_process(&["simulate", "--preset", "game1", "--steps", "100"]);
    let last = csv.lines().last().unwrap();
    assert_eq!(last, format!("100,{}", field(&sim, "payoff")));
}

#[test]
fn series_rejects_bad_arguments() {
    assert_eq!(in_process(&["series", "--steps", "0"]).0, EXIT_USAGE);
    assert_eq!(
        in_process(&["series", "--kind", "period", "--q-values", "0:3"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        in_process(&["series", "--kind", "period", "--coin", "0,45,0"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        in_process(&["series", "--even-only", "--all-steps"]).0,
        EXIT_USAGE
    );
}

#[test]
fn verify_passes_and_fails_with_exit_codes() {
    let (code, out, _) = qwalk(&["verify", "--theorem1", "--beta", "88", "--t", "100"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("theorem1: beta=88 t=100"));
    assert!(out.trim_end().ends_with("PASS"));
    assert_eq!(out.lines().count(), 1);

    let (code, out, _) = in_process(&["verify", "--alpha-b-flatness"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("alpha_b_flatness:"));

    let (code, out, _) = in_process(&["verify", "--theorem1", "--beta", "45", "--t", "1"]);
    assert_eq!(code, EXIT_OK);
    let residual: f64 = out
        .split_whitespace()
        .find_map(|w| w.strip_prefix("max_residual="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual < 1e-12);

    let (code, out, _) = in_process(&["verify", "--theorem1", "--theorem1-tol", "0"]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    assert!(out.contains("FAIL"));

    let (code, out, _) = in_process(&["verify"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn presets_lists_both_games() {
    let (code, out, _) = in_process(&["presets"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("game1\t3\t-51,45,0\t0,88,-16\t100"));
    assert!(out.contains("game2\t3\t0,45,-51\t0,88,-67\t100"));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(qwalk(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(qwalk(&["simulate", "--coin", "1,2"]).0, EXIT_USAGE);
    assert_eq!(qwalk(&["simulate", "--spinor", "1,0,1,0"]).0, EXIT_USAGE);
    assert_eq!(qwalk(&["simulate", "--preset", "nope"]).0, EXIT_USAGE);
    let (code, _, err) = qwalk(&["simulate", "--preset", "game1", "--coin", "0,45,0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("only one"), "{err}");
    let (code, out, _) = qwalk(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("simulate"));
}

#[test]
fn config_file_and_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"preset": "game2", "steps": 10}"#).unwrap();
    let cfg_arg = path.to_str().unwrap();

    let (_, from_file, _) = in_process(&["simulate", "--config", cfg_arg]);
    assert_eq!(field(&from_file, "steps"), "10");
    assert!(from_file.contains("B=U(0,88,-67)"));

    let (_, overridden, _) = in_process(&["simulate", "--config", cfg_arg, "--steps", "100", "--coin", "0,45,0"]);
    assert_eq!(field(&overridden, "steps"), "100");
    assert!(overridden.contains("homogeneous U(0,45,0)"));

    std::fs::write(&path, r#"{"stepz": 10}"#).unwrap();
    assert_eq!(in_process(&["simulate", "--config", cfg_arg]).0, EXIT_USAGE);
}

#[test]
fn saved_config_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("saved.json");
    let (_, direct, _) = in_process(&[
        "series",
        "--coin-a",
        "10,45,-20",
        "--coin-b",
        "0,80,-30",
        "--q",
        "4",
        "--steps",
        "30",
        "--all-steps",
        "--a-sites",
        "nonnegative",
        "--save-config",
        saved.to_str().unwrap(),
    ]);
    let cfg = ExperimentConfig::load(&saved).unwrap();
    assert_eq!(ExperimentConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    let (_, replay, _) = in_process(&["series", "--config", saved.to_str().unwrap()]);
    assert_eq!(direct, replay);
}

#[test]
fn a_sites_policy_changes_the_walk() {
    let (_, all, _) = in_process(&["simulate", "--preset", "game1"]);
    let (_, nonneg, _) = in_process(&["simulate", "--preset", "game1", "--a-sites", "nonnegative"]);
    assert_ne!(field(&all, "payoff"), field(&nonneg, "payoff"));
}

#[test]
fn identical_configs_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let run_once = |name: &str| {
        let csv = dir.path().join(name);
        let (code, _, _) = qwalk(&[
            "sweep",
            "--preset",
            "game1",
            "--axis1",
            "alpha_a=-60:-40",
            "--axis2",
            "gamma_b=-30:0:3",
            "-o",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
        (
            std::fs::read(&csv).unwrap(),
            std::fs::read_to_string(csv.with_extension("json")).unwrap(),
        )
    };
    let (csv1, json1) = run_once("a.csv");
    let (csv2, json2) = run_once("b.csv");
    assert_eq!(csv1, csv2);
    // Sidecars differ only in the recorded output path.
    assert_eq!(json1.replace("a.csv", "b.csv"), json2);
}
