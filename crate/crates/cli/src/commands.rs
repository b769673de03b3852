use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use qwalk_core::analysis::{
    alpha_b_flatness, q_series_for, step_series, sweep, verify_factorization, AngleGrid,
    SeriesResult, SweepGrid,
};
use qwalk_core::{mean_position, payoff, run_walk, CoinAngles, GamePreset, GameSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{ExperimentConfig, SeriesKind};
use crate::format::fmt_sig;

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code for bad flags, configs, or arguments.
pub const EXIT_USAGE: i32 = 1;
/// Exit code when a verification check exceeds its tolerance.
pub const EXIT_VERIFY_FAILED: i32 = 2;

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn write_file(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

/// Writes to the configured output file, or to `out` when there is none.
fn emit(cfg: &ExperimentConfig, out: &mut dyn Write, bytes: &[u8]) -> anyhow::Result<()> {
    match &cfg.output {
        Some(path) => write_file(path, bytes),
        None => Ok(out.write_all(bytes)?),
    }
}

pub fn cmd_simulate(cfg: &ExperimentConfig, out: &mut dyn Write) -> anyhow::Result<i32> {
    let game = cfg.game()?;
    let state = run_walk(cfg.spinor.spinor()?, &game.schedule()?, cfg.steps)?;
    let record = payoff(&state);

    let mut report = String::new();
    report.push_str(&format!("game: {game}\n"));
    report.push_str(&format!("steps: {}\n", cfg.steps));
    report.push_str(&format!("p_right: {}\n", fmt_sig(record.p_right)));
    report.push_str(&format!("p_left: {}\n", fmt_sig(record.p_left)));
    report.push_str(&format!("payoff: {}\n", fmt_sig(record.payoff)));
    report.push_str(&format!("verdict: {}\n", record.verdict));
    report.push_str(&format!("mean_position: {}\n", fmt_sig(mean_position(&state))));
    emit(cfg, out, report.as_bytes())?;

    if let Some(path) = &cfg.distribution {
        let mut w = csv_writer();
        w.write_record(["x", "p", "amp_down_re", "amp_down_im", "amp_up_re", "amp_up_im"])?;
        for (x, [d, u]) in state.occupied() {
            let p = d.norm_sqr() + u.norm_sqr();
            if p > 0.0 {
                w.write_record([
                    x.to_string(),
                    fmt_sig(p),
                    fmt_sig(d.re),
                    fmt_sig(d.im),
                    fmt_sig(u.re),
                    fmt_sig(u.im),
                ])?;
            }
        }
        write_file(path, &w.into_inner()?)?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SweepSidecar<'a> {
    columns: Vec<String>,
    points: usize,
    argmax: &'a qwalk_core::analysis::Argmax,
    steps: usize,
    game: GameSpec,
    config: &'a ExperimentConfig,
}

pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

fn sweep_csv(grid: &SweepGrid) -> anyhow::Result<Vec<u8>> {
    let mut w = csv_writer();
    w.write_record(grid.column_names())?;
    for (coords, v) in grid.points() {
        let mut row: Vec<String> = coords.iter().map(|&c| fmt_sig(c)).collect();
        row.push(fmt_sig(v));
        w.write_record(&row)?;
    }
    Ok(w.into_inner()?)
}

pub fn cmd_sweep(
    cfg: &ExperimentConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<i32> {
    let Some(axis1) = &cfg.sweep.axis1 else {
        bail!("sweep needs --axis1 param=start:stop[:step]");
    };
    let axis2 = cfg.sweep.axis2.as_ref().map(|a| a.axis()).transpose()?;
    let template = cfg.game()?;
    let grid = sweep(&template, axis1.axis()?, axis2, cfg.steps, cfg.spinor.spinor()?)?;

    emit(cfg, out, &sweep_csv(&grid)?)?;

    let coords: Vec<String> = grid.argmax.coords.iter().map(|&c| fmt_sig(c)).collect();
    let summary = format!(
        "argmax: ({}) payoff {} over {} points\n",
        coords.join(", "),
        fmt_sig(grid.argmax.value),
        grid.values.len()
    );
    match &cfg.output {
        Some(path) => {
            let sidecar = SweepSidecar {
                columns: grid.column_names(),
                points: grid.values.len(),
                argmax: &grid.argmax,
                steps: cfg.steps,
                game: template,
                config: cfg,
            };
            let mut json = serde_json::to_string_pretty(&sidecar)?;
            json.push('\n');
            write_file(&sidecar_path(path), json.as_bytes())?;
            out.write_all(summary.as_bytes())?;
        }
        None => err.write_all(summary.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn series_csv(series: &SeriesResult) -> anyhow::Result<Vec<u8>> {
    let mut w = csv_writer();
    w.write_record([series.index_name.as_str(), "payoff"])?;
    for (i, v) in series.iter() {
        w.write_record([fmt_sig(i), fmt_sig(v)])?;
    }
    Ok(w.into_inner()?)
}

fn period_list(grid: &AngleGrid) -> anyhow::Result<Vec<u64>> {
    grid.values()
        .iter()
        .map(|&v| {
            if v < 1.0 || v.fract() != 0.0 {
                bail!("periods must be integers >= 1, got {v}");
            }
            Ok(v as u64)
        })
        .collect()
}

pub fn cmd_series(cfg: &ExperimentConfig, out: &mut dyn Write) -> anyhow::Result<i32> {
    let game = cfg.game()?;
    let spinor = cfg.spinor.spinor()?;
    let series = match cfg.series.kind {
        SeriesKind::Steps => {
            if cfg.steps < 1 {
                bail!("step series needs --steps >= 1");
            }
            step_series(&game, cfg.steps, cfg.even_only, spinor)?
        }
        SeriesKind::Period => {
            if matches!(game, GameSpec::Homogeneous { .. }) {
                bail!("a period series needs a periodic game (preset or coin_a/coin_b)");
            }
            let qs = period_list(&cfg.series.q_values.grid()?)?;
            q_series_for(&game, &qs, cfg.steps, spinor)?
        }
    };
    emit(cfg, out, &series_csv(&series)?)?;
    Ok(EXIT_OK)
}

/// Coin A of the alpha_B flatness check; coin B is `U(alpha_B, 88, 0)`.
const FLATNESS_COIN_A: CoinAngles = CoinAngles::su2(15.0, 45.0, 30.0);

pub fn cmd_verify(cfg: &ExperimentConfig, out: &mut dyn Write) -> anyhow::Result<i32> {
    let v = &cfg.verify;
    let run_all = !v.theorem1 && !v.alpha_b_flatness;
    let mut ok = true;

    if v.theorem1 || run_all {
        let mut rng = ChaCha8Rng::seed_from_u64(v.seed);
        let samples: Vec<(f64, f64)> = (0..v.samples)
            .map(|_| {
                (
                    rng.random_range(-180.0..180.0),
                    rng.random_range(-180.0..180.0),
                )
            })
            .collect();
        let report = verify_factorization(v.beta, v.t, &samples)?;
        let pass = report.max_residual < v.theorem1_tol;
        ok &= pass;
        writeln!(
            out,
            "theorem1: beta={} t={} M={} samples={} max_residual={} tol={} {}",
            fmt_sig(v.beta),
            v.t,
            fmt_sig(report.m),
            report.samples.len(),
            fmt_sig(report.max_residual),
            fmt_sig(v.theorem1_tol),
            if pass { "PASS" } else { "FAIL" }
        )?;
    }

    if v.alpha_b_flatness || run_all {
        let grid = AngleGrid::integers(-180, 180)?;
        let report = alpha_b_flatness(100, 3, FLATNESS_COIN_A, 88.0, 0.0, &grid, cfg.spinor.spinor()?)?;
        let pass = report.spread < v.flatness_tol;
        ok &= pass;
        writeln!(
            out,
            "alpha_b_flatness: A=U({FLATNESS_COIN_A}) B=U(alpha_b,88,0) q=3 t=100 points={} spread={} tol={} {}",
            grid.len(),
            fmt_sig(report.spread),
            fmt_sig(v.flatness_tol),
            if pass { "PASS" } else { "FAIL" }
        )?;
    }

    Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

pub fn cmd_presets(out: &mut dyn Write) -> anyhow::Result<i32> {
    writeln!(out, "name\tq\tcoin_a\tcoin_b\tdefault_steps")?;
    for p in GamePreset::all() {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            p.name, p.q, p.coin_a, p.coin_b, p.default_steps
        )?;
    }
    Ok(EXIT_OK)
}
