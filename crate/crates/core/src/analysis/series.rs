use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{AngleGrid, CoinParam};
use crate::coin::CoinAngles;
use crate::error::{Result, WalkError};
use crate::games::{classify, payoff, run_game, GameSpec, Verdict, DEFAULT_DRAW_TOL};
use crate::state::{initial_state, Spinor};

/// Payoff against an increasing index (steps, period, or an angle in degrees).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub index_name: String,
    pub index: Vec<f64>,
    pub payoffs: Vec<f64>,
}

impl SeriesResult {
    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.index.iter().copied().zip(self.payoffs.iter().copied())
    }

    /// Payoff recorded at index value `at`, if present.
    pub fn value_at(&self, at: f64) -> Option<f64> {
        self.iter().find(|&(i, _)| i == at).map(|(_, v)| v)
    }

    /// `max - min` of the payoffs.
    pub fn spread(&self) -> f64 {
        let (lo, hi) = self
            .payoffs
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        hi - lo
    }

    pub fn argmax(&self) -> Option<(f64, f64)> {
        self.iter()
            .fold(None, |best: Option<(f64, f64)>, (i, v)| match best {
                Some((_, b)) if b >= v => best,
                _ => Some((i, v)),
            })
    }

    /// True if the series both rises and falls somewhere.
    pub fn is_non_monotone(&self) -> bool {
        let diffs = || self.payoffs.windows(2).map(|w| w[1] - w[0]);
        diffs().any(|d| d > 0.0) && diffs().any(|d| d < 0.0)
    }

    /// Index values where the verdict differs from the previous entry's.
    pub fn verdict_changes(&self) -> Vec<f64> {
        self.payoffs
            .windows(2)
            .zip(self.index.iter().skip(1))
            .filter(|(w, _)| {
                classify(w[0], DEFAULT_DRAW_TOL) != classify(w[1], DEFAULT_DRAW_TOL)
            })
            .map(|(_, &i)| i)
            .collect()
    }

    /// First index strictly above `after` whose verdict differs from the
    /// preceding entry.
    pub fn first_verdict_change_after(&self, after: f64) -> Option<f64> {
        self.verdict_changes().into_iter().find(|&i| i > after)
    }
}

/// Payoffs after each of `checkpoints` steps, from a single incremental walk.
/// `checkpoints` must be strictly increasing.
pub fn payoffs_at(game: &GameSpec, checkpoints: &[usize], spinor: Spinor) -> Result<Vec<f64>> {
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(WalkError::invalid("checkpoints must be strictly increasing"));
    }
    let Some(&last) = checkpoints.last() else {
        return Ok(Vec::new());
    };
    let schedule = game.schedule()?;
    let mut state = initial_state(spinor, last)?;
    let mut out = Vec::with_capacity(checkpoints.len());
    for &t in checkpoints {
        state.evolve(&schedule, t - state.t())?;
        out.push(payoff(&state).payoff);
    }
    Ok(out)
}

/// Payoff of `game` after `t = 1..=t_max` steps, or `t = 2, 4, ...` when `even_only`.
pub fn step_series(
    game: &GameSpec,
    t_max: usize,
    even_only: bool,
    spinor: Spinor,
) -> Result<SeriesResult> {
    if t_max < 1 {
        return Err(WalkError::invalid("step series needs t_max >= 1"));
    }
    let ts: Vec<usize> = if even_only {
        (2..=t_max).step_by(2).collect()
    } else {
        (1..=t_max).collect()
    };
    if ts.is_empty() {
        return Err(WalkError::invalid(format!(
            "no even step count in 1..={t_max}"
        )));
    }
    let payoffs = payoffs_at(game, &ts, spinor)?;
    Ok(SeriesResult {
        index_name: "t".into(),
        index: ts.iter().map(|&t| t as f64).collect(),
        payoffs,
    })
}

fn check_periods(qs: &[u64]) -> Result<()> {
    if qs.is_empty() {
        return Err(WalkError::invalid("period list is empty"));
    }
    if qs.contains(&0) {
        return Err(WalkError::invalid("every period q must be at least 1"));
    }
    if qs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(WalkError::invalid("periods must be strictly increasing"));
    }
    Ok(())
}

/// Payoff after `t` steps for each period in `qs`, keeping the coins of `game`.
pub fn q_series_for(game: &GameSpec, qs: &[u64], t: usize, spinor: Spinor) -> Result<SeriesResult> {
    check_periods(qs)?;
    let payoffs = qs
        .par_iter()
        .map(|&q| Ok(run_game(&game.with_period(q), t, spinor)?.payoff))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesResult {
        index_name: "q".into(),
        index: qs.iter().map(|&q| q as f64).collect(),
        payoffs,
    })
}

pub fn q_series(
    coin_a: CoinAngles,
    coin_b: CoinAngles,
    qs: &[u64],
    t: usize,
    spinor: Spinor,
) -> Result<SeriesResult> {
    q_series_for(&GameSpec::periodic(1, coin_a, coin_b), qs, t, spinor)
}

/// Payoff of `template` with one coin parameter scanned over `grid`.
pub fn param_scan(
    template: &GameSpec,
    param: CoinParam,
    grid: &AngleGrid,
    t: usize,
    spinor: Spinor,
) -> Result<SeriesResult> {
    param.apply(template, grid.values()[0])?;
    let payoffs = grid
        .values()
        .par_iter()
        .map(|&v| Ok(run_game(&param.apply(template, v)?, t, spinor)?.payoff))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesResult {
        index_name: param.name().into(),
        index: grid.values().to_vec(),
        payoffs,
    })
}

/// Homogeneous walk `U(alpha, beta, gamma)` for each `beta` in `grid`.
pub fn beta_scan(
    t: usize,
    alpha: f64,
    gamma: f64,
    grid: &AngleGrid,
    spinor: Spinor,
) -> Result<SeriesResult> {
    let template = GameSpec::homogeneous(CoinAngles::su2(alpha, 0.0, gamma));
    param_scan(&template, CoinParam::Beta, grid, t, spinor)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub series: SeriesResult,
    pub spread: f64,
}

/// Periodic walk with `coin_a` and `B = U(alpha_b, beta_b, gamma_b)`, scanned over `alpha_b`.
pub fn alpha_b_flatness(
    t: usize,
    q: u64,
    coin_a: CoinAngles,
    beta_b: f64,
    gamma_b: f64,
    grid: &AngleGrid,
    spinor: Spinor,
) -> Result<FlatnessReport> {
    let template = GameSpec::periodic(q, coin_a, CoinAngles::su2(0.0, beta_b, gamma_b));
    let series = param_scan(&template, CoinParam::AlphaB, grid, t, spinor)?;
    Ok(FlatnessReport {
        spread: series.spread(),
        series,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalencePoint {
    pub t: usize,
    pub q: u64,
    pub payoff_x: f64,
    pub payoff_y: f64,
    pub verdict_x: Verdict,
    pub verdict_y: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub points: Vec<EquivalencePoint>,
    pub verdicts_agree: bool,
    pub max_abs_diff: f64,
}

/// Compares two games at every `(t, q)` in `ts x qs`, substituting each `q`
/// as the period of both.
pub fn equivalence_report(
    x: &GameSpec,
    y: &GameSpec,
    ts: &[usize],
    qs: &[u64],
    spinor: Spinor,
) -> Result<EquivalenceReport> {
    if ts.is_empty() {
        return Err(WalkError::invalid("step list is empty"));
    }
    check_periods(qs)?;
    let mut sorted_ts = ts.to_vec();
    sorted_ts.sort_unstable();
    sorted_ts.dedup();

    let per_q = qs
        .par_iter()
        .map(|&q| {
            let px = payoffs_at(&x.with_period(q), &sorted_ts, spinor)?;
            let py = payoffs_at(&y.with_period(q), &sorted_ts, spinor)?;
            Ok(sorted_ts
                .iter()
                .zip(px.into_iter().zip(py))
                .map(|(&t, (payoff_x, payoff_y))| EquivalencePoint {
                    t,
                    q,
                    payoff_x,
                    payoff_y,
                    verdict_x: classify(payoff_x, DEFAULT_DRAW_TOL),
                    verdict_y: classify(payoff_y, DEFAULT_DRAW_TOL),
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;

    let points: Vec<EquivalencePoint> = per_q.into_iter().flatten().collect();
    let verdicts_agree = points.iter().all(|p| p.verdict_x == p.verdict_y);
    let max_abs_diff = points
        .iter()
        .map(|p| (p.payoff_x - p.payoff_y).abs())
        .fold(0.0, f64::max);
    Ok(EquivalenceReport {
        points,
        verdicts_agree,
        max_abs_diff,
    })
}
