use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{AngleGrid, CoinParam};
use super::series::SeriesResult;
use crate::coin::CoinAngles;
use crate::error::Result;
use crate::games::{run_game, GameSpec};
use crate::state::Spinor;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub param: CoinParam,
    pub grid: AngleGrid,
}

impl SweepAxis {
    pub fn new(param: CoinParam, grid: AngleGrid) -> Self {
        SweepAxis { param, grid }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Argmax {
    /// One coordinate per axis.
    pub coords: Vec<f64>,
    pub value: f64,
}

/// Payoff over a 1-D or 2-D grid of coin angles.
///
/// `values` is row-major with `axis1` as the outer index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub axis1: SweepAxis,
    pub axis2: Option<SweepAxis>,
    pub values: Vec<f64>,
    pub argmax: Argmax,
}

impl SweepGrid {
    fn from_values(axis1: SweepAxis, axis2: Option<SweepAxis>, values: Vec<f64>) -> Self {
        let (best, _) = best_excluding(&values, None);
        let argmax = Argmax {
            coords: coords_of(&axis1, axis2.as_ref(), best),
            value: values[best],
        };
        SweepGrid {
            axis1,
            axis2,
            values,
            argmax,
        }
    }

    /// Builds a 1-D grid from a series swept over `param`.
    pub fn from_series(param: CoinParam, series: &SeriesResult) -> Result<Self> {
        let axis = SweepAxis::new(param, AngleGrid::from_values(series.index.clone())?);
        Ok(Self::from_values(axis, None, series.payoffs.clone()))
    }

    fn stride(&self) -> usize {
        self.axis2.as_ref().map_or(1, |a| a.grid.len())
    }

    /// Payoff at `(i, j)`; `j` must be 0 for 1-D grids.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.stride() + j]
    }

    /// `(coordinates, payoff)` for every point in grid order.
    pub fn points(&self) -> impl Iterator<Item = (Vec<f64>, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(k, &v)| (coords_of(&self.axis1, self.axis2.as_ref(), k), v))
    }

    /// Largest payoff at any point other than the argmax, if there is one.
    pub fn second_best(&self) -> Option<Argmax> {
        if self.values.len() < 2 {
            return None;
        }
        let (best, _) = best_excluding(&self.values, None);
        let (k, v) = best_excluding(&self.values, Some(best));
        Some(Argmax {
            coords: coords_of(&self.axis1, self.axis2.as_ref(), k),
            value: v,
        })
    }

    /// Points whose payoff is within `tol` of the maximum, in grid order.
    pub fn near_maxima(&self, tol: f64) -> Vec<Argmax> {
        self.values
            .iter()
            .enumerate()
            .filter(|&(_, &v)| self.argmax.value - v <= tol)
            .map(|(k, &v)| Argmax {
                coords: coords_of(&self.axis1, self.axis2.as_ref(), k),
                value: v,
            })
            .collect()
    }

    pub fn column_names(&self) -> Vec<String> {
        let mut names = vec![format!("{}_deg", self.axis1.param)];
        if let Some(a) = &self.axis2 {
            names.push(format!("{}_deg", a.param));
        }
        names.push("payoff".into());
        names
    }
}

fn coords_of(axis1: &SweepAxis, axis2: Option<&SweepAxis>, k: usize) -> Vec<f64> {
    match axis2 {
        None => vec![axis1.grid.values()[k]],
        Some(a2) => {
            let n = a2.grid.len();
            vec![axis1.grid.values()[k / n], a2.grid.values()[k % n]]
        }
    }
}

// First strictly-largest entry, i.e. the lexicographically smallest coordinates on ties.
fn best_excluding(values: &[f64], skip: Option<usize>) -> (usize, f64) {
    let mut best: Option<(usize, f64)> = None;
    for (k, &v) in values.iter().enumerate() {
        if Some(k) == skip {
            continue;
        }
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((k, v));
        }
    }
    best.expect("grid has at least one point")
}

/// Evaluates the payoff of `template` with the swept parameters substituted
/// at every grid point. Points are independent and evaluated in parallel;
/// results are collected in grid order.
pub fn sweep(
    template: &GameSpec,
    axis1: SweepAxis,
    axis2: Option<SweepAxis>,
    steps: usize,
    spinor: Spinor,
) -> Result<SweepGrid> {
    spinor.validate()?;
    let n2 = axis2.as_ref().map_or(1, |a| a.grid.len());
    let total = axis1.grid.len() * n2;

    // Fail fast on parameters that do not fit the template.
    let probe = axis1.param.apply(template, axis1.grid.values()[0])?;
    if let Some(a2) = &axis2 {
        a2.param.apply(&probe, a2.grid.values()[0])?;
    }

    let values = (0..total)
        .into_par_iter()
        .map(|k| {
            let mut game = axis1.param.apply(template, axis1.grid.values()[k / n2])?;
            if let Some(a2) = &axis2 {
                game = a2.param.apply(&game, a2.grid.values()[k % n2])?;
            }
            Ok(run_game(&game, steps, spinor)?.payoff)
        })
        .collect::<Result<Vec<f64>>>()?;

    Ok(SweepGrid::from_values(axis1, axis2, values))
}

/// The two angle planes scanned for the combined game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sweep2dMode {
    /// Sweep `alpha_a` and `gamma_b`; `gamma_a = alpha_b = 0`.
    AlphaAGammaB,
    /// Sweep `gamma_a` and `gamma_b`; `alpha_a = alpha_b = 0`.
    GammaAGammaB,
}

impl Sweep2dMode {
    pub fn params(&self) -> (CoinParam, CoinParam) {
        match self {
            Sweep2dMode::AlphaAGammaB => (CoinParam::AlphaA, CoinParam::GammaB),
            Sweep2dMode::GammaAGammaB => (CoinParam::GammaA, CoinParam::GammaB),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sweep2dFixed {
    pub beta_a: f64,
    pub beta_b: f64,
    pub q: u64,
    pub steps: usize,
}

impl Default for Sweep2dFixed {
    fn default() -> Self {
        Sweep2dFixed {
            beta_a: 45.0,
            beta_b: 88.0,
            q: 3,
            steps: 100,
        }
    }
}

pub fn sweep2d(
    mode: Sweep2dMode,
    fixed: Sweep2dFixed,
    grid1: AngleGrid,
    grid2: AngleGrid,
    spinor: Spinor,
) -> Result<SweepGrid> {
    let template = GameSpec::periodic(
        fixed.q,
        CoinAngles::su2(0.0, fixed.beta_a, 0.0),
        CoinAngles::su2(0.0, fixed.beta_b, 0.0),
    );
    let (p1, p2) = mode.params();
    sweep(
        &template,
        SweepAxis::new(p1, grid1),
        Some(SweepAxis::new(p2, grid2)),
        fixed.steps,
        spinor,
    )
}
