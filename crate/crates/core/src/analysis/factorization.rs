//! Numerical check that a homogeneous walk from the symmetric initial state
//! has payoff `M(beta, t) * sin(alpha + gamma)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coin::CoinAngles;
use crate::error::{Result, WalkError};
use crate::games::{run_game, GameSpec};
use crate::state::Spinor;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorizationSample {
    pub alpha: f64,
    pub gamma: f64,
    pub measured: f64,
    pub predicted: f64,
}

impl FactorizationSample {
    pub fn residual(&self) -> f64 {
        (self.measured - self.predicted).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub beta: f64,
    pub t: usize,
    pub m: f64,
    pub samples: Vec<FactorizationSample>,
    pub max_residual: f64,
}

/// Payoff of the homogeneous walk `U(90, beta, 0)` after `t` steps, where
/// `sin(alpha + gamma) = 1`.
pub fn extract_m(beta: f64, t: usize) -> Result<f64> {
    let game = GameSpec::homogeneous(CoinAngles::su2(90.0, beta, 0.0));
    Ok(run_game(&game, t, Spinor::symmetric())?.payoff)
}

pub fn verify_factorization(
    beta: f64,
    t: usize,
    samples: &[(f64, f64)],
) -> Result<FactorizationReport> {
    if samples.len() < 3 {
        return Err(WalkError::invalid(format!(
            "factorization check needs at least 3 (alpha, gamma) samples, got {}",
            samples.len()
        )));
    }
    let m = extract_m(beta, t)?;
    let samples = samples
        .par_iter()
        .map(|&(alpha, gamma)| {
            let game = GameSpec::homogeneous(CoinAngles::su2(alpha, beta, gamma));
            let measured = run_game(&game, t, Spinor::symmetric())?.payoff;
            Ok(FactorizationSample {
                alpha,
                gamma,
                measured,
                predicted: m * (alpha + gamma).to_radians().sin(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_residual = samples.iter().map(|s| s.residual()).fold(0.0, f64::max);
    Ok(FactorizationReport {
        beta,
        t,
        m,
        samples,
        max_residual,
    })
}
