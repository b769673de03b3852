use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coin::CoinAngles;
use crate::error::{Result, WalkError};
use crate::games::GameSpec;

/// A non-empty, strictly increasing list of finite values (degrees, or
/// integer indices stored as floats).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct AngleGrid(Vec<f64>);

impl AngleGrid {
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(WalkError::invalid("grid is empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(WalkError::invalid("grid values must be finite"));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(WalkError::invalid("grid values must be strictly increasing"));
        }
        Ok(AngleGrid(values))
    }

    /// `start, start + step, ...` up to and including `stop` (within 1e-9 of a step).
    pub fn range(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(WalkError::invalid("grid bounds must be finite"));
        }
        if step <= 0.0 {
            return Err(WalkError::invalid(format!("grid step must be positive, got {step}")));
        }
        if stop < start {
            return Err(WalkError::invalid(format!(
                "empty grid: stop {stop} is below start {start}"
            )));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
        Self::from_values((0..n).map(|i| start + i as f64 * step).collect())
    }

    /// Integer points `lo..=hi`.
    pub fn integers(lo: i64, hi: i64) -> Result<Self> {
        Self::from_values((lo..=hi).map(|v| v as f64).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for AngleGrid {
    type Error = WalkError;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::from_values(v)
    }
}

impl From<AngleGrid> for Vec<f64> {
    fn from(g: AngleGrid) -> Self {
        g.0
    }
}

/// One adjustable coin angle of a game.
///
/// The unsuffixed names address the single coin of a homogeneous game; the
/// `_a`/`_b` names address the coins of a periodic game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoinParam {
    Alpha,
    Beta,
    Gamma,
    AlphaA,
    BetaA,
    GammaA,
    AlphaB,
    BetaB,
    GammaB,
}

impl CoinParam {
    pub const ALL: [CoinParam; 9] = [
        CoinParam::Alpha,
        CoinParam::Beta,
        CoinParam::Gamma,
        CoinParam::AlphaA,
        CoinParam::BetaA,
        CoinParam::GammaA,
        CoinParam::AlphaB,
        CoinParam::BetaB,
        CoinParam::GammaB,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CoinParam::Alpha => "alpha",
            CoinParam::Beta => "beta",
            CoinParam::Gamma => "gamma",
            CoinParam::AlphaA => "alpha_a",
            CoinParam::BetaA => "beta_a",
            CoinParam::GammaA => "gamma_a",
            CoinParam::AlphaB => "alpha_b",
            CoinParam::BetaB => "beta_b",
            CoinParam::GammaB => "gamma_b",
        }
    }

    /// Returns `game` with this parameter set to `value` degrees.
    pub fn apply(&self, game: &GameSpec, value: f64) -> Result<GameSpec> {
        fn set(coin: &mut CoinAngles, which: usize, value: f64) {
            match which {
                0 => coin.alpha = value,
                1 => coin.beta = value,
                _ => coin.gamma = value,
            }
        }
        let mut out = *game;
        match (self, &mut out) {
            (CoinParam::Alpha, GameSpec::Homogeneous { coin }) => set(coin, 0, value),
            (CoinParam::Beta, GameSpec::Homogeneous { coin }) => set(coin, 1, value),
            (CoinParam::Gamma, GameSpec::Homogeneous { coin }) => set(coin, 2, value),
            (CoinParam::AlphaA, GameSpec::Periodic { coin_a, .. }) => set(coin_a, 0, value),
            (CoinParam::BetaA, GameSpec::Periodic { coin_a, .. }) => set(coin_a, 1, value),
            (CoinParam::GammaA, GameSpec::Periodic { coin_a, .. }) => set(coin_a, 2, value),
            (CoinParam::AlphaB, GameSpec::Periodic { coin_b, .. }) => set(coin_b, 0, value),
            (CoinParam::BetaB, GameSpec::Periodic { coin_b, .. }) => set(coin_b, 1, value),
            (CoinParam::GammaB, GameSpec::Periodic { coin_b, .. }) => set(coin_b, 2, value),
            (p, g) => {
                let kind = match g {
                    GameSpec::Homogeneous { .. } => "homogeneous",
                    GameSpec::Periodic { .. } => "periodic",
                };
                return Err(WalkError::invalid(format!(
                    "parameter {} does not apply to a {kind} game",
                    p.name()
                )));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CoinParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoinParam {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        CoinParam::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| WalkError::invalid(format!("unknown coin parameter {s:?}")))
    }
}
