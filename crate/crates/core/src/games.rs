//! Payoff, verdicts and the named Parrondo games.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coin::CoinAngles;
use crate::error::{Result, WalkError};
use crate::schedule::{ASites, CoinSchedule};
use crate::state::{run_walk, Spinor, WalkState};

/// Payoffs with magnitude at or below this count as a draw.
pub const DEFAULT_DRAW_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Win,
    Loss,
    Draw,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Win => "Win",
            Verdict::Loss => "Loss",
            Verdict::Draw => "Draw",
        })
    }
}

pub fn classify(payoff: f64, draw_tol: f64) -> Verdict {
    if payoff > draw_tol {
        Verdict::Win
    } else if payoff < -draw_tol {
        Verdict::Loss
    } else {
        Verdict::Draw
    }
}

/// Probability strictly right and strictly left of the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffRecord {
    pub p_right: f64,
    pub p_left: f64,
    pub payoff: f64,
    pub verdict: Verdict,
}

pub fn payoff(state: &WalkState) -> PayoffRecord {
    payoff_with_tol(state, DEFAULT_DRAW_TOL)
}

/// `P(0)` counts toward neither side.
pub fn payoff_with_tol(state: &WalkState, draw_tol: f64) -> PayoffRecord {
    let (mut p_right, mut p_left) = (0.0, 0.0);
    for (x, [d, u]) in state.occupied() {
        let p = d.norm_sqr() + u.norm_sqr();
        match x.cmp(&0) {
            std::cmp::Ordering::Greater => p_right += p,
            std::cmp::Ordering::Less => p_left += p,
            std::cmp::Ordering::Equal => {}
        }
    }
    let payoff = p_right - p_left;
    PayoffRecord {
        p_right,
        p_left,
        payoff,
        verdict: classify(payoff, draw_tol),
    }
}

/// `<x> = sum_x x P(x)`.
pub fn mean_position(state: &WalkState) -> f64 {
    state
        .occupied()
        .map(|(x, [d, u])| x as f64 * (d.norm_sqr() + u.norm_sqr()))
        .sum()
}

/// A game described by coin angles, convertible into a [`CoinSchedule`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GameSpec {
    Homogeneous {
        coin: CoinAngles,
    },
    Periodic {
        q: u64,
        coin_a: CoinAngles,
        coin_b: CoinAngles,
        #[serde(default)]
        a_sites: ASites,
    },
}

impl GameSpec {
    pub fn homogeneous(coin: CoinAngles) -> Self {
        GameSpec::Homogeneous { coin }
    }

    pub fn periodic(q: u64, coin_a: CoinAngles, coin_b: CoinAngles) -> Self {
        GameSpec::Periodic {
            q,
            coin_a,
            coin_b,
            a_sites: ASites::AllMultiples,
        }
    }

    pub fn schedule(&self) -> Result<CoinSchedule> {
        match *self {
            GameSpec::Homogeneous { coin } => Ok(CoinSchedule::homogeneous(coin.to_matrix()?)),
            GameSpec::Periodic {
                q,
                coin_a,
                coin_b,
                a_sites,
            } => CoinSchedule::periodic_with(q, coin_a.to_matrix()?, coin_b.to_matrix()?, a_sites),
        }
    }

    /// Same coins with a different period. Homogeneous games are returned unchanged.
    pub fn with_period(&self, q: u64) -> Self {
        match *self {
            GameSpec::Periodic {
                coin_a,
                coin_b,
                a_sites,
                ..
            } => GameSpec::Periodic {
                q,
                coin_a,
                coin_b,
                a_sites,
            },
            h => h,
        }
    }

    pub fn with_a_sites(&self, a_sites: ASites) -> Self {
        match *self {
            GameSpec::Periodic {
                q, coin_a, coin_b, ..
            } => GameSpec::Periodic {
                q,
                coin_a,
                coin_b,
                a_sites,
            },
            h => h,
        }
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameSpec::Homogeneous { coin } => write!(f, "homogeneous U({coin})"),
            GameSpec::Periodic {
                q, coin_a, coin_b, ..
            } => write!(f, "q={q} A=U({coin_a}) B=U({coin_b})"),
        }
    }
}

/// A named periodic game with its customary step count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GamePreset {
    pub name: String,
    pub q: u64,
    pub coin_a: CoinAngles,
    pub coin_b: CoinAngles,
    pub default_steps: usize,
}

impl GamePreset {
    /// A = U(-51, 45, 0), B = U(0, 88, -16), q = 3.
    pub fn game1() -> Self {
        GamePreset {
            name: "game1".into(),
            q: 3,
            coin_a: CoinAngles::su2(-51.0, 45.0, 0.0),
            coin_b: CoinAngles::su2(0.0, 88.0, -16.0),
            default_steps: 100,
        }
    }

    /// A = U(0, 45, -51), B = U(0, 88, -67), q = 3.
    pub fn game2() -> Self {
        GamePreset {
            name: "game2".into(),
            q: 3,
            coin_a: CoinAngles::su2(0.0, 45.0, -51.0),
            coin_b: CoinAngles::su2(0.0, 88.0, -67.0),
            default_steps: 100,
        }
    }

    pub fn all() -> Vec<GamePreset> {
        vec![Self::game1(), Self::game2()]
    }

    pub fn by_name(name: &str) -> Result<GamePreset> {
        Self::all()
            .into_iter()
            .find(|p| p.name == name)
            .ok_or_else(|| WalkError::invalid(format!("unknown preset {name:?}")))
    }

    pub fn spec(&self) -> GameSpec {
        GameSpec::periodic(self.q, self.coin_a, self.coin_b)
    }

    /// Game A played on every site.
    pub fn game_a(&self) -> GameSpec {
        GameSpec::homogeneous(self.coin_a)
    }

    /// Game B played on every site.
    pub fn game_b(&self) -> GameSpec {
        GameSpec::homogeneous(self.coin_b)
    }
}

/// Walks `steps` steps of `game` from `spinor` and scores the result.
pub fn run_game(game: &GameSpec, steps: usize, spinor: Spinor) -> Result<PayoffRecord> {
    let state = run_walk(spinor, &game.schedule()?, steps)?;
    Ok(payoff(&state))
}
