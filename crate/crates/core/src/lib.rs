//! Discrete-time quantum walks on a line with position-dependent coins.
//!
//! A walker carries a two-level chirality (down/L, up/R). Each step applies a
//! coin to the chirality at every site and then shifts the up component one
//! site right and the down component one site left. A [`CoinSchedule`] picks
//! the coin per site: the same coin everywhere, or coin A on multiples of a
//! period `q` and coin B elsewhere.
//!
//! The [`games`] layer scores a walk by `P_R - P_L`, the probability strictly
//! right of the origin minus the probability strictly left of it. Two coins
//! that lose on their own can win when interleaved in space; [`analysis`]
//! contains the scans used to find and study such pairs.
//!
//! ```
//! use qwalk_core::{run_game, GamePreset, Spinor, Verdict};
//!
//! let game1 = GamePreset::game1();
//! let combined = run_game(&game1.spec(), 100, Spinor::symmetric()).unwrap();
//! assert_eq!(combined.verdict, Verdict::Win);
//! let a_alone = run_game(&game1.game_a(), 100, Spinor::symmetric()).unwrap();
//! assert_eq!(a_alone.verdict, Verdict::Loss);
//! ```

pub mod analysis;
pub mod coin;
pub mod error;
pub mod games;
pub mod oracle;
pub mod schedule;
pub mod state;

pub use coin::{build_coin, CoinAngles, CoinMatrix};
pub use error::{Result, WalkError};
pub use games::{
    classify, mean_position, payoff, payoff_with_tol, run_game, GamePreset, GameSpec,
    PayoffRecord, Verdict, DEFAULT_DRAW_TOL,
};
pub use num_complex::Complex64;
pub use oracle::{oracle_evolve, MAX_ORACLE_STEPS};
pub use schedule::{ASites, CoinSchedule};
pub use state::{evolve, initial_state, run_walk, Spinor, WalkState};
