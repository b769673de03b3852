//! Parameter scans, step and period series, and the checks built on them.

mod factorization;
mod grid;
mod series;
mod sweep;

pub use factorization::{extract_m, verify_factorization, FactorizationReport, FactorizationSample};
pub use grid::{AngleGrid, CoinParam};
pub use series::{
    alpha_b_flatness, beta_scan, equivalence_report, param_scan, payoffs_at, q_series,
    q_series_for, step_series, EquivalencePoint, EquivalenceReport, FlatnessReport, SeriesResult,
};
pub use sweep::{sweep, sweep2d, Argmax, Sweep2dFixed, Sweep2dMode, SweepAxis, SweepGrid};
