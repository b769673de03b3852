use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwalk_core::{ASites, CoinAngles};

use crate::config::{AxisSpec, CommandKind, ExperimentConfig, GridSpec, SeriesKind, SpinorConfig};

#[derive(Debug, Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Quantum walks on a line with position-dependent coins, and the Parrondo games built from them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one walk and report P_R, P_L, the payoff and <x>.
    Simulate(SimulateArgs),
    /// Payoff over a 1-D or 2-D grid of coin angles (CSV + JSON sidecar).
    Sweep(SweepArgs),
    /// Payoff against step count or period (CSV).
    Series(SeriesArgs),
    /// Check the payoff factorization and the alpha_B flatness.
    Verify(VerifyArgs),
    /// List the built-in games.
    Presets,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ASitesArg {
    /// Every multiple of q, negative ones included.
    All,
    /// Only 0, q, 2q, ...
    Nonnegative,
}

impl From<ASitesArg> for ASites {
    fn from(a: ASitesArg) -> Self {
        match a {
            ASitesArg::All => ASites::AllMultiples,
            ASitesArg::Nonnegative => ASites::NonnegativeMultiples,
        }
    }
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON config file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Built-in game (see `qwalk presets`).
    #[arg(long)]
    pub preset: Option<String>,
    /// Single coin on every site: "alpha,beta,gamma[,theta]" in degrees.
    #[arg(long, allow_hyphen_values = true)]
    pub coin: Option<CoinAngles>,
    /// Coin played on multiples of q.
    #[arg(long, allow_hyphen_values = true)]
    pub coin_a: Option<CoinAngles>,
    /// Coin played on every other site.
    #[arg(long, allow_hyphen_values = true)]
    pub coin_b: Option<CoinAngles>,
    /// Period of the A-sites [default: 3, or the preset's].
    #[arg(long)]
    pub q: Option<u64>,
    /// Number of steps (the largest step for step series) [default: 100].
    #[arg(long)]
    pub steps: Option<usize>,
    /// Initial spinor "down_re,down_im,up_re,up_im" [default: (|down> + i|up>)/sqrt 2].
    #[arg(long, allow_hyphen_values = true)]
    pub spinor: Option<SpinorConfig>,
    /// Which multiples of q play game A.
    #[arg(long, value_enum)]
    pub a_sites: Option<ASitesArg>,
    /// Output file (stdout when omitted).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Write the resolved configuration as JSON to this path.
    #[arg(long)]
    pub save_config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Write the per-site distribution and amplitudes as CSV.
    #[arg(long)]
    pub distribution: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// First swept parameter, e.g. "alpha_a=-180:0:1".
    #[arg(long, allow_hyphen_values = true)]
    pub axis1: Option<AxisSpec>,
    /// Optional second swept parameter, e.g. "gamma_b=-180:0".
    #[arg(long, allow_hyphen_values = true)]
    pub axis2: Option<AxisSpec>,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// "steps" (payoff vs t) or "period" (payoff vs q).
    #[arg(long)]
    pub kind: Option<SeriesKind>,
    /// Periods for a period series, "start:stop[:step]" [default: 2:10].
    #[arg(long)]
    pub q_values: Option<GridSpec>,
    /// Record only even step counts (the default).
    #[arg(long, conflicts_with = "all_steps")]
    pub even_only: bool,
    /// Record every step count.
    #[arg(long)]
    pub all_steps: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Check P_R - P_L = M(beta, t) sin(alpha + gamma) on random (alpha, gamma).
    #[arg(long)]
    pub theorem1: bool,
    /// Check that the payoff does not depend on alpha_B.
    #[arg(long)]
    pub alpha_b_flatness: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Steps for the factorization check.
    #[arg(long)]
    pub t: Option<usize>,
    /// Random (alpha, gamma) samples for the factorization check.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub theorem1_tol: Option<f64>,
    #[arg(long)]
    pub flatness_tol: Option<f64>,
}

impl CommonArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if self.preset.is_some()
            || self.coin.is_some()
            || self.coin_a.is_some()
            || self.coin_b.is_some()
        {
            cfg.clear_game();
            cfg.preset = self.preset.clone();
            cfg.coin = self.coin;
            cfg.coin_a = self.coin_a;
            cfg.coin_b = self.coin_b;
        }
        if let Some(q) = self.q {
            cfg.q = Some(q);
        }
        if let Some(steps) = self.steps {
            cfg.steps = steps;
        }
        if let Some(s) = self.spinor {
            cfg.spinor = s;
        }
        if let Some(a) = self.a_sites {
            cfg.a_sites = a.into();
        }
        if let Some(o) = &self.output {
            cfg.output = Some(o.clone());
        }
    }
}

impl Command {
    pub fn kind(&self) -> CommandKind {
        match self {
            Command::Simulate(_) => CommandKind::Simulate,
            Command::Sweep(_) => CommandKind::Sweep,
            Command::Series(_) => CommandKind::Series,
            Command::Verify(_) => CommandKind::Verify,
            Command::Presets => CommandKind::Presets,
        }
    }

    pub fn common(&self) -> Option<&CommonArgs> {
        match self {
            Command::Simulate(a) => Some(&a.common),
            Command::Sweep(a) => Some(&a.common),
            Command::Series(a) => Some(&a.common),
            Command::Verify(a) => Some(&a.common),
            Command::Presets => None,
        }
    }

    /// Loads the config file, if any, and layers the flags on top.
    pub fn resolve(&self) -> anyhow::Result<ExperimentConfig> {
        let mut cfg = match self.common().and_then(|c| c.config.as_deref()) {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        cfg.command = self.kind();
        if let Some(common) = self.common() {
            common.apply(&mut cfg);
        }
        match self {
            Command::Simulate(a) => {
                if let Some(d) = &a.distribution {
                    cfg.distribution = Some(d.clone());
                }
            }
            Command::Sweep(a) => {
                if let Some(x) = a.axis1 {
                    cfg.sweep.axis1 = Some(x);
                }
                if let Some(x) = a.axis2 {
                    cfg.sweep.axis2 = Some(x);
                }
            }
            Command::Series(a) => {
                if let Some(k) = a.kind {
                    cfg.series.kind = k;
                }
                if let Some(g) = a.q_values {
                    cfg.series.q_values = g;
                }
                if a.even_only {
                    cfg.even_only = true;
                }
                if a.all_steps {
                    cfg.even_only = false;
                }
            }
            Command::Verify(a) => {
                let v = &mut cfg.verify;
                v.theorem1 |= a.theorem1;
                v.alpha_b_flatness |= a.alpha_b_flatness;
                if let Some(x) = a.beta {
                    v.beta = x;
                }
                if let Some(x) = a.t {
                    v.t = x;
                }
                if let Some(x) = a.samples {
                    v.samples = x;
                }
                if let Some(x) = a.seed {
                    v.seed = x;
                }
                if let Some(x) = a.theorem1_tol {
                    v.theorem1_tol = x;
                }
                if let Some(x) = a.flatness_tol {
                    v.flatness_tol = x;
                }
            }
            Command::Presets => {}
        }
        Ok(cfg)
    }
}
