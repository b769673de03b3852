//! Experiment configuration shared by every subcommand.
//!
//! A config can be loaded from a JSON file and then overridden by flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use qwalk_core::analysis::{AngleGrid, CoinParam, SweepAxis};
use qwalk_core::{ASites, CoinAngles, Complex64, GamePreset, GameSpec, Spinor};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    #[default]
    Simulate,
    Sweep,
    Series,
    Verify,
    Presets,
}

/// Inclusive `start:stop:step` range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    #[serde(default = "default_grid_step")]
    pub step: f64,
}

fn default_grid_step() -> f64 {
    1.0
}

impl GridSpec {
    pub fn grid(&self) -> anyhow::Result<AngleGrid> {
        Ok(AngleGrid::range(self.start, self.stop, self.step)?)
    }
}

impl FromStr for GridSpec {
    type Err = anyhow::Error;

    /// `start:stop` or `start:stop:step`; a single number is a one-point grid.
    fn from_str(s: &str) -> anyhow::Result<Self> {
        let parts = s
            .split(':')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .with_context(|| format!("bad number {p:?} in grid {s:?}"))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let spec = match parts[..] {
            [v] => GridSpec {
                start: v,
                stop: v,
                step: 1.0,
            },
            [start, stop] => GridSpec {
                start,
                stop,
                step: 1.0,
            },
            [start, stop, step] => GridSpec { start, stop, step },
            _ => bail!("grid {s:?} must be start:stop[:step]"),
        };
        spec.grid()?;
        Ok(spec)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

/// A swept coin parameter, written `param=start:stop[:step]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub param: CoinParam,
    pub grid: GridSpec,
}

impl AxisSpec {
    pub fn axis(&self) -> anyhow::Result<SweepAxis> {
        Ok(SweepAxis::new(self.param, self.grid.grid()?))
    }
}

impl FromStr for AxisSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let (param, grid) = s
            .split_once('=')
            .ok_or_else(|| anyhow!("axis {s:?} must look like gamma_b=-180:0:1"))?;
        Ok(AxisSpec {
            param: param.parse()?,
            grid: grid.parse()?,
        })
    }
}

/// Initial chirality amplitudes as `[re, im]` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinorConfig {
    pub down: [f64; 2],
    pub up: [f64; 2],
}

impl Default for SpinorConfig {
    fn default() -> Self {
        let s = Spinor::symmetric();
        SpinorConfig {
            down: [s.down.re, s.down.im],
            up: [s.up.re, s.up.im],
        }
    }
}

impl SpinorConfig {
    pub fn spinor(&self) -> anyhow::Result<Spinor> {
        let s = Spinor::new(
            Complex64::new(self.down[0], self.down[1]),
            Complex64::new(self.up[0], self.up[1]),
        );
        s.validate()?;
        Ok(s)
    }
}

impl FromStr for SpinorConfig {
    type Err = anyhow::Error;

    /// `down_re,down_im,up_re,up_im`
    fn from_str(s: &str) -> anyhow::Result<Self> {
        let v = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .with_context(|| format!("bad number {p:?} in spinor {s:?}"))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let [dr, di, ur, ui] = v[..] else {
            bail!("spinor {s:?} must be down_re,down_im,up_re,up_im");
        };
        let cfg = SpinorConfig {
            down: [dr, di],
            up: [ur, ui],
        };
        cfg.spinor()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    /// Payoff against step count.
    #[default]
    Steps,
    /// Payoff against the period q at fixed steps.
    Period,
}

impl FromStr for SeriesKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "steps" | "t" => Ok(SeriesKind::Steps),
            "period" | "q" => Ok(SeriesKind::Period),
            _ => bail!("series kind must be steps or period, got {s:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub axis1: Option<AxisSpec>,
    pub axis2: Option<AxisSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SeriesConfig {
    pub kind: SeriesKind,
    pub q_values: GridSpec,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            kind: SeriesKind::Steps,
            q_values: GridSpec {
                start: 2.0,
                stop: 10.0,
                step: 1.0,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub theorem1: bool,
    pub alpha_b_flatness: bool,
    pub beta: f64,
    pub t: usize,
    pub samples: usize,
    pub seed: u64,
    pub theorem1_tol: f64,
    pub flatness_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            theorem1: false,
            alpha_b_flatness: false,
            beta: 88.0,
            t: 100,
            samples: 20,
            seed: 1,
            theorem1_tol: 1e-9,
            flatness_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: CommandKind,
    /// Built-in game name; see `qwalk presets`.
    pub preset: Option<String>,
    /// Single coin on every site.
    pub coin: Option<CoinAngles>,
    pub coin_a: Option<CoinAngles>,
    pub coin_b: Option<CoinAngles>,
    /// Period for custom periodic games; overrides a preset's period when set.
    pub q: Option<u64>,
    pub steps: usize,
    pub spinor: SpinorConfig,
    pub a_sites: ASites,
    pub even_only: bool,
    pub output: Option<PathBuf>,
    /// Simulate only: where to write the per-site distribution CSV.
    pub distribution: Option<PathBuf>,
    pub sweep: SweepConfig,
    pub series: SeriesConfig,
    pub verify: VerifyConfig,
}

pub const DEFAULT_STEPS: usize = 100;
pub const DEFAULT_Q: u64 = 3;

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            command: CommandKind::Simulate,
            preset: None,
            coin: None,
            coin_a: None,
            coin_b: None,
            q: None,
            steps: DEFAULT_STEPS,
            spinor: SpinorConfig::default(),
            a_sites: ASites::AllMultiples,
            even_only: true,
            output: None,
            distribution: None,
            sweep: SweepConfig::default(),
            series: SeriesConfig::default(),
            verify: VerifyConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Drops every game selector so a new one can take over.
    pub fn clear_game(&mut self) {
        self.preset = None;
        self.coin = None;
        self.coin_a = None;
        self.coin_b = None;
    }

    /// Resolves the selected game; `game1` when nothing is selected.
    pub fn game(&self) -> anyhow::Result<GameSpec> {
        let selectors = [
            self.preset.is_some(),
            self.coin.is_some(),
            self.coin_a.is_some() || self.coin_b.is_some(),
        ];
        if selectors.iter().filter(|&&s| s).count() > 1 {
            bail!("choose only one of preset, coin, or coin_a/coin_b");
        }
        let spec = match (&self.preset, self.coin, self.coin_a, self.coin_b) {
            (Some(name), ..) => {
                let p = GamePreset::by_name(name)?;
                p.spec().with_period(self.q.unwrap_or(p.q))
            }
            (None, Some(coin), ..) => GameSpec::homogeneous(coin),
            (None, None, Some(a), Some(b)) => {
                GameSpec::periodic(self.q.unwrap_or(DEFAULT_Q), a, b)
            }
            (None, None, Some(_), None) | (None, None, None, Some(_)) => {
                bail!("a periodic game needs both coin_a and coin_b")
            }
            (None, None, None, None) => {
                let p = GamePreset::game1();
                p.spec().with_period(self.q.unwrap_or(p.q))
            }
        };
        if let GameSpec::Periodic { q: 0, .. } = spec {
            bail!("period q must be at least 1");
        }
        Ok(spec.with_a_sites(self.a_sites))
    }
}
