//! Dense state vector of a walker on the line.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coin::{DOWN, UP};
use crate::error::{Result, WalkError};
use crate::schedule::CoinSchedule;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Tolerance on `|a|^2 + |b|^2 - 1` for an initial spinor.
pub const SPINOR_NORM_TOL: f64 = 1e-12;

/// Chirality amplitudes at the origin before the first step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spinor {
    pub down: Complex64,
    pub up: Complex64,
}

impl Spinor {
    pub const fn new(down: Complex64, up: Complex64) -> Self {
        Spinor { down, up }
    }

    /// `(|down> + i|up>) / sqrt(2)`, the symmetric state used by the Parrondo games.
    pub fn symmetric() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Spinor::new(Complex64::new(r, 0.0), Complex64::new(0.0, r))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.down.norm_sqr() + self.up.norm_sqr()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.norm_sqr();
        if !n.is_finite() || (n - 1.0).abs() > SPINOR_NORM_TOL {
            return Err(WalkError::invalid(format!(
                "initial spinor must be normalized, |a|^2 + |b|^2 = {n}"
            )));
        }
        Ok(())
    }
}

impl Default for Spinor {
    fn default() -> Self {
        Spinor::symmetric()
    }
}

/// Walker state after `t` steps, stored densely over sites `[-capacity, capacity]`.
///
/// Only sites with `|x| <= t` and `x = t (mod 2)` are ever nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    t: usize,
    capacity: usize,
    amp: Vec<[Complex64; 2]>,
}

/// Places `spinor` at the origin with room for `capacity` steps.
pub fn initial_state(spinor: Spinor, capacity: usize) -> Result<WalkState> {
    spinor.validate()?;
    let mut amp = vec![[ZERO; 2]; 2 * capacity + 1];
    amp[capacity] = [spinor.down, spinor.up];
    Ok(WalkState {
        t: 0,
        capacity,
        amp,
    })
}

impl WalkState {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    fn index(&self, x: i64) -> Option<usize> {
        let i = x.checked_add(self.capacity as i64)?;
        if i >= 0 && (i as usize) < self.amp.len() {
            Some(i as usize)
        } else {
            None
        }
    }

    /// `[down, up]` amplitudes at site `x`; zero outside the allocated range.
    pub fn amplitude(&self, x: i64) -> [Complex64; 2] {
        self.index(x).map_or([ZERO; 2], |i| self.amp[i])
    }

    pub fn probability(&self, x: i64) -> f64 {
        let [d, u] = self.amplitude(x);
        d.norm_sqr() + u.norm_sqr()
    }

    /// Sites reachable at the current step (`-t, -t + 2, ..., t`) with their amplitudes.
    pub fn occupied(&self) -> impl Iterator<Item = (i64, [Complex64; 2])> + '_ {
        let t = self.t as i64;
        (-t..=t)
            .step_by(2)
            .map(move |x| (x, self.amp[(x + self.capacity as i64) as usize]))
    }

    /// Every allocated site, including those outside the light cone.
    pub fn all_sites(&self) -> impl Iterator<Item = (i64, [Complex64; 2])> + '_ {
        let c = self.capacity as i64;
        self.amp
            .iter()
            .enumerate()
            .map(move |(i, a)| (i as i64 - c, *a))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp
            .iter()
            .map(|[d, u]| d.norm_sqr() + u.norm_sqr())
            .sum()
    }

    /// `P(x)` for every site with nonzero probability.
    pub fn position_distribution(&self) -> BTreeMap<i64, f64> {
        self.occupied()
            .map(|(x, [d, u])| (x, d.norm_sqr() + u.norm_sqr()))
            .filter(|&(_, p)| p > 0.0)
            .collect()
    }

    /// One walk step: coin at each site (chosen by the pre-shift position),
    /// then up moves to `x + 1` and down to `x - 1`.
    pub fn step(&mut self, schedule: &CoinSchedule) -> Result<()> {
        self.check_capacity(1)?;
        let c = self.capacity as i64;
        let t = self.t as i64;
        // Sites of opposite parity are zero, so the update can run in place:
        // site x only writes the down slot of x - 1 and the up slot of x + 1.
        for x in (-t..=t).step_by(2) {
            let i = (x + c) as usize;
            let out = schedule.coin_for_site(x).apply(self.amp[i]);
            self.amp[i] = [ZERO; 2];
            self.amp[i - 1][DOWN] = out[DOWN];
            self.amp[i + 1][UP] = out[UP];
        }
        self.t += 1;
        Ok(())
    }

    /// Applies `steps` successive steps. Fails without modifying the state if
    /// the capacity would be exceeded.
    pub fn evolve(&mut self, schedule: &CoinSchedule, steps: usize) -> Result<()> {
        self.check_capacity(steps)?;
        for _ in 0..steps {
            self.step(schedule)?;
        }
        Ok(())
    }

    fn check_capacity(&self, steps: usize) -> Result<()> {
        let requested = self.t.saturating_add(steps);
        if requested > self.capacity {
            return Err(WalkError::CapacityExceeded {
                requested,
                capacity: self.capacity,
            });
        }
        Ok(())
    }
}

/// Value-style wrapper around [`WalkState::evolve`].
pub fn evolve(mut state: WalkState, schedule: &CoinSchedule, steps: usize) -> Result<WalkState> {
    state.evolve(schedule, steps)?;
    Ok(state)
}

/// Fresh walk of `steps` steps from `spinor`, sized exactly for those steps.
pub fn run_walk(spinor: Spinor, schedule: &CoinSchedule, steps: usize) -> Result<WalkState> {
    evolve(initial_state(spinor, steps)?, schedule, steps)
}
