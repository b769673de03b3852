//! Brute-force walk by explicit enumeration of chirality paths.
//!
//! Shares nothing with the dense evolution in [`crate::state`] beyond the
//! coin matrices, so it can be used to check that evolution.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;

use crate::coin::{DOWN, UP};
use crate::error::{Result, WalkError};
use crate::schedule::CoinSchedule;
use crate::state::Spinor;

/// Largest step count the enumeration accepts (`2 * 2^12` paths).
pub const MAX_ORACLE_STEPS: usize = 12;

/// Sums path amplitudes into `(site, final chirality)` cells and returns `P(x)`.
///
/// Each path starts in one initial chirality and picks an outgoing chirality
/// at every step; the path weight is the product of the coin entries
/// `C[out][in]` of the coin at the walker's position before the move.
pub fn oracle_evolve(
    spinor: Spinor,
    schedule: &CoinSchedule,
    steps: usize,
) -> Result<BTreeMap<i64, f64>> {
    if steps > MAX_ORACLE_STEPS {
        return Err(WalkError::OracleTooLarge {
            steps,
            limit: MAX_ORACLE_STEPS,
        });
    }
    spinor.validate()?;

    let mut cells: HashMap<(i64, usize), Complex64> = HashMap::new();
    for (start, amp) in [(DOWN, spinor.down), (UP, spinor.up)] {
        for path in 0u32..(1u32 << steps) {
            let mut x = 0i64;
            let mut chirality = start;
            let mut weight = amp;
            for k in 0..steps {
                let next = ((path >> k) & 1) as usize;
                weight *= schedule.coin_for_site(x).entry(next, chirality);
                x += if next == UP { 1 } else { -1 };
                chirality = next;
            }
            *cells.entry((x, chirality)).or_default() += weight;
        }
    }

    let mut dist = BTreeMap::new();
    for ((x, _), amp) in cells {
        *dist.entry(x).or_insert(0.0) += amp.norm_sqr();
    }
    dist.retain(|_, p| *p > 0.0);
    Ok(dist)
}
