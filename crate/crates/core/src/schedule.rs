use serde::{Deserialize, Serialize};

use crate::coin::CoinMatrix;
use crate::error::{Result, WalkError};

/// Which multiples of the period count as A-sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ASites {
    /// x = n q for every integer n, including negative n.
    #[default]
    AllMultiples,
    /// x = n q for n >= 0 only; negative multiples play B.
    NonnegativeMultiples,
}

/// Rule assigning a coin to each site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoinSchedule {
    Homogeneous(CoinMatrix),
    /// Coin A on multiples of `q`, coin B everywhere else.
    Periodic {
        q: u64,
        coin_a: CoinMatrix,
        coin_b: CoinMatrix,
        a_sites: ASites,
    },
}

impl CoinSchedule {
    pub fn homogeneous(coin: CoinMatrix) -> Self {
        CoinSchedule::Homogeneous(coin)
    }

    pub fn periodic(q: u64, coin_a: CoinMatrix, coin_b: CoinMatrix) -> Result<Self> {
        Self::periodic_with(q, coin_a, coin_b, ASites::AllMultiples)
    }

    pub fn periodic_with(
        q: u64,
        coin_a: CoinMatrix,
        coin_b: CoinMatrix,
        a_sites: ASites,
    ) -> Result<Self> {
        if q == 0 {
            return Err(WalkError::invalid("period q must be at least 1"));
        }
        Ok(CoinSchedule::Periodic {
            q,
            coin_a,
            coin_b,
            a_sites,
        })
    }

    /// True if site `x` plays game A. Homogeneous schedules have only A.
    #[inline]
    pub fn is_a_site(&self, x: i64) -> bool {
        match *self {
            CoinSchedule::Homogeneous(_) => true,
            CoinSchedule::Periodic { q, a_sites, .. } => {
                let on_multiple = x.rem_euclid(q as i64) == 0;
                match a_sites {
                    ASites::AllMultiples => on_multiple,
                    ASites::NonnegativeMultiples => on_multiple && x >= 0,
                }
            }
        }
    }

    #[inline]
    pub fn coin_for_site(&self, x: i64) -> &CoinMatrix {
        match self {
            CoinSchedule::Homogeneous(c) => c,
            CoinSchedule::Periodic { coin_a, coin_b, .. } => {
                if self.is_a_site(x) {
                    coin_a
                } else {
                    coin_b
                }
            }
        }
    }
}
