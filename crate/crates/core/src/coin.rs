//! Coin operators acting on the two-dimensional chirality space.
//!
//! Chirality index 0 is down/L (moves to x - 1), index 1 is up/R (moves to
//! x + 1). A matrix's first column is the image of the down state.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};

/// Chirality index of the down/L component.
pub const DOWN: usize = 0;
/// Chirality index of the up/R component.
pub const UP: usize = 1;

/// Coin parameters in degrees.
///
/// `theta` is a global phase; `theta == 0` is the SU(2) family.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CoinAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    #[serde(default)]
    pub theta: f64,
}

impl CoinAngles {
    /// SU(2) angles (zero global phase).
    pub const fn su2(alpha: f64, beta: f64, gamma: f64) -> Self {
        CoinAngles {
            alpha,
            beta,
            gamma,
            theta: 0.0,
        }
    }

    pub const fn u2(alpha: f64, beta: f64, gamma: f64, theta: f64) -> Self {
        CoinAngles {
            alpha,
            beta,
            gamma,
            theta,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.alpha.is_finite()
            && self.beta.is_finite()
            && self.gamma.is_finite()
            && self.theta.is_finite()
    }

    pub fn to_matrix(&self) -> Result<CoinMatrix> {
        build_coin(self)
    }
}

impl fmt::Display for CoinAngles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.alpha, self.beta, self.gamma)?;
        if self.theta != 0.0 {
            write!(f, ",{}", self.theta)?;
        }
        Ok(())
    }
}

/// Parses `"alpha,beta,gamma"` or `"alpha,beta,gamma,theta"` in degrees.
impl FromStr for CoinAngles {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|e| WalkError::invalid(format!("bad angle {p:?} in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let angles = match parts[..] {
            [a, b, g] => CoinAngles::su2(a, b, g),
            [a, b, g, t] => CoinAngles::u2(a, b, g, t),
            _ => {
                return Err(WalkError::invalid(format!(
                    "expected 3 or 4 comma-separated angles, got {:?}",
                    s
                )))
            }
        };
        if !angles.is_finite() {
            return Err(WalkError::invalid(format!("non-finite angle in {s:?}")));
        }
        Ok(angles)
    }
}

/// A 2x2 complex matrix on chirality space, indexed `[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix(pub [[Complex64; 2]; 2]);

impl CoinMatrix {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        CoinMatrix([[one, zero], [zero, one]])
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        CoinMatrix([[h, h], [h, -h]])
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    /// Applies the coin to a local `[down, up]` spinor.
    #[inline(always)]
    pub fn apply(&self, s: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [
            m[0][0] * s[0] + m[0][1] * s[1],
            m[1][0] * s[0] + m[1][1] * s[1],
        ]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        CoinMatrix([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn mul(&self, rhs: &CoinMatrix) -> CoinMatrix {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        CoinMatrix(out)
    }

    /// Largest per-entry deviation of `M M^dagger` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.mul(&self.adjoint());
        let id = CoinMatrix::identity();
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((p.0[i][j] - id.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

/// Builds `e^{i theta} [[e^{i alpha} cos beta, -e^{-i gamma} sin beta],
/// [e^{i gamma} sin beta, e^{-i alpha} cos beta]]` from angles in degrees.
pub fn build_coin(angles: &CoinAngles) -> Result<CoinMatrix> {
    if !angles.is_finite() {
        return Err(WalkError::invalid(format!(
            "coin angles must be finite, got {angles:?}"
        )));
    }
    let alpha = angles.alpha.to_radians();
    let (sin_b, cos_b) = angles.beta.to_radians().sin_cos();
    let gamma = angles.gamma.to_radians();
    let phase = Complex64::cis(angles.theta.to_radians());

    let m = [
        [
            phase * Complex64::cis(alpha) * cos_b,
            -phase * Complex64::cis(-gamma) * sin_b,
        ],
        [
            phase * Complex64::cis(gamma) * sin_b,
            phase * Complex64::cis(-alpha) * cos_b,
        ],
    ];
    Ok(CoinMatrix(m))
}
