//! Component-wise expansion of the atomic Wehrl entropy.
//!
//! Expanding `(1 + β) ln(1 + β)` in powers of
//! `β = σ_z cos Θ + (σ_x cos Φ + σ_y sin Φ) sin Θ` and integrating over the
//! sphere gives
//!
//! ```text
//! W = ln 4π − Σ_{n≥1} Σ_{r=0}^{n} Σ_{s=0}^{r}
//!       (2n)! (−1)^s σ_z^{2(n−r)} (σ_x² + σ_y²)^r
//!     / [2n(2n−1) (2n−2r)! r! 4^r (r−s)! s! (2(n+s−r)+1)]
//! ```
//!
//! The inner sum over `s` alternates, and its partial terms grow like `2^r`
//! while the sum itself can be as small as `2^{−2n}`. In `f64` that wipes
//! out every digit once `n` reaches a few dozen, so each `(n, r)` block is
//! accumulated exactly in big-integer fixed point and only the final block
//! coefficient is rounded to `f64`. The coefficients do not depend on the
//! Bloch vector and are tabulated once per truncation order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::wehrl_max;
use crate::dynamics::{BlochVector, ETA_SLACK};
use crate::error::{Error, Result};
use crate::series::Neumaier;

/// Largest supported `n_terms`; beyond it the block prefactors leave the
/// `f64` range.
pub const MAX_TRIPLE_SUM_TERMS: usize = 400;

/// Tabulated block coefficients `A(n, r)` so that
/// `W = ln 4π − Σ_n Σ_r A(n, r) σ_z^{2(n−r)} (σ_x² + σ_y²)^r`.
#[derive(Debug, Clone)]
pub struct WehrlTripleSum {
    /// `blocks[n − 1][r]` for `n = 1..=n_terms`, `r = 0..=n`.
    blocks: Vec<Vec<f64>>,
}

impl WehrlTripleSum {
    pub fn new(n_terms: usize) -> Result<Self> {
        if n_terms == 0 || n_terms > MAX_TRIPLE_SUM_TERMS {
            return Err(Error::InvalidParameter {
                name: "n_terms",
                value: n_terms as f64,
                reason: "must be between 1 and MAX_TRIPLE_SUM_TERMS",
            });
        }
        let frac_bits = 2 * n_terms + 128;
        let blocks = (1..=n_terms)
            .into_par_iter()
            .map(|n| block_row(n, frac_bits))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { blocks })
    }

    pub fn n_terms(&self) -> usize {
        self.blocks.len()
    }

    /// Block coefficient `A(n, r)`, `1 ≤ n ≤ n_terms`, `0 ≤ r ≤ n`.
    pub fn coefficient(&self, n: usize, r: usize) -> f64 {
        self.blocks[n - 1][r]
    }

    pub fn evaluate(&self, bloch: &BlochVector) -> Result<f64> {
        if bloch.eta > 1.0 + ETA_SLACK {
            return Err(Error::BlochRadiusExceeded(bloch.eta));
        }
        let axial = bloch.sz * bloch.sz;
        let transverse = bloch.transverse_sqr();
        let mut total = Neumaier::default();
        for (row, n) in self.blocks.iter().zip(1i32..) {
            let block: f64 = row
                .iter()
                .zip(0i32..)
                .map(|(a, r)| a * axial.powi(n - r) * transverse.powi(r))
                .sum();
            total.add(block);
        }
        Ok(wehrl_max() - total.value())
    }
}

/// Coefficients `A(n, r)` for `r = 0..=n`.
///
/// `A(n, r) = P(n, r) · I(n − r, r)` with the positive prefactor
/// `P(n, r) = (2n)! / [2n(2n−1) (2n−2r)! (r!)² 4^r]` and the alternating sum
/// `I(m, r) = Σ_s (−1)^s C(r, s) / (2m + 2s + 1)`.
fn block_row(n: usize, frac_bits: usize) -> Result<Vec<f64>> {
    let two_n = 2 * n;
    let mut prefactor = 1.0 / (two_n as f64 * (two_n - 1) as f64);
    let mut row = Vec::with_capacity(n + 1);
    for r in 0..=n {
        if r > 0 {
            let k = (two_n - 2 * (r - 1)) as f64;
            let rr = r as f64;
            prefactor *= k * (k - 1.0) / (4.0 * rr * rr);
        }
        let inner = alternating_block(n - r, r, frac_bits).ok_or(Error::LossOfPrecision { n, r })?;
        row.push(prefactor * inner);
    }
    Ok(row)
}

/// `Σ_{s=0}^{r} (−1)^s C(r, s) / (2m + 2s + 1)`, accumulated in fixed point
/// with `frac_bits` fractional bits. Each term is truncated once, so the
/// accumulated error is at most `r + 1` units in the last place. Returns
/// `None` if that error is not negligible against the result.
fn alternating_block(m: usize, r: usize, frac_bits: usize) -> Option<f64> {
    let one = BigUint::from(1u32) << frac_bits;
    let mut binom = BigUint::from(1u32);
    let mut acc = BigInt::zero();
    for s in 0..=r {
        let denom = (2 * (m + s) + 1) as u64;
        let term = BigInt::from_biguint(Sign::Plus, &binom * &one / denom);
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        if s < r {
            binom = binom * (r - s) / (s + 1);
        }
    }
    let (sign, mag) = acc.into_parts();
    let guard = BigUint::from(r as u64 + 1) << 60u32;
    if sign != Sign::Plus || mag <= guard {
        return None;
    }
    let bits = mag.bits() as usize;
    let shift = bits.saturating_sub(64);
    let top = (mag >> shift).to_u64()? as f64;
    Some(top * 2f64.powi(shift as i32 - frac_bits as i32))
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<WehrlTripleSum>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<WehrlTripleSum>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Wehrl entropy from the component-wise triple sum, truncated after
/// `n = n_terms`. Coefficient tables are shared across calls.
pub fn wehrl_entropy_triple_sum(bloch: &BlochVector, n_terms: usize) -> Result<f64> {
    let table = {
        let mut guard = cache().lock().unwrap_or_else(|e| e.into_inner());
        match guard.get(&n_terms) {
            Some(t) => Arc::clone(t),
            None => {
                let t = Arc::new(WehrlTripleSum::new(n_terms)?);
                guard.insert(n_terms, Arc::clone(&t));
                t
            }
        }
    };
    table.evaluate(bloch)
}
