//! Linear, von Neumann and atomic Wehrl entropies of a qubit.
//!
//! For the reduced atomic state all three depend on the Bloch radius `η`
//! alone, so each is a function `f64 -> f64` here. The von Neumann and
//! Wehrl entropies are available both in closed form and as power series
//! in `η²`; [`triple_sum`] carries the component-wise Wehrl expansion.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::dynamics::{BlochVector, ETA_SLACK};
use crate::error::{Error, Result};
use crate::series::sum_series;

pub mod triple_sum;

pub use triple_sum::{wehrl_entropy_triple_sum, WehrlTripleSum};

/// `ln(4π)`, the Wehrl entropy of the maximally mixed qubit.
pub fn wehrl_max() -> f64 {
    (4.0 * PI).ln()
}

/// `ln(2π) + 1/2`, the Wehrl entropy of any pure qubit state.
pub fn wehrl_min() -> f64 {
    (2.0 * PI).ln() + 0.5
}

/// `ln 2 − 1/2 = Σ_{n≥1} 1/(2n(2n−1)(2n+1))`, the span of the Wehrl entropy.
pub const WEHRL_SPAN: f64 = LN_2 - 0.5;

/// Below this radius the Wehrl closed form is replaced by its series.
pub const WEHRL_SERIES_SWITCHOVER: f64 = 1e-3;

/// Tolerance used when the closed form delegates to the series.
const SWITCHOVER_SERIES_TOL: f64 = 1e-16;

pub(crate) fn check_eta(eta: f64) -> Result<f64> {
    if eta.is_nan() || !(0.0..=1.0 + ETA_SLACK).contains(&eta) {
        return Err(Error::EtaOutOfRange(eta));
    }
    Ok(eta.min(1.0))
}

fn check_series_tol(series_tol: f64) -> Result<()> {
    if series_tol.is_finite() && series_tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "series_tol",
            value: series_tol,
            reason: "must be positive",
        })
    }
}

/// `x ln x`, continuously extended by 0 at `x = 0`.
pub(crate) fn x_ln_x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Linear entropy `ξ = 1 − Tr ρ² = (1 − η²)/2`.
pub fn linear_entropy(eta: f64) -> Result<f64> {
    let eta = check_eta(eta)?;
    Ok(0.5 * (1.0 - eta * eta))
}

/// Eigenvalues `μ± = (1 ± η)/2` of the reduced state.
pub fn eigenvalues(eta: f64) -> Result<(f64, f64)> {
    let eta = check_eta(eta)?;
    Ok((0.5 * (1.0 - eta), 0.5 * (1.0 + eta)))
}

/// von Neumann entropy `−μ₋ ln μ₋ − μ₊ ln μ₊` in nats.
pub fn von_neumann_entropy(eta: f64) -> Result<f64> {
    let (lo, hi) = eigenvalues(eta)?;
    Ok((-x_ln_x(lo) - x_ln_x(hi)).max(0.0))
}

/// `ln 2 − Σ η^{2n} / (2n(2n−1))`.
///
/// Defined for `η < 1` only; at `η = 1` the terms decay like `n⁻²` and the
/// closed form is the right tool.
pub fn von_neumann_series(eta: f64, series_tol: f64) -> Result<f64> {
    let eta = check_eta(eta)?;
    if eta >= 1.0 {
        return Err(Error::OutsideSeriesDomain(eta));
    }
    check_series_tol(series_tol)?;
    let x = eta * eta;
    let mut power = 1.0;
    let sum = sum_series(series_tol, |n| {
        power *= x;
        let k = 2.0 * n as f64;
        power / (k * (k - 1.0))
    })?;
    Ok(LN_2 - sum.value)
}

/// Atomic Wehrl entropy in closed form,
/// `½ + ln 4π − ½ ln(1 − η²) + ¼ (η + 1/η) ln[(1 − η)/(1 + η)]`.
///
/// The two `ln(1 − η)` contributions are merged, leaving
/// `½ + ln 4π − (½ + ¼(η + 1/η)) ln(1 + η) + (1 − η)²/(4η) ln(1 − η)`,
/// which is regular up to and including `η = 1`. Below
/// [`WEHRL_SERIES_SWITCHOVER`] the `1/η` cancellation is avoided by using the
/// series instead.
pub fn wehrl_entropy_closed(eta: f64) -> Result<f64> {
    let eta = check_eta(eta)?;
    if eta < WEHRL_SERIES_SWITCHOVER {
        return wehrl_entropy_series(eta, SWITCHOVER_SERIES_TOL);
    }
    let singular = if eta == 1.0 {
        0.0
    } else {
        (1.0 - eta).powi(2) / (4.0 * eta) * (-eta).ln_1p()
    };
    let regular = (0.5 + 0.25 * (eta + 1.0 / eta)) * eta.ln_1p();
    Ok(0.5 + wehrl_max() - regular + singular)
}

/// `ln 4π − Σ η^{2n} / (2n(2n−1)(2n+1))`; converges on all of `[0, 1]`.
pub fn wehrl_entropy_series(eta: f64, series_tol: f64) -> Result<f64> {
    let eta = check_eta(eta)?;
    check_series_tol(series_tol)?;
    let x = eta * eta;
    let mut power = 1.0;
    let sum = sum_series(series_tol, |n| {
        power *= x;
        let k = 2.0 * n as f64;
        power / (k * (k - 1.0) * (k + 1.0))
    })?;
    Ok(wehrl_max() - sum.value)
}

/// Rescales `γ` by `ln 2` and `W_a` by its span below `ln 4π`:
/// `(γ / ln 2, (ln 4π − W_a) / (ln 2 − ½))`.
pub fn normalized_entropies(gamma: f64, wehrl: f64) -> (f64, f64) {
    (gamma / LN_2, (wehrl_max() - wehrl) / WEHRL_SPAN)
}

/// All entropies at one time point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyRecord {
    pub t: f64,
    pub eta: f64,
    pub xi: f64,
    pub gamma: f64,
    pub wehrl_closed: f64,
    pub wehrl_series: f64,
    pub gamma_norm: f64,
    pub wehrl_norm: f64,
}

impl EntropyRecord {
    pub fn from_bloch(t: f64, bloch: &BlochVector, series_tol: f64) -> Result<Self> {
        let eta = bloch.eta;
        let gamma = von_neumann_entropy(eta)?;
        let wehrl_closed = wehrl_entropy_closed(eta)?;
        let (gamma_norm, wehrl_norm) = normalized_entropies(gamma, wehrl_closed);
        Ok(Self {
            t,
            eta,
            xi: linear_entropy(eta)?,
            gamma,
            wehrl_closed,
            wehrl_series: wehrl_entropy_series(eta, series_tol)?,
            gamma_norm,
            wehrl_norm,
        })
    }

    /// Checks the physical ranges of every entropy, with `1e-9` slack on
    /// the Wehrl bounds.
    pub fn within_bounds(&self) -> bool {
        let w_lo = wehrl_min() - 1e-9;
        let w_hi = wehrl_max() + 1e-9;
        (0.0..=0.5).contains(&self.xi)
            && (0.0..=LN_2).contains(&self.gamma)
            && (w_lo..=w_hi).contains(&self.wehrl_closed)
            && (w_lo..=w_hi).contains(&self.wehrl_series)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-14;

    #[test]
    fn linear_entropy_endpoints() {
        assert_eq!(linear_entropy(1.0).unwrap(), 0.0);
        assert_eq!(linear_entropy(0.0).unwrap(), 0.5);
    }

    #[test]
    fn linear_entropy_matches_purity() {
        // rho_ee = 0.8, rho_gg = 0.2, no coherence: eta = 0.6
        let purity: f64 = 0.8 * 0.8 + 0.2 * 0.2;
        let xi = linear_entropy(0.6).unwrap();
        assert!((xi - 0.32).abs() < 1e-15);
        assert!((xi - (1.0 - purity)).abs() < 1e-15);
    }

    #[test]
    fn eta_domain_is_enforced() {
        for bad in [-1e-3, 1.0 + 1e-6, f64::NAN, f64::INFINITY] {
            assert!(matches!(linear_entropy(bad), Err(Error::EtaOutOfRange(_))));
            assert!(von_neumann_entropy(bad).is_err());
            assert!(wehrl_entropy_closed(bad).is_err());
            assert!(wehrl_entropy_series(bad, TOL).is_err());
        }
        // tolerated overshoot is clamped
        assert_eq!(linear_entropy(1.0 + 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn von_neumann_endpoints() {
        assert_eq!(von_neumann_entropy(1.0).unwrap(), 0.0);
        assert!((von_neumann_entropy(0.0).unwrap() - LN_2).abs() < 1e-16);
        assert!((LN_2 - 0.693).abs() < 2e-4);
    }

    #[test]
    fn von_neumann_half() {
        // −(¼ ln ¼ + ¾ ln ¾)
        let expected = 0.562_335_144_618_808_4;
        assert!((von_neumann_entropy(0.5).unwrap() - expected).abs() < 1e-15);
        assert!((von_neumann_series(0.5, TOL).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn von_neumann_series_routes() {
        assert_eq!(von_neumann_series(0.0, TOL).unwrap(), LN_2);
        let closed = von_neumann_entropy(0.99).unwrap();
        assert!((von_neumann_series(0.99, TOL).unwrap() - closed).abs() < 1e-10);
    }

    #[test]
    fn von_neumann_series_refuses_pure_states() {
        assert!(matches!(
            von_neumann_series(1.0, TOL),
            Err(Error::OutsideSeriesDomain(_))
        ));
        assert!(von_neumann_series(0.5, 0.0).is_err());
    }

    #[test]
    fn wehrl_endpoints() {
        assert!((wehrl_entropy_closed(0.0).unwrap() - wehrl_max()).abs() < 1e-16);
        assert!((wehrl_entropy_closed(1e-9).unwrap() - wehrl_max()).abs() < 1e-16);
        assert!((wehrl_max() - 2.531_024).abs() < 1e-6);
        assert!((wehrl_entropy_closed(1.0).unwrap() - wehrl_min()).abs() < 1e-15);
        assert!((wehrl_entropy_closed(1.0).unwrap() - 2.3379).abs() < 5e-5);
    }

    #[test]
    fn wehrl_series_endpoints() {
        assert_eq!(wehrl_entropy_series(0.0, TOL).unwrap(), wehrl_max());
        let at_one = wehrl_entropy_series(1.0, TOL).unwrap();
        assert!((at_one - 2.337_877).abs() < 1e-6);
        assert!((at_one - wehrl_min()).abs() < 1e-10);
    }

    #[test]
    fn wehrl_routes_agree_at_half() {
        let closed = wehrl_entropy_closed(0.5).unwrap();
        let series = wehrl_entropy_series(0.5, TOL).unwrap();
        assert!((closed - series).abs() < 1e-12);
        // mpmath quadrature of the Husimi integral
        assert!((closed - 2.488_232_602_777_612_7).abs() < 1e-14);
    }

    #[test]
    fn closed_form_is_continuous_across_switchover() {
        let below = wehrl_entropy_closed(WEHRL_SERIES_SWITCHOVER * (1.0 - 1e-12)).unwrap();
        let above = wehrl_entropy_closed(WEHRL_SERIES_SWITCHOVER).unwrap();
        assert!((below - above).abs() < 1e-15);
    }

    #[test]
    fn closed_form_is_smooth_near_one() {
        for d in [1e-6, 1e-8, 1e-10, 1e-12] {
            let w = wehrl_entropy_closed(1.0 - d).unwrap();
            // slope dW/dη → −½ at η = 1
            assert!((w - wehrl_min() - 0.5 * d).abs() < 1e-4 * d + 1e-15, "{d}");
        }
    }

    #[test]
    fn normalization_endpoints() {
        let (g, w) = normalized_entropies(LN_2, wehrl_max());
        assert!((g - 1.0).abs() < 1e-16 && w.abs() < 1e-16);
        let (g, w) = normalized_entropies(0.0, wehrl_min());
        assert!(g.abs() < 1e-16 && (w - 1.0).abs() < 1e-14);
    }

    #[test]
    fn normalization_at_half() {
        let gamma = von_neumann_entropy(0.5).unwrap();
        let wehrl = wehrl_entropy_closed(0.5).unwrap();
        let (g, w) = normalized_entropies(gamma, wehrl);
        assert!((g - 0.562_335_144_618_808_4 / LN_2).abs() < 1e-15);
        let by_hand = (2.531_024_246_969_290_8 - 2.488_232_602_777_612_7) / 0.193_147_180_559_945_3;
        assert!((w - by_hand).abs() < 1e-13);
    }

    #[test]
    fn record_from_pure_state() {
        let b = BlochVector::from_components(0.0, 0.0, 1.0).unwrap();
        let r = EntropyRecord::from_bloch(0.0, &b, TOL).unwrap();
        assert_eq!(r.xi, 0.0);
        assert_eq!(r.gamma, 0.0);
        assert!((r.wehrl_closed - wehrl_min()).abs() < 1e-15);
        assert!(r.within_bounds());
    }
}
