//! Coherent-state Fock amplitudes and the reduced atomic state of the
//! resonant Jaynes-Cummings model.
//!
//! The atom starts excited and the field in a coherent state `|α⟩`. At
//! scaled time `T` the joint state is
//! `Σ C_n [cos(T√(n+1)) |e,n⟩ − i sin(T√(n+1)) |g,n+1⟩]`, so everything
//! about the atom follows from the Poisson-weighted amplitudes `C_n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_open_unit, Error, Result};
use crate::series::Neumaier;

/// Slack on `η ≤ 1` before a density matrix is declared unphysical.
pub const ETA_SLACK: f64 = 1e-9;

/// Largest `|α|²/2` for which `exp(−|α|²/2)` is safely representable; above
/// it the amplitude recurrence runs on log-magnitudes.
const DIRECT_RECURRENCE_LIMIT: f64 = 700.0;

/// Truncated coherent-state coefficients `C_0 ..= C_{n_max}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockAmplitudes {
    coefficients: Vec<Complex64>,
}

impl FockAmplitudes {
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn n_max(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Retained probability `Σ |C_n|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.norm_sqr())
            .collect::<Neumaier>()
            .value()
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .collect::<Neumaier>()
            .value()
    }
}

/// Smallest truncation allowed for `|α| > 0`: `⌈|α|² + 10|α| + 20⌉`.
pub fn truncation_floor(alpha_mag: f64) -> usize {
    if alpha_mag == 0.0 {
        0
    } else {
        (alpha_mag * alpha_mag + 10.0 * alpha_mag + 20.0).ceil() as usize
    }
}

/// Coherent-state amplitudes `C_n = α^n e^{−|α|²/2} / √(n!)` with
/// `α = |α| e^{iϑ}`.
///
/// The truncation `n_max` is the smallest index whose residual Poisson mass
/// is below `fock_tail_tol`, raised to [`truncation_floor`] if needed.
/// Magnitudes come from the recurrence `|C_{n+1}| = |C_n| |α| / √(n+1)`;
/// the phase `e^{inϑ}` is applied per index so it does not drift.
pub fn coherent_amplitudes(
    alpha_mag: f64,
    alpha_phase: f64,
    fock_tail_tol: f64,
) -> Result<FockAmplitudes> {
    ensure_finite("alpha_mag", alpha_mag)?;
    ensure_finite("alpha_phase", alpha_phase)?;
    ensure_open_unit("fock_tail_tol", fock_tail_tol)?;
    if alpha_mag < 0.0 {
        return Err(Error::InvalidParameter {
            name: "alpha_mag",
            value: alpha_mag,
            reason: "must be nonnegative",
        });
    }
    if alpha_mag == 0.0 {
        return Ok(FockAmplitudes {
            coefficients: vec![Complex64::new(1.0, 0.0)],
        });
    }

    let mean = alpha_mag * alpha_mag;
    let floor = truncation_floor(alpha_mag);

    let mags = if mean / 2.0 < DIRECT_RECURRENCE_LIMIT {
        let mut m = (-0.5 * mean).exp();
        poisson_magnitudes(mean, floor, fock_tail_tol, |k| {
            if k > 0 {
                m *= alpha_mag / (k as f64).sqrt();
            }
            m
        })
    } else {
        let ln_alpha = alpha_mag.ln();
        let mut log_m = -0.5 * mean;
        poisson_magnitudes(mean, floor, fock_tail_tol, |k| {
            if k > 0 {
                log_m += ln_alpha - 0.5 * (k as f64).ln();
            }
            log_m.exp()
        })
    };

    // Residual mass beyond each index, accumulated from the small end.
    let mut tail = 0.0;
    let mut adaptive = mags.len() - 1;
    for k in (0..mags.len()).rev() {
        if tail >= fock_tail_tol {
            break;
        }
        adaptive = k;
        tail += mags[k] * mags[k];
    }
    let n_max = adaptive.max(floor);

    let coefficients = mags[..=n_max]
        .iter()
        .enumerate()
        .map(|(n, &m)| Complex64::from_polar(m, n as f64 * alpha_phase))
        .collect();
    Ok(FockAmplitudes { coefficients })
}

/// Collects `|C_k|` for `k = 0, 1, ...` until past both `floor` and the
/// Poisson mode, and until the remaining mass, bounded geometrically by
/// `p_k / (1 − mean/(k+1))`, is negligible against `tol`.
fn poisson_magnitudes<F>(mean: f64, floor: usize, tol: f64, mut next: F) -> Vec<f64>
where
    F: FnMut(usize) -> f64,
{
    let mut mags = Vec::with_capacity(floor + 1);
    for k in 0.. {
        let m = next(k);
        mags.push(m);
        let ratio = mean / (k as f64 + 1.0);
        if k >= floor && ratio < 1.0 && m * m / (1.0 - ratio) < tol * 1e-6 {
            break;
        }
    }
    mags
}

/// The 2×2 reduced state of the atom in the `{|e⟩, |g⟩}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicDensityMatrix {
    pub rho_ee: f64,
    pub rho_gg: f64,
    /// Coherence `⟨e|ρ|g⟩`.
    pub rho_eg: Complex64,
}

impl AtomicDensityMatrix {
    /// Builds a state from its entries, checking unit trace and positivity
    /// to within `1e-12`.
    pub fn new(rho_ee: f64, rho_gg: f64, rho_eg: Complex64) -> Result<Self> {
        ensure_finite("rho_ee", rho_ee)?;
        ensure_finite("rho_gg", rho_gg)?;
        ensure_finite("rho_eg.re", rho_eg.re)?;
        ensure_finite("rho_eg.im", rho_eg.im)?;
        let trace = rho_ee + rho_gg;
        if (trace - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "trace",
                value: trace,
                reason: "density matrix must have unit trace",
            });
        }
        let det = rho_ee * rho_gg - rho_eg.norm_sqr();
        if det < -1e-12 || rho_ee < -1e-12 || rho_gg < -1e-12 {
            return Err(Error::InvalidParameter {
                name: "determinant",
                value: det,
                reason: "density matrix must be positive semidefinite",
            });
        }
        Ok(Self {
            rho_ee,
            rho_gg,
            rho_eg,
        })
    }

    pub fn trace(&self) -> f64 {
        self.rho_ee + self.rho_gg
    }
}

/// Reduced atomic state at scaled time `t`:
///
/// * `ρ_ee = Σ |C_n|² cos²(T√(n+1))`
/// * `ρ_gg = Σ |C_n|² sin²(T√(n+1))`
/// * `ρ_eg = i Σ C_{n+1} C_n* cos(T√(n+2)) sin(T√(n+1))`
///
/// For a coherent state `C_{n+1} C_n* = |C_{n+1} C_n| e^{iϑ}`.
pub fn reduced_density(amps: &FockAmplitudes, t: f64) -> Result<AtomicDensityMatrix> {
    ensure_finite("t", t)?;
    let c = amps.coefficients();
    // (sin, cos) of T√(n+1) for n = 0..=n_max
    let phases: Vec<(f64, f64)> = (0..c.len())
        .map(|n| (t * ((n + 1) as f64).sqrt()).sin_cos())
        .collect();

    let mut ee = Neumaier::default();
    let mut gg = Neumaier::default();
    for (cn, &(s, co)) in c.iter().zip(&phases) {
        let p = cn.norm_sqr();
        ee.add(p * co * co);
        gg.add(p * s * s);
    }

    let mut eg_re = Neumaier::default();
    let mut eg_im = Neumaier::default();
    for n in 0..c.len().saturating_sub(1) {
        let w = c[n + 1] * c[n].conj() * (phases[n + 1].1 * phases[n].0);
        eg_re.add(w.re);
        eg_im.add(w.im);
    }
    // multiply by i
    let rho_eg = Complex64::new(-eg_im.value(), eg_re.value());

    Ok(AtomicDensityMatrix {
        rho_ee: ee.value(),
        rho_gg: gg.value(),
        rho_eg,
    })
}

/// Pauli expectations `(⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩)` and their length `η`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    /// Bloch sphere radius: 1 for a pure atomic state, 0 when maximally mixed.
    pub eta: f64,
}

impl BlochVector {
    /// Builds a vector from its components, clamping a radius in
    /// `(1, 1 + ETA_SLACK]` to 1.
    pub fn from_components(sx: f64, sy: f64, sz: f64) -> Result<Self> {
        ensure_finite("sx", sx)?;
        ensure_finite("sy", sy)?;
        ensure_finite("sz", sz)?;
        let raw = (sx * sx + sy * sy + sz * sz).sqrt();
        if raw > 1.0 + ETA_SLACK {
            return Err(Error::BlochRadiusExceeded(raw));
        }
        Ok(Self {
            sx,
            sy,
            sz,
            eta: raw.min(1.0),
        })
    }

    /// `⟨σ_x⟩² + ⟨σ_y⟩²`
    pub fn transverse_sqr(&self) -> f64 {
        self.sx * self.sx + self.sy * self.sy
    }
}

/// `σ_z = ρ_ee − ρ_gg`, `σ_x = 2 Re ρ_eg`, `σ_y = 2 Im ρ_eg`.
pub fn bloch_vector(rho: &AtomicDensityMatrix) -> Result<BlochVector> {
    BlochVector::from_components(
        2.0 * rho.rho_eg.re,
        2.0 * rho.rho_eg.im,
        rho.rho_ee - rho.rho_gg,
    )
}
