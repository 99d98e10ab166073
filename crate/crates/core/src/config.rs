use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_open_unit, Error, Result};

/// Parameters of one time sweep.
///
/// Time is the dimensionless `T = λt` throughout; at resonance the coupling
/// constant only enters through that scaling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    /// Coherent amplitude `|α|`.
    pub alpha_mag: f64,
    /// Coherent phase `ϑ` in radians.
    pub alpha_phase: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub t_steps: usize,
    /// Poisson mass allowed beyond the Fock truncation.
    pub fock_tail_tol: f64,
    /// Relative stopping tolerance of the power series.
    pub series_tol: f64,
    pub quad_theta_order: usize,
    pub quad_phi_order: usize,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            alpha_mag: 7.0,
            alpha_phase: 0.0,
            t_start: 0.0,
            t_end: 30.0,
            t_steps: 3000,
            fock_tail_tol: 1e-12,
            series_tol: 1e-14,
            quad_theta_order: 64,
            quad_phi_order: 128,
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        let alpha = ensure_finite("alpha_mag", self.alpha_mag)?;
        if alpha < 0.0 {
            return Err(Error::InvalidParameter {
                name: "alpha_mag",
                value: alpha,
                reason: "must be nonnegative",
            });
        }
        ensure_finite("alpha_phase", self.alpha_phase)?;
        let t0 = ensure_finite("t_start", self.t_start)?;
        let t1 = ensure_finite("t_end", self.t_end)?;
        if self.t_steps == 0 {
            return Err(Error::InvalidParameter {
                name: "t_steps",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        if t1 < t0 || (self.t_steps > 1 && t1 == t0) {
            return Err(Error::InvalidParameter {
                name: "t_end",
                value: t1,
                reason: "must exceed t_start (or equal it for a single step)",
            });
        }
        ensure_open_unit("fock_tail_tol", self.fock_tail_tol)?;
        ensure_open_unit("series_tol", self.series_tol)?;
        if self.quad_theta_order < 2 {
            return Err(Error::InvalidParameter {
                name: "quad_theta_order",
                value: self.quad_theta_order as f64,
                reason: "needs at least 2 nodes",
            });
        }
        if self.quad_phi_order < 4 {
            return Err(Error::InvalidParameter {
                name: "quad_phi_order",
                value: self.quad_phi_order as f64,
                reason: "needs at least 4 nodes",
            });
        }
        Ok(())
    }

    /// The evenly spaced time grid, `t_steps` points from `t_start` to `t_end`
    /// inclusive.
    pub fn time_grid(&self) -> Vec<f64> {
        if self.t_steps == 1 {
            return vec![self.t_start];
        }
        let span = self.t_end - self.t_start;
        let last = (self.t_steps - 1) as f64;
        (0..self.t_steps)
            .map(|i| {
                if i + 1 == self.t_steps {
                    self.t_end
                } else {
                    self.t_start + span * (i as f64 / last)
                }
            })
            .collect()
    }
}
