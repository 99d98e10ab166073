use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the simulation, entropy and quadrature routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("`{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("Bloch radius {0} lies outside [0, 1]")]
    EtaOutOfRange(f64),

    #[error("density matrix is unphysical: Bloch radius {0} exceeds 1")]
    BlochRadiusExceeded(f64),

    #[error("series route is not defined at eta = {0}; use the closed form")]
    OutsideSeriesDomain(f64),

    #[error("series did not converge within {max_terms} terms (last term {last_term:e})")]
    SeriesNotConverged { max_terms: u64, last_term: f64 },

    #[error("alternating sum lost precision in block n = {n}, r = {r}")]
    LossOfPrecision { n: usize, r: usize },

    #[error("Q-function is negative ({value:e}) at a quadrature node")]
    NegativeQ { value: f64 },

    #[error("angle `{name}` = {value} outside its domain")]
    AngleOutOfRange { name: &'static str, value: f64 },

    #[error("at T = {t}: {source}")]
    AtTime {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("writing {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by bad caller input rather than numerical
    /// breakdown during evaluation.
    pub fn is_invalid_input(&self) -> bool {
        match self {
            Error::NonFinite { .. }
            | Error::InvalidParameter { .. }
            | Error::AngleOutOfRange { .. } => true,
            Error::AtTime { source, .. } => source.is_invalid_input(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}

pub(crate) fn ensure_open_unit(name: &'static str, value: f64) -> Result<f64> {
    ensure_finite(name, value)?;
    if value > 0.0 && value < 1.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must lie in the open interval (0, 1)",
        })
    }
}
