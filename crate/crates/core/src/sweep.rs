//! Time sweeps and their CSV / JSON output.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::SimulationConfig;
use crate::dynamics::{bloch_vector, coherent_amplitudes, reduced_density, FockAmplitudes};
use crate::entropies::EntropyRecord;
use crate::error::{Error, Result};
use crate::husimi::{wehrl_entropy_quadrature, SphereQuadrature};

/// CSV columns without the quadrature oracle.
pub const COLUMNS: [&str; 11] = [
    "t",
    "sx",
    "sy",
    "sz",
    "eta",
    "xi",
    "gamma",
    "wehrl_closed",
    "wehrl_series",
    "gamma_norm",
    "wehrl_norm",
];

pub const QUADRATURE_COLUMN: &str = "wehrl_quadrature";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub t: f64,
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    pub eta: f64,
    pub xi: f64,
    pub gamma: f64,
    pub wehrl_closed: f64,
    pub wehrl_series: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wehrl_quadrature: Option<f64>,
    pub gamma_norm: f64,
    pub wehrl_norm: f64,
}

impl SweepRow {
    pub fn record(&self) -> EntropyRecord {
        EntropyRecord {
            t: self.t,
            eta: self.eta,
            xi: self.xi,
            gamma: self.gamma,
            wehrl_closed: self.wehrl_closed,
            wehrl_series: self.wehrl_series,
            gamma_norm: self.gamma_norm,
            wehrl_norm: self.wehrl_norm,
        }
    }

    fn values(&self) -> Vec<f64> {
        let mut v = vec![
            self.t,
            self.sx,
            self.sy,
            self.sz,
            self.eta,
            self.xi,
            self.gamma,
            self.wehrl_closed,
            self.wehrl_series,
        ];
        v.extend(self.wehrl_quadrature);
        v.extend([self.gamma_norm, self.wehrl_norm]);
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub config: SimulationConfig,
    pub with_oracle: bool,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn columns(&self) -> Vec<&'static str> {
        columns(self.with_oracle)
    }
}

fn columns(with_oracle: bool) -> Vec<&'static str> {
    let mut cols = COLUMNS.to_vec();
    if with_oracle {
        cols.insert(9, QUADRATURE_COLUMN);
    }
    cols
}

struct Evaluator {
    amps: FockAmplitudes,
    series_tol: f64,
    quad: Option<SphereQuadrature>,
}

impl Evaluator {
    fn new(config: &SimulationConfig, with_oracle: bool) -> Result<Self> {
        config.validate()?;
        let amps = coherent_amplitudes(config.alpha_mag, config.alpha_phase, config.fock_tail_tol)?;
        let quad = if with_oracle {
            Some(SphereQuadrature::new(
                config.quad_theta_order,
                config.quad_phi_order,
            )?)
        } else {
            None
        };
        Ok(Self {
            amps,
            series_tol: config.series_tol,
            quad,
        })
    }

    fn row(&self, t: f64) -> Result<SweepRow> {
        let eval = || -> Result<SweepRow> {
            let rho = reduced_density(&self.amps, t)?;
            let b = bloch_vector(&rho)?;
            let rec = EntropyRecord::from_bloch(t, &b, self.series_tol)?;
            let wehrl_quadrature = match &self.quad {
                Some(q) => Some(wehrl_entropy_quadrature(&b, q)?),
                None => None,
            };
            Ok(SweepRow {
                t,
                sx: b.sx,
                sy: b.sy,
                sz: b.sz,
                eta: b.eta,
                xi: rec.xi,
                gamma: rec.gamma,
                wehrl_closed: rec.wehrl_closed,
                wehrl_series: rec.wehrl_series,
                wehrl_quadrature,
                gamma_norm: rec.gamma_norm,
                wehrl_norm: rec.wehrl_norm,
            })
        };
        eval().map_err(|e| Error::AtTime {
            t,
            source: Box::new(e),
        })
    }
}

/// Evaluates every grid point of `config`, in parallel. The Fock amplitudes
/// and quadrature nodes are built once and shared; rows come back in time
/// order and do not depend on scheduling.
pub fn run_sweep(config: &SimulationConfig, with_oracle: bool) -> Result<SweepResult> {
    let eval = Evaluator::new(config, with_oracle)?;
    let rows = config
        .time_grid()
        .into_par_iter()
        .map(|t| eval.row(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        config: config.clone(),
        with_oracle,
        rows,
    })
}

/// Single-threaded [`run_sweep`].
pub fn run_sweep_serial(config: &SimulationConfig, with_oracle: bool) -> Result<SweepResult> {
    let eval = Evaluator::new(config, with_oracle)?;
    let rows = config
        .time_grid()
        .into_iter()
        .map(|t| eval.row(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        config: config.clone(),
        with_oracle,
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    /// Pretty-printed JSON with the config echo.
    Structured,
}

/// CSV text: header line then one line per row, 17 significant digits.
pub fn to_csv(result: &SweepResult) -> String {
    let mut out = result.columns().join(",");
    out.push('\n');
    for row in &result.rows {
        for (i, v) in row.values().into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{v:.16e}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn to_structured(result: &SweepResult) -> String {
    let mut s = serde_json::to_string_pretty(result).expect("sweep results serialize");
    s.push('\n');
    s
}

/// Parses CSV produced by [`to_csv`] back into rows.
pub fn parse_csv(text: &str) -> std::result::Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or("empty input")?
        .split(',')
        .map(str::to_owned)
        .collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = line
            .split(',')
            .map(|f| f.parse::<f64>().map_err(|e| format!("line {}: {e}", i + 2)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if row.len() != header.len() {
            return Err(format!("line {}: expected {} fields", i + 2, header.len()));
        }
        rows.push(row);
    }
    Ok((header, rows))
}

/// Writes the result to `path`, or to stdout when `path` is `None`. The
/// whole document is rendered before anything is written.
pub fn emit(result: &SweepResult, format: OutputFormat, path: Option<&Path>) -> Result<()> {
    let text = match format {
        OutputFormat::Csv => to_csv(result),
        OutputFormat::Structured => to_structured(result),
    };
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
