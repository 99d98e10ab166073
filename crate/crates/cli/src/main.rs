//! Time sweep of the resonant Jaynes-Cummings atom: Bloch vector and
//! entropies on an evenly spaced grid of scaled times `T = λt`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use jcm_entropy::{emit, run_sweep, OutputFormat, SimulationConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Structured,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Structured => OutputFormat::Structured,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "jcm-sweep", version, about)]
struct Args {
    /// Coherent amplitude |α| of the initial field.
    #[arg(long, allow_negative_numbers = true)]
    alpha_mag: f64,
    /// Coherent phase ϑ in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha_phase: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t_start: f64,
    #[arg(long, default_value_t = 30.0, allow_negative_numbers = true)]
    t_end: f64,
    #[arg(long, default_value_t = 3000)]
    t_steps: usize,
    /// Poisson mass allowed beyond the Fock truncation.
    #[arg(long, default_value_t = 1e-12)]
    fock_tol: f64,
    /// Relative stopping tolerance of the entropy series.
    #[arg(long, default_value_t = 1e-14)]
    series_tol: f64,
    /// Gauss-Legendre nodes in cos Θ for the quadrature oracle.
    #[arg(long, default_value_t = 64)]
    quad_theta: usize,
    /// Uniform nodes in Φ for the quadrature oracle.
    #[arg(long, default_value_t = 128)]
    quad_phi: usize,
    /// Add a `wehrl_quadrature` column computed by spherical quadrature.
    #[arg(long)]
    with_oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout if omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = SimulationConfig {
        alpha_mag: args.alpha_mag,
        alpha_phase: args.alpha_phase,
        t_start: args.t_start,
        t_end: args.t_end,
        t_steps: args.t_steps,
        fock_tail_tol: args.fock_tol,
        series_tol: args.series_tol,
        quad_theta_order: args.quad_theta,
        quad_phi_order: args.quad_phi,
    };
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match run_sweep(&config, args.with_oracle) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_invalid_input() { 2 } else { 1 });
        }
    };
    if let Err(e) = emit(&result, args.format.into(), args.output.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
