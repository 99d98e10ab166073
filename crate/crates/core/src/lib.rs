//! Resonant Jaynes-Cummings dynamics and the entanglement entropies of the
//! atom.
//!
//! A two-level atom starts excited next to a coherent cavity field. Its
//! reduced state is summarized by the Bloch vector, and the linear, von
//! Neumann and atomic Wehrl entropies are all functions of the Bloch radius
//! `η`. The Wehrl entropy is computed four ways (closed form, radial
//! series, component-wise triple sum, spherical quadrature of the Husimi
//! function) so each route checks the others.
//!
//! ```
//! use jcm_entropy::{bloch_vector, coherent_amplitudes, reduced_density, EntropyRecord};
//!
//! let amps = coherent_amplitudes(7.0, 0.0, 1e-12).unwrap();
//! let rho = reduced_density(&amps, 0.0).unwrap();
//! let bloch = bloch_vector(&rho).unwrap();
//! let rec = EntropyRecord::from_bloch(0.0, &bloch, 1e-14).unwrap();
//! assert!(rec.xi.abs() < 1e-12);
//! ```

pub mod config;
pub mod dynamics;
pub mod entropies;
pub mod error;
pub mod husimi;
pub mod series;
pub mod sweep;

pub use config::SimulationConfig;
pub use dynamics::{
    bloch_vector, coherent_amplitudes, reduced_density, AtomicDensityMatrix, BlochVector,
    FockAmplitudes,
};
pub use entropies::{
    linear_entropy, normalized_entropies, von_neumann_entropy, von_neumann_series,
    wehrl_entropy_closed, wehrl_entropy_series, wehrl_entropy_triple_sum, EntropyRecord,
};
pub use error::{Error, Result};
pub use husimi::{
    atomic_q, q_normalization, trig_power_integral, wehrl_entropy_quadrature, SphereQuadrature,
};
pub use sweep::{emit, run_sweep, OutputFormat, SweepResult, SweepRow};
