//! Atomic Q-function on the sphere and brute-force quadrature of the
//! Wehrl entropy.
//!
//! The sphere measure `sin Θ dΘ dΦ` becomes `dμ dΦ` with `μ = cos Θ`, so a
//! Gauss-Legendre rule in `μ` times an equal-weight periodic rule in `Φ`
//! integrates it without any endpoint weighting.

use std::f64::consts::{PI, TAU};

use crate::dynamics::{BlochVector, ETA_SLACK};
use crate::entropies::x_ln_x;
use crate::error::{ensure_finite, Error, Result};
use crate::series::Neumaier;

/// Tensor-product rule on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereQuadrature {
    /// Gauss-Legendre nodes `μ_i = cos Θ_i`, ascending.
    mu: Vec<f64>,
    mu_weights: Vec<f64>,
    phi_order: usize,
}

impl SphereQuadrature {
    pub fn new(theta_order: usize, phi_order: usize) -> Result<Self> {
        if theta_order < 2 {
            return Err(Error::InvalidParameter {
                name: "theta_order",
                value: theta_order as f64,
                reason: "needs at least 2 nodes",
            });
        }
        if phi_order < 4 {
            return Err(Error::InvalidParameter {
                name: "phi_order",
                value: phi_order as f64,
                reason: "needs at least 4 nodes",
            });
        }
        let (mu, mu_weights) = gauss_legendre(theta_order);
        Ok(Self {
            mu,
            mu_weights,
            phi_order,
        })
    }

    pub fn theta_order(&self) -> usize {
        self.mu.len()
    }

    pub fn phi_order(&self) -> usize {
        self.phi_order
    }

    /// Integrates `f(cos Θ, sin Θ, cos Φ, sin Φ)` over the sphere, visiting
    /// nodes in a fixed order.
    pub fn integrate<F>(&self, mut f: F) -> Result<f64>
    where
        F: FnMut(f64, f64, f64, f64) -> Result<f64>,
    {
        let phi_weight = TAU / self.phi_order as f64;
        let phis: Vec<(f64, f64)> = (0..self.phi_order)
            .map(|j| (TAU * j as f64 / self.phi_order as f64).sin_cos())
            .collect();
        let mut total = Neumaier::default();
        for (&mu, &w) in self.mu.iter().zip(&self.mu_weights) {
            let sin_theta = ((1.0 - mu) * (1.0 + mu)).sqrt();
            let mut ring = Neumaier::default();
            for &(sin_phi, cos_phi) in &phis {
                ring.add(f(mu, sin_theta, cos_phi, sin_phi)?);
            }
            total.add(w * phi_weight * ring.value());
        }
        Ok(total.value())
    }

    /// Sum of all node weights; `4π` up to roundoff.
    pub fn total_weight(&self) -> f64 {
        let s: f64 = self.mu_weights.iter().sum();
        s * TAU
    }
}

impl Default for SphereQuadrature {
    fn default() -> Self {
        Self::new(64, 128).expect("default orders are valid")
    }
}

/// Gauss-Legendre nodes and weights on `[−1, 1]`, nodes ascending.
///
/// Newton iteration on `P_n` from the Tricomi-style initial guess; the
/// three-term recurrence is evaluated in `f64`, which is accurate to a few
/// ulps for the orders used here.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th largest root
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn q_from_direction(bloch: &BlochVector, cos_t: f64, sin_t: f64, cos_p: f64, sin_p: f64) -> f64 {
    let beta = bloch.sz * cos_t + (bloch.sx * cos_p + bloch.sy * sin_p) * sin_t;
    (1.0 + beta) / (4.0 * PI)
}

/// Atomic Q-function `(1 + β) / 4π` with
/// `β = σ_z cos θ + (σ_x cos φ + σ_y sin φ) sin θ`.
pub fn atomic_q(bloch: &BlochVector, theta: f64, phi: f64) -> Result<f64> {
    ensure_finite("theta", theta)?;
    ensure_finite("phi", phi)?;
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::AngleOutOfRange {
            name: "theta",
            value: theta,
        });
    }
    if !(0.0..TAU).contains(&phi) {
        return Err(Error::AngleOutOfRange {
            name: "phi",
            value: phi,
        });
    }
    let (sin_t, cos_t) = theta.sin_cos();
    let (sin_p, cos_p) = phi.sin_cos();
    Ok(q_from_direction(bloch, cos_t, sin_t, cos_p, sin_p).max(0.0))
}

/// Wehrl entropy `−∫ Q ln Q dΩ` by direct quadrature.
pub fn wehrl_entropy_quadrature(bloch: &BlochVector, quad: &SphereQuadrature) -> Result<f64> {
    if bloch.eta > 1.0 + ETA_SLACK {
        return Err(Error::BlochRadiusExceeded(bloch.eta));
    }
    let neg_floor = -ETA_SLACK / (4.0 * PI);
    let integral = quad.integrate(|ct, st, cp, sp| {
        let q = q_from_direction(bloch, ct, st, cp, sp);
        if q < neg_floor {
            return Err(Error::NegativeQ { value: q });
        }
        Ok(x_ln_x(q.max(0.0)))
    })?;
    Ok(-integral)
}

/// `∫ Q dΩ`, which is 1 for every physical state.
pub fn q_normalization(bloch: &BlochVector, quad: &SphereQuadrature) -> Result<f64> {
    quad.integrate(|ct, st, cp, sp| Ok(q_from_direction(bloch, ct, st, cp, sp)))
}

/// `∫_0^{2π} (c1 sin x + c2 cos x)^k dx`: zero for odd `k`, and
/// `2π (2m)! / (4^m (m!)²) (c1² + c2²)^m` for `k = 2m`.
///
/// The central binomial ratio is built as `Π_{j=1}^{m} (2j − 1)/(2j)`.
pub fn trig_power_integral(c1: f64, c2: f64, k: u32) -> Result<f64> {
    ensure_finite("c1", c1)?;
    ensure_finite("c2", c2)?;
    if k % 2 == 1 {
        return Ok(0.0);
    }
    let m = k / 2;
    let r2 = c1 * c1 + c2 * c2;
    let ratio: f64 = (1..=m)
        .map(|j| (2.0 * j as f64 - 1.0) / (2.0 * j as f64))
        .product();
    Ok(TAU * ratio * r2.powi(m as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bloch(x: f64, y: f64, z: f64) -> BlochVector {
        BlochVector::from_components(x, y, z).unwrap()
    }

    #[test]
    fn gauss_legendre_small_orders() {
        let (x, w) = gauss_legendre(2);
        let a = 1.0 / 3f64.sqrt();
        assert!((x[0] + a).abs() < 1e-15 && (x[1] - a).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(3);
        assert_eq!(x[1], 0.0);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((x[2] - 0.6f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for order in [5, 17, 64, 128] {
            let (x, w) = gauss_legendre(order);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            for deg in 0..(2 * order).min(40) {
                let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
                let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
                assert!((got - exact).abs() < 1e-13, "order {order} deg {deg}");
            }
        }
    }

    #[test]
    fn weights_cover_full_solid_angle() {
        for (t, p) in [(2, 4), (64, 128), (128, 256)] {
            let q = SphereQuadrature::new(t, p).unwrap();
            assert!((q.total_weight() - 4.0 * PI).abs() < 1e-12);
        }
        assert!(SphereQuadrature::new(1, 8).is_err());
        assert!(SphereQuadrature::new(8, 3).is_err());
    }

    #[test]
    fn q_of_maximally_mixed_state() {
        let b = bloch(0.0, 0.0, 0.0);
        for (t, p) in [(0.0, 0.0), (1.0, 2.0), (PI, 6.0)] {
            assert!((atomic_q(&b, t, p).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-17);
        }
    }

    #[test]
    fn q_of_excited_state_at_poles() {
        let b = bloch(0.0, 0.0, 1.0);
        assert!((atomic_q(&b, 0.0, 0.0).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-16);
        assert_eq!(atomic_q(&b, PI, 0.0).unwrap(), 0.0);
        // cos²(Θ/2) / 2π from the coherent-state overlap
        let theta = 1.2;
        let overlap = (theta / 2.0f64).cos().powi(2) / (2.0 * PI);
        assert!((atomic_q(&b, theta, 0.3).unwrap() - overlap).abs() < 1e-16);
    }

    #[test]
    fn q_rejects_angles_outside_domain() {
        let b = bloch(0.0, 0.0, 1.0);
        assert!(atomic_q(&b, -0.1, 0.0).is_err());
        assert!(atomic_q(&b, 3.2, 0.0).is_err());
        assert!(atomic_q(&b, 1.0, TAU).is_err());
        assert!(atomic_q(&b, 1.0, -1e-3).is_err());
        assert!(atomic_q(&b, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn normalization_examples() {
        let quad = SphereQuadrature::default();
        let n0 = q_normalization(&bloch(0.0, 0.0, 0.0), &quad).unwrap();
        assert!((n0 - 1.0).abs() < 1e-14);
        let n1 = q_normalization(&bloch(0.0, 0.0, 1.0), &quad).unwrap();
        assert!((n1 - 1.0).abs() < 1e-12);
        let n2 = q_normalization(&bloch(0.3, 0.4, 0.5), &quad).unwrap();
        assert!((n2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quadrature_wehrl_of_mixed_state() {
        let quad = SphereQuadrature::default();
        let w = wehrl_entropy_quadrature(&bloch(0.0, 0.0, 0.0), &quad).unwrap();
        assert!((w - (4.0 * PI).ln()).abs() < 1e-13);
    }

    #[test]
    fn quadrature_wehrl_pure_state() {
        let quad = SphereQuadrature::new(128, 256).unwrap();
        let expected = (2.0 * PI).ln() + 0.5;
        for b in [bloch(0.0, 0.0, 1.0), bloch(0.6, 0.0, 0.8), bloch(0.48, -0.6, 0.64)] {
            let w = wehrl_entropy_quadrature(&b, &quad).unwrap();
            assert!((w - expected).abs() < 1e-8, "{b:?}: {}", w - expected);
        }
    }

    #[test]
    fn quadrature_wehrl_matches_mpmath_reference() {
        let quad = SphereQuadrature::new(128, 256).unwrap();
        // eta = 0.73 in a generic direction
        let u: [f64; 3] = [0.2, -0.5, 0.7];
        let norm: f64 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        let s = 0.73 / norm.sqrt();
        let b = bloch(u[0] * s, u[1] * s, u[2] * s);
        let w = wehrl_entropy_quadrature(&b, &quad).unwrap();
        assert!((w - 2.436_530_081_710_571_5).abs() < 1e-8);
    }

    #[test]
    fn negative_q_is_reported() {
        let b = BlochVector {
            sx: 0.0,
            sy: 0.0,
            sz: 1.0 + 1e-10,
            eta: 1.0 + 1e-10,
        };
        let quad = SphereQuadrature::new(8, 8).unwrap();
        // within slack: tolerated
        assert!(wehrl_entropy_quadrature(&b, &quad).is_ok());
        let bad = BlochVector {
            sx: 1.5,
            sy: 0.0,
            sz: 0.0,
            eta: 1.0,
        };
        assert!(matches!(
            wehrl_entropy_quadrature(&bad, &quad),
            Err(Error::NegativeQ { .. })
        ));
    }

    #[test]
    fn trig_integral_examples() {
        assert_eq!(trig_power_integral(1.0, 1.0, 3).unwrap(), 0.0);
        assert!((trig_power_integral(1.0, 0.0, 2).unwrap() - PI).abs() < 1e-15);
        assert!((trig_power_integral(0.0, 0.0, 0).unwrap() - TAU).abs() < 1e-15);
        assert!(trig_power_integral(f64::NAN, 0.0, 2).is_err());
    }
}
