//! Adaptive summation of positive power series.

use crate::error::{Error, Result};

/// Terms below this magnitude end the summation regardless of the relative rule.
pub const ABSOLUTE_FLOOR: f64 = 1e-300;

/// Hard cap on the number of terms.
pub const MAX_TERMS: u64 = 1_000_000;

/// A converged partial sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: u64,
}

/// Sums `term(1) + term(2) + ...`, stopping after the first term with
/// `|term| < rel_tol * |sum|` or `|term| < ABSOLUTE_FLOOR`.
///
/// Accumulation is compensated (Neumaier), since series evaluated at the
/// edge of their disc can need tens of thousands of terms.
pub fn sum_series<F>(rel_tol: f64, mut term: F) -> Result<SeriesSum>
where
    F: FnMut(u64) -> f64,
{
    let mut acc = Neumaier::default();
    let mut last = f64::NAN;
    for n in 1..=MAX_TERMS {
        let t = term(n);
        acc.add(t);
        last = t;
        let sum = acc.value();
        if t.abs() < ABSOLUTE_FLOOR || t.abs() < rel_tol * sum.abs() {
            return Ok(SeriesSum {
                value: sum,
                terms: n,
            });
        }
    }
    Err(Error::SeriesNotConverged {
        max_terms: MAX_TERMS,
        last_term: last,
    })
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}
