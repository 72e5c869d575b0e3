//! Gauss hypergeometric series with an explicit tail bound.

use crate::error::{Error, Result};

/// Hard cap on the number of series terms.
pub const SERIES_BUDGET: usize = 100_000;

/// A summed series and the bound on its discarded tail.
#[derive(Debug, Clone, Copy)]
pub struct SeriesValue {
    pub value: f64,
    pub tail: f64,
    pub terms: usize,
}

/// `₂F₁(a, b; c; z)` for `|z| < 1` by direct summation.
///
/// Stops once the geometric tail bound `|t_{k+1}| / (1 - ρ)` with
/// `ρ = max(|r_k|, |z|)` falls below `tol · |sum|`. Errors if the bound is not
/// met within [`SERIES_BUDGET`] terms.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64, tol: f64) -> Result<SeriesValue> {
    if z.abs() >= 1.0 {
        return Err(Error::domain(format!("hypergeometric series needs |z| < 1, got {z}")));
    }
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(Error::Pole(c));
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..SERIES_BUDGET {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        let next = term * ratio;
        if next == 0.0 {
            // terminating series
            return Ok(SeriesValue { value: sum, tail: 0.0, terms: k + 1 });
        }
        let rho = ratio.abs().max(z.abs());
        if rho < 1.0 && k > 2 {
            let tail = next.abs() / (1.0 - rho);
            if tail <= tol * sum.abs() {
                return Ok(SeriesValue { value: sum + next, tail, terms: k + 2 });
            }
        }
        sum += next;
        term = next;
        if !sum.is_finite() {
            return Err(Error::Overflow(format!("2F1({a},{b};{c};{z}) partial sum")));
        }
    }
    Err(Error::Convergence(format!(
        "2F1({a},{b};{c};{z}) not certified within {SERIES_BUDGET} terms"
    )))
}
