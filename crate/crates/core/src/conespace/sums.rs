//! Truncation bookkeeping shared by every mode sum.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// Target absolute accuracy of the dimensionless sum.
    pub tol: f64,
    /// Largest degree index the tail rule may request.
    pub lmax: usize,
    /// Largest azimuthal index before giving up.
    pub mmax: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { tol: 1e-10, lmax: 20_000, mmax: 2_000 }
    }
}

impl Truncation {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// A truncated sum with its tail estimate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SumResult {
    pub value: f64,
    pub tail: f64,
    /// Highest degree index used in any band.
    pub lmax_used: usize,
    /// Highest azimuthal index summed.
    pub mmax_used: usize,
}

impl SumResult {
    pub fn scaled(self, s: f64) -> Self {
        Self { value: self.value * s, tail: self.tail * s.abs(), ..self }
    }
}

/// One azimuthal band: its value (before the `e^{imΔφ}` weight), a tail
/// estimate for its inner sum, and the number of inner terms used.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Band {
    pub value: f64,
    pub tail: f64,
    pub terms: usize,
}

/// Number of terms for a geometric tail with per-term decay `e^{-rate}`.
pub fn tail_rule(rate: f64, tol: f64) -> usize {
    ((1.0 / tol).ln() / rate).ceil().max(0.0) as usize + 10
}

/// `Σ_m e^{imΔφ} b(|m|) = b(0) + 2 Σ_{m≥1} cos(mΔφ) b(m)`.
///
/// Stops once three consecutive bands are each below `tol/10` relative to
/// `max(1, |sum|)`; the remaining bands are estimated from the last decay
/// ratio.
pub fn azimuthal_sum<F>(dphi: f64, trunc: &Truncation, mut band: F) -> Result<SumResult>
where
    F: FnMut(usize) -> Result<Band>,
{
    let mut out = SumResult::default();
    let mut quiet = 0;
    let mut prev = f64::NAN;
    for m in 0..=trunc.mmax {
        let b = band(m)?;
        let weight = if m == 0 { 1.0 } else { 2.0 * (m as f64 * dphi).cos() };
        out.value += weight * b.value;
        out.tail += weight.abs() * b.tail;
        out.mmax_used = m;
        out.lmax_used = out.lmax_used.max(m + b.terms);
        let mag = if m == 0 { b.value.abs() } else { 2.0 * b.value.abs() };
        if mag < 0.1 * trunc.tol * out.value.abs().max(1.0) {
            quiet += 1;
            if quiet >= 3 {
                let r = if prev > 0.0 { mag / prev } else { 0.0 };
                out.tail += if r < 1.0 { mag * r / (1.0 - r) } else { 3.0 * mag };
                return Ok(out);
            }
        } else {
            quiet = 0;
        }
        prev = mag;
    }
    Err(Error::SlowConvergence(format!(
        "azimuthal sum not settled by m = {}",
        trunc.mmax
    )))
}
