//! Adaptive Gauss–Kronrod quadrature and panel summation for infinite ranges.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

// Kronrod nodes and weights as tabulated, beyond f64 precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_980_255,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// An integral estimate with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Tolerances for adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 4000 }
    }
}

impl QuadOptions {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol, ..Self::default() }
    }
}

fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = WGK[10] * fc;
    let mut rg = 0.0;
    for j in 0..10 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        rk += WGK[j] * s;
        if j % 2 == 1 {
            rg += WG[j / 2] * s;
        }
    }
    (rk * h, ((rk - rg) * h).abs())
}

struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive 21-point Gauss–Kronrod on a finite interval.
///
/// Integrable endpoint singularities are tolerated since no endpoint is ever
/// sampled.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let (v, e) = gk21(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Interval { a, b, value: v, error: e });
    let mut total = v;
    let mut err = e;
    loop {
        if !total.is_finite() {
            return Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
        }
        if err <= opts.abs_tol.max(opts.rel_tol * total.abs()) {
            return Ok(Estimate { value: total, error: err });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::Quadrature(format!(
                "error estimate {err:.3e} above tolerance after {} intervals on [{a}, {b}]",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::Quadrature(format!("interval collapsed near {mid}")));
        }
        let (v1, e1) = gk21(&mut f, worst.a, mid);
        let (v2, e2) = gk21(&mut f, mid, worst.b);
        total += v1 + v2 - worst.value;
        err += e1 + e2 - worst.error;
        heap.push(Interval { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Interval { a: mid, b: worst.b, value: v2, error: e2 });
        // guard against drift in the running sums
        if heap.len() % 64 == 0 {
            total = heap.iter().map(|i| i.value).sum();
            err = heap.iter().map(|i| i.error).sum();
        }
    }
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums.
/// Returns the last two diagonal estimates.
pub fn wynn_epsilon(partials: &[f64]) -> Option<(f64, f64)> {
    let n = partials.len();
    if n < 3 {
        return None;
    }
    // e[k] holds column k of the epsilon table for the current row.
    let mut prev: Vec<f64> = partials.to_vec();
    let mut prev2: Vec<f64> = vec![0.0; n + 1];
    let mut estimates = Vec::new();
    let mut col = 1;
    while prev.len() > 1 {
        let mut next = Vec::with_capacity(prev.len() - 1);
        for i in 0..prev.len() - 1 {
            let diff = prev[i + 1] - prev[i];
            if diff == 0.0 {
                return estimates.last().map(|&v| (v, v)).or(Some((prev[i + 1], prev[i + 1])));
            }
            next.push(prev2[i + 1] + 1.0 / diff);
        }
        prev2 = prev;
        prev = next;
        col += 1;
        if col % 2 == 1 {
            if let Some(&v) = prev.last() {
                estimates.push(v);
            }
        }
    }
    let m = estimates.len();
    match m {
        0 => None,
        1 => Some((estimates[0], partials[n - 1])),
        _ => Some((estimates[m - 1], estimates[m - 2])),
    }
}

/// Integral over `[a, ∞)` as a sum of panels `[a + kL, a + (k+1)L]`.
///
/// Summation stops once three consecutive panels each contribute less than
/// `tol/10`. When panels decay too slowly (an alternating tail), the partial
/// sums are accelerated with Wynn's epsilon algorithm and the last two
/// estimates must agree within `tol`.
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    panel: f64,
    tol: f64,
    max_panels: usize,
) -> Result<Estimate> {
    let opts = QuadOptions::with_tol(tol * 1e-2, 1e-12);
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut quiet = 0;
    let mut partials = Vec::new();
    for k in 0..max_panels {
        let lo = a + k as f64 * panel;
        let est = integrate(&mut f, lo, lo + panel, opts)?;
        sum += est.value;
        err += est.error;
        partials.push(sum);
        if est.value.abs() < 0.1 * tol {
            quiet += 1;
            if quiet >= 3 {
                return Ok(Estimate { value: sum, error: err + est.value.abs() });
            }
        } else {
            quiet = 0;
        }
        if partials.len() >= 24 && partials.len() % 8 == 0 {
            let tail = &partials[partials.len() - 24..];
            if let Some((v1, v0)) = wynn_epsilon(tail) {
                if (v1 - v0).abs() < 0.1 * tol {
                    return Ok(Estimate { value: v1, error: err + (v1 - v0).abs() });
                }
            }
        }
    }
    Err(Error::Quadrature(format!(
        "infinite-range integral not converged after {max_panels} panels"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exactness() {
        let est = integrate(|x| x.powi(20) - 3.0 * x.powi(7), -1.0, 2.0, QuadOptions::default()).unwrap();
        let exact = (2f64.powi(21) + 1.0) / 21.0 - 3.0 * (2f64.powi(8) - 1.0) / 8.0;
        assert!((est.value - exact).abs() < 1e-10 * exact.abs());
    }

    #[test]
    fn endpoint_singularity() {
        let est = integrate(|x| x.ln(), 0.0, 1.0, QuadOptions::with_tol(1e-12, 1e-12)).unwrap();
        assert!((est.value + 1.0).abs() < 1e-10);
        let est = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, QuadOptions::with_tol(1e-10, 1e-10)).unwrap();
        assert!((est.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn oscillatory_panels() {
        // ∫_0^∞ cos(x) e^{-x} dx = 1/2
        let est = integrate_panels(|x| x.cos() * (-x).exp(), 0.0, PI, 1e-12, 200).unwrap();
        assert!((est.value - 0.5).abs() < 1e-11);
        // ∫_0^∞ sin(x)/x dx = π/2, alternating 1/x tail
        let est = integrate_panels(|x| if x == 0.0 { 1.0 } else { x.sin() / x }, 0.0, PI, 1e-9, 400).unwrap();
        assert!((est.value - PI / 2.0).abs() < 1e-8, "{}", est.value);
    }

    #[test]
    fn wynn_on_alternating_series() {
        let mut s = 0.0;
        let partials: Vec<f64> = (0..15)
            .map(|k| {
                s += if k % 2 == 0 { 1.0 } else { -1.0 } / (k as f64 + 1.0);
                s
            })
            .collect();
        let (v, _) = wynn_epsilon(&partials).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-9);
    }
}
