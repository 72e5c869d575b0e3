//! Legendre functions of real degree and order.
//!
//! Ferrers functions `P_ν^{-μ}(x)` on the cut, Legendre functions `P_ν^{-μ}(x)`
//! and Olver's `𝑸_ν^μ(x)` on `x > 1`. Orders are always passed as `μ ≥ 0` and
//! mean the negative order `-μ` for the first-kind functions.

use super::gamma::{digamma, ln_gamma_signed, log_gamma_ratio};
use super::hypergeom::{hyp2f1, SERIES_BUDGET};
use super::{DegreeOrder, SINGULAR_GUARD};
use crate::error::{Error, Result};
use std::f64::consts::PI;

const SERIES_TOL: f64 = 1e-16;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn is_nonneg_integer(v: f64) -> Option<usize> {
    let r = v.round();
    if r >= 0.0 && (v - r).abs() < 1e-12 {
        Some(r as usize)
    } else {
        None
    }
}

fn check_order(mu: f64) -> Result<()> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(Error::domain(format!("order μ must be ≥ 0, got {mu}")));
    }
    Ok(())
}

fn check_cut(x: f64) -> Result<()> {
    if !(x.abs() < 1.0 - SINGULAR_GUARD) {
        return Err(Error::domain(format!("Ferrers argument must satisfy |x| < 1, got {x}")));
    }
    Ok(())
}

fn check_axis(x: f64) -> Result<()> {
    if !(x > 1.0 + SINGULAR_GUARD) || !x.is_finite() {
        return Err(Error::domain(format!("axis argument must satisfy x > 1, got {x}")));
    }
    Ok(())
}

/// One step of the degree recurrence shared by Ferrers and axis functions:
/// `(ν+μ+1) P_{ν+1}^{-μ} = (2ν+1) x P_ν^{-μ} - (ν-μ) P_{ν-1}^{-μ}`.
#[inline]
fn step_up(nu: f64, mu: f64, x: f64, p: f64, pm1: f64) -> f64 {
    ((2.0 * nu + 1.0) * x * p - (nu - mu) * pm1) / (nu + mu + 1.0)
}

/// `P_ν^{-μ}` on the cut from the series in `(1-x)/2`.
fn ferrers_series(nu: f64, mu: f64, x: f64) -> Result<f64> {
    let pre = 0.5 * mu * ((1.0 - x) / (1.0 + x)).ln() - ln_gamma_signed(1.0 + mu)?.0;
    let f = hyp2f1(-nu, nu + 1.0, 1.0 + mu, 0.5 * (1.0 - x), SERIES_TOL)?;
    Ok(pre.exp() * f.value)
}

/// `P_ν^{-μ}` on `x > 1` from the Pfaff-transformed series in `(x-1)/(x+1)`.
fn axis_series(nu: f64, mu: f64, x: f64) -> Result<f64> {
    let t = (x - 1.0) / (x + 1.0);
    let pre = 0.5 * mu * t.ln() + nu * (0.5 * (1.0 + x)).ln() - ln_gamma_signed(1.0 + mu)?.0;
    let f = hyp2f1(-nu, mu - nu, 1.0 + mu, t, SERIES_TOL)?;
    Ok(pre.exp() * f.value)
}

/// Evaluates `P_ν^{-μ}(x)` with the shared recurrence. `ln_base` gives
/// `ln P_μ^{-μ}(x)` for the integer-offset path; `series` the generic seed.
fn first_kind(
    nu: f64,
    mu: f64,
    x: f64,
    ln_base: f64,
    series: fn(f64, f64, f64) -> Result<f64>,
) -> Result<f64> {
    let nu = if nu < -0.5 { -nu - 1.0 } else { nu };
    if let Some(k) = is_nonneg_integer(nu - mu) {
        let mut pm1 = 0.0;
        let mut p = ln_base.exp();
        for j in 0..k {
            let deg = mu + j as f64;
            let next = step_up(deg, mu, x, p, pm1);
            pm1 = p;
            p = next;
        }
        return Ok(p);
    }
    if nu < 1.0 {
        return series(nu, mu, x);
    }
    let base = nu.fract();
    let steps = (nu - base).round() as usize;
    let mut pm1 = series(base, mu, x)?;
    let mut p = series(base + 1.0, mu, x)?;
    for j in 1..steps {
        let deg = base + j as f64;
        let next = step_up(deg, mu, x, p, pm1);
        pm1 = p;
        p = next;
    }
    Ok(p)
}

/// Ferrers function `P_ν^{-μ}(x)` for `x ∈ (-1, 1)`.
pub fn ferrers_p(d: DegreeOrder, x: f64) -> Result<f64> {
    check_order(d.mu)?;
    check_cut(x)?;
    // P_μ^{-μ}(x) = (1-x²)^{μ/2} / (2^μ Γ(μ+1))
    let s2 = (1.0 - x) * (1.0 + x);
    let ln_base = 0.5 * d.mu * s2.ln() - d.mu * 2f64.ln() - ln_gamma_signed(d.mu + 1.0)?.0;
    first_kind(d.nu, d.mu, x, ln_base, ferrers_series)
}

/// Normalized Ferrers column `P̄_{μ+k}^{-μ}(x)`, `k = 0..count`, with
/// `P̄_ν = sqrt(Γ(ν+μ+1)/Γ(ν-μ+1)) · P_ν^{-μ}`.
///
/// `sin_theta` is passed separately so that `x = cos θ` near the poles keeps
/// full relative precision in `(1-x²)^{μ/2}`.
pub fn ferrers_p_normalized_column(mu: f64, x: f64, sin_theta: f64, count: usize) -> Result<Vec<f64>> {
    check_order(mu)?;
    check_cut(x)?;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    let ln_seed = 0.5 * ln_gamma_signed(2.0 * mu + 1.0)?.0 + mu * (0.5 * sin_theta).ln()
        - ln_gamma_signed(mu + 1.0)?.0;
    let mut pm1 = 0.0;
    let mut p = ln_seed.exp();
    out.push(p);
    for k in 1..count {
        let nu = mu + (k - 1) as f64;
        let a = ((nu + mu + 1.0) * (nu - mu + 1.0)).sqrt();
        let b = ((nu - mu) * (nu + mu)).sqrt();
        let next = ((2.0 * nu + 1.0) * x * p - b * pm1) / a;
        pm1 = p;
        p = next;
        out.push(p);
    }
    Ok(out)
}

/// Legendre function of the first kind `P_ν^{-μ}(x)` for `x > 1`.
pub fn axis_p(d: DegreeOrder, x: f64) -> Result<f64> {
    check_order(d.mu)?;
    check_axis(x)?;
    let s2 = (x - 1.0) * (x + 1.0);
    let ln_base = 0.5 * d.mu * s2.ln() - d.mu * 2f64.ln() - ln_gamma_signed(d.mu + 1.0)?.0;
    first_kind(d.nu, d.mu, x, ln_base, axis_series)
}

/// `ln P_{ν₀+k}^{-μ}(x)` for `k = 0..count` on `x > 1`, by upward recurrence
/// with running rescaling. `P` is positive on the axis.
pub fn axis_p_ln_column(nu0: f64, mu: f64, x: f64, count: usize) -> Result<Vec<f64>> {
    check_order(mu)?;
    check_axis(x)?;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    let mut pm1 = axis_p(DegreeOrder::new(nu0, mu), x)?;
    out.push(pm1.ln());
    if count == 1 {
        return Ok(out);
    }
    let mut p = axis_p(DegreeOrder::new(nu0 + 1.0, mu), x)?;
    out.push(p.ln());
    let mut scale = 0.0;
    for k in 2..count {
        let nu = nu0 + (k - 1) as f64;
        let next = step_up(nu, mu, x, p, pm1);
        pm1 = p;
        p = next;
        if p.abs() > 1e150 {
            p *= 1e-150;
            pm1 *= 1e-150;
            scale += 150.0 * 10f64.ln();
        }
        out.push(p.ln() + scale);
    }
    Ok(out)
}

fn acosh_parts(x: f64) -> (f64, f64) {
    // ξ = acosh x and 1 - e^{-2ξ}, both without cancellation near x = 1.
    let xi = ((x - 1.0) + ((x - 1.0) * (x + 1.0)).sqrt()).ln_1p();
    (xi, -(-2.0 * xi).exp_m1())
}

/// Legendre function of the second kind `Q_λ(ζ)` for `ζ > 1`, `λ > -1`.
pub fn legendre_q(lambda: f64, zeta: f64) -> Result<f64> {
    if !(lambda > -1.0) || !lambda.is_finite() {
        return Err(Error::domain(format!("Q_λ needs λ > -1, got {lambda}")));
    }
    check_axis(zeta)?;
    let (xi, one_minus_w) = acosh_parts(zeta);
    let w = 1.0 - one_minus_w;
    if w <= 0.5 || (lambda + 1.0) * one_minus_w > 5.0 {
        // Q_λ(cosh ξ) = √π Γ(λ+1)/Γ(λ+3/2) e^{-(λ+1)ξ} 2F1(1/2, λ+1; λ+3/2; e^{-2ξ})
        let ln_pre = 0.5 * PI.ln() + log_gamma_ratio(lambda + 1.0, lambda + 1.5)? - (lambda + 1.0) * xi;
        let f = hyp2f1(0.5, lambda + 1.0, lambda + 1.5, w, SERIES_TOL)?;
        return Ok(ln_pre.exp() * f.value);
    }
    // Logarithmic connection formula about w = 1 (c = a + b); the gamma
    // prefactor cancels against the one above.
    let a = 0.5;
    let b = lambda + 1.0;
    let ln1w = one_minus_w.ln();
    let mut coef = 1.0;
    let mut psi_1 = -EULER_GAMMA;
    let mut psi_a = digamma(a)?;
    let mut psi_b = digamma(b)?;
    let mut sum = 0.0;
    for k in 0..SERIES_BUDGET {
        let term = coef * (2.0 * psi_1 - psi_a - psi_b - ln1w);
        sum += term;
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((kf + 1.0) * (kf + 1.0)) * one_minus_w;
        coef *= ratio;
        psi_1 += 1.0 / (kf + 1.0);
        psi_a += 1.0 / (a + kf);
        psi_b += 1.0 / (b + kf);
        let rho = ratio.max(one_minus_w);
        if k > 2 && rho < 1.0 {
            let next = coef * (2.0 * psi_1 - psi_a - psi_b - ln1w);
            let tail = next.abs() * (1.0 + 1.0 / (1.0 - rho));
            if tail <= SERIES_TOL * sum.abs() {
                sum += next;
                return Ok((-(lambda + 1.0) * xi).exp() * sum);
            }
        }
    }
    Err(Error::Convergence(format!("Q_{lambda}({zeta}) log series")))
}

/// `ln 𝑸_ν^μ(x)` (Olver's normalization) for `x > 1`, `μ ≥ 0`, `ν + 3/2 > 0`.
///
/// Uses `𝑸_ν^μ(cosh ξ) = √π/Γ(ν+3/2) (1-w)^μ e^{-(ν+1)ξ} 2F1(μ+1/2, ν+μ+1; ν+3/2; w)`
/// with `w = e^{-2ξ}`; every series term is positive.
pub fn olver_q_ln(nu: f64, mu: f64, x: f64) -> Result<f64> {
    check_order(mu)?;
    check_axis(x)?;
    if !(nu + 1.5 > 0.0) || !(nu + mu + 1.0 > 0.0) {
        return Err(Error::domain(format!("𝑸_ν^μ needs ν > -3/2 and ν+μ > -1, got ν={nu}, μ={mu}")));
    }
    let (xi, one_minus_w) = acosh_parts(x);
    let w = 1.0 - one_minus_w;
    let f = hyp2f1(mu + 0.5, nu + mu + 1.0, nu + 1.5, w, SERIES_TOL)?;
    Ok(0.5 * PI.ln() - ln_gamma_signed(nu + 1.5)?.0 + mu * one_minus_w.ln()
        - (nu + 1.0) * xi
        + f.value.ln())
}

/// Olver's `𝑸_ν^μ(x)`.
pub fn olver_q(nu: f64, mu: f64, x: f64) -> Result<f64> {
    olver_q_ln(nu, mu, x).map(f64::exp)
}

/// The pair `(P_ν^{-μ}(x), Q̂_ν^{-μ}(x))` on `x > 1`.
///
/// `Q̂_ν^{-μ} = e^{iμπ} Q_ν^{-μ}` with Hobson's `Q`; it equals `Γ(ν-μ+1) 𝑸_ν^μ(x)`
/// and is therefore real.
pub fn legendre_pq_axis(d: DegreeOrder, x: f64) -> Result<(f64, f64)> {
    let p = axis_p(d, x)?;
    let (lg, sg) = ln_gamma_signed(d.nu - d.mu + 1.0)?;
    let q = sg * (lg + olver_q_ln(d.nu, d.mu, x)?).exp();
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn ferrers_low_degrees() {
        assert!(close(ferrers_p(DegreeOrder::new(0.0, 0.0), 0.3).unwrap(), 1.0, 1e-15));
        assert!(close(ferrers_p(DegreeOrder::new(1.0, 0.0), 0.3).unwrap(), 0.3, 1e-15));
        // P_2 = (3x²-1)/2
        let p2 = ferrers_p(DegreeOrder::new(2.0, 0.0), -0.7).unwrap();
        assert!(close(p2, 0.5 * (3.0 * 0.49 - 1.0), 1e-14));
    }

    #[test]
    fn ferrers_rejects_endpoints() {
        assert!(ferrers_p(DegreeOrder::new(1.0, 0.0), 1.0).is_err());
        assert!(ferrers_p(DegreeOrder::new(1.0, 0.0), -1.0 + 1e-13).is_err());
        assert!(ferrers_p(DegreeOrder::new(1.0, -0.5), 0.0).is_err());
    }

    #[test]
    fn ferrers_vanishes_toward_north_pole_for_positive_order() {
        let d = DegreeOrder::new(2.3, 0.7);
        let near = ferrers_p(d, 1.0 - 1e-10).unwrap();
        assert!(near.abs() < 1e-3);
    }

    #[test]
    fn series_and_recurrence_agree_off_integer_offset() {
        // ν - μ not an integer: seeds plus recurrence vs direct series
        let (nu, mu) = (4.3, 1.1);
        for &x in &[-0.6, 0.1, 0.8] {
            let rec = ferrers_p(DegreeOrder::new(nu, mu), x).unwrap();
            let ser = ferrers_series(nu, mu, x).unwrap();
            assert!(close(rec, ser, 1e-10), "x={x}: {rec} vs {ser}");
        }
    }

    #[test]
    fn normalized_column_matches_plain() {
        let mu = 1.0 / 0.75;
        let x = 0.35f64;
        let col = ferrers_p_normalized_column(mu, x, (1.0 - x * x).sqrt(), 8).unwrap();
        for (k, v) in col.iter().enumerate() {
            let nu = mu + k as f64;
            let plain = ferrers_p(DegreeOrder::new(nu, mu), x).unwrap();
            let norm = (0.5 * log_gamma_ratio(nu + mu + 1.0, nu - mu + 1.0).unwrap()).exp();
            assert!(close(*v, norm * plain, 1e-12), "k={k}");
        }
    }

    #[test]
    fn q_closed_forms() {
        let q0 = legendre_q(0.0, 2.0).unwrap();
        assert!(close(q0, 0.5 * 3f64.ln(), 1e-14));
        let q1 = legendre_q(1.0, 2.0).unwrap();
        assert!(close(q1, 3f64.ln() - 1.0, 1e-13));
        // near ζ = 1 the log branch is used
        let z = 1.0 + 1e-7;
        let q0 = legendre_q(0.0, z).unwrap();
        assert!(close(q0, 0.5 * ((z + 1.0) / (z - 1.0)).ln(), 1e-12));
        let q1 = legendre_q(1.0, z).unwrap();
        assert!(close(q1, 0.5 * z * ((z + 1.0) / (z - 1.0)).ln() - 1.0, 1e-12));
    }

    #[test]
    fn q_domain() {
        assert!(legendre_q(-1.0, 2.0).is_err());
        assert!(legendre_q(0.5, 1.0).is_err());
        assert!(legendre_q(0.5, 0.5).is_err());
    }

    #[test]
    fn axis_degree_order_zero() {
        let (p, q) = legendre_pq_axis(DegreeOrder::new(0.0, 0.0), 2.0).unwrap();
        assert!(close(p, 1.0, 1e-15));
        assert!(close(q, 0.5 * 3f64.ln(), 1e-14));
    }

    #[test]
    fn axis_integer_order_relation() {
        // P_2^{-1}(x) = (x²-1)^{1/2} x / 2 for x > 1
        let x = 1.7f64;
        let p = axis_p(DegreeOrder::new(2.0, 1.0), x).unwrap();
        assert!(close(p, (x * x - 1.0).sqrt() * x / 2.0, 1e-13));
        let col = axis_p_ln_column(0.5, 0.3, x, 6).unwrap();
        for (k, lv) in col.iter().enumerate() {
            let direct = axis_series(0.5 + k as f64, 0.3, x).unwrap();
            assert!(close(lv.exp(), direct, 1e-11), "k={k}");
        }
    }

    #[test]
    fn olver_q_reduces_to_q_at_zero_order() {
        for &(nu, x) in &[(0.0, 1.3), (2.5, 3.0), (-0.5, 1.2), (7.0, 1.05)] {
            let a = olver_q(nu, 0.0, x).unwrap();
            let b = legendre_q(nu, x).unwrap() / ln_gamma_signed(nu + 1.0).unwrap().0.exp();
            assert!(close(a, b, 1e-12), "ν={nu} x={x}");
        }
    }
}
