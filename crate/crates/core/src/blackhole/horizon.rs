//! The horizon-limited Green's function and the geometric subtraction terms.

use super::geometry::DeficitGeometry;
use super::radial::RadialSolutionPair;
use crate::conespace::{heine_double_sum, heine_kernel, SumResult, Truncation};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::specfun::{axis_p, legendre_q, DegreeOrder};
use serde::Serialize;
use std::f64::consts::PI;

/// Radial Green's function of one mode. `pair` must be supplied for `n ≠ 0`
/// and is ignored for `n = 0`.
pub fn chi_radial_green(
    n: i32,
    lambda: f64,
    eta: f64,
    eta_p: f64,
    geom: &DeficitGeometry,
    pair: Option<&RadialSolutionPair>,
) -> Result<f64> {
    let (lt, gt) = if eta < eta_p { (eta, eta_p) } else { (eta_p, eta) };
    let am = geom.alpha * geom.mass;
    if n == 0 {
        let p = axis_p(DegreeOrder::new(lambda, 0.0), lt)?;
        return Ok(p * legendre_q(lambda, gt)? / am);
    }
    let pair = pair.ok_or_else(|| Error::domain("n ≠ 0 needs a radial solution pair"))?;
    if pair.n.unsigned_abs() != n.unsigned_abs() || pair.lambda != lambda {
        return Err(Error::domain("radial solution pair does not match (n, λ)"));
    }
    Ok(pair.p(lt)? * pair.q(gt)? / (2.0 * n.unsigned_abs() as f64 * am))
}

/// `δ`-halving order of the `n ≠ 0` horizon contribution `p(1+δ) q(η_ext)`.
pub fn nonzero_mode_order(pair: &RadialSolutionPair, eta_ext: f64, delta: f64) -> Result<f64> {
    let q = pair.q(eta_ext)?;
    let a = pair.p(1.0 + delta)? * q;
    let b = pair.p(1.0 + 0.5 * delta)? * q;
    Ok((a / b).log2())
}

/// Static-mode double sum with one point on the horizon, at radial
/// coordinate `η` for the other.
pub fn horizon_green(
    theta: f64,
    theta_p: f64,
    dphi: f64,
    eta: f64,
    geom: &DeficitGeometry,
    trunc: &Truncation,
) -> Result<SumResult> {
    let s = heine_double_sum(geom.alpha, theta, theta_p, dphi, eta, trunc)?;
    Ok(s.scaled(prefactor(geom)))
}

fn prefactor(geom: &DeficitGeometry) -> f64 {
    1.0 / (32.0 * PI * PI * geom.mass * geom.mass * geom.alpha)
}

/// Closed form of [`horizon_green`] with `cosh χ = (η − cos θ cos θ′)/(sin θ sin θ′)`.
pub fn horizon_green_closed(theta: f64, theta_p: f64, dphi: f64, eta: f64, geom: &DeficitGeometry) -> Result<f64> {
    let ss = theta.sin() * theta_p.sin();
    // cosh χ − 1 = (η − 1 + 1 − cos(θ − θ′))/(sin θ sin θ′)
    let cm1 = ((eta - 1.0) + 2.0 * (0.5 * (theta - theta_p)).sin().powi(2)) / ss;
    let chi = crate::conespace::chi_from_cosh_minus_one(cm1);
    Ok(prefactor(geom) * heine_kernel(chi, dphi, geom.alpha)? / ss)
}

/// Closed form at coincident angles, `θ = θ′`, `Δφ = 0`, with the radial split
/// `ε = r′ − 2M` passed directly so `cosh χ − 1 = ε/(M sin²θ)` keeps full precision.
pub fn horizon_green_split(theta: f64, epsilon: f64, geom: &DeficitGeometry) -> Result<f64> {
    let s2 = theta.sin().powi(2);
    let chi = crate::conespace::chi_from_cosh_minus_one(epsilon / (geom.mass * s2));
    Ok(prefactor(geom) * heine_kernel(chi, 0.0, geom.alpha)? / s2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicDistance {
    /// Proper radial distance from the horizon to `r = 2M + ε`, by quadrature.
    pub exact: f64,
    /// `√(2Mε) (2 + ε/(6M))`
    pub expansion: f64,
    /// `|exact − expansion|`, which is `O(ε^{5/2})`.
    pub expansion_error: f64,
}

/// Radial geodesic distance from the horizon to `r = 2M + ε`.
pub fn geodesic_distance(epsilon: f64, geom: &DeficitGeometry) -> Result<GeodesicDistance> {
    let m = geom.mass;
    if !(epsilon > 0.0 && epsilon < 0.1 * m) {
        return Err(Error::domain(format!("need 0 < ε < 0.1 M, got ε = {epsilon}")));
    }
    // r = 2M + u² removes the inverse square root at the horizon
    let est = integrate(|u| 2.0 * (2.0 * m + u * u).sqrt(), 0.0, epsilon.sqrt(), QuadOptions::with_tol(1e-16, 1e-14))?;
    let expansion = (2.0 * m * epsilon).sqrt() * (2.0 + epsilon / (6.0 * m));
    Ok(GeodesicDistance { exact: est.value, expansion, expansion_error: (est.value - expansion).abs() })
}

/// Point-splitting subtraction `1/(32π²Mε) − 1/(192π²M²)`.
pub fn g_sing(epsilon: f64, geom: &DeficitGeometry) -> Result<f64> {
    let m = geom.mass;
    if !(epsilon > 0.0 && epsilon < 0.1 * m) {
        return Err(Error::domain(format!("need 0 < ε < 0.1 M, got ε = {epsilon}")));
    }
    Ok(1.0 / (32.0 * PI * PI * m * epsilon) - 1.0 / (192.0 * PI * PI * m * m))
}
