//! The 4D Euclidean Green's function on the cone and its spherical mode sum.

use super::geometry::{chi_from_cosh_minus_one, guard_coincidence, ConePoint};
use super::sums::{azimuthal_sum, tail_rule, Band, SumResult, Truncation};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_panels, Estimate, QuadOptions};
use crate::specfun::{bessel_i_any_order_scaled, ferrers_p_normalized_column, legendre_q, SINGULAR_GUARD};
use std::f64::consts::PI;

/// Smallest admissible `cosh(χ/α) − cos Δφ`.
pub const NULL_SEPARATION_GUARD: f64 = 1e-14;

/// `sinh(χ/α) / [sinh χ (cosh(χ/α) − cos Δφ)]`.
///
/// The denominator is formed as `2 sinh²(χ/2α) + 2 sin²(Δφ/2)` so that it
/// keeps full relative accuracy near coincidence.
pub fn heine_kernel(chi: f64, dphi: f64, alpha: f64) -> Result<f64> {
    let denom = 2.0 * (0.5 * chi / alpha).sinh().powi(2) + 2.0 * (0.5 * dphi).sin().powi(2);
    if denom <= NULL_SEPARATION_GUARD {
        return Err(Error::Coincidence(format!(
            "cosh(χ/α) − cos Δφ = {denom:.3e} at χ = {chi}, Δφ = {dphi}"
        )));
    }
    let ratio = if chi == 0.0 { 1.0 / alpha } else { (chi / alpha).sinh() / chi.sinh() };
    Ok(ratio / denom)
}

/// Closed-form 4D Green's function.
pub fn g4_closed(x: &ConePoint, y: &ConePoint, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    guard_coincidence(x, y, alpha)?;
    let a = x.to_cylindrical();
    let b = y.to_cylindrical();
    let dt = x.tau.unwrap_or(0.0) - y.tau.unwrap_or(0.0);
    let cm1 = (dt * dt + (a.z - b.z).powi(2) + (a.rho - b.rho).powi(2)) / (2.0 * a.rho * b.rho);
    let chi = chi_from_cosh_minus_one(cm1);
    let k = heine_kernel(chi, a.phi - b.phi, alpha)?;
    Ok(k / (8.0 * PI * PI * alpha * a.rho * b.rho))
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("deficit parameter α must lie in (0, 1], got {alpha}")))
    }
}

/// The double sum `Σ_m e^{imΔφ} Σ_l (2λ+1) P̄_λ(cos θ) P̄_λ(cos θ′) Q_λ(ζ)`
/// with `λ = l − |m| + |m|/α` and `P̄` the normalized Ferrers functions.
pub fn heine_double_sum(
    alpha: f64,
    theta: f64,
    theta_p: f64,
    dphi: f64,
    zeta: f64,
    trunc: &Truncation,
) -> Result<SumResult> {
    check_alpha(alpha)?;
    if !(zeta > 1.0 + SINGULAR_GUARD) {
        return Err(Error::domain(format!("mode sum needs ζ > 1, got {zeta}")));
    }
    azimuthal_sum(dphi, trunc, |m| heine_band(m as f64 / alpha, m, theta, theta_p, zeta, trunc))
}

/// One `m`-band of [`heine_double_sum`] at order `μ`.
pub fn heine_band(mu: f64, m: usize, theta: f64, theta_p: f64, zeta: f64, trunc: &Truncation) -> Result<Band> {
    let xi = ((zeta - 1.0) + ((zeta - 1.0) * (zeta + 1.0)).sqrt()).ln_1p();
    let q = (-xi).exp();
    // Σ_{j≥K} (2λ_j+1) Q_{λ_j} ≤ Q_{λ_K} [(2λ_K+1)/(1−q) + 2q/(1−q)²] since Q_{λ+1} < e^{-ξ} Q_λ.
    let bound = |k: usize| -> Result<f64> {
        let lam = mu + k as f64;
        let qk = legendre_q(lam, zeta)?;
        Ok(qk * ((2.0 * lam + 1.0) / (1.0 - q) + 2.0 * q / (1.0 - q).powi(2)))
    };
    let mut k = tail_rule(xi, trunc.tol);
    let mut b = bound(k)?;
    while b > 0.1 * trunc.tol && b > 0.0 {
        k += ((b / (0.1 * trunc.tol)).ln() / xi).ceil() as usize + 1;
        if m + k > trunc.lmax {
            break;
        }
        b = bound(k)?;
    }
    if m + k > trunc.lmax {
        return Err(Error::SlowConvergence(format!(
            "tail rule needs l = {} > lmax = {} at ζ = {zeta}",
            m + k,
            trunc.lmax
        )));
    }
    let c1 = ferrers_p_normalized_column(mu, theta.cos(), theta.sin(), k)?;
    let c2 = ferrers_p_normalized_column(mu, theta_p.cos(), theta_p.sin(), k)?;
    let pmax = c1.iter().chain(&c2).fold(1f64, |a, v| a.max(v.abs()));
    let mut value = 0.0;
    for (j, (p1, p2)) in c1.iter().zip(&c2).enumerate() {
        let pp = p1 * p2;
        if pp == 0.0 {
            continue;
        }
        let lam = mu + j as f64;
        value += (2.0 * lam + 1.0) * pp * legendre_q(lam, zeta)?;
    }
    Ok(Band { value, tail: pmax * pmax * b, terms: k })
}

/// 4D Green's function from the spherical mode sum with the frequency
/// integral already performed.
pub fn g4_modesum_spherical(x: &ConePoint, y: &ConePoint, alpha: f64, trunc: &Truncation) -> Result<SumResult> {
    check_alpha(alpha)?;
    guard_coincidence(x, y, alpha)?;
    let (r1, th1) = x.spherical_parts();
    let (r2, th2) = y.spherical_parts();
    let dt = x.tau.unwrap_or(0.0) - y.tau.unwrap_or(0.0);
    let zeta = (dt * dt + r1 * r1 + r2 * r2) / (2.0 * r1 * r2);
    if zeta - 1.0 < 1e-6 {
        return Err(Error::domain(format!("ζ − 1 = {:.3e} is below 1e-6", zeta - 1.0)));
    }
    let s = heine_double_sum(alpha, th1, th2, x.phi() - y.phi(), zeta, trunc)?;
    Ok(s.scaled(1.0 / (8.0 * PI * PI * alpha * r1 * r2)))
}

/// `∫₀^∞ cos(ωΔτ) I_{λ+½}(ωr<) K_{λ+½}(ωr>) dω` for `λ > −1`.
pub fn bessel_integral_lhs(lambda: f64, r_lt: f64, r_gt: f64, dtau: f64, tol: f64) -> Result<Estimate> {
    if !(lambda > -1.0) {
        return Err(Error::domain(format!("the ω-integral diverges for λ ≤ −1, got {lambda}")));
    }
    if !(r_lt > 0.0 && r_lt <= r_gt) {
        return Err(Error::domain(format!("need 0 < r< ≤ r>, got {r_lt}, {r_gt}")));
    }
    let gap = r_gt - r_lt;
    let dtau = dtau.abs();
    if dtau < 1e-7 && gap < 1e-7 {
        return Err(Error::Coincidence("ω-integral at ζ = 1".into()));
    }
    let nu = lambda + 0.5;
    let f = |w: f64| -> f64 {
        if w == 0.0 {
            return 0.0;
        }
        // I(ωr<) K(ωr>) = Ĩ(ωr<) K̃(ωr>) e^{-ω(r> − r<)}
        match (bessel_i_any_order_scaled(nu, w * r_lt), bessel_i_any_order_scaled(nu, w * r_gt)) {
            (Ok((i, _)), Ok((_, k))) => (w * dtau).cos() * i * k * (-w * gap).exp(),
            _ => f64::NAN,
        }
    };
    // first stretch up to the first cosine zero, or to a few decay lengths
    let head = if dtau > 0.0 { 0.5 * PI / dtau } else { 1.0 / gap };
    let head = if dtau > 0.0 && gap > 0.0 { head.min(4.0 / gap) } else { head };
    let opts = QuadOptions::with_tol(1e-2 * tol, 1e-12);
    let first = if nu < 0.0 {
        // ω = u^p removes the ω^{2ν} endpoint singularity
        let p = 1.0 / (1.0 + 2.0 * nu);
        integrate(|u: f64| f(u.powf(p)) * p * u.powf(p - 1.0), 0.0, head.powf(1.0 / p), opts)?
    } else {
        integrate(f, 0.0, head, opts)?
    };
    let panel = if dtau > 0.0 { PI / dtau } else { 1.0 / gap };
    let panel = if dtau > 0.0 && gap > 0.0 { panel.min(4.0 / gap) } else { panel };
    let rest = integrate_panels(f, head, panel, tol, 100_000)?;
    let est = Estimate { value: first.value + rest.value, error: first.error + rest.error };
    if !est.value.is_finite() {
        return Err(Error::Quadrature("non-finite integrand".into()));
    }
    if est.error > tol.max(tol * est.value.abs()) {
        return Err(Error::Quadrature(format!("error estimate {:.3e} exceeds {tol:e}", est.error)));
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_flat_limit() {
        let x = ConePoint::cylindrical(1.0, 0.2, 0.3).unwrap().with_tau(0.1);
        let y = ConePoint::cylindrical(1.7, -0.4, 2.0).unwrap().with_tau(-0.5);
        let g = g4_closed(&x, &y, 1.0).unwrap();
        let (a, b) = (x.to_cylindrical(), y.to_cylindrical());
        let d2 = 0.36 + 0.36 + a.rho * a.rho + b.rho * b.rho - 2.0 * a.rho * b.rho * (a.phi - b.phi).cos();
        assert!((g - 1.0 / (4.0 * PI * PI * d2)).abs() < 1e-12 * g);
    }

    #[test]
    fn kernel_guards_null_separation() {
        assert!(matches!(heine_kernel(0.0, 0.0, 0.6), Err(Error::Coincidence(_))));
        assert!((heine_kernel(0.0, 1.0, 0.5).unwrap() - 2.0 / (1.0 - 1f64.cos())).abs() < 1e-12);
    }

    #[test]
    fn omega_integral_q0() {
        let est = bessel_integral_lhs(0.0, 1.0, 2.0, 0.0, 1e-10).unwrap();
        let expect = 0.5 * 9f64.ln() / (2.0 * 2f64.sqrt());
        assert!((est.value - expect).abs() < 1e-9, "{} vs {expect}", est.value);
        assert!(bessel_integral_lhs(-1.0, 1.0, 2.0, 0.0, 1e-8).is_err());
    }
}
