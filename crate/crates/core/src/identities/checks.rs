//! Each identity as `LHS − RHS` at one parameter point.

use super::case::IdentityCase;
use crate::conespace::{
    heine_double_sum, heine_kernel, image_terms, linet_integral, spheroidal_l_sum, tail_rule, toroidal_n_sum,
    Band, SumResult, Truncation,
};
use crate::error::{Error, Result};
use crate::extrapolate::richardson;
use crate::quadrature::{integrate, wynn_epsilon, QuadOptions};
use crate::specfun::{ferrers_p, ferrers_p_normalized_column, gamma_ratio, legendre_q, DegreeOrder};
use std::f64::consts::PI;

/// Truncation target for the sums inside a check of tolerance `tol`.
pub fn inner_truncation(tol: f64) -> Truncation {
    Truncation::with_tol((tol * 1e-3).max(1e-13))
}

fn finish(case: IdentityCase, tol: f64, f: impl FnOnce() -> Result<(SumResult, f64, Vec<(&'static str, f64)>)>) -> IdentityCase {
    match f() {
        Ok((lhs, rhs, diags)) => diags.into_iter().fold(case.settle(&lhs, rhs, tol), |c, (k, v)| c.with_diagnostic(k, v)),
        Err(e) => case.failed_with(&e, tol),
    }
}

fn zeta_of(theta: f64, theta_p: f64, chi: f64) -> f64 {
    theta.cos() * theta_p.cos() + chi.cosh() * theta.sin() * theta_p.sin()
}

/// `Σ (2l+1) P_l(ψ) Q_l(ζ) = 1/(ζ − ψ)`.
pub fn check_heine_classic(zeta: f64, psi: f64, lmax: usize, tol: f64) -> IdentityCase {
    let case = IdentityCase::new("heine_classic", &[("zeta", zeta), ("psi", psi)]);
    finish(case, tol, || {
        if !(zeta > 1.0) || !(psi.abs() < zeta) {
            return Err(Error::domain(format!("needs ζ > 1 and |ψ| < ζ, got ζ={zeta}, ψ={psi}")));
        }
        let xi = zeta.acosh();
        let growth = if psi.abs() > 1.0 { psi.abs().acosh() } else { 0.0 };
        let rate = xi - growth;
        let inner = inner_truncation(tol).tol;
        let k = tail_rule(rate, inner).max(8);
        if k > lmax {
            return Err(Error::SlowConvergence(format!("tail rule needs l = {k} > lmax = {lmax}")));
        }
        let (mut p0, mut p1) = (1.0, psi);
        let mut sum = 0.0;
        let mut last = 0.0;
        for l in 0..=k {
            let p = if l == 0 { p0 } else { p1 };
            last = (2 * l + 1) as f64 * p * legendre_q(l as f64, zeta)?;
            sum += last;
            if l >= 1 {
                let next = ((2 * l + 1) as f64 * psi * p1 - l as f64 * p0) / (l + 1) as f64;
                p0 = p1;
                p1 = next;
            }
        }
        let r = (-rate).exp();
        let lhs = SumResult { value: sum, tail: last.abs() * r / (1.0 - r) * 2.0, lmax_used: k, mmax_used: 0 };
        Ok((lhs, 1.0 / (zeta - psi), vec![]))
    })
}

/// The `α = 1` double sum against `1/(ζ − cos γ)`.
pub fn check_heine_addition(zeta: f64, theta: f64, theta_p: f64, dphi: f64, tol: f64) -> IdentityCase {
    let case = IdentityCase::new(
        "heine_addition",
        &[("zeta", zeta), ("theta", theta), ("theta_p", theta_p), ("dphi", dphi)],
    );
    finish(case, tol, || {
        let lhs = heine_double_sum(1.0, theta, theta_p, dphi, zeta, &inner_truncation(tol))?;
        let cos_gamma = theta.cos() * theta_p.cos() + theta.sin() * theta_p.sin() * dphi.cos();
        Ok((lhs, 1.0 / (zeta - cos_gamma), vec![]))
    })
}

/// The generalized Heine identity at hyperbolic separation `χ`.
pub fn check_heine_generalized(alpha: f64, theta: f64, theta_p: f64, dphi: f64, chi: f64, tol: f64) -> IdentityCase {
    let case = IdentityCase::new(
        "heine_generalized",
        &[("alpha", alpha), ("theta", theta), ("theta_p", theta_p), ("dphi", dphi), ("chi", chi)],
    );
    finish(case, tol, || {
        if !(chi > 0.0) {
            return Err(Error::domain(format!("χ must be positive, got {chi}")));
        }
        let zeta = zeta_of(theta, theta_p, chi);
        if zeta <= 1.0 {
            return Err(Error::domain(format!("ζ = {zeta} ≤ 1: outside the convergent region of the mode sum")));
        }
        let lhs = heine_double_sum(alpha, theta, theta_p, dphi, zeta, &inner_truncation(tol))?;
        let rhs = heine_kernel(chi, dphi, alpha)? / (theta.sin() * theta_p.sin());
        Ok((lhs, rhs, vec![("zeta", zeta)]))
    })
}

/// Steps `h = 1 − t` of the Abel limit `t → 1⁻`.
const ABEL_STEPS: [f64; 5] = [0.05, 0.025, 0.0125, 0.00625, 0.003125];

/// `lim_{t→1⁻} f(t)` by polynomial extrapolation in `1 − t`; `f` returns a
/// value and its own tail. The result's tail is the extrapolation change
/// plus the largest series tail.
fn abel_limit(mut f: impl FnMut(f64) -> Result<SumResult>) -> Result<SumResult> {
    let mut vals = Vec::new();
    let mut worst = SumResult::default();
    for h in ABEL_STEPS {
        let s = f(1.0 - h)?;
        worst.tail = worst.tail.max(s.tail);
        worst.lmax_used = worst.lmax_used.max(s.lmax_used);
        worst.mmax_used = worst.mmax_used.max(s.mmax_used);
        vals.push(s.value);
    }
    let (value, err) = richardson(&ABEL_STEPS, &vals, ABEL_STEPS.len() - 1)?;
    Ok(SumResult { value, tail: worst.tail + err, ..worst })
}

/// `Σ_l P̄_λ(cos θ) P̄_λ(cos θ′) t^λ` for one azimuthal order.
fn abel_band(mu: f64, m: usize, theta: f64, theta_p: f64, t: f64, trunc: &Truncation) -> Result<Band> {
    let rate = -t.ln();
    let k = tail_rule(rate, trunc.tol);
    if m + k > trunc.lmax {
        return Err(Error::SlowConvergence(format!("needs l = {} > lmax = {}", m + k, trunc.lmax)));
    }
    let c1 = ferrers_p_normalized_column(mu, theta.cos(), theta.sin(), k)?;
    let c2 = ferrers_p_normalized_column(mu, theta_p.cos(), theta_p.sin(), k)?;
    let pmax = c1.iter().chain(&c2).fold(1f64, |a, v| a.max(v.abs()));
    let value = c1.iter().zip(&c2).enumerate().map(|(j, (a, b))| a * b * t.powf(mu + j as f64)).sum();
    Ok(Band { value, tail: pmax * pmax * t.powf(mu + k as f64) / (1.0 - t), terms: k })
}

/// Single-band sum at equal radii against the cylindrical `Q_{μ−½}`.
pub fn check_equal_radius(alpha: f64, m: u32, theta: f64, theta_p: f64, tol: f64) -> IdentityCase {
    let case = IdentityCase::new(
        "equal_radius",
        &[("alpha", alpha), ("m", m as f64), ("theta", theta), ("theta_p", theta_p)],
    );
    finish(case, tol, || {
        let ss = theta.sin() * theta_p.sin();
        let arg = (1.0 - theta.cos() * theta_p.cos()) / ss;
        let rhs = legendre_q(m as f64 / alpha - 0.5, arg)? / (PI * ss.sqrt());
        let trunc = Truncation { tol: 1e-13, ..inner_truncation(tol) };
        let mu = m as f64 / alpha;
        let lhs = abel_limit(|t| {
            let b = abel_band(mu, m as usize, theta, theta_p, t, &trunc)?;
            Ok(SumResult { value: b.value, tail: b.tail, lmax_used: m as usize + b.terms, mmax_used: m as usize })
        })?;
        Ok((lhs, rhs, vec![("cylindrical_argument", arg)]))
    })
}

/// Azimuthal sum whose bands may decay too slowly for the plain rule; the
/// partial sums are accelerated with Wynn's epsilon algorithm.
fn accelerated_azimuthal_sum(
    dphi: f64,
    trunc: &Truncation,
    mut band: impl FnMut(usize) -> Result<Band>,
) -> Result<SumResult> {
    let mut out = SumResult::default();
    let mut partials = Vec::new();
    let mut quiet = 0;
    for m in 0..=trunc.mmax {
        let b = band(m)?;
        let w = if m == 0 { 1.0 } else { 2.0 * (m as f64 * dphi).cos() };
        out.value += w * b.value;
        out.tail += w.abs() * b.tail;
        out.mmax_used = m;
        out.lmax_used = out.lmax_used.max(m + b.terms);
        partials.push(out.value);
        let scale = out.value.abs().max(1.0);
        if w.abs().max(1.0) * b.value.abs() < 0.1 * trunc.tol * scale {
            quiet += 1;
            if quiet >= 3 {
                return Ok(out);
            }
        } else {
            quiet = 0;
        }
        if partials.len() >= 24 && partials.len() % 8 == 0 {
            if let Some((v1, v0)) = wynn_epsilon(&partials[partials.len() - 24..]) {
                if (v1 - v0).abs() < trunc.tol * scale {
                    return Ok(SumResult { value: v1, tail: out.tail + (v1 - v0).abs(), ..out });
                }
            }
        }
    }
    Err(Error::SlowConvergence(format!("azimuthal sum not settled by m = {}", trunc.mmax)))
}

/// Equal-radius double sum against the image-plus-integral form (`α > ½`).
pub fn check_linet_sum(alpha: f64, theta: f64, theta_p: f64, dphi: f64, tol: f64) -> IdentityCase {
    let case = IdentityCase::new(
        "linet_sum",
        &[("alpha", alpha), ("theta", theta), ("theta_p", theta_p), ("dphi", dphi)],
    );
    finish(case, tol, || {
        if !(alpha > 0.5 && alpha <= 1.0) {
            return Err(Error::domain(format!("image-plus-integral form needs α ∈ (1/2, 1], got {alpha}")));
        }
        let (c, ss) = (theta.cos() * theta_p.cos(), theta.sin() * theta_p.sin());
        let psi = crate::conespace::reduced_dphi(dphi, 0.0);
        let direct = image_terms(psi, alpha, |h| 1.0 / (2.0 * (1.0 - c - ss * h.cos())).sqrt());
        let cosh_xi = (1.0 - c) / ss;
        let inner = inner_truncation(tol);
        let (int, qerr) = linet_integral(psi, alpha, cosh_xi, 1.0, inner.tol)?;
        let pre = 1.0 / (2.0 * PI * alpha * (2.0 * ss).sqrt());
        let rhs = direct + pre * int;
        let trunc = Truncation { tol: 1e-12, lmax: 200_000, mmax: 20_000 };
        let mut lhs = abel_limit(|t| {
            accelerated_azimuthal_sum(dphi, &trunc, |m| abel_band(m as f64 / alpha, m, theta, theta_p, t, &trunc))
        })?
        .scaled(1.0 / alpha);
        lhs.tail += pre * qerr;
        Ok((lhs, rhs, vec![("image_terms", direct)]))
    })
}

/// Cylindrical argument `((z−z′)² + ρ² + ρ′²)/(2ρρ′)` of two toroidal points.
pub fn toroidal_chi(mu: f64, eta: f64, mu_p: f64, eta_p: f64) -> f64 {
    let (d, dp) = (mu.cosh() - eta.cos(), mu_p.cosh() - eta_p.cos());
    let (r, rp) = (mu.sinh() / d, mu_p.sinh() / dp);
    let (z, zp) = (eta.sin() / d, eta_p.sin() / dp);
    ((z - zp).powi(2) + r * r + rp * rp) / (2.0 * r * rp)
}

/// Toroidal addition theorem for one azimuthal order.
pub fn check_toroidal_addition(alpha: f64, m: u32, mu: f64, mu_p: f64, eta: f64, eta_p: f64, tol: f64) -> IdentityCase {
    let case = IdentityCase::new(
        "toroidal_addition",
        &[("alpha", alpha), ("m", m as f64), ("mu", mu), ("mu_p", mu_p), ("eta", eta), ("eta_p", eta_p)],
    );
    finish(case, tol, || {
        let order = m as f64 / alpha;
        let (lt, gt) = if mu < mu_p { (mu, mu_p) } else { (mu_p, mu) };
        let b = toroidal_n_sum(order, lt, gt, eta - eta_p, &inner_truncation(tol))?;
        let chi = toroidal_chi(mu, eta, mu_p, eta_p);
        let rhs = legendre_q(order - 0.5, chi)? / (mu.sinh() * mu_p.sinh()).sqrt();
        let weight = ((mu.cosh() - eta.cos()) * (mu_p.cosh() - eta_p.cos())).sqrt();
        let lhs = SumResult { value: b.value, tail: b.tail, lmax_used: b.terms, mmax_used: m as usize };
        // ratio against the form carrying an extra 1/√((cosh μ − cos η)(cosh μ′ − cos η′))
        Ok((lhs, rhs, vec![("chi", chi), ("ratio_to_printed_form", b.value * weight / rhs)]))
    })
}

/// `χ` of the four-Legendre sum, written through the spheroidal coordinates.
pub fn spheroidal_chi(theta: f64, theta_p: f64, sigma: f64, sigma_p: f64) -> f64 {
    let (c, cp) = (sigma.cosh(), sigma_p.cosh());
    let num = c * c + cp * cp - theta.sin().powi(2) - theta_p.sin().powi(2) - 2.0 * c * cp * theta.cos() * theta_p.cos();
    num / (2.0 * sigma.sinh() * sigma_p.sinh() * theta.sin() * theta_p.sin())
}

/// Four-Legendre sum for one azimuthal order, with the constant-factor audit.
pub fn check_spheroidal_sum(
    alpha: f64,
    m: u32,
    theta: f64,
    theta_p: f64,
    sigma: f64,
    sigma_p: f64,
    tol: f64,
) -> IdentityCase {
    let case = IdentityCase::new(
        "spheroidal_sum",
        &[("alpha", alpha), ("m", m as f64), ("theta", theta), ("theta_p", theta_p), ("sigma", sigma), ("sigma_p", sigma_p)],
    );
    finish(case, tol, || {
        let order = m as f64 / alpha;
        let (lt, gt) = if sigma < sigma_p { (sigma, sigma_p) } else { (sigma_p, sigma) };
        let b = spheroidal_l_sum(order, theta, theta_p, lt, gt, &inner_truncation(tol))?;
        let chi = spheroidal_chi(theta, theta_p, sigma, sigma_p);
        let root = (sigma.sinh() * sigma_p.sinh() * theta.sin() * theta_p.sin()).sqrt();
        let q = legendre_q(order - 0.5, chi)?;
        let rhs = q / (PI * root);
        let printed = q / (PI * alpha * root);
        let lhs = SumResult { value: b.value, tail: b.tail, lmax_used: b.terms, mmax_used: m as usize };
        Ok((lhs, rhs, vec![("chi", chi), ("ratio_to_printed_form", b.value / printed)]))
    })
}

/// Result of probing the spheroidal prefactor across several points.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FactorAudit {
    pub alpha: f64,
    pub mean_ratio: f64,
    pub max_deviation: f64,
    /// The ratio is constant but differs from one.
    pub flagged: bool,
}

/// Ratio of the four-Legendre sum to its printed right side over `points`
/// `(m, θ, θ′, σ, σ′)`.
pub fn spheroidal_factor_audit(alpha: f64, points: &[(u32, f64, f64, f64, f64)], tol: f64) -> Result<FactorAudit> {
    let mut ratios = Vec::with_capacity(points.len());
    for &(m, t, tp, s, sp) in points {
        let c = check_spheroidal_sum(alpha, m, t, tp, s, sp, tol);
        if let Some(e) = &c.error {
            return Err(Error::Convergence(format!("audit point failed: {e}")));
        }
        ratios.push(c.diagnostics["ratio_to_printed_form"]);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let dev = ratios.iter().map(|r| (r - mean).abs()).fold(0.0, f64::max);
    Ok(FactorAudit { alpha, mean_ratio: mean, max_deviation: dev, flagged: (mean - 1.0).abs() > 1e-8 })
}

/// `∫₋₁¹ P_λ^{−μ} P_{λ′}^{−μ} dx = δ 2/(2λ+1) Γ(λ−μ+1)/Γ(λ+μ+1)`.
pub fn check_norm_integral(alpha: f64, m: u32, l: u32, l_p: u32, tol: f64) -> IdentityCase {
    let case = IdentityCase::new(
        "norm_integral",
        &[("alpha", alpha), ("m", m as f64), ("l", l as f64), ("l_p", l_p as f64)],
    );
    finish(case, tol, || {
        let d1 = DegreeOrder::from_mode(l, m as i32, alpha)?;
        let d2 = DegreeOrder::from_mode(l_p, m as i32, alpha)?;
        // x = cos θ keeps the endpoint factors (1 − x²)^{μ/2} smooth
        let f = |th: f64| match (ferrers_p(d1, th.cos()), ferrers_p(d2, th.cos())) {
            (Ok(a), Ok(b)) => a * b * th.sin(),
            _ => f64::NAN,
        };
        let est = integrate(f, 1e-5, PI - 1e-5, QuadOptions::with_tol(1e-14, 1e-13))?;
        let rhs = if l == l_p {
            2.0 / (2.0 * d1.nu + 1.0) * gamma_ratio(d1.nu - d1.mu + 1.0, d1.nu + d1.mu + 1.0)?
        } else {
            0.0
        };
        let lhs = SumResult { value: est.value, tail: est.error, lmax_used: l.max(l_p) as usize, mmax_used: m as usize };
        Ok((lhs, rhs, vec![("lambda", d1.nu), ("lambda_p", d2.nu)]))
    })
}
