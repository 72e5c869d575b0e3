//! Representations of the 3D Laplace Green's function on the cone.

use super::g4::{bessel_integral_lhs, check_alpha};
use super::geometry::{guard_coincidence, reduced_dphi, Chart, ConePoint};
use super::sums::{azimuthal_sum, tail_rule, Band, SumResult, Truncation};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_panels, QuadOptions};
use crate::specfun::{axis_p_ln_column, ferrers_p_normalized_column, legendre_q, ln_gamma_signed, olver_q_ln};
use std::f64::consts::PI;

/// Radial or axial offsets closer than this are treated as equal, where the
/// corresponding expansion stops converging geometrically.
const SAME_SHELL: f64 = 1e-9;

/// Flat-space Coulomb kernel `1/(4π|x − x′|)`.
pub fn coulomb(x: &ConePoint, y: &ConePoint) -> f64 {
    let a = x.to_cylindrical();
    let b = y.to_cylindrical();
    let d2 = (a.z - b.z).powi(2) + (a.rho - b.rho).powi(2)
        + 4.0 * a.rho * b.rho * (0.5 * (a.phi - b.phi)).sin().powi(2);
    1.0 / (4.0 * PI * d2.sqrt())
}

/// `(ζ₃ − 1)` for the cylindrical argument `ζ₃ = (Δz² + ρ² + ρ′²)/(2ρρ′)`.
fn cyl_arg_minus_one(x: &ConePoint, y: &ConePoint) -> (f64, f64, f64, f64) {
    let a = x.to_cylindrical();
    let b = y.to_cylindrical();
    let dz = a.z - b.z;
    ((dz * dz + (a.rho - b.rho).powi(2)) / (2.0 * a.rho * b.rho), a.rho, b.rho, dz)
}

fn prologue(x: &ConePoint, y: &ConePoint, alpha: f64) -> Result<()> {
    check_alpha(alpha)?;
    guard_coincidence(x, y, alpha)
}

/// Spherical mode sum with radial factor `r<^λ r>^{−λ−1}`.
pub fn g3_spherical_sum(x: &ConePoint, y: &ConePoint, alpha: f64, trunc: &Truncation) -> Result<SumResult> {
    prologue(x, y, alpha)?;
    let (r1, th1) = x.spherical_parts();
    let (r2, th2) = y.spherical_parts();
    let (rl, rg) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
    if rg - rl < SAME_SHELL * rg {
        return Err(Error::SlowConvergence("spherical sum needs r ≠ r′".into()));
    }
    let t = rl / rg;
    let rate = -t.ln();
    let s = azimuthal_sum(x.phi() - y.phi(), trunc, |m| {
        let mu = m as f64 / alpha;
        let k = tail_rule(rate, trunc.tol);
        if m + k > trunc.lmax {
            return Err(Error::SlowConvergence(format!("needs l = {} > lmax", m + k)));
        }
        let c1 = ferrers_p_normalized_column(mu, th1.cos(), th1.sin(), k)?;
        let c2 = ferrers_p_normalized_column(mu, th2.cos(), th2.sin(), k)?;
        let pmax = c1.iter().chain(&c2).fold(1f64, |a, v| a.max(v.abs()));
        let value = c1
            .iter()
            .zip(&c2)
            .enumerate()
            .map(|(j, (p1, p2))| p1 * p2 * ((mu + j as f64) * t.ln()).exp())
            .sum();
        let tail = pmax * pmax * ((mu + k as f64) * t.ln()).exp() / (1.0 - t);
        Ok(Band { value, tail, terms: k })
    })?;
    Ok(s.scaled(1.0 / (4.0 * PI * alpha * rg)))
}

/// Cylindrical sum over `Q_{|m|/α−½}` of the cylindrical argument.
pub fn g3_cylindrical_qsum(x: &ConePoint, y: &ConePoint, alpha: f64, trunc: &Truncation) -> Result<SumResult> {
    prologue(x, y, alpha)?;
    let (zm1, r1, r2, _) = cyl_arg_minus_one(x, y);
    if zm1 < SAME_SHELL {
        return Err(Error::SlowConvergence("cylindrical sum needs (ρ, z) ≠ (ρ′, z′)".into()));
    }
    let s = azimuthal_sum(x.phi() - y.phi(), trunc, |m| {
        let value = legendre_q(m as f64 / alpha - 0.5, 1.0 + zm1)?;
        Ok(Band { value, tail: 0.0, terms: 0 })
    })?;
    Ok(s.scaled(1.0 / (4.0 * PI * PI * alpha * (r1 * r2).sqrt())))
}

/// Cylindrical sum with the `k`-integral of `I K` left unevaluated.
pub fn g3_cylindrical_kintegral(x: &ConePoint, y: &ConePoint, alpha: f64, trunc: &Truncation) -> Result<SumResult> {
    prologue(x, y, alpha)?;
    let (zm1, r1, r2, dz) = cyl_arg_minus_one(x, y);
    if zm1 < SAME_SHELL {
        return Err(Error::SlowConvergence("cylindrical sum needs (ρ, z) ≠ (ρ′, z′)".into()));
    }
    let (rl, rg) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
    let s = azimuthal_sum(x.phi() - y.phi(), trunc, |m| {
        let est = bessel_integral_lhs(m as f64 / alpha - 0.5, rl, rg, dz, (1e-2 * trunc.tol).max(1e-11))?;
        Ok(Band { value: est.value, tail: est.error, terms: 0 })
    })?;
    Ok(s.scaled(1.0 / (2.0 * PI * PI * alpha)))
}

/// Axisymmetric-potential form: an angular integral per azimuthal band.
pub fn g3_axisym_integral(x: &ConePoint, y: &ConePoint, alpha: f64, trunc: &Truncation) -> Result<SumResult> {
    prologue(x, y, alpha)?;
    let (zm1, r1, r2, dz) = cyl_arg_minus_one(x, y);
    if zm1 < SAME_SHELL {
        return Err(Error::SlowConvergence("axisymmetric integral needs (ρ, z) ≠ (ρ′, z′)".into()));
    }
    let base = dz * dz + (r1 - r2).powi(2);
    let rr = r1 * r2;
    let opts = QuadOptions::with_tol(1e-2 * trunc.tol, 1e-13);
    let s = azimuthal_sum(x.phi() - y.phi(), trunc, |m| {
        let mu = m as f64 / alpha;
        let f = |psi: f64| {
            let d = base + 4.0 * rr * (0.5 * psi).sin().powi(2);
            let s2 = psi.sin().powi(2);
            if mu == 0.0 {
                return 1.0 / d.sqrt();
            }
            if s2 == 0.0 {
                return 0.0;
            }
            (mu * (rr * s2 / d).ln() - 0.5 * d.ln()).exp()
        };
        let est = integrate(f, 0.0, PI, opts)?;
        Ok(Band { value: est.value, tail: est.error, terms: 0 })
    })?;
    Ok(s.scaled(1.0 / (4.0 * PI * PI * alpha)))
}

/// `F_α(u, Ψ)` over a common denominator:
/// `2 sin(π/α)(cos(π/α) − cosh(u/α) cos Ψ) / [(C − cos(Ψ−π/α))(C − cos(Ψ+π/α))]`,
/// each factor written as `2 sinh²(u/2α) + 2 sin²(a/2)`.
pub fn linet_f(u: f64, psi: f64, alpha: f64) -> f64 {
    let c = (u / alpha).cosh();
    let s = (0.5 * u / alpha).sinh().powi(2);
    let k = PI / alpha;
    let d1 = 2.0 * s + 2.0 * (0.5 * (psi - k)).sin().powi(2);
    let d2 = 2.0 * s + 2.0 * (0.5 * (psi + k)).sin().powi(2);
    2.0 * k.sin() * (k.cos() - c * psi.cos()) / (d1 * d2)
}

/// `∫₀^∞ F_α(u, Ψ)/√(A + B cosh u) du`.
pub fn linet_integral(psi: f64, alpha: f64, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    let f = |u: f64| linet_f(u, psi, alpha) / (a + b * u.cosh()).sqrt();
    let opts = QuadOptions::with_tol(1e-2 * tol, 1e-13);
    let head = integrate(f, 0.0, 1.0, opts)?;
    let rest = integrate_panels(f, 1.0, 2.0 * alpha, tol, 10_000)?;
    Ok((head.value + rest.value, head.error + rest.error))
}

/// Sum of `f(h)` over the physical angles `h = α(Ψ + 2πk)` with `|h| < π`.
///
/// For `α > ½` there is one such image when `|Ψ| < 2π − π/α` and two beyond
/// it; the integral term alone does not supply the second one. An image
/// exactly at `|h| = π` gets half weight, matching the jump of the integral.
pub fn image_terms<F: Fn(f64) -> f64>(psi: f64, alpha: f64, f: F) -> f64 {
    let kmax = (0.5 / alpha).ceil() as i64 + 1;
    let mut sum = 0.0;
    for k in -kmax..=kmax {
        let h = alpha * (psi + 2.0 * PI * k as f64);
        let gap = PI - h.abs();
        if gap > 1e-12 {
            sum += f(h);
        } else if gap > -1e-12 {
            sum += 0.5 * f(h);
        }
    }
    sum
}

/// Image-plus-integral form valid for `α > ½`.
pub fn g3_linet(x: &ConePoint, y: &ConePoint, alpha: f64, trunc: &Truncation) -> Result<SumResult> {
    prologue(x, y, alpha)?;
    if alpha <= 0.5 {
        return Err(Error::domain(format!("the image-plus-integral form needs α > 1/2, got {alpha}")));
    }
    let a = x.to_cylindrical();
    let b = y.to_cylindrical();
    let psi = reduced_dphi(a.phi, b.phi);
    let dz = a.z - b.z;
    let base = dz * dz + (a.rho - b.rho).powi(2);
    let direct = image_terms(psi, alpha, |h| 1.0 / (base + 4.0 * a.rho * b.rho * (0.5 * h).sin().powi(2)).sqrt());
    let (int, err) = linet_integral(psi, alpha, dz * dz + a.rho * a.rho + b.rho * b.rho, 2.0 * a.rho * b.rho, trunc.tol)?;
    let c = 1.0 / (8.0 * PI * PI * alpha);
    Ok(SumResult {
        value: direct / (4.0 * PI) + c * int,
        tail: c * err,
        lmax_used: 0,
        mmax_used: 0,
    })
}

/// `Σ_n e^{inΔη} Γ(|n|+μ+½) P^{−μ}_{|n|−½}(cosh μ<) 𝑸^μ_{|n|−½}(cosh μ>)` at azimuthal order `μ`.
pub fn toroidal_n_sum(order: f64, mu_lt: f64, mu_gt: f64, deta: f64, trunc: &Truncation) -> Result<Band> {
    let gap = mu_gt - mu_lt;
    if gap < SAME_SHELL {
        return Err(Error::SlowConvergence("toroidal sum needs μ ≠ μ′".into()));
    }
    let k = tail_rule(gap, trunc.tol);
    let lnp = axis_p_ln_column(-0.5, order, mu_lt.cosh(), k + 1)?;
    let term = |n: usize| -> Result<f64> {
        let deg = n as f64 - 0.5;
        Ok((ln_gamma_signed(n as f64 + order + 0.5)?.0 + lnp[n] + olver_q_ln(deg, order, mu_gt.cosh())?).exp())
    };
    let mut value = term(0)?;
    for n in 1..k {
        value += 2.0 * (n as f64 * deta).cos() * term(n)?;
    }
    let q = (-gap).exp();
    let tail = 2.0 * term(k)? / (1.0 - q);
    Ok(Band { value, tail, terms: k })
}

/// Toroidal double sum.
pub fn g3_toroidal_sum(x: &ConePoint, y: &ConePoint, alpha: f64, trunc: &Truncation) -> Result<SumResult> {
    prologue(x, y, alpha)?;
    let p = x.convert(Chart::Toroidal)?.coords;
    let q = y.convert(Chart::Toroidal)?.coords;
    let (lt, gt) = if p[0] < q[0] { (p[0], q[0]) } else { (q[0], p[0]) };
    let weight = ((p[0].cosh() - p[1].cos()) * (q[0].cosh() - q[1].cos())).sqrt();
    let s = azimuthal_sum(p[2] - q[2], trunc, |m| toroidal_n_sum(m as f64 / alpha, lt, gt, p[1] - q[1], trunc))?;
    Ok(s.scaled(weight / (4.0 * PI * PI * alpha)))
}

/// `Σ_l (2λ+1) P̄_λ(cos θ) P̄_λ(cos θ′) Γ(λ+μ+1) P^{−μ}_λ(cosh σ<) 𝑸^μ_λ(cosh σ>)`.
pub fn spheroidal_l_sum(
    order: f64,
    theta: f64,
    theta_p: f64,
    sigma_lt: f64,
    sigma_gt: f64,
    trunc: &Truncation,
) -> Result<Band> {
    let gap = sigma_gt - sigma_lt;
    if gap < SAME_SHELL {
        return Err(Error::SlowConvergence("spheroidal sum needs σ ≠ σ′".into()));
    }
    let k = tail_rule(gap, trunc.tol);
    let c1 = ferrers_p_normalized_column(order, theta.cos(), theta.sin(), k)?;
    let c2 = ferrers_p_normalized_column(order, theta_p.cos(), theta_p.sin(), k)?;
    let pmax = c1.iter().chain(&c2).fold(1f64, |a, v| a.max(v.abs()));
    let lnp = axis_p_ln_column(order, order, sigma_lt.cosh(), k + 1)?;
    let radial = |j: usize| -> Result<f64> {
        let lam = order + j as f64;
        Ok((2.0 * lam + 1.0)
            * (ln_gamma_signed(lam + order + 1.0)?.0 + lnp[j] + olver_q_ln(lam, order, sigma_gt.cosh())?).exp())
    };
    let mut value = 0.0;
    for j in 0..k {
        let pp = c1[j] * c2[j];
        if pp != 0.0 {
            value += pp * radial(j)?;
        }
    }
    let q = (-gap).exp();
    let tail = pmax * pmax * radial(k)? / (1.0 - q);
    Ok(Band { value, tail, terms: k })
}

/// Prolate spheroidal double sum.
pub fn g3_spheroidal_sum(x: &ConePoint, y: &ConePoint, alpha: f64, trunc: &Truncation) -> Result<SumResult> {
    prologue(x, y, alpha)?;
    let p = x.convert(Chart::Spheroidal)?.coords;
    let q = y.convert(Chart::Spheroidal)?.coords;
    let (lt, gt) = if p[0] < q[0] { (p[0], q[0]) } else { (q[0], p[0]) };
    let s = azimuthal_sum(p[2] - q[2], trunc, |m| {
        spheroidal_l_sum(m as f64 / alpha, p[1], q[1], lt, gt, trunc)
    })?;
    Ok(s.scaled(1.0 / (4.0 * PI * alpha)))
}
