//! Renormalized `⟨φ²⟩` on the horizon: closed form, the independent
//! point-splitting limit, the near-axis asymptote and figure data.

use crate::blackhole::{g_sing, horizon_green_split, DeficitGeometry};
use crate::error::{Error, Result};
use crate::extrapolate::richardson;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Richardson levels used by [`phi2_limit`].
pub const RICHARDSON_LEVELS: usize = 3;
/// Default pole cutoff `|cos θ| ≤ 0.995` for figure data.
pub const DEFAULT_POLE_MARGIN: f64 = 0.995;

fn check(theta: f64, alpha: f64, mass: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!("alpha = {alpha} outside (0, 1]")));
    }
    if !(mass > 0.0 && mass.is_finite()) {
        return Err(Error::domain(format!("mass = {mass} must be positive")));
    }
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::domain(format!(
            "theta = {theta} outside (0, π); φ² diverges on the polar axis where the string lies"
        )));
    }
    Ok(())
}

fn candelas(mass: f64) -> f64 {
    1.0 / (192.0 * PI * PI * mass * mass)
}

/// `(1/(192π²M²)) (1 + (1−α²)/(α² sin²θ))`.
pub fn phi2_closed(theta: f64, alpha: f64, mass: f64) -> Result<f64> {
    check(theta, alpha, mass)?;
    Ok(closed_from_sin2(theta.sin().powi(2), alpha, mass))
}

fn closed_from_sin2(s2: f64, alpha: f64, mass: f64) -> f64 {
    candelas(mass) * (1.0 + (1.0 - alpha * alpha) / (alpha * alpha * s2))
}

/// Point-split Green's function minus its singular part at radial split `ε`:
/// `G(ε) − 1/(32π²Mε) + 1/(192π²M²)`.
pub fn phi2_bracket(theta: f64, alpha: f64, mass: f64, epsilon: f64) -> Result<f64> {
    check(theta, alpha, mass)?;
    let geom = DeficitGeometry::new(alpha, mass)?;
    Ok(horizon_green_split(theta, epsilon, &geom)? - g_sing(epsilon, &geom)?)
}

/// `ε_k = 10⁻²·M sin²θ·2⁻ᵏ`, `k = 0..=6`, so `cosh χ − 1 = 10⁻²·2⁻ᵏ` at every
/// angle and mass.
pub fn default_eps_sequence(theta: f64, mass: f64) -> Vec<f64> {
    let scale = mass * theta.sin().powi(2);
    (0..7).map(|k| 1e-2 * scale / 2f64.powi(k)).collect()
}

/// Extrapolates [`phi2_bracket`] to `ε → 0`; returns `(limit, error estimate)`.
/// The estimate is the last Richardson correction, floored at the roundoff
/// of subtracting the singular part at the smallest split.
pub fn phi2_limit(theta: f64, alpha: f64, mass: f64, eps: &[f64]) -> Result<(f64, f64)> {
    check(theta, alpha, mass)?;
    let cap = 0.1 * mass * theta.sin().powi(2);
    if eps.len() < 2 {
        return Err(Error::Extrapolation("need at least two splits".into()));
    }
    if eps.iter().any(|&e| !(e > 0.0 && e < cap)) {
        return Err(Error::domain(format!("every split must lie in (0, {cap:e})")));
    }
    if eps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("split sequence must be strictly decreasing"));
    }
    let vals = eps.iter().map(|&e| phi2_bracket(theta, alpha, mass, e)).collect::<Result<Vec<_>>>()?;
    // a bracket analytic in ε must have shrinking successive differences
    let diffs: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    // roundoff of the subtraction scales with the singular part at the smallest split
    let floor = 1e-13 / (32.0 * PI * PI * mass * eps[eps.len() - 1]);
    if diffs.windows(2).any(|d| d[1] > d[0] && d[1] > floor) {
        return Err(Error::Extrapolation(format!("bracket shows no convergent trend: {vals:?}")));
    }
    let (v, err) = richardson(eps, &vals, RICHARDSON_LEVELS)?;
    Ok((v, err.max(floor)))
}

/// Both routes at one point of the horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Phi2Result {
    pub theta: f64,
    pub alpha: f64,
    pub mass: f64,
    pub value_closed: f64,
    pub value_limit: f64,
    pub extrapolation_error: f64,
    pub route_agreement: f64,
}

pub fn phi2(theta: f64, alpha: f64, mass: f64) -> Result<Phi2Result> {
    let value_closed = phi2_closed(theta, alpha, mass)?;
    let (value_limit, extrapolation_error) = phi2_limit(theta, alpha, mass, &default_eps_sequence(theta, mass))?;
    Ok(Phi2Result {
        theta,
        alpha,
        mass,
        value_closed,
        value_limit,
        extrapolation_error,
        route_agreement: (value_closed - value_limit).abs(),
    })
}

/// Leading polar divergence `(1/(48π²)) ((1−α²)/α²) / (2M sin θ)²`.
pub fn phi2_near_axis(theta: f64, alpha: f64, mass: f64) -> Result<f64> {
    check(theta, alpha, mass)?;
    if alpha == 1.0 {
        return Err(Error::domain("alpha = 1 has no string term and no polar divergence"));
    }
    let s = theta.sin();
    if s >= 0.1 {
        return Err(Error::domain(format!("sin θ = {s} is not near the axis (need < 0.1)")));
    }
    Ok((1.0 - alpha * alpha) / (alpha * alpha) / (48.0 * PI * PI * (2.0 * mass * s).powi(2)))
}

/// Polar angle at which φ² is twice its equatorial value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominanceAngle {
    /// `1/√(2−α²)`
    pub cos_theta: f64,
    /// `1 − cos θ₂`
    pub gap: f64,
    /// First-order approximation of the gap, `1 − α`.
    pub first_order_gap: f64,
}

pub fn dominance_angle(alpha: f64) -> Result<DominanceAngle> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha = {alpha} outside (0, 1)")));
    }
    let c = 1.0 / (2.0 - alpha * alpha).sqrt();
    // 1 − c = (1 − α²)/((2 − α²)(1 + c)) avoids cancellation as α → 1
    let gap = (1.0 - alpha) * (1.0 + alpha) / ((2.0 - alpha * alpha) * (1.0 + c));
    Ok(DominanceAngle { cos_theta: c, gap, first_order_gap: 1.0 - alpha })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureRow {
    pub cos_theta: f64,
    pub alpha: f64,
    /// `M² φ²`
    pub phi2_m2: f64,
}

/// Uniform `cos θ` grid of `points` values on `[−margin, margin]`, symmetric
/// bit-for-bit about zero.
pub fn cos_grid(points: usize, margin: f64) -> Result<Vec<f64>> {
    if points < 2 || !(margin > 0.0 && margin < 1.0) {
        return Err(Error::domain(format!("need ≥ 2 points and margin in (0, 1), got {points}, {margin}")));
    }
    let half = (points - 1) as f64 / 2.0;
    Ok((0..points).map(|i| margin * (i as f64 - half) / half).collect())
}

/// Rows `(cos θ, α, M²φ²)` sorted by α descending then `cos θ` ascending.
pub fn figure1_data(alphas: &[f64], cos_thetas: &[f64], mass: f64) -> Result<Vec<FigureRow>> {
    let mut alphas = alphas.to_vec();
    alphas.sort_by(|a, b| b.total_cmp(a));
    let mut cs = cos_thetas.to_vec();
    cs.sort_by(f64::total_cmp);
    let pairs: Vec<(f64, f64)> = alphas.iter().flat_map(|&a| cs.iter().map(move |&c| (a, c))).collect();
    pairs
        .par_iter()
        .map(|&(alpha, c)| {
            if !(c.abs() < 1.0) {
                return Err(Error::domain(format!("cos θ = {c} on the polar axis")));
            }
            check(c.acos(), alpha, mass)?;
            // through sin²θ = (1 − c)(1 + c) so that ±c give identical bits
            let v = closed_from_sin2((1.0 - c) * (1.0 + c), alpha, mass) * mass * mass;
            Ok(FigureRow { cos_theta: c, alpha, phi2_m2: v })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_symmetry() {
        let g = cos_grid(11, 0.995).unwrap();
        for i in 0..11 {
            assert_eq!(g[i], -g[10 - i]);
        }
        assert_eq!(g[5], 0.0);
    }
}
