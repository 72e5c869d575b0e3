//! Non-static radial modes: Frobenius start at the horizon, adaptive
//! integration outward for `p` and inward from large `η` for `q`.

use crate::error::{Error, Result};
use crate::ode::{integrate, OdeOptions, State};
use serde::Serialize;

/// Offset `η − 1` at which the Frobenius series hands over to the integrator.
pub const FROBENIUS_START: f64 = 1e-4;
/// Extra distance beyond `η_max` for the inward start of `q`, in units of `1/|n|`.
const Q_RUNWAY: f64 = 40.0;

/// Right-hand side of
/// `(η²−1)y″ + 2ηy′ − λ(λ+1)y − n²(1+η)⁴/(16(η²−1)) y = 0`.
fn rhs(n: f64, ll: f64) -> impl Fn(f64, &State) -> State {
    move |eta, y| {
        let e2 = (eta - 1.0) * (eta + 1.0);
        let pot = ll + n * n * (1.0 + eta).powi(4) / (16.0 * e2);
        [y[1], (pot * y[0] - 2.0 * eta * y[1]) / e2]
    }
}

/// Frobenius coefficients `a_j` of `p = t^{|n|/2} Σ a_j t^j`, `t = η − 1`, `a_0 = 1`.
pub fn frobenius_coefficients(n: i32, lambda: f64, count: usize) -> Vec<f64> {
    let nf = n.unsigned_abs() as f64;
    let s = 0.5 * nf;
    let ll = lambda * (lambda + 1.0);
    let n2 = nf * nf;
    let c1 = -2.0 * ll - 2.0 * n2;
    let c2 = -ll - 1.5 * n2;
    let g = |d: usize, p: f64| match d {
        0 => 4.0 * p * p - n2,
        1 => 4.0 * p * (p - 1.0) + 6.0 * p + c1,
        2 => p * p + p + c2,
        3 => -0.5 * n2,
        _ => -n2 / 16.0,
    };
    let mut a = vec![1.0];
    for j in 1..count {
        let mut acc = 0.0;
        for d in 1..=4.min(j) {
            acc += g(d, (j - d) as f64 + s) * a[j - d];
        }
        a.push(-acc / g(0, j as f64 + s));
    }
    a
}

fn series_state(n: i32, coeffs: &[f64], t: f64) -> State {
    let s = 0.5 * n.unsigned_abs() as f64;
    let (mut v, mut dv) = (0.0, 0.0);
    for (j, a) in coeffs.iter().enumerate() {
        let p = j as f64 + s;
        v += a * t.powf(p);
        dv += a * p * t.powf(p - 1.0);
    }
    [v, dv]
}

/// Independent radial solutions for `n ≠ 0`: `p ~ (η−1)^{|n|/2}` regular at
/// the horizon and `q ~ (η−1)^{−|n|/2}` decaying at large `η`, with
/// `(η²−1) W[p, q] = −2|n|`.
#[derive(Debug, Clone, Serialize)]
pub struct RadialSolutionPair {
    pub n: i32,
    pub lambda: f64,
    pub eta_max: f64,
    /// Factor applied to the raw inward solution to fix `(η²−1)W = −2|n|`.
    pub wronskian_scale: f64,
    #[serde(skip)]
    coeffs: Vec<f64>,
    #[serde(skip)]
    p_nodes: Vec<(f64, State)>,
    /// stored with increasing `η`
    #[serde(skip)]
    q_nodes: Vec<(f64, State)>,
}

/// Builds the pair on `(1, η_max]`.
pub fn radial_solutions(n: i32, lambda: f64, eta_max: f64) -> Result<RadialSolutionPair> {
    if n == 0 {
        return Err(Error::domain("n = 0 uses the Legendre branch"));
    }
    if !(lambda >= 0.0) || !(eta_max > 1.0 + FROBENIUS_START) {
        return Err(Error::domain(format!("need λ ≥ 0 and η_max > 1, got λ = {lambda}, η_max = {eta_max}")));
    }
    if FROBENIUS_START >= 2.0 {
        return Err(Error::SeriesRadius(format!("start offset {FROBENIUS_START} outside radius 2")));
    }
    let nf = n.unsigned_abs() as f64;
    let coeffs = frobenius_coefficients(n, lambda, 12);
    let f = rhs(nf, lambda * (lambda + 1.0));
    let opts = OdeOptions::default();
    let t0 = FROBENIUS_START;
    let p_nodes = integrate(&f, 1.0 + t0, series_state(n, &coeffs, t0), eta_max, 0.1 * t0, opts)?;

    // q: leading large-η form e^{−|n|η/4} η^{−1−|n|/2}, started beyond η_max
    // so the admixture of the growing solution has decayed by e^{−Q_RUNWAY/2}.
    let start = eta_max + Q_RUNWAY / nf;
    let slope = -0.25 * nf - (1.0 + 0.5 * nf) / start;
    let mut q_nodes = integrate(&f, start, [1.0, slope], 1.0 + t0, 0.05, opts)?;
    q_nodes.reverse();

    let mut pair = RadialSolutionPair { n, lambda, eta_max, wronskian_scale: 1.0, coeffs, p_nodes, q_nodes };
    let eta_ref = (1.0 + eta_max.min(3.0)) * 0.5 + 0.25;
    let raw = pair.wronskian(eta_ref)?;
    let scale = -2.0 * nf / raw;
    for node in &mut pair.q_nodes {
        node.1[0] *= scale;
        node.1[1] *= scale;
    }
    pair.wronskian_scale = scale;
    Ok(pair)
}

fn nearest(nodes: &[(f64, State)], eta: f64) -> (f64, State) {
    let i = nodes.partition_point(|(x, _)| *x < eta);
    let cands = [i.saturating_sub(1), i.min(nodes.len() - 1)];
    let best = cands
        .into_iter()
        .min_by(|&a, &b| (nodes[a].0 - eta).abs().total_cmp(&(nodes[b].0 - eta).abs()))
        .unwrap_or(0);
    nodes[best]
}

impl RadialSolutionPair {
    fn propagate(&self, from: (f64, State), eta: f64) -> Result<State> {
        let span = eta - from.0;
        if span.abs() <= 1e-12 * eta {
            // below the integrator's resolution; single first-order step
            return Ok([from.1[0] + span * from.1[1], from.1[1]]);
        }
        let f = rhs(self.n.unsigned_abs() as f64, self.lambda * (self.lambda + 1.0));
        let h0 = 0.1 * (eta - from.0).abs().min(eta - 1.0);
        let nodes = integrate(&f, from.0, from.1, eta, h0, OdeOptions::default())?;
        Ok(nodes.last().map(|n| n.1).unwrap_or(from.1))
    }

    fn check(&self, eta: f64) -> Result<()> {
        if eta > 1.0 && eta <= self.eta_max * (1.0 + 1e-12) {
            Ok(())
        } else {
            Err(Error::domain(format!("η = {eta} outside (1, {}]", self.eta_max)))
        }
    }

    /// `(p, p′)` at `η`.
    pub fn p_state(&self, eta: f64) -> Result<State> {
        self.check(eta)?;
        let t = eta - 1.0;
        if t <= FROBENIUS_START {
            return Ok(series_state(self.n, &self.coeffs, t));
        }
        self.propagate(nearest(&self.p_nodes, eta), eta)
    }

    /// `(q, q′)` at `η`.
    pub fn q_state(&self, eta: f64) -> Result<State> {
        self.check(eta)?;
        self.propagate(nearest(&self.q_nodes, eta), eta)
    }

    pub fn p(&self, eta: f64) -> Result<f64> {
        Ok(self.p_state(eta)?[0])
    }

    pub fn q(&self, eta: f64) -> Result<f64> {
        Ok(self.q_state(eta)?[0])
    }

    /// `(η²−1) W[p, q](η)`.
    pub fn wronskian(&self, eta: f64) -> Result<f64> {
        let p = self.p_state(eta)?;
        let q = self.q_state(eta)?;
        Ok((eta - 1.0) * (eta + 1.0) * (p[0] * q[1] - p[1] * q[0]))
    }

    /// Largest relative deviation of `(η²−1)W` from `−2|n|` over `etas`.
    pub fn wronskian_spread(&self, etas: &[f64]) -> Result<f64> {
        let target = -2.0 * self.n.unsigned_abs() as f64;
        let mut worst = 0f64;
        for &e in etas {
            worst = worst.max(((self.wronskian(e)? - target) / target).abs());
        }
        Ok(worst)
    }

    /// Near-horizon exponent of `p` from `ln p = c + s ln δ + a δ` fitted at
    /// `δ ∈ {2, 4, 8}·10⁻⁴`.
    pub fn exponent_fit(&self) -> Result<f64> {
        let ds: [f64; 3] = [2e-4, 4e-4, 8e-4];
        let mut rows = [[0.0; 4]; 3];
        for (row, &d) in rows.iter_mut().zip(&ds) {
            *row = [1.0, d.ln(), d, self.p(1.0 + d)?.ln()];
        }
        Ok(solve3(rows)[1])
    }

    /// `lim_{δ→0} q(1+δ) δ^{|n|/2}`, from a fit in `(1, δ, δ ln δ)`.
    pub fn q_leading_coefficient(&self) -> Result<f64> {
        let s = 0.5 * self.n.unsigned_abs() as f64;
        let ds: [f64; 3] = [1e-6, 2e-6, 4e-6];
        let mut rows = [[0.0; 4]; 3];
        for (row, &d) in rows.iter_mut().zip(&ds) {
            *row = [1.0, d, d * d.ln(), self.q(1.0 + d)? * d.powf(s)];
        }
        Ok(solve3(rows)[0])
    }
}

/// Solves a 3×3 system given as augmented rows, by Cramer's rule.
fn solve3(r: [[f64; 4]; 3]) -> [f64; 3] {
    let det = |c0: usize, c1: usize, c2: usize| {
        r[0][c0] * (r[1][c1] * r[2][c2] - r[1][c2] * r[2][c1]) - r[0][c1] * (r[1][c0] * r[2][c2] - r[1][c2] * r[2][c0])
            + r[0][c2] * (r[1][c0] * r[2][c1] - r[1][c1] * r[2][c0])
    };
    let d = det(0, 1, 2);
    [det(3, 1, 2) / d, det(0, 3, 2) / d, det(0, 1, 3) / d]
}
