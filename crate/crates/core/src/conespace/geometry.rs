//! Points on flat space threaded by a cosmic string, in four coordinate charts.
//!
//! `φ` is always the 2π-periodic coordinate; the physical azimuth is `αφ`.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Separations below this chart-invariant distance are refused.
pub const COINCIDENCE_GUARD: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `(r, θ, φ)`
    Spherical,
    /// `(ρ, z, φ)`
    Cylindrical,
    /// `(μ, η, φ)` with `ρ = sinh μ/(cosh μ − cos η)`, `z = sin η/(cosh μ − cos η)`
    Toroidal,
    /// prolate `(σ, θ, φ)` with `ρ = sinh σ sin θ`, `z = cosh σ cos θ`
    Spheroidal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConePoint {
    pub chart: Chart,
    pub coords: [f64; 3],
    /// Euclidean time, used only by the 4D Green's function.
    pub tau: Option<f64>,
}

/// Cylindrical components `(ρ, z, φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cyl {
    pub rho: f64,
    pub z: f64,
    pub phi: f64,
}

fn wrap_phi(phi: f64) -> f64 {
    let p = phi.rem_euclid(2.0 * PI);
    if p >= 2.0 * PI {
        0.0
    } else {
        p
    }
}

impl ConePoint {
    pub fn new(chart: Chart, coords: [f64; 3]) -> Result<Self> {
        let [a, b, c] = coords;
        if !coords.iter().all(|v| v.is_finite()) {
            return Err(Error::domain("non-finite coordinate"));
        }
        if !(0.0..2.0 * PI).contains(&c) {
            return Err(Error::domain(format!("φ must lie in [0, 2π), got {c}")));
        }
        let ok = match chart {
            Chart::Spherical => a > 0.0 && b > 0.0 && b < PI,
            Chart::Cylindrical => a > 0.0,
            Chart::Toroidal => a > 0.0 && (0.0..2.0 * PI).contains(&b),
            Chart::Spheroidal => a > 0.0 && b > 0.0 && b < PI,
        };
        if !ok {
            return Err(Error::domain(format!("coordinates {coords:?} invalid for {chart:?} chart")));
        }
        Ok(Self { chart, coords, tau: None })
    }

    pub fn spherical(r: f64, theta: f64, phi: f64) -> Result<Self> {
        Self::new(Chart::Spherical, [r, theta, phi])
    }
    pub fn cylindrical(rho: f64, z: f64, phi: f64) -> Result<Self> {
        Self::new(Chart::Cylindrical, [rho, z, phi])
    }
    pub fn toroidal(mu: f64, eta: f64, phi: f64) -> Result<Self> {
        Self::new(Chart::Toroidal, [mu, eta, phi])
    }
    pub fn spheroidal(sigma: f64, theta: f64, phi: f64) -> Result<Self> {
        Self::new(Chart::Spheroidal, [sigma, theta, phi])
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = Some(tau);
        self
    }

    pub fn phi(&self) -> f64 {
        self.coords[2]
    }

    pub fn to_cylindrical(&self) -> Cyl {
        let [a, b, phi] = self.coords;
        let (rho, z) = match self.chart {
            Chart::Spherical => (a * b.sin(), a * b.cos()),
            Chart::Cylindrical => (a, b),
            Chart::Toroidal => {
                let d = a.cosh() - b.cos();
                (a.sinh() / d, b.sin() / d)
            }
            Chart::Spheroidal => (a.sinh() * b.sin(), a.cosh() * b.cos()),
        };
        Cyl { rho, z, phi }
    }

    /// Re-expresses this point in another chart.
    pub fn convert(&self, chart: Chart) -> Result<Self> {
        let c = self.to_cylindrical();
        let coords = match chart {
            Chart::Cylindrical => [c.rho, c.z, c.phi],
            Chart::Spherical => {
                let r = c.rho.hypot(c.z);
                [r, c.rho.atan2(c.z), c.phi]
            }
            Chart::Toroidal => {
                let d1 = (c.rho + 1.0).hypot(c.z);
                let d2 = (c.rho - 1.0).hypot(c.z);
                let mu = (d1 / d2).ln();
                let eta = wrap_phi((2.0 * c.z).atan2(c.rho * c.rho + c.z * c.z - 1.0));
                [mu, eta, c.phi]
            }
            Chart::Spheroidal => {
                let d1 = c.rho.hypot(c.z + 1.0);
                let d2 = c.rho.hypot(c.z - 1.0);
                let ch = 0.5 * (d1 + d2);
                let ct = (0.5 * (d1 - d2)).clamp(-1.0, 1.0);
                // acosh(ch) without cancellation: ch - 1 = (d1 + d2 - 2)/2
                let sigma = ((ch - 1.0) + ((ch - 1.0) * (ch + 1.0)).sqrt()).ln_1p();
                [sigma, ct.acos(), c.phi]
            }
        };
        let mut p = Self::new(chart, coords)?;
        p.tau = self.tau;
        Ok(p)
    }

    pub fn spherical_parts(&self) -> (f64, f64) {
        let c = self.to_cylindrical();
        (c.rho.hypot(c.z), c.rho.atan2(c.z))
    }
}

/// `Δφ` reduced to `(−π, π]`.
pub fn reduced_dphi(a: f64, b: f64) -> f64 {
    let mut d = (a - b).rem_euclid(2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    }
    d
}

/// Geodesic separation on the cone (including Euclidean time when present).
pub fn cone_distance(x: &ConePoint, y: &ConePoint, alpha: f64) -> f64 {
    let a = x.to_cylindrical();
    let b = y.to_cylindrical();
    let dt = x.tau.unwrap_or(0.0) - y.tau.unwrap_or(0.0);
    let half = 0.5 * alpha * reduced_dphi(a.phi, b.phi).abs();
    let s2 = dt * dt + (a.z - b.z).powi(2) + (a.rho - b.rho).powi(2) + 4.0 * a.rho * b.rho * half.sin().powi(2);
    s2.sqrt()
}

pub fn guard_coincidence(x: &ConePoint, y: &ConePoint, alpha: f64) -> Result<()> {
    let d = cone_distance(x, y, alpha);
    if d < COINCIDENCE_GUARD {
        return Err(Error::Coincidence(format!("separation {d:.3e} below {COINCIDENCE_GUARD:e}")));
    }
    Ok(())
}

/// `(ζ, χ, cos γ)` for a pair of points, with
/// `ζ = (Δτ² + r² + r′²)/(2rr′)`, `cosh χ = (ζ − cos θ cos θ′)/(sin θ sin θ′)`
/// and `cos γ = cos θ cos θ′ + sin θ sin θ′ cos Δφ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationInvariants {
    pub zeta: f64,
    pub chi: f64,
    pub cos_gamma: f64,
}

impl SeparationInvariants {
    pub fn from_points(x: &ConePoint, y: &ConePoint) -> Self {
        let a = x.to_cylindrical();
        let b = y.to_cylindrical();
        let (r1, th1) = x.spherical_parts();
        let (r2, th2) = y.spherical_parts();
        let dt = x.tau.unwrap_or(0.0) - y.tau.unwrap_or(0.0);
        let zeta = (dt * dt + r1 * r1 + r2 * r2) / (2.0 * r1 * r2);
        // cosh χ − 1 = (Δτ² + Δz² + (ρ−ρ′)²)/(2ρρ′)
        let cm1 = (dt * dt + (a.z - b.z).powi(2) + (a.rho - b.rho).powi(2)) / (2.0 * a.rho * b.rho);
        let chi = chi_from_cosh_minus_one(cm1);
        let cos_gamma = th1.cos() * th2.cos() + th1.sin() * th2.sin() * (a.phi - b.phi).cos();
        Self { zeta, chi, cos_gamma }
    }

    /// `cos γ + (cosh χ − cos Δφ) sin θ sin θ′`, which must equal `ζ`.
    pub fn zeta_from_chi(&self, theta: f64, theta_p: f64, dphi: f64) -> f64 {
        self.cos_gamma + (self.chi.cosh() - dphi.cos()) * theta.sin() * theta_p.sin()
    }
}

/// `χ ≥ 0` from `cosh χ − 1` without cancellation.
pub fn chi_from_cosh_minus_one(cm1: f64) -> f64 {
    2.0 * (0.5 * cm1.max(0.0)).sqrt().asinh()
}
