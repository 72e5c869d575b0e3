use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

/// Deficit parameter `α` and mass `M` (geometric units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeficitGeometry {
    pub alpha: f64,
    pub mass: f64,
}

impl DeficitGeometry {
    pub fn new(alpha: f64, mass: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain(format!("α must lie in (0, 1], got {alpha}")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::domain(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { alpha, mass })
    }

    /// Surface gravity `1/(4M)`.
    pub fn kappa(&self) -> f64 {
        0.25 / self.mass
    }

    /// Euclidean time period `2π/κ`.
    pub fn tau_period(&self) -> f64 {
        2.0 * PI / self.kappa()
    }
}

/// `λ = l − |m| + |m|/α`.
pub fn lambda_of(l: u32, m: i32, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!("α must lie in (0, 1], got {alpha}")));
    }
    let am = m.unsigned_abs();
    if am > l {
        return Err(Error::Index(format!("|m| = {am} exceeds l = {l}")));
    }
    Ok((l - am) as f64 + am as f64 / alpha)
}

/// Matsubara index `n` with angular indices `(l, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModeIndex {
    pub n: i32,
    pub l: u32,
    pub m: i32,
}

impl ModeIndex {
    pub fn new(n: i32, l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(Error::Index(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
        }
        Ok(Self { n, l, m })
    }

    pub fn lambda(&self, alpha: f64) -> Result<f64> {
        lambda_of(self.l, self.m, alpha)
    }
}

/// Radial split `r′ = 2M + ε` at polar angle `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HorizonSeparation {
    pub epsilon: f64,
    pub theta: f64,
    pub mass: f64,
}

impl HorizonSeparation {
    pub fn new(epsilon: f64, theta: f64, mass: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.1 * mass) {
            return Err(Error::domain(format!("need 0 < ε < 0.1 M, got ε = {epsilon}, M = {mass}")));
        }
        if !(theta > 0.0 && theta < PI) {
            return Err(Error::domain(format!("θ must lie in (0, π), got {theta}")));
        }
        Ok(Self { epsilon, theta, mass })
    }

    /// `η = 1 + ε/M`.
    pub fn eta(&self) -> f64 {
        1.0 + self.epsilon / self.mass
    }

    /// `cosh χ = 1 + ε/(M sin²θ)`.
    pub fn cosh_chi(&self) -> f64 {
        1.0 + self.epsilon / (self.mass * self.theta.sin().powi(2))
    }
}
