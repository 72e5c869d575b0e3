//! Real special functions of non-integer degree and order.

mod bessel;
mod gamma;
mod hypergeom;
mod legendre;

pub use bessel::{bessel_i_any_order_scaled, bessel_ik, bessel_ik_scaled, UNSCALED_LIMIT};
pub use gamma::{digamma, gamma_ratio, ln_gamma_ratio_signed, ln_gamma_signed, log_gamma_ratio};
pub use hypergeom::{hyp2f1, SeriesValue, SERIES_BUDGET};
pub use legendre::{
    axis_p, axis_p_ln_column, ferrers_p, ferrers_p_normalized_column, legendre_pq_axis, legendre_q,
    olver_q, olver_q_ln,
};

use crate::error::{Error, Result};

/// Arguments closer than this to a singular point (`x = ±1`, `ζ = 1`) are rejected.
pub const SINGULAR_GUARD: f64 = 1e-12;

/// Degree `ν` and (non-negative) order magnitude `μ`; first-kind functions use order `-μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeOrder {
    pub nu: f64,
    pub mu: f64,
}

impl DegreeOrder {
    pub fn new(nu: f64, mu: f64) -> Self {
        Self { nu, mu }
    }

    /// The angular mode indices `(λ, |m|/α)` for `λ = l - |m| + |m|/α`.
    pub fn from_mode(l: u32, m: i32, alpha: f64) -> Result<Self> {
        let am = m.unsigned_abs();
        if am > l {
            return Err(Error::Index(format!("|m| = {am} exceeds l = {l}")));
        }
        let mu = am as f64 / alpha;
        Ok(Self { nu: (l - am) as f64 + mu, mu })
    }
}

/// Which real segment an argument lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `x ∈ (-1, 1)`
    Cut,
    /// `x > 1`
    Axis,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalDomain {
    pub x: f64,
    pub region: Region,
}

impl EvalDomain {
    pub fn new(x: f64, region: Region) -> Result<Self> {
        let ok = match region {
            Region::Cut => x.abs() < 1.0 - SINGULAR_GUARD,
            Region::Axis => x > 1.0 + SINGULAR_GUARD && x.is_finite(),
        };
        if ok {
            Ok(Self { x, region })
        } else {
            Err(Error::domain(format!("argument {x} is not inside region {region:?}")))
        }
    }

    pub fn classify(x: f64) -> Result<Self> {
        if x > 1.0 {
            Self::new(x, Region::Axis)
        } else {
            Self::new(x, Region::Cut)
        }
    }
}
