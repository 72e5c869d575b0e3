use serde::Serialize;
use std::collections::BTreeMap;

use crate::conespace::SumResult;
use crate::error::Error;

/// Truncation actually used for one case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncationUsed {
    pub lmax: usize,
    pub mmax: usize,
    pub tol: f64,
}

/// One identity evaluated at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCase {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub truncation: TruncationUsed,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    /// Relative residual when `|rhs| > 1`, absolute otherwise.
    pub residual: f64,
    /// Tail and quadrature error in the same units as `residual`.
    pub certified_tail: f64,
    pub passed: bool,
    /// Error kind and message when the case could not be evaluated.
    pub error: Option<String>,
    /// Extra diagnostics (audit ratios and the like).
    pub diagnostics: BTreeMap<String, f64>,
}

impl IdentityCase {
    pub fn new(name: &str, params: &[(&str, f64)]) -> Self {
        Self {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            truncation: TruncationUsed { lmax: 0, mmax: 0, tol: 0.0 },
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_residual: f64::INFINITY,
            rel_residual: f64::INFINITY,
            residual: f64::INFINITY,
            certified_tail: 0.0,
            passed: false,
            error: None,
            diagnostics: BTreeMap::new(),
        }
    }

    /// Fills in the comparison and the pass flag.
    pub fn settle(mut self, lhs: &SumResult, rhs: f64, tol: f64) -> Self {
        self.lhs = lhs.value;
        self.rhs = rhs;
        self.truncation = TruncationUsed { lmax: lhs.lmax_used, mmax: lhs.mmax_used, tol };
        self.abs_residual = (lhs.value - rhs).abs();
        self.rel_residual = self.abs_residual / rhs.abs();
        let scale = if rhs.abs() > 1.0 { rhs.abs() } else { 1.0 };
        self.residual = self.abs_residual / scale;
        self.certified_tail = lhs.tail / scale;
        self.passed = self.residual <= tol + self.certified_tail;
        self
    }

    pub fn failed_with(mut self, err: &Error, tol: f64) -> Self {
        self.truncation.tol = tol;
        self.error = Some(format!("{}: {err}", err.kind()));
        self.passed = false;
        self
    }

    pub fn with_diagnostic(mut self, key: &str, value: f64) -> Self {
        self.diagnostics.insert(key.to_string(), value);
        self
    }

    pub fn error_kind(&self) -> Option<&str> {
        self.error.as_deref().and_then(|e| e.split(':').next())
    }
}
