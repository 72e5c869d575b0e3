//! Versioned grids of identity cases, read from TOML.

use super::case::IdentityCase;
use super::checks::*;
use serde::{Deserialize, Deserializer, Serialize};
use std::f64::consts::PI;

/// A real that may also be written as a multiple of π: `"pi/4"`, `"2pi/3"`, `"pi"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Real(pub f64);

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Real(v)),
            Raw::Int(v) => Ok(Real(v as f64)),
            Raw::Text(s) => parse_pi(&s).map(Real).ok_or_else(|| {
                serde::de::Error::custom(format!("cannot read `{s}` as a number or multiple of pi"))
            }),
        }
    }
}

fn parse_pi(s: &str) -> Option<f64> {
    let s = s.trim().replace(' ', "");
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.to_string(), d.parse::<f64>().ok()?),
        None => (s.clone(), 1.0),
    };
    let coef = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some("-") => -1.0,
        Some(c) => c.trim_end_matches('*').parse::<f64>().ok()?,
        None => return num.parse::<f64>().ok().map(|v| v / den),
    };
    Some(coef * PI / den)
}

fn reals(v: &[Real]) -> impl Iterator<Item = f64> + '_ {
    v.iter().map(|r| r.0)
}

#[derive(Debug, Clone, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HeineClassicGrid {
    /// `(ζ, ψ)` pairs
    pub points: Vec<[Real; 2]>,
    #[serde(default = "default_lmax")]
    pub lmax: usize,
}

fn default_lmax() -> usize {
    20_000
}

#[derive(Debug, Clone, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HeineAdditionGrid {
    /// `(ζ, θ, θ′, Δφ)`
    pub points: Vec<[Real; 4]>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HeineGeneralizedGrid {
    pub alpha: Vec<Real>,
    pub theta_pairs: Vec<[Real; 2]>,
    pub dphi: Vec<Real>,
    pub chi: Vec<Real>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EqualRadiusGrid {
    pub alpha: Vec<Real>,
    pub m: Vec<u32>,
    pub theta_pairs: Vec<[Real; 2]>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LinetGrid {
    pub alpha: Vec<Real>,
    pub theta_pairs: Vec<[Real; 2]>,
    pub dphi: Vec<Real>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ToroidalGrid {
    pub alpha: Vec<Real>,
    pub m: Vec<u32>,
    /// `(μ, μ′, η, η′)`
    pub points: Vec<[Real; 4]>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SpheroidalGrid {
    pub alpha: Vec<Real>,
    pub m: Vec<u32>,
    /// `(θ, θ′, σ, σ′)`
    pub points: Vec<[Real; 4]>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NormGrid {
    pub alpha: Vec<Real>,
    pub m: Vec<u32>,
    /// `(l − |m|, l′ − |m|)` offsets
    pub dl: Vec<[u32; 2]>,
}

/// A complete verification manifest. Every section is optional.
#[derive(Debug, Clone, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub tolerance: Option<f64>,
    pub heine_classic: Option<HeineClassicGrid>,
    pub heine_addition: Option<HeineAdditionGrid>,
    pub heine_generalized: Option<HeineGeneralizedGrid>,
    pub equal_radius: Option<EqualRadiusGrid>,
    pub linet: Option<LinetGrid>,
    pub toroidal: Option<ToroidalGrid>,
    pub spheroidal: Option<SpheroidalGrid>,
    pub norm_integral: Option<NormGrid>,
}

/// One fully specified case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CaseSpec {
    HeineClassic { zeta: f64, psi: f64, lmax: usize },
    HeineAddition { zeta: f64, theta: f64, theta_p: f64, dphi: f64 },
    HeineGeneralized { alpha: f64, theta: f64, theta_p: f64, dphi: f64, chi: f64 },
    EqualRadius { alpha: f64, m: u32, theta: f64, theta_p: f64 },
    Linet { alpha: f64, theta: f64, theta_p: f64, dphi: f64 },
    Toroidal { alpha: f64, m: u32, mu: f64, mu_p: f64, eta: f64, eta_p: f64 },
    Spheroidal { alpha: f64, m: u32, theta: f64, theta_p: f64, sigma: f64, sigma_p: f64 },
    NormIntegral { alpha: f64, m: u32, l: u32, l_p: u32 },
}

impl CaseSpec {
    pub fn run(&self, tol: f64) -> IdentityCase {
        match *self {
            CaseSpec::HeineClassic { zeta, psi, lmax } => check_heine_classic(zeta, psi, lmax, tol),
            CaseSpec::HeineAddition { zeta, theta, theta_p, dphi } => check_heine_addition(zeta, theta, theta_p, dphi, tol),
            CaseSpec::HeineGeneralized { alpha, theta, theta_p, dphi, chi } => {
                check_heine_generalized(alpha, theta, theta_p, dphi, chi, tol)
            }
            CaseSpec::EqualRadius { alpha, m, theta, theta_p } => check_equal_radius(alpha, m, theta, theta_p, tol),
            CaseSpec::Linet { alpha, theta, theta_p, dphi } => check_linet_sum(alpha, theta, theta_p, dphi, tol),
            CaseSpec::Toroidal { alpha, m, mu, mu_p, eta, eta_p } => {
                check_toroidal_addition(alpha, m, mu, mu_p, eta, eta_p, tol)
            }
            CaseSpec::Spheroidal { alpha, m, theta, theta_p, sigma, sigma_p } => {
                check_spheroidal_sum(alpha, m, theta, theta_p, sigma, sigma_p, tol)
            }
            CaseSpec::NormIntegral { alpha, m, l, l_p } => check_norm_integral(alpha, m, l, l_p, tol),
        }
    }
}

impl Manifest {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    /// All cases in a fixed order: section order above, then grid order.
    pub fn cases(&self) -> Vec<CaseSpec> {
        let mut out = Vec::new();
        if let Some(g) = &self.heine_classic {
            for [z, p] in &g.points {
                out.push(CaseSpec::HeineClassic { zeta: z.0, psi: p.0, lmax: g.lmax });
            }
        }
        if let Some(g) = &self.heine_addition {
            for [z, t, tp, d] in &g.points {
                out.push(CaseSpec::HeineAddition { zeta: z.0, theta: t.0, theta_p: tp.0, dphi: d.0 });
            }
        }
        if let Some(g) = &self.heine_generalized {
            for alpha in reals(&g.alpha) {
                for [t, tp] in &g.theta_pairs {
                    for dphi in reals(&g.dphi) {
                        for chi in reals(&g.chi) {
                            out.push(CaseSpec::HeineGeneralized { alpha, theta: t.0, theta_p: tp.0, dphi, chi });
                        }
                    }
                }
            }
        }
        if let Some(g) = &self.equal_radius {
            for alpha in reals(&g.alpha) {
                for &m in &g.m {
                    for [t, tp] in &g.theta_pairs {
                        out.push(CaseSpec::EqualRadius { alpha, m, theta: t.0, theta_p: tp.0 });
                    }
                }
            }
        }
        if let Some(g) = &self.linet {
            for alpha in reals(&g.alpha) {
                for [t, tp] in &g.theta_pairs {
                    for dphi in reals(&g.dphi) {
                        out.push(CaseSpec::Linet { alpha, theta: t.0, theta_p: tp.0, dphi });
                    }
                }
            }
        }
        if let Some(g) = &self.toroidal {
            for alpha in reals(&g.alpha) {
                for &m in &g.m {
                    for [mu, mup, eta, etap] in &g.points {
                        out.push(CaseSpec::Toroidal { alpha, m, mu: mu.0, mu_p: mup.0, eta: eta.0, eta_p: etap.0 });
                    }
                }
            }
        }
        if let Some(g) = &self.spheroidal {
            for alpha in reals(&g.alpha) {
                for &m in &g.m {
                    for [t, tp, s, sp] in &g.points {
                        out.push(CaseSpec::Spheroidal { alpha, m, theta: t.0, theta_p: tp.0, sigma: s.0, sigma_p: sp.0 });
                    }
                }
            }
        }
        if let Some(g) = &self.norm_integral {
            for alpha in reals(&g.alpha) {
                for &m in &g.m {
                    for [a, b] in &g.dl {
                        out.push(CaseSpec::NormIntegral { alpha, m, l: m + a, l_p: m + b });
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_expressions() {
        assert_eq!(parse_pi("pi"), Some(PI));
        assert_eq!(parse_pi("pi/4"), Some(PI / 4.0));
        assert_eq!(parse_pi("2pi/3"), Some(2.0 * PI / 3.0));
        assert_eq!(parse_pi("-pi/2"), Some(-PI / 2.0));
        assert_eq!(parse_pi("0.5"), Some(0.5));
        assert_eq!(parse_pi("pie"), None);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(Manifest::from_toml("bogus = 1").is_err());
        assert!(Manifest::from_toml("[equal_radius]\nalpha=[1]\nm=[0]\ntheta_pairs=[[1,2]]\nextra=3").is_err());
        let m = Manifest::from_toml("[equal_radius]\nalpha=[1, 0.5]\nm=[0]\ntheta_pairs=[[\"pi/2\", 1]]").unwrap();
        assert_eq!(m.cases().len(), 2);
    }
}
