//! Summation identities stated as residuals over parameter grids.

mod case;
mod checks;
mod manifest;

pub use case::{IdentityCase, TruncationUsed};
pub use checks::{
    check_equal_radius, check_heine_addition, check_heine_classic, check_heine_generalized, check_linet_sum,
    check_norm_integral, check_spheroidal_sum, check_toroidal_addition, inner_truncation, spheroidal_chi,
    spheroidal_factor_audit, toroidal_chi, FactorAudit,
};
pub use manifest::{CaseSpec, Manifest};
