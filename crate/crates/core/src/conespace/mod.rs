//! Green's functions on flat space threaded by a straight cosmic string.

mod g3;
mod g4;
mod geometry;
mod sums;

pub use g3::{
    coulomb, image_terms, g3_axisym_integral, g3_cylindrical_kintegral, g3_cylindrical_qsum, g3_linet, g3_spherical_sum,
    g3_spheroidal_sum, g3_toroidal_sum, linet_f, linet_integral, spheroidal_l_sum, toroidal_n_sum,
};
pub use g4::{bessel_integral_lhs, g4_closed, g4_modesum_spherical, heine_band, heine_double_sum, heine_kernel};
pub use geometry::{
    chi_from_cosh_minus_one, cone_distance, guard_coincidence, reduced_dphi, Chart, ConePoint, Cyl,
    SeparationInvariants, COINCIDENCE_GUARD,
};
pub use sums::{azimuthal_sum, tail_rule, Band, SumResult, Truncation};
