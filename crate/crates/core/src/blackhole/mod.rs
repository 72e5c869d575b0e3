//! Schwarzschild black hole threaded by a cosmic string.

mod geometry;
mod horizon;
mod radial;

pub use geometry::{lambda_of, DeficitGeometry, HorizonSeparation, ModeIndex};
pub use horizon::{
    chi_radial_green, g_sing, geodesic_distance, horizon_green, horizon_green_closed, horizon_green_split, nonzero_mode_order,
    GeodesicDistance,
};
pub use radial::{frobenius_coefficients, radial_solutions, RadialSolutionPair, FROBENIUS_START};
