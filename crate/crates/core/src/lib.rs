// `!(x > a)` is used deliberately so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod blackhole;
pub mod cli;
pub mod conespace;
pub mod specfun;
pub mod vacuumpol;

pub use error::{Error, Result};
pub mod extrapolate;
pub mod identities;
pub mod ode;
pub mod quadrature;
