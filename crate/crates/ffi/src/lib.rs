//! C ABI for the cosmic-horizon library.
//!
//! Every function returns a status code (`CH_OK` on success) and writes its
//! result through an out-pointer. On failure a message is available from
//! [`ch_last_error_message`] on the same thread until the next call.

use cosmic_horizon::blackhole::{self, DeficitGeometry, RadialSolutionPair};
use cosmic_horizon::conespace::{heine_kernel, Truncation};
use cosmic_horizon::specfun::{ferrers_p, legendre_q, DegreeOrder};
use cosmic_horizon::{vacuumpol, Error};
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

pub const CH_OK: i32 = 0;
pub const CH_ERR_NULL_POINTER: i32 = 1;
pub const CH_ERR_DOMAIN: i32 = 2;
pub const CH_ERR_POLE: i32 = 3;
pub const CH_ERR_CONVERGENCE: i32 = 4;
pub const CH_ERR_SLOW_CONVERGENCE: i32 = 5;
pub const CH_ERR_OVERFLOW: i32 = 6;
pub const CH_ERR_COINCIDENCE: i32 = 7;
pub const CH_ERR_QUADRATURE: i32 = 8;
pub const CH_ERR_STIFFNESS: i32 = 9;
pub const CH_ERR_SERIES_RADIUS: i32 = 10;
pub const CH_ERR_INDEX: i32 = 11;
pub const CH_ERR_EXTRAPOLATION: i32 = 12;
pub const CH_ERR_PANIC: i32 = 99;

/// Tabulated radial solutions of one non-static mode. Opaque to C.
pub struct ChRadialSolutionPair(RadialSolutionPair);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => CH_ERR_DOMAIN,
        Error::Pole(_) => CH_ERR_POLE,
        Error::Convergence(_) => CH_ERR_CONVERGENCE,
        Error::SlowConvergence(_) => CH_ERR_SLOW_CONVERGENCE,
        Error::Overflow(_) => CH_ERR_OVERFLOW,
        Error::Coincidence(_) => CH_ERR_COINCIDENCE,
        Error::Quadrature(_) => CH_ERR_QUADRATURE,
        Error::Stiffness(_) => CH_ERR_STIFFNESS,
        Error::SeriesRadius(_) => CH_ERR_SERIES_RADIUS,
        Error::Index(_) => CH_ERR_INDEX,
        Error::Extrapolation(_) => CH_ERR_EXTRAPOLATION,
    }
}

/// Runs `f`, maps errors and panics to status codes and clears the message on success.
fn guard(f: impl FnOnce() -> Result<(), i32>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            CH_OK
        }
        Ok(Err(code)) => code,
        Err(_) => {
            set_last_error("internal panic");
            CH_ERR_PANIC
        }
    }
}

fn fail(e: Error) -> i32 {
    set_last_error(&e.to_string());
    code_of(&e)
}

fn null() -> i32 {
    set_last_error("null pointer argument");
    CH_ERR_NULL_POINTER
}

/// Writes `v` through `out` after a null check.
///
/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn put<T>(out: *mut T, v: cosmic_horizon::Result<T>) -> Result<(), i32> {
    if out.is_null() {
        return Err(null());
    }
    let v = v.map_err(fail)?;
    // SAFETY: non-null and valid per the caller's contract
    unsafe { out.write(v) };
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn ch_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code, e.g. `"DomainError"`.
#[no_mangle]
pub extern "C" fn ch_status_name(code: i32) -> *const c_char {
    let s: &'static [u8] = match code {
        CH_OK => b"Ok\0",
        CH_ERR_NULL_POINTER => b"NullPointer\0",
        CH_ERR_DOMAIN => b"DomainError\0",
        CH_ERR_POLE => b"PoleError\0",
        CH_ERR_CONVERGENCE => b"ConvergenceError\0",
        CH_ERR_SLOW_CONVERGENCE => b"SlowConvergence\0",
        CH_ERR_OVERFLOW => b"OverflowError\0",
        CH_ERR_COINCIDENCE => b"CoincidenceError\0",
        CH_ERR_QUADRATURE => b"QuadratureError\0",
        CH_ERR_STIFFNESS => b"StiffnessError\0",
        CH_ERR_SERIES_RADIUS => b"SeriesRadiusError\0",
        CH_ERR_INDEX => b"IndexError\0",
        CH_ERR_EXTRAPOLATION => b"ExtrapolationError\0",
        CH_ERR_PANIC => b"Panic\0",
        _ => b"Unknown\0",
    };
    s.as_ptr().cast()
}

/// Renormalized φ² on the horizon by the closed form; the value carries its `M⁻²` dependence.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ch_phi2_closed(theta: f64, alpha: f64, mass: f64, out: *mut f64) -> i32 {
    guard(|| unsafe { put(out, vacuumpol::phi2_closed(theta, alpha, mass)) })
}

/// φ² by the point-splitting limit with the default split sequence.
///
/// # Safety
/// `value` and `error` must be null or valid for writing one `double` each.
#[no_mangle]
pub unsafe extern "C" fn ch_phi2_limit(theta: f64, alpha: f64, mass: f64, value: *mut f64, error: *mut f64) -> i32 {
    guard(|| {
        if value.is_null() || error.is_null() {
            return Err(null());
        }
        let eps = vacuumpol::default_eps_sequence(theta, mass);
        let (v, e) = vacuumpol::phi2_limit(theta, alpha, mass, &eps).map_err(fail)?;
        // SAFETY: both checked non-null above
        unsafe {
            value.write(v);
            error.write(e);
        }
        Ok(())
    })
}

/// Leading polar divergence of φ².
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ch_phi2_near_axis(theta: f64, alpha: f64, mass: f64, out: *mut f64) -> i32 {
    guard(|| unsafe { put(out, vacuumpol::phi2_near_axis(theta, alpha, mass)) })
}

/// `cos θ` at which φ² is twice its equatorial value.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ch_dominance_cos_theta(alpha: f64, out: *mut f64) -> i32 {
    guard(|| unsafe { put(out, vacuumpol::dominance_angle(alpha).map(|d| d.cos_theta)) })
}

/// Effective degree `λ = l − |m| + |m|/α`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ch_lambda_of(l: u32, m: i32, alpha: f64, out: *mut f64) -> i32 {
    guard(|| unsafe { put(out, blackhole::lambda_of(l, m, alpha)) })
}

/// Ferrers function `P_ν^{−μ}(x)`, `x ∈ (−1, 1)`, `μ ≥ 0`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ch_ferrers_p(nu: f64, mu: f64, x: f64, out: *mut f64) -> i32 {
    guard(|| unsafe { put(out, ferrers_p(DegreeOrder::new(nu, mu), x)) })
}

/// Legendre function of the second kind `Q_λ(ζ)`, `ζ > 1`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ch_legendre_q(lambda: f64, zeta: f64, out: *mut f64) -> i32 {
    guard(|| unsafe { put(out, legendre_q(lambda, zeta)) })
}

/// `sinh(χ/α) / [sinh χ (cosh(χ/α) − cos Δφ)]`, the generalized Heine kernel.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ch_heine_kernel(chi: f64, dphi: f64, alpha: f64, out: *mut f64) -> i32 {
    guard(|| unsafe { put(out, heine_kernel(chi, dphi, alpha)) })
}

/// Static-mode horizon Green's function by its double mode sum, with the
/// certified truncation tail.
///
/// # Safety
/// `value` and `tail` must be null or valid for writing one `double` each.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn ch_horizon_green(
    theta: f64,
    theta_p: f64,
    dphi: f64,
    eta: f64,
    alpha: f64,
    mass: f64,
    tol: f64,
    value: *mut f64,
    tail: *mut f64,
) -> i32 {
    guard(|| {
        if value.is_null() || tail.is_null() {
            return Err(null());
        }
        let geom = DeficitGeometry::new(alpha, mass).map_err(fail)?;
        let s = blackhole::horizon_green(theta, theta_p, dphi, eta, &geom, &Truncation::with_tol(tol)).map_err(fail)?;
        // SAFETY: both checked non-null above
        unsafe {
            value.write(s.value);
            tail.write(s.tail);
        }
        Ok(())
    })
}

/// Builds the radial solutions of mode `(n ≠ 0, λ)` on `(1, η_max]`. Release
/// with [`ch_radial_free`].
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn ch_radial_new(n: i32, lambda: f64, eta_max: f64, out: *mut *mut ChRadialSolutionPair) -> i32 {
    guard(|| {
        let pair = blackhole::radial_solutions(n, lambda, eta_max).map(|p| Box::into_raw(Box::new(ChRadialSolutionPair(p))));
        unsafe { put(out, pair) }
    })
}

/// Releases a handle from [`ch_radial_new`]; null is ignored.
///
/// # Safety
/// `pair` must be null or a live handle not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ch_radial_free(pair: *mut ChRadialSolutionPair) {
    if !pair.is_null() {
        // SAFETY: created by Box::into_raw in ch_radial_new
        drop(unsafe { Box::from_raw(pair) });
    }
}

/// # Safety
/// `pair` must be null or a live handle; `out` null or writable.
unsafe fn with_pair(
    pair: *const ChRadialSolutionPair,
    out: *mut f64,
    f: impl FnOnce(&RadialSolutionPair) -> cosmic_horizon::Result<f64>,
) -> i32 {
    guard(|| {
        // SAFETY: live handle per the caller's contract
        let p = unsafe { pair.as_ref() }.ok_or_else(null)?;
        unsafe { put(out, f(&p.0)) }
    })
}

/// Horizon-regular solution `p(η)`.
///
/// # Safety
/// `pair` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn ch_radial_p(pair: *const ChRadialSolutionPair, eta: f64, out: *mut f64) -> i32 {
    unsafe { with_pair(pair, out, |p| p.p(eta)) }
}

/// Decaying solution `q(η)`.
///
/// # Safety
/// `pair` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn ch_radial_q(pair: *const ChRadialSolutionPair, eta: f64, out: *mut f64) -> i32 {
    unsafe { with_pair(pair, out, |p| p.q(eta)) }
}

/// `(η²−1) W[p, q](η)`, which equals `−2|n|`.
///
/// # Safety
/// `pair` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn ch_radial_wronskian(pair: *const ChRadialSolutionPair, eta: f64, out: *mut f64) -> i32 {
    unsafe { with_pair(pair, out, |p| p.wronskian(eta)) }
}

/// Fitted near-horizon exponent of `p`, close to `|n|/2`.
///
/// # Safety
/// `pair` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn ch_radial_exponent_fit(pair: *const ChRadialSolutionPair, out: *mut f64) -> i32 {
    unsafe { with_pair(pair, out, |p| p.exponent_fit()) }
}
