//! Modified Bessel functions `I_ν(z)`, `K_ν(z)` of real order `ν ≥ 0` and real `z > 0`.
//!
//! Temme's series for `z < 2`, Steed's continued fraction for `z ≥ 2`, the
//! `I'_ν/I_ν` continued fraction, and the Wronskian to tie them together.

use crate::error::{Error, Result};
use std::f64::consts::PI;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-290;
const MAXIT: usize = 100_000;
const XMIN: f64 = 2.0;
/// Largest `z` for which unscaled values are returned.
pub const UNSCALED_LIMIT: f64 = 700.0;

/// Coefficients of `1/Γ(1+x) = Σ_k C[k] x^k`.
const RGAMMA: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

/// `(gam1, gam2, 1/Γ(1+μ), 1/Γ(1-μ))` for `|μ| ≤ 1/2`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    let mut pw_even = 1.0; // μ^{k-1} for odd k (k = 1, 3, ...)
    let mut pw_odd = 1.0; // μ^{k-2} for even k (k = 2, 4, ...)
    // index i in RGAMMA corresponds to k = i + 1
    for (i, c) in RGAMMA.iter().enumerate() {
        let k = i + 1;
        if k % 2 == 1 {
            gam2 += c * pw_even;
            pw_even *= mu * mu;
        } else {
            gam1 -= c * pw_odd;
            pw_odd *= mu * mu;
        }
    }
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    (gam1, gam2, gampl, gammi)
}

/// Exponentially scaled pair `(I_ν(z) e^{-z}, K_ν(z) e^{z})`.
pub fn bessel_ik_scaled(order: f64, z: f64) -> Result<(f64, f64)> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("Bessel argument must be > 0, got {z}")));
    }
    if !(order >= 0.0) || !order.is_finite() {
        return Err(Error::domain(format!("Bessel order must be ≥ 0, got {order}")));
    }
    let nl = (order + 0.5) as usize;
    let xmu = order - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / z;
    let xi2 = 2.0 * xi;

    // CF1: I'_ν / I_ν
    let mut h = (order * xi).max(FPMIN);
    let mut b = xi2 * order;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence(format!("Bessel CF1 at ν={order}, z={z}")));
    }

    // Downward recurrence of I from ν to μ with rescaling.
    let mut ril = FPMIN;
    let mut ripl = h * ril;
    let ril1 = ril;
    let rip1 = ripl;
    let mut rescale = 0.0f64; // ln of accumulated scaling applied to (ril, ripl)
    let mut fact = order * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
        if ril.abs() > 1e250 {
            ril *= 1e-250;
            ripl *= 1e-250;
            rescale += 250.0 * 10f64.ln();
        }
    }
    let f = ripl / ril;

    // K_μ and K_{μ+1}, scaled by e^{z}.
    let (rkmu, rk1) = if z < XMIN {
        let x2 = 0.5 * z;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut cc = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * ff;
            sum += del;
            let del1 = cc * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Convergence(format!("Bessel Temme series at ν={order}, z={z}")));
        }
        let s = z.exp();
        (sum * s, sum1 * xi2 * s)
    } else {
        let mut b = 2.0 * (1.0 + z);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut ok = false;
        for i in 2..MAXIT {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Convergence(format!("Bessel CF2 at ν={order}, z={z}")));
        }
        let h = a1 * h;
        let rkmu = (PI / (2.0 * z)).sqrt() / s;
        (rkmu, rkmu * (xmu + z + 0.5 - h) * xi)
    };

    let rkmup = xmu * xi * rkmu - rk1;
    // Wronskian: I_μ K'_μ - I'_μ K_μ = -1/z, so the scaled I_μ comes out e^{-z}-scaled.
    let rimu = xi / (f * rkmu - rkmup);
    let ri = (rimu * ril1 / ril) * (-rescale).exp();
    let _ = rip1;
    let mut kmu = rkmu;
    let mut k1 = rk1;
    for i in 1..=nl {
        let next = (xmu + i as f64) * xi2 * k1 + kmu;
        kmu = k1;
        k1 = next;
    }
    if !kmu.is_finite() {
        return Err(Error::Overflow(format!("K_{order}({z}) overflows")));
    }
    Ok((ri, kmu))
}

/// `(I_ν(z), K_ν(z))`. Errors with [`Error::Overflow`] for `z > 700`; use
/// [`bessel_ik_scaled`] there.
pub fn bessel_ik(order: f64, z: f64) -> Result<(f64, f64)> {
    if z > UNSCALED_LIMIT {
        return Err(Error::Overflow(format!(
            "z = {z} exceeds the unscaled limit; request scaled evaluation"
        )));
    }
    let (i, k) = bessel_ik_scaled(order, z)?;
    let e = z.exp();
    Ok((i * e, k / e))
}

/// `I_ν(z)` for any real order, using `I_{-ν} = I_ν + (2/π) sin(νπ) K_ν`.
pub fn bessel_i_any_order_scaled(order: f64, z: f64) -> Result<(f64, f64)> {
    if order >= 0.0 {
        return bessel_ik_scaled(order, z);
    }
    let (i, k) = bessel_ik_scaled(-order, z)?;
    let s = 2.0 / PI * (-order * PI).sin();
    Ok((i + s * k * (-2.0 * z).exp(), k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs()
    }

    #[test]
    fn half_integer_closed_forms() {
        for &z in &[0.3, 1.0, 2.0, 5.5, 40.0] {
            let (i, k) = bessel_ik(0.5, z).unwrap();
            assert!(close(i, (2.0 / (PI * z)).sqrt() * z.sinh(), 1e-13), "I z={z}");
            assert!(close(k, (PI / (2.0 * z)).sqrt() * (-z).exp(), 1e-13), "K z={z}");
            let (i, k) = bessel_ik(1.5, z).unwrap();
            let ie = (2.0 / (PI * z)).sqrt() * (z.cosh() - z.sinh() / z);
            let ke = (PI / (2.0 * z)).sqrt() * (-z).exp() * (1.0 + 1.0 / z);
            assert!(close(i, ie, 1e-12), "I3/2 z={z}");
            assert!(close(k, ke, 1e-13), "K3/2 z={z}");
        }
    }

    #[test]
    fn small_argument_limits() {
        let (i, k) = bessel_ik(0.0, 1e-8).unwrap();
        assert!((i - 1.0).abs() < 1e-15);
        assert!(k > 18.0);
    }

    #[test]
    fn overflow_requires_scaling() {
        assert!(matches!(bessel_ik(1.0, 800.0), Err(Error::Overflow(_))));
        let (i, k) = bessel_ik_scaled(1.0, 800.0).unwrap();
        assert!(close(i, 1.0 / (2.0 * PI * 800.0).sqrt(), 1e-3));
        assert!(close(k, (PI / 1600.0).sqrt(), 1e-3));
    }

    #[test]
    fn negative_order_i() {
        // I_{-1/2}(z) = sqrt(2/(πz)) cosh z
        let z = 1.3f64;
        let (i, _) = bessel_i_any_order_scaled(-0.5, z).unwrap();
        assert!(close(i * z.exp(), (2.0 / (PI * z)).sqrt() * z.cosh(), 1e-13));
    }

    #[test]
    fn high_order_small_argument() {
        // I_ν(z) ≈ (z/2)^ν / Γ(ν+1) for z ≪ √ν
        let (i, _) = bessel_ik(40.25, 0.01).unwrap();
        let approx = (40.25 * (0.005f64).ln() - statrs::function::gamma::ln_gamma(41.25)).exp();
        assert!(close(i, approx, 1e-5));
    }
}
