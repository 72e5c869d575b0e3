//! Adaptive Dormand–Prince 5(4) integration of second-order linear ODEs
//! written as a first-order system `(y, y′)`.

use crate::error::{Error, Result};

pub type State = [f64; 2];

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-300, max_steps: 200_000 }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates from `x0` to `x1` (either direction). Returns the accepted
/// nodes including both ends.
pub fn integrate<F>(f: F, x0: f64, y0: State, x1: f64, h0: f64, opts: OdeOptions) -> Result<Vec<(f64, State)>>
where
    F: Fn(f64, &State) -> State,
{
    let dir = (x1 - x0).signum();
    let span = (x1 - x0).abs();
    let mut h = h0.abs().min(span).max(span * 1e-14) * dir;
    let mut x = x0;
    let mut y = y0;
    let mut out = vec![(x, y)];
    if span == 0.0 {
        return Ok(out);
    }
    let mut k = [[0.0; 2]; 7];
    k[0] = f(x, &y);
    for _ in 0..opts.max_steps {
        if (x1 - x) * dir <= 0.0 {
            return Ok(out);
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                ys[0] += h * A[s][j] * kj[0];
                ys[1] += h * A[s][j] * kj[1];
            }
            k[s] = f(x + C[s] * h, &ys);
        }
        let mut y5 = y;
        let mut err = 0f64;
        for i in 0..2 {
            let mut d = 0.0;
            for s in 0..7 {
                y5[i] += h * B5[s] * k[s][i];
                d += h * (B5[s] - B4[s]) * k[s][i];
            }
            let sc = opts.atol + opts.rtol * y[i].abs().max(y5[i].abs());
            err = err.max((d / sc).abs());
        }
        if !err.is_finite() {
            return Err(Error::Stiffness(format!("non-finite derivative near x = {x}")));
        }
        if err <= 1.0 {
            x += h;
            y = y5;
            k[0] = k[6];
            out.push((x, y));
        }
        let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= fac;
        if h.abs() < 1e-15 * x.abs().max(1.0) {
            return Err(Error::Stiffness(format!("step size underflow near x = {x}")));
        }
    }
    Err(Error::Stiffness(format!("step budget of {} exhausted", opts.max_steps)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let nodes = integrate(|_, y| [y[1], -y[0]], 0.0, [0.0, 1.0], 10.0, 0.1, OdeOptions::default()).unwrap();
        let (x, y) = *nodes.last().unwrap();
        assert_eq!(x, 10.0);
        assert!((y[0] - 10f64.sin()).abs() < 1e-8);
        let back = integrate(|_, y| [y[1], -y[0]], 10.0, y, 0.0, 0.1, OdeOptions::default()).unwrap();
        assert!(back.last().unwrap().1[0].abs() < 1e-8);
    }
}
