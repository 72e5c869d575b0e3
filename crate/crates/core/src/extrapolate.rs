//! Polynomial (Richardson) extrapolation to a vanishing step and slope fits.

use crate::error::{Error, Result};

/// Neville extrapolation of `values[i] ≈ f(steps[i])` to `f(0)`.
///
/// Uses at most `levels` eliminations on the last `levels + 1` samples and
/// reports the difference between the top two levels as the error estimate.
pub fn richardson(steps: &[f64], values: &[f64], levels: usize) -> Result<(f64, f64)> {
    if steps.len() != values.len() || steps.len() < 2 {
        return Err(Error::Extrapolation("need at least two samples".into()));
    }
    let n = (levels + 1).min(steps.len());
    let h = &steps[steps.len() - n..];
    let mut t: Vec<f64> = values[values.len() - n..].to_vec();
    let mut prev_top = t[n - 1];
    let mut top = t[n - 1];
    for lvl in 1..n {
        for i in (lvl..n).rev() {
            let denom = h[i - lvl] - h[i];
            if denom == 0.0 {
                return Err(Error::Extrapolation("repeated step".into()));
            }
            t[i] = (h[i - lvl] * t[i] - h[i] * t[i - 1]) / denom;
        }
        prev_top = top;
        top = t[n - 1];
    }
    Ok((top, (top - prev_top).abs()))
}

/// Least-squares slope of `ln|y|` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    linear_fit(&lx, &ly).0
}

/// Ordinary least squares `y = a x + b`, returns `(a, b)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let a = sxy / sxx;
    (a, my - a * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removes_polynomial_error() {
        let steps: Vec<f64> = (0..5).map(|k| 0.1 / 2f64.powi(k)).collect();
        let vals: Vec<f64> = steps.iter().map(|h| 3.0 + 2.0 * h - 5.0 * h * h + h * h * h).collect();
        let (v, e) = richardson(&steps, &vals, 3).unwrap();
        assert!((v - 3.0).abs() < 1e-13);
        // the estimate is the change made by the final elimination (the h³ term)
        assert!(e < 1e-5);
    }

    #[test]
    fn slope() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(1.5)).collect();
        assert!((log_log_slope(&xs, &ys) - 1.5).abs() < 1e-12);
    }
}
