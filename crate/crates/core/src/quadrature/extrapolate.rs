//! Limits at zero from values sampled at a few parameter values.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Weights `w` with `Σ w_i y_i` the value at zero of the model
/// `c_0 + Σ_j c_j x^{e_j}` through the points `(x_i, y_i)`.
///
/// Needs `exponents.len() + 1 == xs.len()`.
pub fn weights_at_zero(xs: &[f64], exponents: &[f64]) -> Option<Vec<f64>> {
    let n = xs.len();
    assert_eq!(exponents.len() + 1, n, "one coefficient per sample");
    let m = DMatrix::from_fn(n, n, |i, j| if j == 0 { 1.0 } else { xs[i].powf(exponents[j - 1]) });
    let inv = m.try_inverse()?;
    Some((0..n).map(|i| inv[(0, i)]).collect())
}

/// One extrapolated value and the weights that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolant {
    pub value: Complex64,
    pub weights: Vec<f64>,
}

/// Extrapolants built from the `k` smallest samples, `k = 1, …, n`, with the
/// first `k − 1` exponents. `xs` is descending.
pub fn extrapolant_sequence(xs: &[f64], ys: &[Complex64], exponents: &[f64]) -> Vec<Extrapolant> {
    let n = xs.len();
    (1..=n)
        .filter_map(|k| {
            let (xs_k, ys_k) = (&xs[n - k..], &ys[n - k..]);
            let w = weights_at_zero(xs_k, &exponents[..k - 1])?;
            let value = w.iter().zip(ys_k).map(|(w, y)| y * *w).sum();
            Some(Extrapolant { value, weights: w })
        })
        .collect()
}

/// Leading exponent `p` of `y(x) − y(0) ∝ x^p` from the three smallest samples,
/// assuming a constant ratio between consecutive `x`.
pub fn observed_order(xs: &[f64], ys: &[Complex64]) -> Option<f64> {
    let n = xs.len();
    if n < 3 {
        return None;
    }
    let (x0, x1, x2) = (xs[n - 3], xs[n - 2], xs[n - 1]);
    let d0 = (ys[n - 3] - ys[n - 2]).norm();
    let d1 = (ys[n - 2] - ys[n - 1]).norm();
    if d0 == 0.0 || d1 == 0.0 {
        return None;
    }
    let ratio = x0 / x1;
    if ((x1 / x2) / ratio - 1.0).abs() > 1e-9 {
        // unequal ratios: y differences scale as (x0^p − x1^p)/(x1^p − x2^p)
        let g = |p: f64| (x0.powf(p) - x1.powf(p)) / (x1.powf(p) - x2.powf(p)) - d0 / d1;
        let (mut lo, mut hi) = (0.05, 8.0);
        if g(lo).signum() == g(hi).signum() {
            return None;
        }
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if g(mid).signum() == g(lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return Some(0.5 * (lo + hi));
    }
    Some((d0 / d1).ln() / ratio.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn odd_power_fit_is_exact_on_its_model() {
        let xs: [f64; 4] = [0.1, 0.03, 0.01, 0.003];
        let ys: Vec<Complex64> = xs.iter().map(|&d| c(2.0 - 3.0 * d + 5.0 * d.powi(3) - d.powi(5))).collect();
        let seq = extrapolant_sequence(&xs, &ys, &[1.0, 3.0, 5.0]);
        assert_eq!(seq.len(), 4);
        assert!((seq[3].value - c(2.0)).norm() < 1e-12);
        assert!((seq[3].weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn order_detection() {
        let xs: [f64; 3] = [0.1, 0.01, 0.001];
        let ys: Vec<Complex64> = xs.iter().map(|&e| c(1.0 + 2.0 * e + e * e)).collect();
        assert!((observed_order(&xs, &ys).unwrap() - 1.0).abs() < 0.05);
        let xs: [f64; 3] = [0.1, 0.05, 0.01];
        let ys: Vec<Complex64> = xs.iter().map(|&e| c(1.0 + e * e)).collect();
        assert!((observed_order(&xs, &ys).unwrap() - 2.0).abs() < 1e-6);
    }
}
