//! Dense polynomials with ascending coefficients.

use num_complex::Complex64;

/// Drops zero leading coefficients, keeping at least the constant term.
pub fn trim(coeffs: &[f64]) -> Vec<f64> {
    let mut out = coeffs.to_vec();
    while out.len() > 1 && *out.last().unwrap() == 0.0 {
        out.pop();
    }
    if out.is_empty() {
        out.push(0.0);
    }
    out
}

/// Degree of a trimmed polynomial; `None` for the zero polynomial.
pub fn degree(coeffs: &[f64]) -> Option<usize> {
    coeffs.iter().rposition(|&c| c != 0.0)
}

pub fn poly_mul_real(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    if coeffs.len() <= 1 {
        return vec![0.0];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect()
}

pub fn eval_real(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub fn eval_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// `Σ |c_k| r^k`, an upper bound for `|p(z)|` on `|z| = r`.
pub fn abs_bound(coeffs: &[f64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs())
}

/// Taylor coefficients of `p` about `z0`, up to `h^{order−1}`.
pub fn taylor_at(coeffs: &[f64], z0: Complex64, order: usize) -> Vec<Complex64> {
    let mut work: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let mut out = Vec::with_capacity(order);
    for _ in 0..order {
        if work.is_empty() {
            out.push(Complex64::new(0.0, 0.0));
            continue;
        }
        // synthetic division by (z − z0): remainder is the next coefficient
        let n = work.len();
        let mut quotient = vec![Complex64::new(0.0, 0.0); n.saturating_sub(1)];
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (0..n).rev() {
            acc = acc * z0 + work[k];
            if k > 0 {
                quotient[k - 1] = acc;
            }
        }
        out.push(acc);
        work = quotient;
    }
    out
}

/// Truncated product of two power series.
pub fn series_mul(a: &[Complex64], b: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); order];
    for (i, x) in a.iter().enumerate().take(order) {
        for (j, y) in b.iter().enumerate().take(order - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Truncated reciprocal of a power series with nonzero constant term.
pub fn series_recip(a: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); order];
    if order == 0 {
        return out;
    }
    out[0] = a[0].inv();
    for n in 1..order {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=n.min(a.len() - 1) {
            acc += a[k] * out[n - k];
        }
        out[n] = -acc * out[0];
    }
    out
}
