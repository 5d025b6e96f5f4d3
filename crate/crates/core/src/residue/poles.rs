//! Root isolation for the denominator.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use super::poly::{derivative, eval_complex};
use super::{PoleSite, RationalOscIntegrand, ResidueError};

pub const MAX_DEGREE: usize = 8;
pub const MAX_MULTIPLICITY: u32 = 4;

/// Relative band within which a root counts as real.
pub fn on_axis(z: Complex64) -> bool {
    z.im.abs() <= 1e-12 * (1.0 + z.re.abs())
}

/// All roots of the denominator with multiplicities, sorted by real then
/// imaginary part.
pub fn find_poles(f: &RationalOscIntegrand) -> Result<Vec<PoleSite>, ResidueError> {
    let den = f.denominator();
    let n = den.len() - 1;
    if n > MAX_DEGREE {
        return Err(ResidueError::DegreeTooHigh { degree: n, max: MAX_DEGREE });
    }
    let mut sites = match n {
        0 => Vec::new(),
        1 => vec![site(Complex64::new(-den[0] / den[1], 0.0), 1)],
        2 => quadratic(den[2], den[1], den[0]),
        _ => clustered(den, companion_roots(den))?,
    };
    sites.sort_by(|a, b| {
        a.location
            .re
            .total_cmp(&b.location.re)
            .then(a.location.im.total_cmp(&b.location.im))
    });
    Ok(sites)
}

fn site(location: Complex64, multiplicity: u32) -> PoleSite {
    let real = on_axis(location);
    PoleSite {
        location: if real { Complex64::new(location.re, 0.0) } else { location },
        multiplicity,
        on_real_axis: real,
    }
}

fn quadratic(a: f64, b: f64, c: f64) -> Vec<PoleSite> {
    let disc = b * b - 4.0 * a * c;
    if disc == 0.0 {
        return vec![site(Complex64::new(-b / (2.0 * a), 0.0), 2)];
    }
    if disc > 0.0 {
        // avoid cancellation in the smaller root
        let sign = if b >= 0.0 { 1.0 } else { -1.0 };
        let q = -0.5 * (b + sign * disc.sqrt());
        let r1 = q / a;
        let r2 = c / q;
        return vec![site(Complex64::new(r1, 0.0), 1), site(Complex64::new(r2, 0.0), 1)];
    }
    let re = -b / (2.0 * a);
    let im = (-disc).sqrt() / (2.0 * a.abs());
    vec![site(Complex64::new(re, im), 1), site(Complex64::new(re, -im), 1)]
}

/// Eigenvalues of the companion matrix. The QR iteration can stall on
/// repeated roots, so it is capped and followed by Aberth's method when it
/// does not finish.
fn companion_roots(den: &[f64]) -> Vec<Complex64> {
    let n = den.len() - 1;
    let lead = den[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -den[i] / lead;
    }
    match Schur::try_new(m, f64::EPSILON, 200 * n) {
        Some(schur) => schur.complex_eigenvalues().iter().copied().collect(),
        None => aberth(den),
    }
}

/// Simultaneous root iteration `z_k ← z_k − w_k/(1 − w_k Σ_{j≠k} 1/(z_k − z_j))`
/// with `w_k = p/p′`.
pub(crate) fn aberth(den: &[f64]) -> Vec<Complex64> {
    let n = den.len() - 1;
    let dp = derivative(den);
    let lead = den[n].abs();
    // Cauchy bound on the root moduli
    let bound = 1.0 + den[..n].iter().map(|c| c.abs() / lead).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * bound, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut largest_step: f64 = 0.0;
        for k in 0..n {
            let p = eval_complex(den, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = p / eval_complex(&dp, z[k]);
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * repulsion);
            if step.is_finite() {
                z[k] -= step;
                largest_step = largest_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if largest_step < 1e-15 {
            break;
        }
    }
    z
}

/// Groups nearby eigenvalues into multiple roots and polishes each root with
/// Newton's method on the matching derivative.
fn clustered(den: &[f64], roots: Vec<Complex64>) -> Result<Vec<PoleSite>, ResidueError> {
    let mut remaining = roots;
    let mut sites = Vec::new();
    while let Some(seed) = remaining.pop() {
        let radius = 1e-3 * (1.0 + seed.norm());
        let (near, far): (Vec<_>, Vec<_>) = remaining.into_iter().partition(|z| (z - seed).norm() <= radius);
        remaining = far;
        let mut members = near;
        members.push(seed);
        let m = members.len();
        let mean = members.iter().sum::<Complex64>() / m as f64;
        match confirm_multiple(den, mean, m) {
            Some(root) => sites.push(site(root, m as u32)),
            None => {
                for z in members {
                    sites.push(site(newton(den, z, 0), 1));
                }
            }
        }
    }
    if let Some(bad) = sites.iter().find(|s| s.multiplicity > MAX_MULTIPLICITY) {
        return Err(ResidueError::MultiplicityTooHigh {
            multiplicity: bad.multiplicity,
            max: MAX_MULTIPLICITY,
        });
    }
    Ok(sites)
}

/// Polishes a candidate root of multiplicity `m` and checks that the lower
/// derivatives vanish there.
fn confirm_multiple(den: &[f64], guess: Complex64, m: usize) -> Option<Complex64> {
    let root = newton(den, guess, m - 1);
    if m == 1 {
        return Some(root);
    }
    let mut p = den.to_vec();
    let scale = 1.0 + root.norm();
    for _ in 0..m - 1 {
        let size: f64 = p
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs() * scale.powi(k as i32))
            .sum();
        if eval_complex(&p, root).norm() > 1e-8 * size {
            return None;
        }
        p = derivative(&p);
    }
    Some(root)
}

fn newton(den: &[f64], start: Complex64, order: usize) -> Complex64 {
    let mut p = den.to_vec();
    for _ in 0..order {
        p = derivative(&p);
    }
    let dp = derivative(&p);
    let mut z = start;
    for _ in 0..50 {
        let d = eval_complex(&dp, z);
        if d.norm() == 0.0 {
            break;
        }
        let step = eval_complex(&p, z) / d;
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    if (z - start).norm() > 1e-2 * (1.0 + start.norm()) {
        start
    } else {
        z
    }
}
