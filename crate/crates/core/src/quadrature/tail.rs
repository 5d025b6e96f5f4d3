//! Contributions from `|x| > R`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{integrate_pair, Piece, QuadratureConfig};
use crate::residue::{poly, RationalOscIntegrand};

/// `∫_R^∞ f`.
pub(crate) fn right_tail(f: &RationalOscIntegrand, r: f64, cfg: &QuadratureConfig) -> Piece {
    if f.osc_freq() > 0.0 {
        oscillatory_tail(f, r, cfg)
    } else {
        inverted_tail(f, r, cfg)
    }
}

/// `∫_{−∞}^{−R} r(x)e^{iax} = conj ∫_R^∞ r(−x)e^{iax}` for real `r`.
pub(crate) fn left_tail(f: &RationalOscIntegrand, r: f64, cfg: &QuadratureConfig) -> Piece {
    let mut piece = right_tail(&f.reflected(), r, cfg);
    piece.value = piece.value.conj();
    piece
}

pub(crate) fn two_sided_tail(f: &RationalOscIntegrand, r: f64, cfg: &QuadratureConfig) -> Piece {
    left_tail(f, r, cfg).plus(right_tail(f, r, cfg))
}

/// `∫_0^{1/R} f(1/t)/t² dt`, written with reversed coefficient lists so the
/// integrand is a plain rational function of `t`.
fn inverted_tail(f: &RationalOscIntegrand, r: f64, cfg: &QuadratureConfig) -> Piece {
    let num = f.numerator();
    let den = f.denominator();
    let Some(dn) = poly::degree(num) else {
        return Piece::zero();
    };
    let dd = den.len() - 1;
    let num_rev: Vec<f64> = num[..=dn].iter().rev().copied().collect();
    let den_rev: Vec<f64> = den.iter().rev().copied().collect();
    let shift = dd as i32 - dn as i32 - 2;
    let g = |t: f64| {
        let v = t.powi(shift) * poly::eval_real(&num_rev, t) / poly::eval_real(&den_rev, t);
        (v, 0.0)
    };
    integrate_pair(&g, 0.0, 1.0 / r, cfg.segment_tolerance)
}

/// Half-period panels past `R`, summed into partial sums and then averaged
/// pairwise until one value remains.
fn oscillatory_tail(f: &RationalOscIntegrand, r: f64, cfg: &QuadratureConfig) -> Piece {
    let a = f.osc_freq();
    let step = PI / a;
    let g = |x: f64| f.eval_real(x);
    let mut partial = Vec::with_capacity(cfg.tail_periods);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut panel_error = 0.0;
    let mut segments = 0;
    let mut converged = true;
    for k in 0..cfg.tail_periods {
        let lo = r + k as f64 * step;
        let piece = integrate_pair(&g, lo, lo + step, cfg.segment_tolerance);
        acc += piece.value;
        panel_error += piece.error;
        segments += piece.segments;
        converged &= piece.converged;
        partial.push(acc);
    }
    // a lone partial sum is unaccelerated; its size bounds what is missing
    let mut last_change = match partial.as_slice() {
        [only] => only.norm(),
        _ => 0.0,
    };
    let mut level = partial;
    while level.len() > 1 {
        let next: Vec<Complex64> = level.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
        if next.len() == 1 {
            last_change = (level[1] - level[0]).norm() / 2.0;
        }
        level = next;
    }
    Piece {
        value: level.first().copied().unwrap_or_default(),
        error: panel_error + last_change,
        segments,
        converged,
    }
}
