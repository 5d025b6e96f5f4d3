#![allow(dead_code)]

use std::f64::consts::PI;

use ndim_scatter::residue::RationalOscIntegrand;
use ndim_scatter::Complex64;

/// Closed forms evaluated in floating point.
pub const CLOSED_FORM_REL: f64 = 1e-13;
/// NDIM against the residue oracle.
pub const ORACLE_REL: f64 = 1e-13;
pub const TRIANGLE_ABS: f64 = 1e-6;
pub const PV_ZERO_ABS: f64 = 1e-8;
pub const SHIFT_LIMIT_ABS: f64 = 1e-4;
pub const FIXED_EPS_ABS: f64 = 1e-5;
pub const SUM_RULE_ABS: f64 = 1e-14;
pub const RING_REL: f64 = 1e-14;

pub const SIGMAS: [f64; 3] = [0.5, 1.0, 2.0];
pub const FREQUENCIES: [f64; 2] = [1.0, 2.0];

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rel_close(x: Complex64, y: Complex64, tol: f64) -> bool {
    (x - y).norm() <= tol * x.norm().max(y.norm()).max(1.0)
}

/// `x^r e^{iax}/(x² − σ²)`.
pub fn pole_pair(r: usize, sigma: f64, a: f64) -> RationalOscIntegrand {
    let mut num = vec![0.0; r + 1];
    num[r] = 1.0;
    RationalOscIntegrand::new(num, vec![-sigma * sigma, 0.0, 1.0], a).unwrap()
}

/// `x^r e^{iax}/(x² − σ²)^2`.
pub fn double_pole_pair(r: usize, sigma: f64, a: f64) -> RationalOscIntegrand {
    let mut num = vec![0.0; r + 1];
    num[r] = 1.0;
    let q = [-sigma * sigma, 0.0, 1.0];
    RationalOscIntegrand::new(num, ndim_scatter::residue::poly_mul_real(&q, &q), a).unwrap()
}

/// `iπe^{iσ}` and friends, written out by hand.
pub fn scattering_reference(sigma: f64) -> (Complex64, Complex64, Complex64) {
    let out = PI * Complex64::new(0.0, sigma).exp();
    let inc = PI * Complex64::new(0.0, -sigma).exp();
    (out, inc, c(PI * sigma.cos(), 0.0))
}

pub fn report(name: &str, pass: bool, detail: &str) {
    println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
}
