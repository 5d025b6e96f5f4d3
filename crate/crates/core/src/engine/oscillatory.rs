//! Resummation of the continued moments into oscillatory closed forms.
//!
//! `E(a, σ) = ∫ e^{iax}/(x²−σ²) = Σ_m (ia)^m/m! · I^m(σ)`, and with
//! `I^m = iπσ^{m−1}` the series sums to `iπ e^{iaσ}/σ`. The `x e^{iax}`
//! integral follows from `x e^{iax} = −i ∂_a e^{iax}`.

use num_complex::Complex64;

use super::{moment_integral, ndim_rs_ac, BranchPrescription, EngineError};
use crate::algebra::{factorial, ExactValue};

/// Closed form or a fixed number of series terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesMode {
    Closed,
    /// Sum of the terms `m = 0, …, n−1`.
    Terms(usize),
}

/// `amplitude · e^{i a rate}` as a function of `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub amplitude: Complex64,
    pub rate: f64,
}

/// A finite sum of [`ExpTerm`]s.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpSum(pub Vec<ExpTerm>);

impl ExpSum {
    pub fn eval(&self, a: f64) -> Complex64 {
        self.0
            .iter()
            .map(|t| t.amplitude * Complex64::new(0.0, a * t.rate).exp())
            .sum()
    }

    /// `∂/∂a`, term by term.
    pub fn derivative(&self) -> ExpSum {
        ExpSum(
            self.0
                .iter()
                .map(|t| ExpTerm {
                    amplitude: t.amplitude * Complex64::new(0.0, t.rate),
                    rate: t.rate,
                })
                .collect(),
        )
    }

    pub fn scale(&self, k: Complex64) -> ExpSum {
        ExpSum(
            self.0
                .iter()
                .map(|t| ExpTerm {
                    amplitude: t.amplitude * k,
                    rate: t.rate,
                })
                .collect(),
        )
    }
}

fn check_args(a: f64, sigma: f64) -> Result<(), EngineError> {
    if !(a.is_finite() && a > 0.0) {
        return Err(EngineError::InvalidFrequency(a));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(EngineError::InvalidSigma(sigma));
    }
    Ok(())
}

/// `E(a, σ)` on the given branch as an exponential sum in `a`.
///
/// Outgoing is `iπ e^{iaσ}/σ`; incoming is its `σ → −σ` image; the principal
/// value carries both halves.
pub fn exponential_closed_form(sigma: f64, branch: BranchPrescription) -> ExpSum {
    let outgoing = ExpTerm {
        amplitude: Complex64::new(0.0, std::f64::consts::PI / sigma),
        rate: sigma,
    };
    let incoming = ExpTerm {
        amplitude: -outgoing.amplitude,
        rate: -sigma,
    };
    match branch {
        BranchPrescription::Outgoing => ExpSum(vec![outgoing]),
        BranchPrescription::Incoming => ExpSum(vec![incoming]),
        BranchPrescription::PrincipalValue => ExpSum(vec![outgoing, incoming]).scale(0.5.into()),
    }
}

/// Partial sums `S_0, …, S_N` of `Σ_m (ia)^m/m! · I^m(σ)`, where `S_N`
/// includes the term `m = N`.
pub fn exponential_partial_sums(
    a: f64,
    sigma: f64,
    branch: BranchPrescription,
    max_index: usize,
) -> Result<Vec<Complex64>, EngineError> {
    check_args(a, sigma)?;
    moment_series(0, -1, a, sigma, branch, max_index + 1)
}

/// Partial sums of `Σ_m (ia)^m/m! · I(r+m, s)` over `m < n_terms`.
///
/// Each term is formed exactly (`i^m/m!` times the continued moment) and only
/// then evaluated, so phases stay exact and principal values stay real or
/// imaginary. Summation is in ascending `m`.
fn moment_series(
    r: u32,
    s: i64,
    a: f64,
    sigma: f64,
    branch: BranchPrescription,
    n_terms: usize,
) -> Result<Vec<Complex64>, EngineError> {
    let mut sums = Vec::with_capacity(n_terms);
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..n_terms {
        let moment = if s == -1 {
            moment_integral(r + m as u32, branch)?
        } else {
            ndim_rs_ac(r + m as u32, s, branch)?
        };
        let weight = ExactValue::new(factorial(m as u64).recip(), m as i64, 0, 0);
        acc += (weight * moment).to_complex(sigma) * a.powi(m as i32);
        sums.push(acc);
    }
    Ok(sums)
}

/// Number of series terms needed for double-precision convergence at `aσ = x`.
pub(crate) fn default_series_terms(x: f64) -> usize {
    ((2.0 * x.abs() + 30.0).ceil() as usize).min(170)
}

/// `∫ e^{iax}/(x²−σ²)` for `a > 0`.
pub fn exponential_integral(
    a: f64,
    sigma: f64,
    branch: BranchPrescription,
    mode: SeriesMode,
) -> Result<Complex64, EngineError> {
    check_args(a, sigma)?;
    match mode {
        SeriesMode::Closed => {
            let closed = exponential_closed_form(sigma, branch);
            let value = closed.eval(a);
            Ok(match branch {
                // the two halves are exact conjugates; pin the imaginary part
                BranchPrescription::PrincipalValue => Complex64::new(value.re, 0.0),
                _ => value,
            })
        }
        SeriesMode::Terms(0) => Ok(Complex64::new(0.0, 0.0)),
        SeriesMode::Terms(n) => Ok(*exponential_partial_sums(a, sigma, branch, n - 1)?
            .last()
            .expect("n ≥ 1")),
    }
}

/// `∫ x e^{iax}/(x²−σ²) = −i ∂_a E(a, σ)`.
///
/// The derivative is taken on the closed form and, independently, term by
/// term on the moment series `Σ_m (ia)^m/m! · I^{m+1}`; the two must agree.
pub fn x_exponential_integral(a: f64, sigma: f64, branch: BranchPrescription) -> Result<Complex64, EngineError> {
    check_args(a, sigma)?;
    let minus_i = Complex64::new(0.0, -1.0);
    let closed = exponential_closed_form(sigma, branch)
        .derivative()
        .scale(minus_i)
        .eval(a);

    let x = a * sigma;
    // the series loses about e^{aσ}·ε to cancellation
    if x <= 30.0 {
        let n = default_series_terms(x);
        let series = *moment_series(1, -1, a, sigma, branch, n)?.last().expect("n ≥ 1");
        let scale = std::f64::consts::PI * x.exp();
        if (series - closed).norm() > 1e-13 * scale.max(1.0) * n as f64 {
            return Err(EngineError::RouteDisagreement { closed, series });
        }
    }
    Ok(match branch {
        BranchPrescription::PrincipalValue => Complex64::new(0.0, closed.im),
        _ => closed,
    })
}

/// The cos and sin parts of `∫ x e^{iax}/(x²−σ²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigParts {
    pub cos_part: Complex64,
    pub sin_part: Complex64,
}

/// `∫ x cos(ax)/(x²−σ²)` and `∫ x sin(ax)/(x²−σ²)` on a branch.
///
/// The cosine integrand is odd and vanishes for every branch. The sine part
/// is `E_x/i`, read with the shifted denominator, so off the principal value
/// it is complex: `π e^{±iaσ}`.
pub fn trig_integrals(a: f64, sigma: f64, branch: BranchPrescription) -> Result<TrigParts, EngineError> {
    let ex = x_exponential_integral(a, sigma, branch)?;
    let sin_part = ex / Complex64::new(0.0, 1.0);
    let sin_part = match branch {
        BranchPrescription::PrincipalValue => Complex64::new(sin_part.re, 0.0),
        _ => sin_part,
    };
    Ok(TrigParts {
        cos_part: Complex64::new(0.0, 0.0),
        sin_part,
    })
}

/// `S(σ) = ∫ x sin x/(x²−σ²)`: `π e^{iσ}`, `π e^{−iσ}` or `π cos σ`.
pub fn scattering_integral(sigma: f64, branch: BranchPrescription) -> Result<Complex64, EngineError> {
    Ok(trig_integrals(1.0, sigma, branch)?.sin_part)
}

/// `Σ_{m<n} (ia)^m/m! · I(r+m, s)` for any `r ≥ 0`, `s ≤ −1`.
pub fn oscillatory_series(
    r: u32,
    s: i64,
    a: f64,
    sigma: f64,
    branch: BranchPrescription,
    n_terms: usize,
) -> Result<Complex64, EngineError> {
    check_args(a, sigma)?;
    if n_terms == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(*moment_series(r, s, a, sigma, branch, n_terms)?
        .last()
        .expect("n ≥ 1"))
}

pub(crate) fn closed_form_label(r: u32, branch: BranchPrescription) -> &'static str {
    match (r, branch) {
        (0, BranchPrescription::Outgoing) => "iπ·e^{iaσ}/σ",
        (0, BranchPrescription::Incoming) => "-iπ·e^{-iaσ}/σ",
        (0, BranchPrescription::PrincipalValue) => "-π·sin(aσ)/σ",
        (_, BranchPrescription::Outgoing) => "iπ·e^{iaσ}",
        (_, BranchPrescription::Incoming) => "iπ·e^{-iaσ}",
        (_, BranchPrescription::PrincipalValue) => "iπ·cos(aσ)",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use BranchPrescription::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn exponential_closed_examples() {
        let v = exponential_integral(1.0, 2.0, Outgoing, SeriesMode::Closed).unwrap();
        let expect = Complex64::new(-PI * 2f64.sin() / 2.0, PI * 2f64.cos() / 2.0);
        assert!(close(v, expect, 1e-14), "{v}");
        let pv = exponential_integral(1.0, 1.0, PrincipalValue, SeriesMode::Closed).unwrap();
        assert_eq!(pv.im, 0.0);
        assert!((pv.re + PI * 1f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn exponential_series_converges() {
        for (a, sigma) in [(1.0, 1.0), (0.5, 2.0), (2.5, 2.0), (1.0, 5.0)] {
            for branch in BranchPrescription::ALL {
                let closed = exponential_integral(a, sigma, branch, SeriesMode::Closed).unwrap();
                let series = exponential_integral(a, sigma, branch, SeriesMode::Terms(40)).unwrap();
                assert!(close(series, closed, 1e-12), "{a} {sigma} {branch}: {series} vs {closed}");
            }
        }
    }

    #[test]
    fn rejects_non_positive_frequency() {
        assert!(matches!(
            exponential_integral(0.0, 1.0, Outgoing, SeriesMode::Closed),
            Err(EngineError::InvalidFrequency(_))
        ));
        assert!(x_exponential_integral(-1.0, 1.0, Outgoing).is_err());
        assert!(x_exponential_integral(1.0, 0.0, Outgoing).is_err());
    }

    #[test]
    fn x_exponential_examples() {
        let v = x_exponential_integral(1.0, 1.0, Outgoing).unwrap();
        assert!(close(v, Complex64::new(-PI * 1f64.sin(), PI * 1f64.cos()), 1e-14), "{v}");
        let v = x_exponential_integral(2.0, 3.0, Outgoing).unwrap();
        assert!(close(v, Complex64::new(0.0, PI) * Complex64::new(0.0, 6.0).exp(), 1e-13));
        let inc = x_exponential_integral(1.0, 1.0, Incoming).unwrap();
        assert!(close(inc, Complex64::new(0.0, PI) * Complex64::new(0.0, -1.0).exp(), 1e-13));
    }

    #[test]
    fn trig_parts() {
        let t = trig_integrals(1.0, 1.0, Outgoing).unwrap();
        assert_eq!(t.cos_part, Complex64::new(0.0, 0.0));
        assert!(close(t.sin_part, Complex64::from_polar(PI, 1.0), 1e-14));
        let t = trig_integrals(1.0, 1.0, PrincipalValue).unwrap();
        assert_eq!(t.sin_part.im, 0.0);
        assert!((t.sin_part.re - PI * 1f64.cos()).abs() < 1e-14);
    }

    #[test]
    fn scattering_examples() {
        let s = scattering_integral(1.0, Outgoing).unwrap();
        assert!(close(s, Complex64::from_polar(PI, 1.0), 1e-14));
        let pv = scattering_integral(PI / 3.0, PrincipalValue).unwrap();
        assert!((pv.re - PI / 2.0).abs() < 1e-13);
        let out = scattering_integral(1.0, Outgoing).unwrap();
        let inc = scattering_integral(1.0, Incoming).unwrap();
        assert_eq!((out + inc) / 2.0, scattering_integral(1.0, PrincipalValue).unwrap());
    }

    #[test]
    fn general_series_reduces_to_closed_forms() {
        for branch in BranchPrescription::ALL {
            let closed = exponential_integral(1.5, 0.7, branch, SeriesMode::Closed).unwrap();
            let series = oscillatory_series(0, -1, 1.5, 0.7, branch, 60).unwrap();
            assert!(close(series, closed, 1e-13));
            let closed = x_exponential_integral(1.5, 0.7, branch).unwrap();
            let series = oscillatory_series(1, -1, 1.5, 0.7, branch, 60).unwrap();
            assert!(close(series, closed, 1e-13));
        }
    }
}
