//! The NDIM pipeline.
//!
//! Gaussian generating functionals are expanded two ways and matched term
//! by term ([`series`]); the matched coefficients are the negative-dimension
//! integrals, which are then continued to negative propagator powers
//! ([`continuation`]) and resummed into the oscillatory closed forms used
//! for scattering ([`oscillatory`]).

pub mod continuation;
pub mod oscillatory;
pub mod series;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, ExactValue, HalfInteger};
use crate::residue::RationalOscIntegrand;

pub use continuation::{
    apply_branch, moment_integral, ndim_ac, ndim_power_integral, ndim_rs, ndim_rs_ac,
};
pub use oscillatory::{
    exponential_integral, exponential_partial_sums, oscillatory_series, scattering_integral,
    trig_integrals, x_exponential_integral, ExpSum, ExpTerm, SeriesMode, TrigParts,
};
pub use series::{
    match_double_series, match_single_series, match_single_series_up_to, IdentityCheck,
    LinearRelation, SeriesMatch, DEFAULT_K_MAX,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error("k = {0} is in the continued regime; use ndim_ac")]
    ContinuationRequired(i64),
    #[error("k = {0} is not in the continued regime; use ndim_power_integral")]
    NotContinued(i64),
    #[error("(1+s)_(r/2+1/2) vanishes at r = {r}, s = {s}; the value is defined only by continuation")]
    PoleInCoefficient { r: u32, s: HalfInteger },
    #[error("oscillation frequency must be positive and finite, got {0}")]
    InvalidFrequency(f64),
    #[error("pole location sigma must be positive and finite, got {0}")]
    InvalidSigma(f64),
    #[error("closed form {closed} and series {series} disagree")]
    RouteDisagreement { closed: Complex64, series: Complex64 },
    #[error("continued value {continued} does not reduce to the closed form {closed}")]
    ClosedFormMismatch { continued: String, closed: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which value is assigned to an integral with poles on the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchPrescription {
    /// Poles shifted to `±(σ + iε)`: the outgoing wave.
    Outgoing,
    /// Poles shifted to `±(σ − iε)`: the incoming wave.
    Incoming,
    /// Mean of the two shifts.
    #[serde(rename = "pv")]
    PrincipalValue,
}

impl BranchPrescription {
    pub const ALL: [BranchPrescription; 3] = [
        BranchPrescription::Outgoing,
        BranchPrescription::Incoming,
        BranchPrescription::PrincipalValue,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BranchPrescription::Outgoing => "outgoing",
            BranchPrescription::Incoming => "incoming",
            BranchPrescription::PrincipalValue => "pv",
        }
    }
}

impl fmt::Display for BranchPrescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for BranchPrescription {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "outgoing" | "out" | "+" => Ok(BranchPrescription::Outgoing),
            "incoming" | "in" | "-" => Ok(BranchPrescription::Incoming),
            "pv" | "principal" | "principal-value" => Ok(BranchPrescription::PrincipalValue),
            other => Err(format!("unknown branch {other:?} (expected outgoing, incoming or pv)")),
        }
    }
}

/// `x^r (x²−σ²)^s e^{iax}` over the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Integrand {
    pub x_power: u32,
    pub prop_power: i32,
    pub osc_freq: f64,
    pub sigma: f64,
}

impl Integrand {
    pub fn new(x_power: u32, prop_power: i32, osc_freq: f64, sigma: f64) -> Result<Self, EngineError> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(EngineError::InvalidSigma(sigma));
        }
        if !(osc_freq.is_finite() && osc_freq >= 0.0) {
            return Err(EngineError::InvalidFrequency(osc_freq));
        }
        Ok(Self {
            x_power,
            prop_power,
            osc_freq,
            sigma,
        })
    }

    /// `∫ x sin x/(x²−σ²)`, carried as `∫ x e^{ix}/(x²−σ²)`.
    pub fn scattering(sigma: f64) -> Result<Self, EngineError> {
        Self::new(1, -1, 1.0, sigma)
    }

    pub fn is_oscillatory(&self) -> bool {
        self.osc_freq > 0.0
    }

    pub fn describe(&self) -> String {
        let mut out = match self.x_power {
            0 => String::new(),
            1 => "x·".to_string(),
            r => format!("x^{r}·"),
        };
        out.push_str(&format!("(x²−{}²)^{}", self.sigma, self.prop_power));
        if self.is_oscillatory() {
            out.push_str(&format!("·e^{{i·{}·x}}", self.osc_freq));
        }
        out
    }

    /// The same integrand as a ratio of real polynomials.
    pub fn to_rational(&self) -> RationalOscIntegrand {
        let sigma_sq = self.sigma * self.sigma;
        let quad = [-sigma_sq, 0.0, 1.0];
        let mut x_pow = vec![0.0; self.x_power as usize + 1];
        x_pow[self.x_power as usize] = 1.0;
        let power = self.prop_power.unsigned_abs() as usize;
        let mut prop = vec![1.0];
        for _ in 0..power {
            prop = crate::residue::poly_mul_real(&prop, &quad);
        }
        let (numerator, denominator) = if self.prop_power < 0 {
            (x_pow, prop)
        } else {
            (crate::residue::poly_mul_real(&x_pow, &prop), vec![1.0])
        };
        RationalOscIntegrand::new(numerator, denominator, self.osc_freq)
            .expect("denominator is a nonzero polynomial")
    }
}

/// An NDIM evaluation: the number and the form it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct NdimValue {
    pub value: Complex64,
    pub exact_form: String,
}

/// Evaluates any [`Integrand`] through the NDIM route.
///
/// Non-oscillatory integrands return the exact continued value.
/// Oscillatory ones use the resummed closed forms for `e^{iax}/(x²−σ²)` and
/// `x e^{iax}/(x²−σ²)`, and otherwise the moment series
/// `Σ (ia)^m/m! · I(r+m, s)`, with `terms` overriding the default length.
pub fn ndim_evaluate(
    integrand: &Integrand,
    branch: BranchPrescription,
    terms: Option<usize>,
) -> Result<NdimValue, EngineError> {
    let Integrand {
        x_power: r,
        prop_power: s,
        osc_freq: a,
        sigma,
    } = *integrand;
    if !integrand.is_oscillatory() {
        let exact = if s < 0 {
            ndim_rs_ac(r, s as i64, branch)?
        } else {
            ndim_rs(r, HalfInteger::from_int(s as i64))?
        };
        return Ok(exact_value(exact, sigma));
    }
    let closed_available = s == -1 && r <= 1;
    match (closed_available, terms) {
        (true, None) => {
            let value = if r == 0 {
                exponential_integral(a, sigma, branch, SeriesMode::Closed)?
            } else {
                x_exponential_integral(a, sigma, branch)?
            };
            Ok(NdimValue {
                value,
                exact_form: oscillatory::closed_form_label(r, branch).to_string(),
            })
        }
        (_, terms) => {
            let n = terms.unwrap_or_else(|| oscillatory::default_series_terms(a * sigma));
            let value = oscillatory_series(r, s as i64, a, sigma, branch, n)?;
            Ok(NdimValue {
                value,
                exact_form: format!("Σ_(m<{n}) (ia)^m/m!·I(r+m,s)"),
            })
        }
    }
}

fn exact_value(exact: ExactValue, sigma: f64) -> NdimValue {
    NdimValue {
        value: exact.to_complex(sigma),
        exact_form: exact.to_string(),
    }
}
