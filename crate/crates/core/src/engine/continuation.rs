//! Closed-form negative-dimension integrals and their continuation.
//!
//! Results carry the pole location as the free symbol of [`ExactValue`]
//! (written `a` for the single-propagator family and `σ` for the `(r, s)`
//! family). The incoming branch is the `σ → −σ` image of the outgoing one.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{BranchPrescription, EngineError};
use crate::algebra::{
    pochhammer, pochhammer_continued, pochhammer_reflect, ExactValue, HalfInteger, Pochhammer,
};

/// Applies a branch to an outgoing closed form.
///
/// A single term is either even or odd under `σ → −σ`, so the principal
/// value is the outgoing value or zero.
pub fn apply_branch(outgoing: ExactValue, branch: BranchPrescription) -> ExactValue {
    match branch {
        BranchPrescription::Outgoing => outgoing,
        BranchPrescription::Incoming => outgoing.mirror_symbol(),
        BranchPrescription::PrincipalValue => {
            let incoming = outgoing.mirror_symbol();
            if incoming == outgoing {
                outgoing
            } else {
                ExactValue::zero()
            }
        }
    }
}

/// `I(k) = (−1)^{−k} π^{1/2} a^{2k+1} / (1+k)_{1/2}`, for `k ≥ 0`.
pub fn ndim_power_integral(k: i64) -> Result<ExactValue, EngineError> {
    if k < 0 {
        return Err(EngineError::ContinuationRequired(k));
    }
    let poch = pochhammer(HalfInteger::from_int(1 + k), HalfInteger::HALF)
        .finite()
        .expect("(1+k)_{1/2} is finite for k ≥ 0");
    let prefactor = ExactValue::minus_one_pow(HalfInteger::from_int(-k))
        * ExactValue::sqrt_pi()
        * ExactValue::symbol(2 * k as i32 + 1);
    Ok(prefactor.checked_div(&poch).expect("nonzero Pochhammer"))
}

/// `I^{AC}(k) = (−1)^{−k−1/2} π^{1/2} a^{2k+1} (−k)_{−1/2}`, for `k ≤ −1`.
///
/// The factor `1/(1+k)_{1/2}` is rewritten with the reflection rule before
/// `k` is taken negative.
pub fn ndim_ac(k: i64, branch: BranchPrescription) -> Result<ExactValue, EngineError> {
    if k >= 0 {
        return Err(EngineError::NotContinued(k));
    }
    let reflected = pochhammer_reflect(HalfInteger::from_int(-k), HalfInteger::HALF)?;
    let continued = reflected.inverse().expect("(−k)_{−1/2} is finite for k ≤ −1");
    let outgoing = ExactValue::minus_one_pow(HalfInteger::from_int(-k))
        * ExactValue::sqrt_pi()
        * ExactValue::symbol(2 * k as i32 + 1)
        * continued;
    Ok(apply_branch(outgoing, branch))
}

/// `(−1)^{−s} π^{1/2} σ^{r+2s+1} (1+r/2)_{r/2} / 4^{r/2}`, shared by both regimes.
fn rs_prefactor(r: u32, s: HalfInteger) -> ExactValue {
    let half_r = HalfInteger::from_twice(r as i64);
    let x_factor = pochhammer(HalfInteger::ONE + half_r, half_r)
        .finite()
        .expect("(1+r/2)_{r/2} is finite");
    let sym_power = r as i64 + s.twice_value() + 1;
    let two_pow_r = ExactValue::rational(BigRational::new(1.into(), BigInt::from(2).pow(r)));
    ExactValue::minus_one_pow(-s)
        * ExactValue::sqrt_pi()
        * ExactValue::symbol(sym_power as i32)
        * two_pow_r
        * x_factor
}

/// `∫ x^r (x²−σ²)^s` in the negative-dimension measure, before continuation.
///
/// Odd `r` vanishes: the double-series match only pairs `r = 2l`.
pub fn ndim_rs(r: u32, s: HalfInteger) -> Result<ExactValue, EngineError> {
    let beta = HalfInteger::from_twice(r as i64 + 1);
    let s_factor = match pochhammer(HalfInteger::ONE + s, beta) {
        Pochhammer::Finite(v) => v,
        Pochhammer::Zero => return Err(EngineError::PoleInCoefficient { r, s }),
        Pochhammer::Pole => return Ok(ExactValue::zero()),
    };
    if r % 2 == 1 {
        return Ok(ExactValue::zero());
    }
    Ok(rs_prefactor(r, s)
        .checked_div(&s_factor)
        .expect("finite Pochhammer values are nonzero"))
}

/// The `(r, s)` integral continued to `s ≤ −1`:
/// `(−1)^{−s−r/2−1/2} π^{1/2} σ^{r+2s+1} 4^{−r/2} (1+r/2)_{r/2} (−s)_{−r/2−1/2}`.
///
/// For odd `r` the last Pochhammer hits a gamma pole exactly when the
/// integral diverges (`r+2s+1 ≥ 0`); that pole is continued with
/// [`crate::algebra::gamma_continued`]. When it does not, the odd
/// integrand converges and vanishes.
pub fn ndim_rs_ac(r: u32, s: i64, branch: BranchPrescription) -> Result<ExactValue, EngineError> {
    if s >= 0 {
        return Err(EngineError::NotContinued(s));
    }
    let alpha = HalfInteger::from_int(-s);
    let beta = HalfInteger::from_twice(r as i64 + 1);
    let s_factor = match pochhammer(alpha, -beta) {
        Pochhammer::Finite(_) if r % 2 == 1 => return Ok(ExactValue::zero()),
        Pochhammer::Finite(_) => pochhammer_reflect(alpha, beta)?
            .inverse()
            .expect("finite reflected value"),
        Pochhammer::Pole => ExactValue::minus_one_pow(-beta) * pochhammer_continued(alpha, -beta),
        Pochhammer::Zero => unreachable!("Γ(−s) is finite for s ≤ −1"),
    };
    let outgoing = rs_prefactor(r, HalfInteger::from_int(s)) * s_factor;
    Ok(apply_branch(outgoing, branch))
}

/// `I^m(σ) = ∫ x^m/(x²−σ²)`, which reduces to `iπσ^{m−1}` on the outgoing branch.
pub fn moment_integral(m: u32, branch: BranchPrescription) -> Result<ExactValue, EngineError> {
    let continued = ndim_rs_ac(m, -1, branch)?;
    let closed = apply_branch(
        ExactValue::i() * ExactValue::pi() * ExactValue::symbol(m as i32 - 1),
        branch,
    );
    if continued != closed {
        return Err(EngineError::ClosedFormMismatch {
            continued: continued.to_string(),
            closed: closed.to_string(),
        });
    }
    Ok(continued)
}
