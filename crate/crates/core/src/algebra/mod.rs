//! Exact arithmetic for the values NDIM produces.
//!
//! Every closed form the engine builds is a single term
//! `q · i^p · π^{h/2} · σ^n`. Gamma functions are only ever needed at
//! half-integer arguments, where they reduce to rationals times a power
//! of `π^{1/2}`, and poles are ordinary values rather than errors so that
//! cancelling singularities can be resolved.

mod exact;
mod gamma;
mod half_integer;

pub use exact::ExactValue;
pub use gamma::{
    duplication_rhs, factorial, gamma_continued, gamma_duplication_check, gamma_half_integer,
    pochhammer, pochhammer_continued, pochhammer_reflect, GammaValue, Pochhammer,
};
pub use half_integer::{HalfInteger, ParseHalfIntegerError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("({alpha})_{{-({beta})}} vanishes, so the reflected Pochhammer has no inverse")]
    NonInvertible { alpha: HalfInteger, beta: HalfInteger },
    #[error("duplication relation is a continuation statement at odd m = {0}")]
    UnverifiableAtOddM(u32),
}
