//! Negative-dimensional integration of improper integrals with real poles.
//!
//! The [`engine`] assigns exact closed forms to integrals such as
//! `∫ dx/(x²−σ²)` and `∫ dx x sin x/(x²−σ²)` by matching Gaussian
//! generating functionals term by term and continuing the resulting
//! Pochhammer symbols to negative exponents. Two independent oracles check
//! every value: [`residue`] (ε-shifted poles and half-residue principal
//! values) and [`quadrature`] (excised principal-value quadrature and
//! ε-shift extrapolation). The [`cli`] module drives all three and emits
//! comparison reports.

pub mod algebra;
pub mod cli;
pub mod engine;
pub mod quadrature;
pub mod report;
pub mod residue;

pub use algebra::{ExactValue, HalfInteger};
pub use engine::{BranchPrescription, Integrand};
pub use num_complex::Complex64;
