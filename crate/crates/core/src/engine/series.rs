//! Term-by-term matching of the two expansions of a Gaussian generating
//! functional.
//!
//! Single propagator: `∫ e^{−λ(x²−a²)}` expands both as
//! `π^{1/2} Σ_n a^{2n} λ^{n−1/2}/n!` and as `Σ_k (−λ)^k/k! · I(k)`.
//! With a linear term, `∫ e^{αx − β(x²−σ²)}` expands as
//! `π^{1/2} Σ_{k,l} σ^{2k} β^{k−l−1/2} α^{2l}/(4^l k! l!)` and as
//! `Σ_{r,s} (−1)^s α^r β^s/(r! s!) · I(r, s)`.
//! Matching the monomials fixes the index relations; matching the
//! coefficients is what the NDIM closed forms must satisfy.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{ndim_power_integral, ndim_rs};
use crate::algebra::{factorial, gamma_half_integer, ExactValue, HalfInteger};

pub const DEFAULT_K_MAX: u32 = 25;

/// `target = Σ coeff·var + constant`, with coefficients in ½ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRelation {
    pub target: String,
    pub terms: Vec<(String, HalfInteger)>,
    pub constant: HalfInteger,
}

impl LinearRelation {
    fn new(target: &str, terms: &[(&str, HalfInteger)], constant: HalfInteger) -> Self {
        Self {
            target: target.to_string(),
            terms: terms.iter().map(|(n, c)| (n.to_string(), *c)).collect(),
            constant,
        }
    }

    /// Evaluates the right-hand side; `None` if a variable is unbound or the
    /// result leaves ½ℤ.
    pub fn evaluate(&self, bindings: &[(String, HalfInteger)]) -> Option<HalfInteger> {
        let mut twice_times_two = 2 * self.constant.twice_value();
        for (name, coeff) in &self.terms {
            let value = bindings.iter().find(|(n, _)| n == name)?.1;
            twice_times_two += coeff.twice_value() * value.twice_value();
        }
        (twice_times_two % 2 == 0).then(|| HalfInteger::from_twice(twice_times_two / 2))
    }
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.target)?;
        let mut first = true;
        for (name, coeff) in &self.terms {
            let sep = if first { " " } else { " + " };
            if *coeff == HalfInteger::ONE {
                write!(f, "{sep}{name}")?;
            } else {
                write!(f, "{sep}({coeff})·{name}")?;
            }
            first = false;
        }
        if self.constant != HalfInteger::ZERO || first {
            write!(f, " + {}", self.constant)?;
        }
        Ok(())
    }
}

/// One coefficient comparison at fixed indices.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub indices: Vec<(String, HalfInteger)>,
    pub lhs: ExactValue,
    pub rhs: ExactValue,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Index relations between two series expansions, plus the exact
/// coefficient checks performed under them.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMatch {
    /// Indices of the polynomial-integral (NDIM) expansion with their lower bounds.
    pub lhs_indices: Vec<(String, HalfInteger)>,
    /// Indices of the closed Gaussian expansion with their lower bounds.
    pub rhs_indices: Vec<(String, HalfInteger)>,
    pub relations: Vec<LinearRelation>,
    pub inverse_relations: Vec<LinearRelation>,
    pub checks: Vec<IdentityCheck>,
}

impl SeriesMatch {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(IdentityCheck::holds)
    }

    /// Applies the relations to `bindings`.
    pub fn apply(&self, bindings: &[(&str, HalfInteger)]) -> Option<Vec<(String, HalfInteger)>> {
        solve(&self.relations, bindings)
    }

    pub fn invert(&self, bindings: &[(&str, HalfInteger)]) -> Option<Vec<(String, HalfInteger)>> {
        solve(&self.inverse_relations, bindings)
    }
}

fn solve(
    relations: &[LinearRelation],
    bindings: &[(&str, HalfInteger)],
) -> Option<Vec<(String, HalfInteger)>> {
    let owned: Vec<(String, HalfInteger)> = bindings.iter().map(|(n, v)| (n.to_string(), *v)).collect();
    relations
        .iter()
        .map(|rel| rel.evaluate(&owned).map(|v| (rel.target.clone(), v)))
        .collect()
}

fn h(twice: i64) -> HalfInteger {
    HalfInteger::from_twice(twice)
}

fn inv_factorial(n: u64) -> ExactValue {
    ExactValue::rational(factorial(n).recip())
}

/// Matches `G_a` through [`DEFAULT_K_MAX`].
pub fn match_single_series() -> SeriesMatch {
    match_single_series_up_to(DEFAULT_K_MAX)
}

/// `n = k + 1/2`, checking `(−1)^k I(k)/k! = π^{1/2} a^{2n}/n!` for `k ≤ k_max`.
pub fn match_single_series_up_to(k_max: u32) -> SeriesMatch {
    let relation = LinearRelation::new("n", &[("k", HalfInteger::ONE)], HalfInteger::HALF);
    let inverse = LinearRelation::new("k", &[("n", HalfInteger::ONE)], HalfInteger::MINUS_HALF);
    let checks = (0..=k_max as i64)
        .map(|k| {
            let n = HalfInteger::from_int(k) + HalfInteger::HALF;
            let lhs = ExactValue::minus_one_pow(HalfInteger::from_int(k))
                * ndim_power_integral(k).expect("k ≥ 0")
                * inv_factorial(k as u64);
            let n_fact = gamma_half_integer(n + HalfInteger::ONE).finite().expect("n + 1 > 0");
            let rhs = (ExactValue::sqrt_pi() * ExactValue::symbol(n.twice_value() as i32))
                .checked_div(&n_fact)
                .expect("nonzero");
            IdentityCheck {
                indices: vec![("k".into(), HalfInteger::from_int(k)), ("n".into(), n)],
                lhs,
                rhs,
            }
        })
        .collect();
    SeriesMatch {
        lhs_indices: vec![("k".into(), HalfInteger::ZERO)],
        rhs_indices: vec![("n".into(), HalfInteger::ZERO)],
        relations: vec![relation],
        inverse_relations: vec![inverse],
        checks,
    }
}

/// `r = 2l`, `s = k − l − 1/2`, checked for `r ≤ 10` and `s + r/2 + 1/2 ≤ 10`.
///
/// Odd `r` has no partner on the Gaussian side, so both coefficients are
/// zero there (checked for the integer `s ≥ 0` the expansion contains).
pub fn match_double_series() -> SeriesMatch {
    const R_MAX: i64 = 10;
    const K_MAX: i64 = 10;
    let relations = vec![
        LinearRelation::new("r", &[("l", HalfInteger::from_int(2))], HalfInteger::ZERO),
        LinearRelation::new(
            "s",
            &[("k", HalfInteger::ONE), ("l", HalfInteger::from_int(-1))],
            HalfInteger::MINUS_HALF,
        ),
    ];
    let inverse_relations = vec![
        LinearRelation::new(
            "k",
            &[("s", HalfInteger::ONE), ("r", HalfInteger::HALF)],
            HalfInteger::HALF,
        ),
        LinearRelation::new("l", &[("r", HalfInteger::HALF)], HalfInteger::ZERO),
    ];

    let mut checks = Vec::new();
    for r in 0..=R_MAX {
        for k in 0..=K_MAX {
            // s + r/2 + 1/2 = k
            let s = HalfInteger::from_int(k) - h(r + 1);
            if r % 2 == 1 && s < HalfInteger::ZERO {
                continue;
            }
            let s_fact = gamma_half_integer(s + HalfInteger::ONE)
                .finite()
                .expect("s + 1 is positive or a half-integer");
            let integral = ndim_rs(r as u32, s).expect("finite coefficient on the matched lattice");
            let lhs = (ExactValue::minus_one_pow(s) * integral * inv_factorial(r as u64))
                .checked_div(&s_fact)
                .expect("nonzero");
            let rhs = if r % 2 == 0 {
                let l = r / 2;
                let four_pow_l = BigRational::from_integer(BigInt::from(4).pow(l as u32));
                ExactValue::sqrt_pi()
                    * ExactValue::symbol(2 * k as i32)
                    * ExactValue::rational(four_pow_l.recip())
                    * inv_factorial(k as u64)
                    * inv_factorial(l as u64)
            } else {
                ExactValue::zero()
            };
            checks.push(IdentityCheck {
                indices: vec![("r".into(), HalfInteger::from_int(r)), ("s".into(), s)],
                lhs,
                rhs,
            });
        }
    }
    SeriesMatch {
        lhs_indices: vec![("r".into(), HalfInteger::ZERO), ("s".into(), HalfInteger::ZERO)],
        rhs_indices: vec![("k".into(), HalfInteger::ZERO), ("l".into(), HalfInteger::ZERO)],
        relations,
        inverse_relations,
        checks,
    }
}
