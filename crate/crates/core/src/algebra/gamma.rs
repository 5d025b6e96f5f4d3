use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{AlgebraError, ExactValue, HalfInteger};

/// Γ at a half-integer argument: an exact value, or a simple pole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaValue {
    Finite(ExactValue),
    Pole { order: u32 },
}

impl GammaValue {
    pub fn finite(self) -> Option<ExactValue> {
        match self {
            GammaValue::Finite(v) => Some(v),
            GammaValue::Pole { .. } => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, GammaValue::Pole { .. })
    }
}

/// Value of a Pochhammer symbol `(α)_β = Γ(α+β)/Γ(α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pochhammer {
    Finite(ExactValue),
    /// Numerator at a pole, denominator finite.
    Pole,
    /// Denominator at a pole, numerator finite.
    Zero,
}

impl Pochhammer {
    pub fn finite(self) -> Option<ExactValue> {
        match self {
            Pochhammer::Finite(v) => Some(v),
            _ => None,
        }
    }
}

fn rational(q: BigRational) -> ExactValue {
    ExactValue::rational(q)
}

/// `n!` as an exact rational.
pub fn factorial(n: u64) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    BigRational::from_integer(acc)
}

/// Γ(h) for h ∈ ½ℤ.
///
/// Integers use `(n−1)!`; half-integers start from `Γ(1/2) = π^{1/2}` and
/// apply `Γ(x+1) = xΓ(x)` upward or downward.
pub fn gamma_half_integer(h: HalfInteger) -> GammaValue {
    if let Some(n) = h.as_integer() {
        if n <= 0 {
            return GammaValue::Pole { order: 1 };
        }
        return GammaValue::Finite(rational(factorial((n - 1) as u64)));
    }
    // Γ(1/2 + n) = Π_{k<n} (2k+1)/2, Γ(1/2 − n) = Π_{k<n} (−2)/(2k+1)
    let n = (h - HalfInteger::HALF).floor();
    let odd = (0..n.unsigned_abs()).fold(BigInt::one(), |acc, k| acc * (2 * k + 1));
    let two = BigInt::from(2).pow(n.unsigned_abs() as u32);
    let q = if n >= 0 {
        BigRational::new(odd, two)
    } else {
        let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        BigRational::new(sign * two, odd)
    };
    GammaValue::Finite(rational(q) * ExactValue::sqrt_pi())
}

/// Γ continued through its poles: `Γ(−q) := π·(−1)^{q+1/2}/q!`.
///
/// This is the value the reflection and duplication relations assign to
/// `Γ(1/2 − m/2)` for odd `m` under the principal branch of `(−1)^{1/2}`;
/// at every finite point it is plain Γ.
pub fn gamma_continued(h: HalfInteger) -> ExactValue {
    match gamma_half_integer(h) {
        GammaValue::Finite(v) => v,
        GammaValue::Pole { .. } => {
            let q = -h.as_integer().expect("poles sit at integers");
            let phase = ExactValue::minus_one_pow(HalfInteger::from_int(q) + HalfInteger::HALF);
            let inv_fact = rational(factorial(q as u64).recip());
            ExactValue::pi() * phase * inv_fact
        }
    }
}

/// `(α)_β = Γ(α+β)/Γ(α)` with poles and zeros kept as values.
///
/// When both gammas sit at poles (α and α+β non-positive integers) the
/// limit of the ratio is finite: `(−1)^β Γ(1−α)/Γ(1−α−β)`.
pub fn pochhammer(alpha: HalfInteger, beta: HalfInteger) -> Pochhammer {
    let num = gamma_half_integer(alpha + beta);
    let den = gamma_half_integer(alpha);
    match (num, den) {
        (GammaValue::Finite(n), GammaValue::Finite(d)) => {
            Pochhammer::Finite(n.checked_div(&d).expect("Γ never vanishes"))
        }
        (GammaValue::Finite(_), GammaValue::Pole { .. }) => Pochhammer::Zero,
        (GammaValue::Pole { .. }, GammaValue::Finite(_)) => Pochhammer::Pole,
        (GammaValue::Pole { .. }, GammaValue::Pole { .. }) => {
            let top = gamma_half_integer(HalfInteger::ONE - alpha)
                .finite()
                .expect("1 − α ≥ 1");
            let bottom = gamma_half_integer(HalfInteger::ONE - alpha - beta)
                .finite()
                .expect("1 − α − β ≥ 1");
            let ratio = top.checked_div(&bottom).expect("Γ never vanishes");
            Pochhammer::Finite(ExactValue::minus_one_pow(beta) * ratio)
        }
    }
}

/// `(α)_β` with a numerator pole replaced by [`gamma_continued`].
pub fn pochhammer_continued(alpha: HalfInteger, beta: HalfInteger) -> ExactValue {
    match pochhammer(alpha, beta) {
        Pochhammer::Finite(v) => v,
        Pochhammer::Zero => ExactValue::zero(),
        Pochhammer::Pole => {
            let den = gamma_half_integer(alpha).finite().expect("finite denominator");
            gamma_continued(alpha + beta)
                .checked_div(&den)
                .expect("Γ never vanishes")
        }
    }
}

/// Right-hand side of `(1−α)_β = (−1)^β / (α)_{−β}`.
///
/// This is a formal rewrite: at half-integer β the two sides are not equal
/// as gamma ratios, and callers use it as the continuation rule. A pole in
/// `(α)_{−β}` yields zero.
pub fn pochhammer_reflect(alpha: HalfInteger, beta: HalfInteger) -> Result<ExactValue, AlgebraError> {
    match pochhammer(alpha, -beta) {
        Pochhammer::Finite(v) => Ok(ExactValue::minus_one_pow(beta)
            .checked_div(&v)
            .expect("finite Pochhammer values are nonzero")),
        Pochhammer::Pole => Ok(ExactValue::zero()),
        Pochhammer::Zero => Err(AlgebraError::NonInvertible { alpha, beta }),
    }
}

/// Checks `Γ(1/2 − m/2) = π^{1/2}(−4)^{m/2} Γ(1+m/2)/Γ(1+m)` exactly.
pub fn gamma_duplication_check(m: u32) -> Result<bool, AlgebraError> {
    if m % 2 == 1 {
        return Err(AlgebraError::UnverifiableAtOddM(m));
    }
    let half_m = HalfInteger::from_twice(m as i64);
    let lhs = gamma_half_integer(HalfInteger::HALF - half_m);
    let rhs = duplication_rhs(m);
    Ok(lhs.finite().is_some_and(|l| l == rhs))
}

/// `π^{1/2}(−4)^{m/2} Γ(1+m/2)/Γ(1+m)`, with `(−1)^{m/2}` on the principal branch.
pub fn duplication_rhs(m: u32) -> ExactValue {
    let half_m = HalfInteger::from_twice(m as i64);
    // 4^{m/2} = 2^m
    let four_pow = ExactValue::rational(BigRational::from_integer(BigInt::from(2).pow(m)));
    let g_num = gamma_half_integer(HalfInteger::ONE + half_m).finite().expect("positive argument");
    let g_den = gamma_half_integer(HalfInteger::from_int(1 + m as i64))
        .finite()
        .expect("positive argument");
    ExactValue::sqrt_pi() * ExactValue::minus_one_pow(half_m) * four_pow * g_num.checked_div(&g_den).expect("nonzero")
}
