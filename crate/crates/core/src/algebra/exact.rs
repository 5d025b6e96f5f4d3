use std::f64::consts::PI;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::HalfInteger;

/// A single term `q · i^p · π^{h/2} · σ^n` with `q` rational.
///
/// The representation is canonical: `q > 0` (signs are folded into the
/// phase, since `−1 = i²`) and zero has every exponent set to 0, so
/// structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactValue {
    coeff: BigRational,
    phase: u8,
    pi_half_power: i32,
    sym_power: i32,
}

impl ExactValue {
    pub fn new(coeff: BigRational, phase: i64, pi_half_power: i32, sym_power: i32) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut phase = phase.rem_euclid(4) as u8;
        let coeff = if coeff.is_negative() {
            phase = (phase + 2) % 4;
            -coeff
        } else {
            coeff
        };
        Self {
            coeff,
            phase,
            pi_half_power,
            sym_power,
        }
    }

    pub fn zero() -> Self {
        Self {
            coeff: BigRational::zero(),
            phase: 0,
            pi_half_power: 0,
            sym_power: 0,
        }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(q, 0, 0, 0)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit `i = e^{iπ/2}`.
    pub fn i() -> Self {
        Self::new(BigRational::one(), 1, 0, 0)
    }

    pub fn sqrt_pi() -> Self {
        Self::new(BigRational::one(), 0, 1, 0)
    }

    pub fn pi() -> Self {
        Self::new(BigRational::one(), 0, 2, 0)
    }

    /// The free symbol raised to `power`.
    pub fn symbol(power: i32) -> Self {
        Self::new(BigRational::one(), 0, 0, power)
    }

    /// `(−1)^β = e^{iπβ}`, so `(−1)^{1/2} = i` and `(−1)^{−1/2} = −i`.
    pub fn minus_one_pow(beta: HalfInteger) -> Self {
        Self::new(BigRational::one(), beta.twice_value(), 0, 0)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn pi_half_power(&self) -> i32 {
        self.pi_half_power
    }

    pub fn sym_power(&self) -> i32 {
        self.sym_power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Real iff the phase is 0 or 2 (zero counts as real).
    pub fn is_real(&self) -> bool {
        self.phase % 2 == 0
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(
            self.coeff.recip(),
            -(self.phase as i64),
            -self.pi_half_power,
            -self.sym_power,
        ))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self * &inv)
    }

    pub fn powi(&self, n: i32) -> Option<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Image under `σ → −σ`.
    pub fn mirror_symbol(&self) -> Self {
        if self.sym_power.rem_euclid(2) == 1 {
            -self
        } else {
            self.clone()
        }
    }

    /// Adds two terms when they share phase class, π power and symbol
    /// power; `None` when the sum is not a single term.
    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(rhs.clone());
        }
        if rhs.is_zero() {
            return Some(self.clone());
        }
        if self.pi_half_power != rhs.pi_half_power || self.sym_power != rhs.sym_power {
            return None;
        }
        let signed = |v: &Self| -> Option<BigRational> {
            match v.phase {
                p if p == self.phase % 2 => Some(v.coeff.clone()),
                p if p == self.phase % 2 + 2 => Some(-v.coeff.clone()),
                _ => None,
            }
        };
        let sum = signed(self)? + signed(rhs)?;
        Some(Self::new(
            sum,
            (self.phase % 2) as i64,
            self.pi_half_power,
            self.sym_power,
        ))
    }

    pub fn coeff_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN)
    }

    /// Numerical value with the symbol set to `symbol_value`.
    pub fn to_complex(&self, symbol_value: f64) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let pi_factor = if self.pi_half_power % 2 == 0 {
            PI.powi(self.pi_half_power / 2)
        } else {
            PI.sqrt().powi(self.pi_half_power)
        };
        let magnitude = self.coeff_f64() * pi_factor * symbol_value.powi(self.sym_power);
        match self.phase {
            0 => Complex64::new(magnitude, 0.0),
            1 => Complex64::new(0.0, magnitude),
            2 => Complex64::new(-magnitude, 0.0),
            _ => Complex64::new(0.0, -magnitude),
        }
    }

    /// Renders the term with the given symbol name, e.g. `iπ/σ` or `-4σ^3/3`.
    pub fn display_with(&self, symbol: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        if self.phase >= 2 {
            out.push('-');
        }
        let imaginary = self.phase % 2 == 1;

        let mut num = String::new();
        let mut den: Vec<String> = Vec::new();
        let numer = self.coeff.numer();
        let denom = self.coeff.denom();
        if !numer.is_one() {
            num.push_str(&numer.to_string());
        }
        if !denom.is_one() {
            den.push(denom.to_string());
        }
        let pi = pi_factor(self.pi_half_power.abs());
        if self.pi_half_power > 0 {
            num.push_str(&pi);
        } else if self.pi_half_power < 0 {
            den.push(pi);
        }
        let sym = sym_factor(symbol, self.sym_power.abs());
        if self.sym_power > 0 {
            num.push_str(&sym);
        } else if self.sym_power < 0 {
            den.push(sym);
        }

        if imaginary {
            out.push('i');
            if num.starts_with(|c: char| c.is_ascii_digit()) {
                out.push('·');
            }
        }
        if num.is_empty() && !imaginary {
            num.push('1');
        }
        out.push_str(&num);
        if !den.is_empty() {
            let joined = den.concat();
            if den.len() > 1 {
                out.push_str(&format!("/({joined})"));
            } else {
                out.push('/');
                out.push_str(&joined);
            }
        }
        out
    }

    fn multiply(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(
            &self.coeff * &rhs.coeff,
            self.phase as i64 + rhs.phase as i64,
            self.pi_half_power + rhs.pi_half_power,
            self.sym_power + rhs.sym_power,
        )
    }
}

fn pi_factor(h: i32) -> String {
    match h {
        1 => "π^{1/2}".to_string(),
        2 => "π".to_string(),
        h if h % 2 == 0 => format!("π^{}", h / 2),
        h => format!("π^{{{h}/2}}"),
    }
}

fn sym_factor(symbol: &str, n: i32) -> String {
    if n == 1 {
        symbol.to_string()
    } else {
        format!("{symbol}^{n}")
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("σ"))
    }
}

impl Mul for &ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: &ExactValue) -> ExactValue {
        self.multiply(rhs)
    }
}

impl Mul for ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: ExactValue) -> ExactValue {
        self.multiply(&rhs)
    }
}

impl Mul<&ExactValue> for ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: &ExactValue) -> ExactValue {
        self.multiply(rhs)
    }
}

impl Neg for &ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        if self.is_zero() {
            return ExactValue::zero();
        }
        ExactValue::new(
            self.coeff.clone(),
            self.phase as i64 + 2,
            self.pi_half_power,
            self.sym_power,
        )
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        -&self
    }
}
