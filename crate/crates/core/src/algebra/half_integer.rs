use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

/// An exact element of ½ℤ, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const ZERO: Self = Self { twice: 0 };
    pub const ONE: Self = Self { twice: 2 };
    pub const HALF: Self = Self { twice: 1 };
    pub const MINUS_HALF: Self = Self { twice: -1 };

    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        Self { twice: 2 * n }
    }

    pub const fn twice_value(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    /// True for 0, −1, −2, ..., the poles of Γ.
    pub const fn is_non_positive_integer(self) -> bool {
        self.is_integer() && self.twice <= 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// Largest integer not exceeding the value.
    pub const fn floor(self) -> i64 {
        self.twice.div_euclid(2)
    }
}

impl From<i64> for HalfInteger {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for HalfInteger {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_twice(self.twice + rhs.twice)
    }
}

impl AddAssign for HalfInteger {
    fn add_assign(&mut self, rhs: Self) {
        self.twice += rhs.twice;
    }
}

impl Sub for HalfInteger {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInteger {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_twice(-self.twice)
    }
}

impl Mul<i64> for HalfInteger {
    type Output = Self;
    fn mul(self, rhs: i64) -> Self {
        Self::from_twice(self.twice * rhs)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a half-integer: {0:?}")]
pub struct ParseHalfIntegerError(pub String);

impl FromStr for HalfInteger {
    type Err = ParseHalfIntegerError;

    /// Accepts `3`, `-1/2`, `7/2`, `-0.5` and `2.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfIntegerError(s.to_string());
        let t = s.trim();
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| err())?;
            return match den.trim() {
                "1" => Ok(Self::from_int(num)),
                "2" => Ok(Self::from_twice(num)),
                _ => Err(err()),
            };
        }
        if let Ok(n) = t.parse::<i64>() {
            return Ok(Self::from_int(n));
        }
        let x: f64 = t.parse().map_err(|_| err())?;
        let twice = 2.0 * x;
        if twice.is_finite() && twice.fract() == 0.0 && twice.abs() < 1e15 {
            Ok(Self::from_twice(twice as i64))
        } else {
            Err(err())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrality_follows_parity_of_twice() {
        assert!(HalfInteger::from_twice(4).is_integer());
        assert!(!HalfInteger::from_twice(-3).is_integer());
        assert_eq!(HalfInteger::from_twice(-3).floor(), -2);
        assert_eq!(HalfInteger::from_twice(3).floor(), 1);
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("-1/2".parse::<HalfInteger>().unwrap(), HalfInteger::MINUS_HALF);
        assert_eq!("7/2".parse::<HalfInteger>().unwrap().twice_value(), 7);
        assert_eq!("2.5".parse::<HalfInteger>().unwrap().twice_value(), 5);
        assert_eq!("-3".parse::<HalfInteger>().unwrap(), HalfInteger::from_int(-3));
        assert!("1/3".parse::<HalfInteger>().is_err());
        assert!("0.25".parse::<HalfInteger>().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(HalfInteger::from_twice(-1).to_string(), "-1/2");
        assert_eq!(HalfInteger::from_int(3).to_string(), "3");
    }
}
