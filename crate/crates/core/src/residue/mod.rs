//! Residue calculus for `num(z)·e^{iaz}/den(z)` with real polynomials.
//!
//! Contours close in the upper half-plane. Poles on the real axis are either
//! displaced off the axis (the two shifted prescriptions) or counted with half
//! weight (the principal value).

pub mod poles;
pub mod poly;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

pub use poles::{find_poles, on_axis, MAX_DEGREE, MAX_MULTIPLICITY};
pub use poly::poly_mul_real;

use crate::engine::BranchPrescription;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ResidueError {
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("coefficients must be finite")]
    NonFiniteCoefficient,
    #[error("oscillation frequency must be finite and non-negative, got {0}")]
    InvalidFrequency(f64),
    #[error("denominator degree {degree} exceeds the supported maximum {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("pole multiplicity {multiplicity} exceeds the supported maximum {max}")]
    MultiplicityTooHigh { multiplicity: u32, max: u32 },
    #[error("{0} is not a pole of the integrand")]
    NotAPole(Complex64),
    #[error("{0} is not on the real axis")]
    NotOnRealAxis(Complex64),
    #[error("large arc does not vanish: numerator degree {num_degree}, denominator degree {den_degree}, frequency {osc_freq}")]
    ArcDoesNotVanish {
        num_degree: usize,
        den_degree: usize,
        osc_freq: f64,
    },
    #[error("real pole at {location} has multiplicity {multiplicity}; a half-residue needs a simple pole")]
    HigherOrderRealPole { location: f64, multiplicity: u32 },
    #[error("a pole at the origin has no direction to be shifted in")]
    AmbiguousShift,
    #[error("epsilon must be finite and non-negative, got {0}")]
    InvalidEpsilon(f64),
}

/// `num(x)·e^{iax}/den(x)` with real coefficients in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalOscIntegrand {
    numerator: Vec<f64>,
    denominator: Vec<f64>,
    osc_freq: f64,
}

impl RationalOscIntegrand {
    pub fn new(numerator: Vec<f64>, denominator: Vec<f64>, osc_freq: f64) -> Result<Self, ResidueError> {
        if numerator.iter().chain(&denominator).any(|c| !c.is_finite()) {
            return Err(ResidueError::NonFiniteCoefficient);
        }
        if !(osc_freq.is_finite() && osc_freq >= 0.0) {
            return Err(ResidueError::InvalidFrequency(osc_freq));
        }
        let denominator = poly::trim(&denominator);
        if poly::degree(&denominator).is_none() {
            return Err(ResidueError::ZeroDenominator);
        }
        Ok(Self {
            numerator: poly::trim(&numerator),
            denominator,
            osc_freq,
        })
    }

    pub fn numerator(&self) -> &[f64] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[f64] {
        &self.denominator
    }

    pub fn osc_freq(&self) -> f64 {
        self.osc_freq
    }

    pub fn num_degree(&self) -> Option<usize> {
        poly::degree(&self.numerator)
    }

    pub fn den_degree(&self) -> usize {
        self.denominator.len() - 1
    }

    /// Whether the large arc in the upper half-plane vanishes as `R → ∞`.
    pub fn arc_vanishes(&self) -> bool {
        let Some(num) = self.num_degree() else {
            return true;
        };
        let gap = if self.osc_freq > 0.0 { 1 } else { 2 };
        self.den_degree() >= num + gap
    }

    fn check_arc(&self) -> Result<(), ResidueError> {
        if self.arc_vanishes() {
            Ok(())
        } else {
            Err(ResidueError::ArcDoesNotVanish {
                num_degree: self.num_degree().unwrap_or(0),
                den_degree: self.den_degree(),
                osc_freq: self.osc_freq,
            })
        }
    }

    /// The rational part without the oscillating factor.
    pub fn rational_at(&self, z: Complex64) -> Complex64 {
        poly::eval_complex(&self.numerator, z) / poly::eval_complex(&self.denominator, z)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.rational_at(z) * (Complex64::i() * self.osc_freq * z).exp()
    }

    /// Real and imaginary parts at a real point, in real arithmetic.
    pub fn eval_real(&self, x: f64) -> (f64, f64) {
        let r = poly::eval_real(&self.numerator, x) / poly::eval_real(&self.denominator, x);
        if self.osc_freq == 0.0 {
            (r, 0.0)
        } else {
            let (s, c) = (self.osc_freq * x).sin_cos();
            (r * c, r * s)
        }
    }

    /// `x → −x` in the rational part, keeping `e^{iax}`.
    pub fn reflected(&self) -> Self {
        let flip = |p: &[f64]| -> Vec<f64> {
            p.iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect()
        };
        Self {
            numerator: flip(&self.numerator),
            denominator: flip(&self.denominator),
            osc_freq: self.osc_freq,
        }
    }
}

/// A root of the denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSite {
    pub location: Complex64,
    pub multiplicity: u32,
    pub on_real_axis: bool,
}

/// Direction in which real poles leave the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shift {
    /// `p → p + iε·sign(p)`.
    Outgoing,
    /// `p → p − iε·sign(p)`.
    Incoming,
}

impl Shift {
    fn sign(self) -> f64 {
        match self {
            Shift::Outgoing => 1.0,
            Shift::Incoming => -1.0,
        }
    }
}

impl TryFrom<BranchPrescription> for Shift {
    type Error = BranchPrescription;

    fn try_from(b: BranchPrescription) -> Result<Self, Self::Error> {
        match b {
            BranchPrescription::Outgoing => Ok(Shift::Outgoing),
            BranchPrescription::Incoming => Ok(Shift::Incoming),
            other => Err(other),
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Shift::Outgoing => "outgoing",
            Shift::Incoming => "incoming",
        })
    }
}

/// A shifted-prescription value at finite ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedResult {
    pub epsilon: f64,
    pub value: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Clockwise,
    Counterclockwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Half {
    Upper,
    Lower,
}

/// Residue at the `k`-th root of `lead·Π (z − roots_j)^{m_j}`.
///
/// The factor `num·e^{iaz}/cofactor` is expanded about the root and the
/// coefficient of `h^{m−1}` read off.
fn residue_from_roots(
    f: &RationalOscIntegrand,
    roots: &[(Complex64, u32)],
    k: usize,
) -> Complex64 {
    let (p, m) = roots[k];
    let order = m as usize;
    let lead = *f.denominator.last().expect("nonempty");

    let num = poly::taylor_at(&f.numerator, p, order);

    let a = f.osc_freq;
    let mut exp_series = Vec::with_capacity(order);
    let base = (Complex64::i() * a * p).exp();
    let mut term = base;
    for j in 0..order {
        exp_series.push(term);
        term = term * Complex64::i() * a / (j + 1) as f64;
    }

    let mut cof = vec![Complex64::new(0.0, 0.0); order];
    cof[0] = Complex64::new(lead, 0.0);
    for (j, &(q, mj)) in roots.iter().enumerate() {
        if j == k {
            continue;
        }
        let linear = [p - q, Complex64::new(1.0, 0.0)];
        for _ in 0..mj {
            cof = poly::series_mul(&cof, &linear, order);
        }
    }

    let g = poly::series_mul(&poly::series_mul(&num, &exp_series, order), &poly::series_recip(&cof, order), order);
    g[order - 1]
}

fn root_list(sites: &[PoleSite]) -> Vec<(Complex64, u32)> {
    sites.iter().map(|s| (s.location, s.multiplicity)).collect()
}

fn locate(sites: &[PoleSite], z: Complex64) -> Option<usize> {
    let tol = 1e-8 * (1.0 + z.norm());
    sites
        .iter()
        .enumerate()
        .map(|(i, s)| (i, (s.location - z).norm()))
        .filter(|&(_, d)| d <= tol)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
}

/// Residue of `f` at the pole `p`.
pub fn residue_at(f: &RationalOscIntegrand, p: &PoleSite) -> Result<Complex64, ResidueError> {
    let sites = find_poles(f)?;
    let k = locate(&sites, p.location).ok_or(ResidueError::NotAPole(p.location))?;
    Ok(residue_from_roots(f, &root_list(&sites), k))
}

/// `lim_{ε→0⁺}` (or the value at fixed ε) of the integral with every real
/// pole displaced off the axis by `iε·sign(p)` in the direction of `shift`.
pub fn shifted_value(f: &RationalOscIntegrand, shift: Shift, epsilon: f64) -> Result<Complex64, ResidueError> {
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(ResidueError::InvalidEpsilon(epsilon));
    }
    f.check_arc()?;
    let sites = find_poles(f)?;
    if sites.iter().any(|s| s.on_real_axis && s.location.re == 0.0) {
        return Err(ResidueError::AmbiguousShift);
    }
    let direction = shift.sign();
    let moved: Vec<(Complex64, u32)> = sites
        .iter()
        .map(|s| {
            let z = if s.on_real_axis {
                s.location + Complex64::new(0.0, epsilon * direction * s.location.re.signum())
            } else {
                s.location
            };
            (z, s.multiplicity)
        })
        .collect();
    let enclosed = |i: usize| {
        let s = &sites[i];
        if s.on_real_axis {
            direction * s.location.re > 0.0
        } else {
            s.location.im > 0.0
        }
    };
    let total: Complex64 = (0..sites.len())
        .filter(|&i| enclosed(i))
        .map(|i| residue_from_roots(f, &moved, i))
        .sum();
    Ok(2.0 * PI * Complex64::i() * total)
}

/// [`shifted_value`] at each ε, in order.
pub fn shifted_values(
    f: &RationalOscIntegrand,
    shift: Shift,
    epsilons: &[f64],
) -> Result<Vec<ShiftedResult>, ResidueError> {
    epsilons
        .iter()
        .map(|&epsilon| shifted_value(f, shift, epsilon).map(|value| ShiftedResult { epsilon, value }))
        .collect()
}

/// `2πi·Σ Res(upper) + πi·Σ Res(real)`.
pub fn principal_value(f: &RationalOscIntegrand) -> Result<Complex64, ResidueError> {
    f.check_arc()?;
    let sites = find_poles(f)?;
    if let Some(s) = sites.iter().find(|s| s.on_real_axis && s.multiplicity > 1) {
        return Err(ResidueError::HigherOrderRealPole {
            location: s.location.re,
            multiplicity: s.multiplicity,
        });
    }
    let roots = root_list(&sites);
    let mut upper = Complex64::new(0.0, 0.0);
    let mut real = Complex64::new(0.0, 0.0);
    for (i, s) in sites.iter().enumerate() {
        if s.on_real_axis {
            real += residue_from_roots(f, &roots, i);
        } else if s.location.im > 0.0 {
            upper += residue_from_roots(f, &roots, i);
        }
    }
    let value = Complex64::i() * PI * (2.0 * upper + real);
    #[cfg(debug_assertions)]
    if let (Ok(out), Ok(inc)) = (
        shifted_value(f, Shift::Outgoing, 0.0),
        shifted_value(f, Shift::Incoming, 0.0),
    ) {
        let mean = (out + inc) / 2.0;
        debug_assert!(
            (mean - value).norm() <= 1e-12 * (1.0 + value.norm()),
            "principal value {value} differs from the mean {mean}"
        );
    }
    Ok(value)
}

/// Contribution of a vanishing half-circle around a simple real pole:
/// `i·Δθ·Res` with `Δθ = ±π`.
pub fn semicircle_contribution(
    f: &RationalOscIntegrand,
    p: &PoleSite,
    sense: Sense,
    half: Half,
) -> Result<Complex64, ResidueError> {
    let sites = find_poles(f)?;
    let k = locate(&sites, p.location).ok_or(ResidueError::NotAPole(p.location))?;
    let site = sites[k];
    if !site.on_real_axis {
        return Err(ResidueError::NotOnRealAxis(site.location));
    }
    if site.multiplicity > 1 {
        return Err(ResidueError::HigherOrderRealPole {
            location: site.location.re,
            multiplicity: site.multiplicity,
        });
    }
    let res = residue_from_roots(f, &root_list(&sites), k);
    let (from, to) = match half {
        Half::Upper => (0.0, PI),
        Half::Lower => (PI, 2.0 * PI),
    };
    let sweep = match sense {
        Sense::Counterclockwise => to - from,
        Sense::Clockwise => from - to,
    };
    Ok(Complex64::i() * sweep * res)
}

/// Upper bound on `|∫_{C_R} f|` over the upper half-circle of radius `R`.
///
/// ML bound `πR·max|num|/min|den|`, tightened by Jordan's lemma
/// `(π/a)·max|num/den|` when `a > 0`. Infinite when `R` is too small for the
/// denominator bound to be positive.
pub fn arc_bound(f: &RationalOscIntegrand, r: f64) -> f64 {
    let n = f.den_degree();
    let lead = f.denominator[n].abs();
    let lower = lead * r.powi(n as i32) - poly::abs_bound(&f.denominator[..n], r);
    if lower <= 0.0 {
        return f64::INFINITY;
    }
    let max_ratio = poly::abs_bound(&f.numerator, r) / lower;
    let ml = PI * r * max_ratio;
    if f.osc_freq > 0.0 {
        ml.min(PI * max_ratio / f.osc_freq)
    } else {
        ml
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn inverse_quadratic(a: f64) -> RationalOscIntegrand {
        RationalOscIntegrand::new(vec![1.0], vec![-a * a, 0.0, 1.0], 0.0).unwrap()
    }

    fn x_exp(sigma: f64, a: f64) -> RationalOscIntegrand {
        RationalOscIntegrand::new(vec![0.0, 1.0], vec![-sigma * sigma, 0.0, 1.0], a).unwrap()
    }

    fn pole(f: &RationalOscIntegrand, x: f64) -> PoleSite {
        *find_poles(f)
            .unwrap()
            .iter()
            .find(|s| (s.location.re - x).abs() < 1e-9 && s.on_real_axis)
            .unwrap()
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(
            RationalOscIntegrand::new(vec![1.0], vec![0.0, 0.0], 0.0),
            Err(ResidueError::ZeroDenominator)
        );
        assert!(RationalOscIntegrand::new(vec![f64::NAN], vec![1.0], 0.0).is_err());
        assert!(RationalOscIntegrand::new(vec![1.0], vec![1.0], -1.0).is_err());
        let f = RationalOscIntegrand::new(vec![1.0, 0.0], vec![1.0, 2.0, 0.0], 0.0).unwrap();
        assert_eq!(f.numerator(), &[1.0]);
        assert_eq!(f.denominator(), &[1.0, 2.0]);
    }

    #[test]
    fn residue_examples() {
        let a = 1.5;
        let f = inverse_quadratic(a);
        let r = residue_at(&f, &pole(&f, a)).unwrap();
        assert!((r - c(1.0 / (2.0 * a), 0.0)).norm() < 1e-15);

        let sigma = 1.3;
        let g = x_exp(sigma, 1.0);
        let r = residue_at(&g, &pole(&g, sigma)).unwrap();
        assert!((r - c(0.0, sigma).exp() / 2.0).norm() < 1e-15);

        let h = RationalOscIntegrand::new(vec![1.0], poly_mul_real(&[-a * a, 0.0, 1.0], &[-a * a, 0.0, 1.0]), 0.0)
            .unwrap();
        let r = residue_at(&h, &pole(&h, a)).unwrap();
        assert!((r - c(-1.0 / (4.0 * a.powi(3)), 0.0)).norm() < 1e-13, "{r}");
    }

    #[test]
    fn residue_rejects_non_pole() {
        let f = inverse_quadratic(1.0);
        let fake = PoleSite {
            location: c(0.5, 0.0),
            multiplicity: 1,
            on_real_axis: true,
        };
        assert!(matches!(residue_at(&f, &fake), Err(ResidueError::NotAPole(_))));
    }

    #[test]
    fn shifted_examples() {
        let f = inverse_quadratic(1.0);
        let eps = 0.01;
        let v = shifted_value(&f, Shift::Outgoing, eps).unwrap();
        let expect = c(0.0, PI) / c(1.0, eps);
        assert!((v - expect).norm() < 1e-14, "{v} vs {expect}");
        assert!((shifted_value(&f, Shift::Outgoing, 0.0).unwrap() - c(0.0, PI)).norm() < 1e-15);
        assert!((shifted_value(&f, Shift::Incoming, 0.0).unwrap() - c(0.0, -PI)).norm() < 1e-15);
        let v = shifted_value(&f, Shift::Incoming, eps).unwrap();
        assert!((v - c(0.0, PI) / c(-1.0, eps)).norm() < 1e-14);

        let sigma = 0.8;
        let g = x_exp(sigma, 1.0);
        let v = shifted_value(&g, Shift::Outgoing, 0.0).unwrap();
        assert!((v - c(0.0, PI) * c(0.0, sigma).exp()).norm() < 1e-14);
    }

    #[test]
    fn shifted_rejects_bad_input() {
        let f = RationalOscIntegrand::new(vec![0.0, 1.0], vec![-1.0, 0.0, 1.0], 0.0).unwrap();
        assert!(matches!(
            shifted_value(&f, Shift::Outgoing, 0.0),
            Err(ResidueError::ArcDoesNotVanish { .. })
        ));
        let f = RationalOscIntegrand::new(vec![1.0], vec![0.0, 0.0, 1.0], 0.0).unwrap();
        assert_eq!(shifted_value(&f, Shift::Outgoing, 0.1), Err(ResidueError::AmbiguousShift));
        assert!(shifted_value(&inverse_quadratic(1.0), Shift::Outgoing, -1.0).is_err());
    }

    #[test]
    fn principal_value_examples() {
        assert!(principal_value(&inverse_quadratic(1.0)).unwrap().norm() < 1e-15);
        let sigma = 1.0;
        let v = principal_value(&x_exp(sigma, 1.0)).unwrap();
        assert!((v - c(0.0, PI * sigma.cos())).norm() < 1e-14);
        let arctan = RationalOscIntegrand::new(vec![1.0], vec![1.0, 0.0, 1.0], 0.0).unwrap();
        assert!((principal_value(&arctan).unwrap() - c(PI, 0.0)).norm() < 1e-14);
        let double = RationalOscIntegrand::new(vec![1.0], vec![1.0, -2.0, 1.0], 0.0).unwrap();
        assert!(matches!(principal_value(&double), Err(ResidueError::HigherOrderRealPole { .. })));
    }

    #[test]
    fn semicircle_examples() {
        let a = 2.0;
        let f = inverse_quadratic(a);
        let left = semicircle_contribution(&f, &pole(&f, -a), Sense::Clockwise, Half::Upper).unwrap();
        let right = semicircle_contribution(&f, &pole(&f, a), Sense::Clockwise, Half::Upper).unwrap();
        assert!((left - c(0.0, PI / (2.0 * a))).norm() < 1e-15);
        assert!((right - c(0.0, -PI / (2.0 * a))).norm() < 1e-15);
        let p = pole(&f, a);
        let full = semicircle_contribution(&f, &p, Sense::Counterclockwise, Half::Upper).unwrap()
            + semicircle_contribution(&f, &p, Sense::Counterclockwise, Half::Lower).unwrap();
        let res = residue_at(&f, &p).unwrap();
        assert!((full - 2.0 * PI * Complex64::i() * res).norm() < 1e-15);
    }

    #[test]
    fn contour_pieces_balance() {
        let a = 1.0;
        let f = inverse_quadratic(a);
        let total = principal_value(&f).unwrap()
            + semicircle_contribution(&f, &pole(&f, -a), Sense::Clockwise, Half::Upper).unwrap()
            + semicircle_contribution(&f, &pole(&f, a), Sense::Clockwise, Half::Upper).unwrap();
        assert!(total.norm() < 1e-15);
    }

    #[test]
    fn arc_bound_examples() {
        let f = inverse_quadratic(1.0);
        let b = arc_bound(&f, 100.0);
        assert!((b - PI * 100.0 / (100.0f64.powi(2) - 1.0)).abs() < 1e-15);
        assert!(b <= 0.0315);
        let scaled: Vec<f64> = [1e2, 1e3, 1e4].iter().map(|&r| arc_bound(&f, r) * r).collect();
        assert!(scaled.iter().all(|&s| (s - PI).abs() < 1e-3));
        assert_eq!(arc_bound(&f, 0.5), f64::INFINITY);

        let g = x_exp(1.0, 2.0);
        let r = 50.0;
        let jordan = PI * (r / (r * r - 1.0)) / 2.0;
        assert!((arc_bound(&g, r) - jordan).abs() < 1e-15);
    }

    #[test]
    fn reflection_relates_branches() {
        let g = x_exp(1.2, 0.7);
        let out = shifted_value(&g.reflected(), Shift::Outgoing, 0.0).unwrap();
        let inc = shifted_value(&g, Shift::Incoming, 0.0).unwrap();
        assert!((inc - out.conj()).norm() < 1e-14);
    }
}
