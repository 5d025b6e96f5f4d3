//! Direct numerical evaluation of the limiting definitions.
//!
//! The principal value excises `(p − δ, p + δ)` around each real pole, so the
//! two sides of a pole are folded into `∫_δ^{δ₀} f(p+t) + f(p−t) dt`, whose
//! integrand is regular. The excised value is then extrapolated `δ → 0` in
//! odd powers of `δ`. The shifted prescriptions integrate the displaced
//! integrand directly and extrapolate `ε → 0`. Both add the contribution from
//! `|x| > R`.

pub mod extrapolate;
pub mod kronrod;
mod tail;

use std::f64::consts::PI;
use std::ops::Range;

use num_complex::Complex64;

use crate::residue::{find_poles, poly, PoleSite, RationalOscIntegrand, ResidueError, Shift};
use extrapolate::{extrapolant_sequence, observed_order};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadratureError {
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
    #[error("real pole at {location} has multiplicity {multiplicity}; the principal value needs simple poles")]
    NonSimpleRealPole { location: f64, multiplicity: u32 },
    #[error("integrand neither decays like 1/x² nor oscillates")]
    NotIntegrable,
    #[error("epsilons must be positive, finite and strictly descending")]
    InvalidEpsilons,
    #[error("no convergence in {stage}: {detail}")]
    NoConvergence { stage: &'static str, detail: String },
    #[error(transparent)]
    Residue(#[from] ResidueError),
}

/// Parameters of the limiting procedure.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Excision half-widths, strictly descending.
    pub excision_radii: Vec<f64>,
    pub truncation_radius: f64,
    pub segment_tolerance: f64,
    /// Half-periods summed in an oscillatory tail.
    pub tail_periods: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self::for_frequency(0.0)
    }
}

impl QuadratureConfig {
    /// Defaults with `R = 40π/max(a, 1)`, capped at 400.
    pub fn for_frequency(a: f64) -> Self {
        Self {
            excision_radii: vec![1e-1, 3e-2, 1e-2, 3e-3],
            truncation_radius: (40.0 * PI / a.max(1.0)).min(400.0),
            segment_tolerance: 1e-10,
            tail_periods: 40,
        }
    }

    /// Defaults for `f`, with `R` pushed past the poles and the radii shrunk
    /// to a tenth of the distance from any real pole to its nearest other
    /// pole, so the folded integrand stays well inside its Taylor disc.
    pub fn for_integrand(f: &RationalOscIntegrand) -> Result<Self, QuadratureError> {
        let mut cfg = Self::for_frequency(f.osc_freq());
        let sites = find_poles(f)?;
        let reach = sites.iter().map(|s| s.location.norm()).fold(0.0, f64::max);
        if cfg.truncation_radius <= reach + 1.0 {
            let step = if f.osc_freq() > 0.0 { 2.0 * PI / f.osc_freq() } else { 1.0 };
            cfg.truncation_radius = ((2.0 * (reach + 1.0)) / step).ceil() * step;
        }
        let reach = nearest_singularity(&sites) / 10.0;
        let largest = cfg.excision_radii[0];
        if reach.is_finite() && largest > reach {
            cfg.excision_radii.iter_mut().for_each(|d| *d *= reach / largest);
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        let bad = |m: &str| Err(QuadratureError::InvalidConfig(m.to_string()));
        if self.excision_radii.is_empty() {
            return bad("excision_radii is empty");
        }
        if self.excision_radii.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
            return bad("excision radii must be positive and finite");
        }
        if self.excision_radii.windows(2).any(|w| w[1] >= w[0]) {
            return bad("excision radii must be strictly descending");
        }
        if !(self.truncation_radius.is_finite() && self.truncation_radius > 0.0) {
            return bad("truncation_radius must be positive and finite");
        }
        if !(self.segment_tolerance.is_finite() && self.segment_tolerance > 0.0) {
            return bad("segment_tolerance must be positive and finite");
        }
        if self.tail_periods == 0 {
            return bad("tail_periods must be positive");
        }
        Ok(())
    }

    fn check_poles(&self, sites: &[PoleSite]) -> Result<(), QuadratureError> {
        let reach = sites
            .iter()
            .filter(|s| s.on_real_axis)
            .map(|s| s.location.re.abs())
            .fold(0.0, f64::max);
        if self.truncation_radius <= reach + 1.0 {
            return Err(QuadratureError::InvalidConfig(format!(
                "truncation_radius {} must exceed the largest real pole {} by more than 1",
                self.truncation_radius, reach
            )));
        }
        let spacing = min_real_spacing(sites);
        if spacing.is_finite() && self.excision_radii[0] * 2.0 >= spacing {
            return Err(QuadratureError::InvalidConfig(format!(
                "excision radius {} overlaps neighbouring poles {} apart",
                self.excision_radii[0], spacing
            )));
        }
        Ok(())
    }
}

fn nearest_singularity(sites: &[PoleSite]) -> f64 {
    sites
        .iter()
        .filter(|s| s.on_real_axis)
        .flat_map(|s| {
            sites
                .iter()
                .filter(move |t| !std::ptr::eq(*t, s))
                .map(move |t| (t.location - s.location).norm())
        })
        .fold(f64::INFINITY, f64::min)
}

fn min_real_spacing(sites: &[PoleSite]) -> f64 {
    let mut xs: Vec<f64> = sites.iter().filter(|s| s.on_real_axis).map(|s| s.location.re).collect();
    xs.sort_by(f64::total_cmp);
    xs.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

/// One sample of the limiting sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stage {
    /// `δ` or `ε`.
    pub parameter: f64,
    pub value: Complex64,
    pub panel_error: f64,
}

/// Where the value and its error came from.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics {
    pub segments: usize,
    pub stages: Vec<Stage>,
    pub extrapolants: Vec<Complex64>,
    pub observed_order: Option<f64>,
    pub tail: Complex64,
    pub tail_error: f64,
    pub panel_error: f64,
    pub extrapolation_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureEstimate {
    pub value: Complex64,
    pub error_estimate: f64,
    pub diagnostics: Diagnostics,
}

/// A complex integral assembled from two real ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Piece {
    pub value: Complex64,
    pub error: f64,
    pub segments: usize,
    pub converged: bool,
}

impl Piece {
    pub(crate) fn zero() -> Self {
        Piece {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            segments: 0,
            converged: true,
        }
    }

    pub(crate) fn plus(self, other: Piece) -> Piece {
        Piece {
            value: self.value + other.value,
            error: self.error + other.error,
            segments: self.segments + other.segments,
            converged: self.converged && other.converged,
        }
    }
}

pub(crate) fn integrate_pair<F: Fn(f64) -> (f64, f64)>(f: &F, a: f64, b: f64, tol: f64) -> Piece {
    let re = kronrod::adaptive(&|x| f(x).0, a, b, tol, tol);
    let im = kronrod::adaptive(&|x| f(x).1, a, b, tol, tol);
    Piece {
        value: Complex64::new(re.value, im.value),
        error: re.error + im.error,
        segments: re.segments + im.segments,
        converged: re.converged && im.converged,
    }
}

fn require(piece: Piece, stage: &'static str) -> Result<Piece, QuadratureError> {
    if piece.converged {
        Ok(piece)
    } else {
        Err(QuadratureError::NoConvergence {
            stage,
            detail: format!("panel limit reached with error {:e}", piece.error),
        })
    }
}

fn real_poles(f: &RationalOscIntegrand) -> Result<(Vec<PoleSite>, Vec<f64>), QuadratureError> {
    let sites = find_poles(f)?;
    if let Some(s) = sites.iter().find(|s| s.on_real_axis && s.multiplicity > 1) {
        return Err(QuadratureError::NonSimpleRealPole {
            location: s.location.re,
            multiplicity: s.multiplicity,
        });
    }
    let xs = sites.iter().filter(|s| s.on_real_axis).map(|s| s.location.re).collect();
    Ok((sites, xs))
}

fn check_integrable(f: &RationalOscIntegrand) -> Result<(), QuadratureError> {
    if f.arc_vanishes() {
        Ok(())
    } else {
        Err(QuadratureError::NotIntegrable)
    }
}

/// Breakpoints for a smooth integrand on `range`: the ends plus the real
/// parts of nearby complex poles.
fn breakpoints(range: Range<f64>, sites: &[PoleSite], skip: &[(f64, f64)]) -> Vec<f64> {
    let mut pts = vec![range.start, range.end];
    for s in sites {
        let x = s.location.re;
        if x > range.start && x < range.end && !skip.iter().any(|(lo, hi)| x > *lo && x < *hi) {
            pts.push(x);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn integrate_breaks<F: Fn(f64) -> (f64, f64)>(f: &F, pts: &[f64], tol: f64) -> Piece {
    pts.windows(2)
        .map(|w| integrate_pair(f, w[0], w[1], tol))
        .fold(Piece::zero(), Piece::plus)
}

/// The truncated principal value on `range` as a function of the excision
/// radius: a fixed outer part plus, per pole, the folded inner integral.
struct ExcisedIntegral<'a> {
    f: &'a RationalOscIntegrand,
    poles: Vec<f64>,
    outer: Piece,
    largest: f64,
    tol: f64,
}

impl<'a> ExcisedIntegral<'a> {
    fn new(
        f: &'a RationalOscIntegrand,
        sites: &[PoleSite],
        poles: Vec<f64>,
        range: Range<f64>,
        largest: f64,
        tol: f64,
    ) -> Result<Self, QuadratureError> {
        let holes: Vec<(f64, f64)> = poles.iter().map(|p| (p - largest, p + largest)).collect();
        if holes.iter().any(|(lo, hi)| *lo <= range.start || *hi >= range.end) {
            return Err(QuadratureError::InvalidConfig(
                "an excision interval reaches the end of the integration range".into(),
            ));
        }
        let mut pts = breakpoints(range.clone(), sites, &holes);
        pts.retain(|x| !holes.iter().any(|(lo, hi)| x > lo && x < hi));
        pts.extend(holes.iter().flat_map(|(lo, hi)| [*lo, *hi]));
        pts.sort_by(f64::total_cmp);
        let g = |x: f64| f.eval_real(x);
        let mut outer = Piece::zero();
        for w in pts.windows(2) {
            let inside_hole = holes.iter().any(|(lo, hi)| w[0] == *lo && w[1] == *hi);
            if !inside_hole {
                outer = outer.plus(integrate_pair(&g, w[0], w[1], tol));
            }
        }
        Ok(Self {
            f,
            poles,
            outer: require(outer, "outer panels")?,
            largest,
            tol,
        })
    }

    fn at(&self, delta: f64) -> Result<Piece, QuadratureError> {
        let mut total = self.outer;
        for &p in &self.poles {
            let folded = |t: f64| {
                let (ar, ai) = self.f.eval_real(p + t);
                let (br, bi) = self.f.eval_real(p - t);
                (ar + br, ai + bi)
            };
            total = total.plus(integrate_pair(&folded, delta, self.largest, self.tol));
        }
        require(total, "excision panels")
    }
}

/// Extrapolates the excised values `δ → 0` in the basis `{1, δ, δ³, δ⁵, …}`.
fn excision_limit(
    excised: &ExcisedIntegral<'_>,
    radii: &[f64],
    tol: f64,
) -> Result<(Complex64, Diagnostics), QuadratureError> {
    let mut diag = Diagnostics::default();
    for &delta in radii {
        let piece = excised.at(delta)?;
        diag.segments += piece.segments;
        diag.stages.push(Stage {
            parameter: delta,
            value: piece.value,
            panel_error: piece.error,
        });
    }
    if excised.poles.is_empty() {
        let last = *diag.stages.last().expect("radii nonempty");
        diag.extrapolants = vec![last.value];
        diag.panel_error = last.panel_error;
        return Ok((last.value, diag));
    }
    let exponents: Vec<f64> = (0..radii.len()).map(|j| if j == 0 { 1.0 } else { (2 * j + 1) as f64 }).collect();
    let ys: Vec<Complex64> = diag.stages.iter().map(|s| s.value).collect();
    let seq = extrapolant_sequence(radii, &ys, &exponents[..radii.len().saturating_sub(1)]);
    let best = seq.last().expect("at least one extrapolant");
    diag.extrapolants = seq.iter().map(|e| e.value).collect();
    diag.panel_error = propagated(&best.weights, &diag.stages);
    diag.extrapolation_error = match seq.len() {
        0 | 1 => 0.0,
        n => (seq[n - 1].value - seq[n - 2].value).norm(),
    };
    let threshold = 10.0 * tol * best.value.norm().max(1.0);
    if diag.extrapolation_error > threshold {
        return Err(QuadratureError::NoConvergence {
            stage: "excision extrapolation",
            detail: format!(
                "successive extrapolants differ by {:e}, above {:e}",
                diag.extrapolation_error, threshold
            ),
        });
    }
    Ok((best.value, diag))
}

fn propagated(weights: &[f64], stages: &[Stage]) -> f64 {
    let tail = &stages[stages.len() - weights.len()..];
    weights.iter().zip(tail).map(|(w, s)| w.abs() * s.panel_error).sum()
}

fn finish(core: Complex64, mut diag: Diagnostics, tail: Piece) -> Result<QuadratureEstimate, QuadratureError> {
    let tail = require(tail, "tail")?;
    diag.tail = tail.value;
    diag.tail_error = tail.error;
    diag.segments += tail.segments;
    let value = core + tail.value;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(QuadratureError::NoConvergence {
            stage: "assembly",
            detail: "non-finite value".into(),
        });
    }
    Ok(QuadratureEstimate {
        value,
        error_estimate: diag.panel_error + diag.extrapolation_error + diag.tail_error,
        diagnostics: diag,
    })
}

/// Principal value with symmetric excision around every real pole.
pub fn pv_quadrature(f: &RationalOscIntegrand, cfg: &QuadratureConfig) -> Result<QuadratureEstimate, QuadratureError> {
    cfg.validate()?;
    check_integrable(f)?;
    let (sites, poles) = real_poles(f)?;
    cfg.check_poles(&sites)?;
    let r = cfg.truncation_radius;
    let excised = ExcisedIntegral::new(f, &sites, poles, -r..r, cfg.excision_radii[0], cfg.segment_tolerance)?;
    let (core, diag) = excision_limit(&excised, &cfg.excision_radii, cfg.segment_tolerance)?;
    finish(core, diag, tail::two_sided_tail(f, r, cfg))
}

/// `∫_{|x|>R} f`, both sides.
///
/// Decaying integrands use `x = 1/t` on `(0, 1/R]`. Oscillatory ones sum
/// `tail_periods` half-period panels starting at `R` and accelerate the
/// partial sums by repeated averaging. `R` must lie beyond every real pole.
pub fn tail_correction(f: &RationalOscIntegrand, r: f64, cfg: &QuadratureConfig) -> Complex64 {
    tail::two_sided_tail(f, r, cfg).value
}

/// Which half-line to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Principal value over `(−∞, 0]` or `[0, ∞)`.
pub fn half_line_pv(
    f: &RationalOscIntegrand,
    side: Side,
    cfg: &QuadratureConfig,
) -> Result<QuadratureEstimate, QuadratureError> {
    cfg.validate()?;
    check_integrable(f)?;
    let (sites, poles) = real_poles(f)?;
    cfg.check_poles(&sites)?;
    let r = cfg.truncation_radius;
    let (range, keep): (Range<f64>, fn(f64) -> bool) = match side {
        Side::Left => (-r..0.0, |x| x < 0.0),
        Side::Right => (0.0..r, |x| x > 0.0),
    };
    let poles: Vec<f64> = poles.into_iter().filter(|&x| keep(x)).collect();
    let excised = ExcisedIntegral::new(f, &sites, poles, range, cfg.excision_radii[0], cfg.segment_tolerance)?;
    let (core, diag) = excision_limit(&excised, &cfg.excision_radii, cfg.segment_tolerance)?;
    let tail = match side {
        Side::Left => tail::left_tail(f, r, cfg),
        Side::Right => tail::right_tail(f, r, cfg),
    };
    finish(core, diag, tail)
}

/// Excised value with the right edge of each hole at `δ^power` instead of
/// `δ`, one entry per radius. For `power ≠ 1` the sequence drifts like
/// `(power − 1)·ln δ·Σ Res`, so it has no limit.
pub fn asymmetric_excision(
    f: &RationalOscIntegrand,
    cfg: &QuadratureConfig,
    power: f64,
) -> Result<Vec<(f64, Complex64)>, QuadratureError> {
    cfg.validate()?;
    check_integrable(f)?;
    let (sites, poles) = real_poles(f)?;
    cfg.check_poles(&sites)?;
    let r = cfg.truncation_radius;
    let tail = require(tail::two_sided_tail(f, r, cfg), "tail")?;
    let g = |x: f64| f.eval_real(x);
    cfg.excision_radii
        .iter()
        .map(|&delta| {
            let holes: Vec<(f64, f64)> = poles.iter().map(|p| (p - delta, p + delta.powf(power))).collect();
            let mut pts = breakpoints(-r..r, &sites, &holes);
            pts.extend(holes.iter().flat_map(|(lo, hi)| [*lo, *hi]));
            pts.sort_by(f64::total_cmp);
            let mut total = Piece::zero();
            for w in pts.windows(2) {
                if !holes.iter().any(|(lo, hi)| w[0] == *lo && w[1] == *hi) {
                    total = total.plus(integrate_pair(&g, w[0], w[1], cfg.segment_tolerance));
                }
            }
            let total = require(total, "asymmetric excision")?;
            Ok((delta, total.value + tail.value))
        })
        .collect()
}

/// Displacement sizes for the shifted prescriptions:
/// `ρ·{1/10, 1/20, 1/40, 1/80, 1/160}` with `ρ = min(1, half the closest
/// distance between poles)`.
pub fn default_epsilons(f: &RationalOscIntegrand) -> Result<Vec<f64>, QuadratureError> {
    let sites = find_poles(f)?;
    let mut rho: f64 = 1.0;
    for (i, a) in sites.iter().enumerate() {
        for b in &sites[i + 1..] {
            rho = rho.min((a.location - b.location).norm() / 2.0);
        }
    }
    Ok((0..5).map(|k| rho * 0.1 / f64::powi(2.0, k)).collect())
}

/// The integral with each real pole displaced by `±iε·sign(p)`, for each
/// `ε`, extrapolated to `ε → 0`.
///
/// The leading order is read off the three smallest samples and the
/// extrapolation eliminates that power and the integer powers above it. A
/// single `ε` returns the value at that `ε`.
pub fn epsilon_shift_quadrature(
    f: &RationalOscIntegrand,
    shift: Shift,
    epsilons: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadratureEstimate, QuadratureError> {
    cfg.validate()?;
    check_integrable(f)?;
    if epsilons.is_empty()
        || epsilons.iter().any(|e| !(e.is_finite() && *e > 0.0))
        || epsilons.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(QuadratureError::InvalidEpsilons);
    }
    let sites = find_poles(f)?;
    if sites.iter().any(|s| s.on_real_axis && s.location.re == 0.0) {
        return Err(ResidueError::AmbiguousShift.into());
    }
    cfg.check_poles(&sites)?;
    let r = cfg.truncation_radius;
    let lead = *f.denominator().last().expect("nonempty");
    let direction = match shift {
        Shift::Outgoing => 1.0,
        Shift::Incoming => -1.0,
    };

    let mut diag = Diagnostics::default();
    for &eps in epsilons {
        let moved: Vec<(Complex64, u32)> = sites
            .iter()
            .map(|s| {
                let z = if s.on_real_axis {
                    s.location + Complex64::new(0.0, eps * direction * s.location.re.signum())
                } else {
                    s.location
                };
                (z, s.multiplicity)
            })
            .collect();
        let g = |x: f64| {
            let z = Complex64::new(x, 0.0);
            let mut den = Complex64::new(lead, 0.0);
            for (p, m) in &moved {
                den *= (z - p).powu(*m);
            }
            let v = poly::eval_real(f.numerator(), x) / den * Complex64::new(0.0, f.osc_freq() * x).exp();
            (v.re, v.im)
        };
        let pts = breakpoints(-r..r, &sites, &[]);
        let piece = require(integrate_breaks(&g, &pts, cfg.segment_tolerance), "shifted panels")?;
        diag.segments += piece.segments;
        diag.stages.push(Stage {
            parameter: eps,
            value: piece.value,
            panel_error: piece.error,
        });
    }

    let ys: Vec<Complex64> = diag.stages.iter().map(|s| s.value).collect();
    diag.observed_order = observed_order(epsilons, &ys);
    let lead_order = match diag.observed_order {
        Some(p) if (p - p.round()).abs() < 0.25 && p.round() >= 1.0 => p.round(),
        Some(p) if p > 0.0 => p,
        _ => 1.0,
    };
    let exponents: Vec<f64> = (0..epsilons.len()).map(|j| lead_order + j as f64).collect();
    let seq = extrapolant_sequence(epsilons, &ys, &exponents[..epsilons.len() - 1]);
    let best = seq.last().expect("at least one extrapolant");
    diag.extrapolants = seq.iter().map(|e| e.value).collect();
    diag.panel_error = propagated(&best.weights, &diag.stages);
    let diffs: Vec<f64> = seq.windows(2).map(|w| (w[1].value - w[0].value).norm()).collect();
    diag.extrapolation_error = diffs.last().copied().unwrap_or(0.0);
    if let [.., prev, last] = diffs[..] {
        let floor = 10.0 * cfg.segment_tolerance * best.value.norm().max(1.0);
        if last > prev && last > floor {
            return Err(QuadratureError::NoConvergence {
                stage: "epsilon extrapolation",
                detail: format!("extrapolant differences grew from {prev:e} to {last:e}"),
            });
        }
    }
    let core = best.value;
    finish(core, diag, tail::two_sided_tail(f, r, cfg))
}
