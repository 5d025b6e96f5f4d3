//! The seven acceptance criteria. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::*;
use ndim_scatter::algebra::{gamma_duplication_check, pochhammer, Pochhammer};
use ndim_scatter::engine::{
    exponential_integral, match_double_series, match_single_series, ndim_ac, ndim_evaluate, scattering_integral,
    trig_integrals, x_exponential_integral, SeriesMode,
};
use ndim_scatter::quadrature::{default_epsilons, epsilon_shift_quadrature, pv_quadrature, QuadratureConfig};
use ndim_scatter::residue::{
    find_poles, principal_value, semicircle_contribution, shifted_value, Half, RationalOscIntegrand, Sense, Shift,
};
use ndim_scatter::{BranchPrescription, Complex64, ExactValue, HalfInteger, Integrand};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_budget(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent <= budget, || format!("{what} took {spent:?}, budget {budget:?}"))
}

fn ndim_core_value() -> Outcome {
    let start = Instant::now();
    let out = ndim_ac(-1, BranchPrescription::Outgoing).map_err(|e| e.to_string())?;
    ensure(*out.coeff() == BigRational::from_integer(BigInt::from(1)), || format!("coeff {}", out.coeff()))?;
    ensure(out.phase() == 1, || format!("phase {}", out.phase()))?;
    ensure(out.pi_half_power() == 2, || format!("pi_half_power {}", out.pi_half_power()))?;
    ensure(out.sym_power() == -1, || format!("sym_power {}", out.sym_power()))?;
    let inc = ndim_ac(-1, BranchPrescription::Incoming).map_err(|e| e.to_string())?;
    ensure(inc == -(ExactValue::i() * ExactValue::pi() * ExactValue::symbol(-1)), || format!("incoming {inc}"))?;
    let pv = ndim_ac(-1, BranchPrescription::PrincipalValue).map_err(|e| e.to_string())?;
    ensure(pv.is_zero(), || format!("pv {pv}"))?;
    within_budget(start, Duration::from_millis(100), "exact evaluation")?;
    Ok(format!("outgoing {out}, incoming {inc}, pv {pv}"))
}

fn scattering_closed_forms() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for sigma in [0.5, 1.0, 2.0, PI / 3.0] {
        let (out_ref, inc_ref, pv_ref) = scattering_reference(sigma);
        let f = pole_pair(1, sigma, 1.0);
        for (branch, reference) in [
            (BranchPrescription::Outgoing, out_ref),
            (BranchPrescription::Incoming, inc_ref),
            (BranchPrescription::PrincipalValue, pv_ref),
        ] {
            let ndim = scattering_integral(sigma, branch).map_err(|e| e.to_string())?;
            ensure(rel_close(ndim, reference, CLOSED_FORM_REL), || {
                format!("σ={sigma} {branch}: {ndim} vs closed form {reference}")
            })?;
            let oracle = match Shift::try_from(branch) {
                Ok(shift) => shifted_value(&f, shift, 0.0),
                Err(_) => principal_value(&f),
            }
            .map_err(|e| e.to_string())?
                / Complex64::i();
            let dev = (ndim - oracle).norm() / ndim.norm();
            worst = worst.max(dev);
            ensure(dev <= ORACLE_REL, || format!("σ={sigma} {branch}: ndim {ndim} vs residue {oracle}"))?;
        }
    }
    let third = scattering_integral(PI / 3.0, BranchPrescription::PrincipalValue).map_err(|e| e.to_string())?;
    ensure((third - c(PI / 2.0, 0.0)).norm() <= 1e-13, || format!("σ=π/3 pv {third}"))?;
    within_budget(start, Duration::from_millis(500), "closed forms")?;
    Ok(format!("max relative ndim/residue deviation {worst:.1e}"))
}

fn quadrature_vs_closed_form() -> Outcome {
    let mut notes = Vec::new();
    for sigma in [1.0, 2.0] {
        let start = Instant::now();
        let f = pole_pair(1, sigma, 1.0);
        let cfg = QuadratureConfig::for_integrand(&f).map_err(|e| e.to_string())?;
        let est = pv_quadrature(&f, &cfg).map_err(|e| e.to_string())?;
        let err = (est.value.im - PI * sigma.cos()).abs();
        ensure(err <= TRIANGLE_ABS, || format!("σ={sigma}: sin part {} vs π cos σ", est.value.im))?;
        within_budget(start, Duration::from_secs(5), "x sin x quadrature")?;
        notes.push(format!("σ={sigma} err {err:.1e}"));
    }
    let start = Instant::now();
    let f = pole_pair(0, 1.0, 0.0);
    let est = pv_quadrature(&f, &QuadratureConfig::default()).map_err(|e| e.to_string())?;
    ensure(est.value.norm() <= PV_ZERO_ABS, || format!("1/(x²−1): {}", est.value))?;
    within_budget(start, Duration::from_secs(5), "1/(x²−1) quadrature")?;
    notes.push(format!("1/(x²−1) |v| {:.1e}", est.value.norm()));
    Ok(notes.join(", "))
}

fn epsilon_shift_convergence() -> Outcome {
    let start = Instant::now();
    let f = pole_pair(0, 1.0, 0.0);
    let cfg = QuadratureConfig::default();
    let est = epsilon_shift_quadrature(&f, Shift::Outgoing, &[1e-1, 1e-2, 1e-3], &cfg).map_err(|e| e.to_string())?;
    let limit_err = (est.value - c(0.0, PI)).norm();
    ensure(limit_err <= SHIFT_LIMIT_ABS, || format!("extrapolated {} vs iπ", est.value))?;
    let eps = 1e-2;
    let fixed = epsilon_shift_quadrature(&f, Shift::Outgoing, &[eps], &cfg).map_err(|e| e.to_string())?;
    let finite = c(0.0, PI) / c(1.0, eps);
    let fixed_err = (fixed.value - finite).norm();
    ensure(fixed_err <= FIXED_EPS_ABS, || format!("ε=1e-2: {} vs iπ/(1+iε) = {finite}", fixed.value))?;
    within_budget(start, Duration::from_secs(10), "ε-shift quadrature")?;
    Ok(format!("limit err {limit_err:.1e}, fixed-ε err {fixed_err:.1e}"))
}

fn series_identities() -> Outcome {
    let start = Instant::now();
    let single = match_single_series();
    ensure(single.holds(), || "single-series identity fails".into())?;
    ensure(single.checks.len() == 26, || format!("{} single checks", single.checks.len()))?;
    let double = match_double_series();
    ensure(double.holds(), || "double-series identity fails".into())?;
    for m in (0..=20).step_by(2) {
        ensure(gamma_duplication_check(m) == Ok(true), || format!("duplication fails at m={m}"))?;
    }
    within_budget(start, Duration::from_secs(1), "series identities")?;
    Ok(format!(
        "{} single, {} double checks, duplication m ≤ 20, {:?}",
        single.checks.len(),
        double.checks.len(),
        start.elapsed()
    ))
}

fn oracle_triangle() -> Outcome {
    let start = Instant::now();
    let mut worst: (f64, String) = (0.0, String::new());
    for r in [0u32, 1] {
        for a in FREQUENCIES {
            for sigma in SIGMAS {
                let integrand = Integrand::new(r, -1, a, sigma).map_err(|e| e.to_string())?;
                let f = integrand.to_rational();
                let cfg = QuadratureConfig::for_integrand(&f).map_err(|e| e.to_string())?;
                for branch in BranchPrescription::ALL {
                    let ndim = ndim_evaluate(&integrand, branch, None).map_err(|e| e.to_string())?.value;
                    let (residue, quad) = match Shift::try_from(branch) {
                        Ok(shift) => (
                            shifted_value(&f, shift, 0.0),
                            epsilon_shift_quadrature(&f, shift, &default_epsilons(&f).map_err(|e| e.to_string())?, &cfg),
                        ),
                        Err(_) => (principal_value(&f), pv_quadrature(&f, &cfg)),
                    };
                    let residue = residue.map_err(|e| e.to_string())?;
                    let quad = quad.map_err(|e| e.to_string())?.value;
                    let dev = [(ndim - residue).norm(), (ndim - quad).norm(), (residue - quad).norm()]
                        .into_iter()
                        .fold(0.0, f64::max);
                    let label = format!("r={r} a={a} σ={sigma} {branch}");
                    ensure(dev <= TRIANGLE_ABS, || format!("{label}: deviation {dev:.2e}"))?;
                    if dev > worst.0 {
                        worst = (dev, label);
                    }
                }
            }
        }
    }
    within_budget(start, Duration::from_secs(60), "triangle family")?;
    Ok(format!("36 cases, worst {:.1e} at {}, {:?}", worst.0, worst.1, start.elapsed()))
}

fn half_integer(range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = HalfInteger> {
    range.prop_map(HalfInteger::from_twice)
}

/// `(x − p)(x − q)(x² + bx + c)` with `p < 0 < q` and `b² < 4c`.
fn simple_pole_integrand() -> impl Strategy<Value = RationalOscIntegrand> {
    (0.3f64..3.0, 0.3f64..3.0, -1.0f64..1.0, 0.5f64..3.0, 0.0f64..3.0, prop::collection::vec(-2.0f64..2.0, 1..=2))
        .prop_map(|(p, q, b, c, a, num)| {
            let real = [-p * q, p - q, 1.0];
            let complex = [c + b * b / 4.0, b, 1.0];
            let den = ndim_scatter::residue::poly_mul_real(&real, &complex);
            RationalOscIntegrand::new(num, den, a).unwrap()
        })
}

/// Runs one suite on a fresh runner seeded from `seed` and returns how many
/// cases it executed.
fn run_property<S: Strategy>(
    seed: &mut u8,
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<usize, String> {
    let config = Config {
        cases: 1000,
        failure_persistence: None,
        rng_algorithm: RngAlgorithm::ChaCha,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[*seed; 32]));
    *seed += 1;
    let count = std::cell::Cell::new(0);
    runner
        .run(&strategy, |v| {
            count.set(count.get() + 1);
            test(v)
        })
        .map_err(|e| format!("{name}: {e}"))?;
    Ok(count.get())
}

fn invariant_suites() -> Outcome {
    let start = Instant::now();
    let mut seed = 7u8;
    let mut counts = Vec::new();

    counts.push(run_property(
        &mut seed,
        "pochhammer cocycle",
        (half_integer(-12..=12), half_integer(-12..=12), half_integer(-12..=12)),
        |(alpha, beta, gamma)| {
            if let (Pochhammer::Finite(ab), Pochhammer::Finite(bg), Pochhammer::Finite(whole)) =
                (pochhammer(alpha, beta), pochhammer(alpha + beta, gamma), pochhammer(alpha, beta + gamma))
            {
                prop_assert_eq!(whole, ab * bg);
            }
            Ok(())
        },
    )?);

    counts.push(run_property(&mut seed, "branch conjugacy", (0.05f64..5.0, 0.05f64..5.0), |(a, sigma)| {
        let e = |b| exponential_integral(a, sigma, b, SeriesMode::Closed).unwrap();
        prop_assert_eq!(e(BranchPrescription::Incoming), e(BranchPrescription::Outgoing).conj());
        let s = |b| scattering_integral(sigma, b).unwrap();
        prop_assert_eq!(s(BranchPrescription::Incoming), s(BranchPrescription::Outgoing).conj());
        // x·e^{iax} is odd under reflection, so conjugation also flips the sign
        let x = |b| x_exponential_integral(a, sigma, b).unwrap();
        let (out, inc) = (x(BranchPrescription::Outgoing), x(BranchPrescription::Incoming));
        prop_assert!(rel_close(inc, -out.conj(), CLOSED_FORM_REL), "{} vs {}", inc, -out.conj());
        Ok(())
    })?);

    counts.push(run_property(&mut seed, "pv realness", (0.05f64..5.0, 0.05f64..5.0), |(a, sigma)| {
        let pv = BranchPrescription::PrincipalValue;
        prop_assert_eq!(exponential_integral(a, sigma, pv, SeriesMode::Closed).unwrap().im, 0.0);
        prop_assert_eq!(trig_integrals(a, sigma, pv).unwrap().sin_part.im, 0.0);
        prop_assert_eq!(scattering_integral(sigma, pv).unwrap().im, 0.0);
        let series = exponential_integral(a, sigma, pv, SeriesMode::Terms(40)).unwrap();
        prop_assert!(series.im.abs() <= 1e-12, "series imaginary part {}", series.im);
        Ok(())
    })?);

    counts.push(run_property(&mut seed, "sum rule", simple_pole_integrand(), |f| {
        let out = shifted_value(&f, Shift::Outgoing, 0.0).unwrap();
        let inc = shifted_value(&f, Shift::Incoming, 0.0).unwrap();
        let pv = principal_value(&f).unwrap();
        let scale = out.norm().max(inc.norm()).max(1.0);
        prop_assert!((pv - (out + inc) / 2.0).norm() <= SUM_RULE_ABS * scale, "{} vs {}", pv, (out + inc) / 2.0);
        Ok(())
    })?);

    counts.push(run_property(&mut seed, "contour assembly", 0.05f64..20.0, |a| {
        let f = pole_pair(0, a, 0.0);
        let sites = find_poles(&f).unwrap();
        let pv = principal_value(&f).unwrap();
        let left = semicircle_contribution(&f, &sites[0], Sense::Clockwise, Half::Upper).unwrap();
        let right = semicircle_contribution(&f, &sites[1], Sense::Clockwise, Half::Upper).unwrap();
        prop_assert!(rel_close(left, c(0.0, PI / (2.0 * a)), 1e-14), "left {}", left);
        prop_assert!(rel_close(right, c(0.0, -PI / (2.0 * a)), 1e-14), "right {}", right);
        prop_assert!((pv + left + right).norm() <= 1e-14 * (PI / a).max(1.0));
        Ok(())
    })?);

    counts.push(run_property(&mut seed, "refinement monotonicity", (0.5f64..2.0, 7i32..=10), |(sigma, digits)| {
        let f = pole_pair(0, sigma, 0.0);
        let exact = principal_value(&f).unwrap();
        let mut cfg = QuadratureConfig::default();
        cfg.segment_tolerance = 10f64.powi(-digits);
        let coarse = pv_quadrature(&f, &cfg).unwrap();
        cfg.segment_tolerance /= 2.0;
        let fine = pv_quadrature(&f, &cfg).unwrap();
        let (e0, e1) = ((coarse.value - exact).norm(), (fine.value - exact).norm());
        prop_assert!(e1 <= e0 + fine.error_estimate, "{} then {} (±{})", e0, e1, fine.error_estimate);
        Ok(())
    })?);

    within_budget(start, Duration::from_secs(60), "property suites")?;
    ensure(counts.iter().all(|&n| n >= 1000), || format!("case counts {counts:?}"))?;
    Ok(format!("{} suites, cases {counts:?}, fixed seed, {:?}", counts.len(), start.elapsed()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 ndim core value", ndim_core_value),
        ("2 scattering closed forms", scattering_closed_forms),
        ("3 quadrature vs closed form", quadrature_vs_closed_form),
        ("4 epsilon-shift convergence", epsilon_shift_convergence),
        ("5 series identities", series_identities),
        ("6 oracle triangle", oracle_triangle),
        ("7 invariant suites", invariant_suites),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => report(name, true, &detail),
            Err(detail) => {
                failures += 1;
                report(name, false, &detail);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 7 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
