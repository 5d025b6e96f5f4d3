//! Principal values by direct quadrature: symmetric excision around each
//! pole, extrapolation in the excision radius, and a tail beyond `R`.
//! Excising asymmetrically gives a sequence that never settles.

use ndim_scatter::quadrature::{asymmetric_excision, pv_quadrature, tail_correction, QuadratureConfig};
use ndim_scatter::residue::{principal_value, RationalOscIntegrand};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("1/(x² − 1)", RationalOscIntegrand::new(vec![1.0], vec![-1.0, 0.0, 1.0], 0.0)?),
        ("1/(x² + 1)", RationalOscIntegrand::new(vec![1.0], vec![1.0, 0.0, 1.0], 0.0)?),
        ("x e^(ix)/(x² − 1)", RationalOscIntegrand::new(vec![0.0, 1.0], vec![-1.0, 0.0, 1.0], 1.0)?),
        ("x e^(2ix)/(x² − 1/4)", RationalOscIntegrand::new(vec![0.0, 1.0], vec![-0.25, 0.0, 1.0], 2.0)?),
    ];
    for (name, f) in &cases {
        let cfg = QuadratureConfig::for_integrand(f)?;
        let est = pv_quadrature(f, &cfg)?;
        let exact = principal_value(f)?;
        let d = &est.diagnostics;
        println!("{name}");
        println!("  quadrature {:.14} ± {:.1e}   residues {:.14}", est.value, est.error_estimate, exact);
        println!(
            "  R = {:.2}, {} panels, tail {:.3e}, extrapolation error {:.1e}",
            cfg.truncation_radius,
            d.segments,
            d.tail.norm(),
            d.extrapolation_error
        );
        for s in &d.stages {
            println!("    δ = {:<7.1e} {:.12}", s.parameter, s.value);
        }
    }

    let f = &cases[0].1;
    println!("\ntail of 1/(x² − 1) beyond 50: {:.12} (ln(51/49) = {:.12})", tail_correction(f, 50.0, &QuadratureConfig::default()).re, (51.0f64 / 49.0).ln());

    // 1/((x−1)(x²+1)) has one real pole, so a lopsided hole leaves a ln δ drift
    let g = RationalOscIntegrand::new(vec![1.0], vec![-1.0, 1.0, -1.0, 1.0], 0.0)?;
    let mut cfg = QuadratureConfig::for_integrand(&g)?;
    cfg.excision_radii = vec![1e-1, 1e-2, 1e-3, 1e-4];
    println!("\n1/((x − 1)(x² + 1)), hole (1 − δ, 1 + δ²); pv is {:.10}", principal_value(&g)?.re);
    for (delta, v) in asymmetric_excision(&g, &cfg, 2.0)? {
        println!("  δ = {delta:<7.0e} {:.10}", v.re);
    }
    Ok(())
}
