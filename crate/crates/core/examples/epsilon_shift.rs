//! Moving the real poles off the axis by `±iε` makes the integral proper.
//! The values are extrapolated to `ε → 0` and compared with the finite-ε
//! closed form `iπ/(a + iε)`.

use ndim_scatter::quadrature::{default_epsilons, epsilon_shift_quadrature, QuadratureConfig};
use ndim_scatter::residue::{shifted_value, RationalOscIntegrand, Shift};
use ndim_scatter::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = RationalOscIntegrand::new(vec![1.0], vec![-1.0, 0.0, 1.0], 0.0)?;
    let cfg = QuadratureConfig::default();
    for shift in [Shift::Outgoing, Shift::Incoming] {
        let est = epsilon_shift_quadrature(&f, shift, &[1e-1, 1e-2, 1e-3], &cfg)?;
        let d = &est.diagnostics;
        println!("1/(x² − 1), {shift}");
        // stages cover |x| ≤ R; the tail beyond R is added once, after extrapolation
        for s in &d.stages {
            let exact = shifted_value(&f, shift, s.parameter)?;
            println!("  ε = {:<6} {:.12}  residues {:.12}", s.parameter, s.value + d.tail, exact);
        }
        println!("  observed order {:.3?}", d.observed_order);
        println!("  limit {:.10} ± {:.1e} (limit value {})", est.value, est.error_estimate, shifted_value(&f, shift, 0.0)?);
    }

    let eps = 1e-2;
    let one = epsilon_shift_quadrature(&f, Shift::Outgoing, &[eps], &cfg)?;
    let closed = Complex64::new(0.0, std::f64::consts::PI) / Complex64::new(1.0, eps);
    println!("\nε = {eps}: quadrature {:.12}, iπ/(1 + iε) = {closed:.12}", one.value);

    let g = RationalOscIntegrand::new(vec![0.0, 1.0], vec![-4.0, 0.0, 1.0], 1.0)?;
    let eps = default_epsilons(&g)?;
    let est = epsilon_shift_quadrature(&g, Shift::Outgoing, &eps, &QuadratureConfig::for_integrand(&g)?)?;
    println!(
        "x e^(ix)/(x² − 4), ε from {:.0e}: {:.10} ± {:.1e} vs iπe^(2i) = {:.10}",
        eps[0],
        est.value,
        est.error_estimate,
        shifted_value(&g, Shift::Outgoing, 0.0)?
    );
    Ok(())
}
