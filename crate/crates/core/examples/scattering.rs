//! The scattering integral `S(σ) = ∫ x sin x/(x²−σ²)` on each branch:
//! `πe^{iσ}` (outgoing wave), `πe^{−iσ}` (incoming wave), `π cos σ`
//! (principal value).

use std::f64::consts::PI;

use ndim_scatter::engine::{scattering_integral, trig_integrals, x_exponential_integral};
use ndim_scatter::BranchPrescription;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>8}  {:>28}  {:>28}  {:>12}", "σ", "outgoing", "incoming", "pv");
    for sigma in [0.5, 1.0, PI / 3.0, 2.0, 5.0] {
        let s = |b| scattering_integral(sigma, b);
        println!(
            "{sigma:>8.4}  {:>28.12}  {:>28.12}  {:>12.9}",
            s(BranchPrescription::Outgoing)?,
            s(BranchPrescription::Incoming)?,
            s(BranchPrescription::PrincipalValue)?.re,
        );
    }

    let (a, sigma) = (2.0, 3.0);
    println!("\nfrequency a = {a}, σ = {sigma}");
    for branch in BranchPrescription::ALL {
        let ex = x_exponential_integral(a, sigma, branch)?;
        let parts = trig_integrals(a, sigma, branch)?;
        println!(
            "  {branch:<8} ∫x e^(iax)/(x²−σ²) = {ex:.10}   cos part {}   sin part {:.10}",
            parts.cos_part, parts.sin_part
        );
    }
    Ok(())
}
