//! Closed forms for `∫ dx x^r (x²−σ²)^s`, first in the convergent
//! negative-dimension regime and then continued to the propagator powers
//! where the integral has real poles.

use ndim_scatter::engine::{moment_integral, ndim_ac, ndim_power_integral, ndim_rs, ndim_rs_ac};
use ndim_scatter::{BranchPrescription, HalfInteger};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("∫ dx (x²−a²)^k before continuation");
    for k in 0..4 {
        println!("  k = {k}: {}", ndim_power_integral(k)?.display_with("a"));
    }

    println!("\n∫ dx (x²−a²)^k after continuation");
    for k in [-1, -2, -3] {
        let row: Vec<String> = BranchPrescription::ALL
            .iter()
            .map(|&b| format!("{b}: {}", ndim_ac(k, b).unwrap().display_with("a")))
            .collect();
        println!("  k = {k}: {}", row.join("   "));
    }

    println!("\n∫ dx x^r (x²−σ²)^s");
    for (r, s) in [(0, "1"), (2, "0"), (2, "1/2"), (4, "-1/2")] {
        let s: HalfInteger = s.parse()?;
        println!("  (r, s) = ({r}, {s}): {}", ndim_rs(r, s)?);
    }
    for (r, s) in [(0, -1), (1, -1), (2, -1), (0, -2), (3, -2), (1, -3)] {
        println!("  (r, s) = ({r}, {s}) outgoing: {}", ndim_rs_ac(r, s, BranchPrescription::Outgoing)?);
    }

    println!("\nmoments I^m(σ) = ∫ x^m/(x²−σ²)");
    for m in 0..6 {
        let out = moment_integral(m, BranchPrescription::Outgoing)?;
        let pv = moment_integral(m, BranchPrescription::PrincipalValue)?;
        println!("  m = {m}: outgoing {out:<10} pv {pv}");
    }

    let value = ndim_ac(-1, BranchPrescription::Outgoing)?.to_complex(2.0);
    println!("\n∫ dx/(x²−4) on the outgoing branch ≈ {value}");
    Ok(())
}
