//! The residue oracle: poles of `num/den`, shifted prescriptions, the
//! half-residue principal value and the pieces of the indented contour.

use ndim_scatter::residue::{
    arc_bound, find_poles, poly_mul_real, principal_value, residue_at, semicircle_contribution, shifted_value,
    shifted_values, Half, RationalOscIntegrand, Sense, Shift,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = 2.0;
    let f = RationalOscIntegrand::new(vec![1.0], vec![-a * a, 0.0, 1.0], 0.0)?;
    let poles = find_poles(&f)?;
    println!("1/(z² − {a}²)");
    for p in &poles {
        println!("  pole {} (multiplicity {}): residue {}", p.location, p.multiplicity, residue_at(&f, p)?);
    }
    for shift in [Shift::Outgoing, Shift::Incoming] {
        println!("  {shift}: {}", shifted_value(&f, shift, 0.0)?);
        for s in shifted_values(&f, shift, &[0.5, 0.1, 0.01])? {
            println!("    ε = {:<5} {:.10}", s.epsilon, s.value);
        }
    }

    let pv = principal_value(&f)?;
    let left = semicircle_contribution(&f, &poles[0], Sense::Clockwise, Half::Upper)?;
    let right = semicircle_contribution(&f, &poles[1], Sense::Clockwise, Half::Upper)?;
    println!("  pv {pv}, small arcs {left} and {right}, closed contour {}", pv + left + right);
    for r in [10.0, 100.0, 1000.0] {
        println!("  |∫ over the arc of radius {r}| ≤ {:.3e}", arc_bound(&f, r));
    }

    // a double real pole and a complex pair
    let sq = [-1.0, 0.0, 1.0];
    let g = RationalOscIntegrand::new(vec![1.0], poly_mul_real(&poly_mul_real(&sq, &sq), &[4.0, 0.0, 1.0]), 0.0)?;
    println!("\n1/((z² − 1)²(z² + 4))");
    for p in find_poles(&g)? {
        println!("  pole {:.6} ×{} on axis {}: residue {:.6}", p.location, p.multiplicity, p.on_real_axis, residue_at(&g, &p)?);
    }
    println!("  outgoing {:.12}", shifted_value(&g, Shift::Outgoing, 0.0)?);
    match principal_value(&g) {
        Ok(v) => println!("  pv {v}"),
        Err(e) => println!("  pv: {e}"),
    }

    let h = RationalOscIntegrand::new(vec![0.0, 1.0], vec![-1.0, 0.0, 1.0], 1.0)?;
    println!("\nz e^(iz)/(z² − 1): pv {:.12}, outgoing {:.12}", principal_value(&h)?, shifted_value(&h, Shift::Outgoing, 0.0)?);
    Ok(())
}
