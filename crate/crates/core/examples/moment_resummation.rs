//! Resumming the moments `I^m(σ) = iπσ^{m−1}` against `(ia)^m/m!` gives the
//! closed form `∫ e^{iax}/(x²−σ²) = (iπ/σ) e^{iaσ}`. The partial sums
//! converge factorially.

use ndim_scatter::engine::{exponential_integral, exponential_partial_sums, oscillatory_series, SeriesMode};
use ndim_scatter::BranchPrescription;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (a, sigma) = (1.0, 2.0);
    for branch in BranchPrescription::ALL {
        let closed = exponential_integral(a, sigma, branch, SeriesMode::Closed)?;
        println!("{branch}: closed form {closed:.12}");
        let sums = exponential_partial_sums(a, sigma, branch, 24)?;
        for n in [0, 2, 4, 8, 12, 16, 20, 24] {
            println!("  N = {n:>2}  {:.12}  |error| {:.2e}", sums[n], (sums[n] - closed).norm());
        }
    }

    // a double pole has no resummed closed form here; the series is the route
    let double = oscillatory_series(0, -2, a, sigma, BranchPrescription::Outgoing, 60)?;
    println!("\n∫ e^(ix)/(x²−4)² outgoing, 60 terms: {double:.12}");
    Ok(())
}
