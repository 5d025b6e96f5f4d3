//! All three methods on a family of integrals, as the `compare` subcommand
//! runs them, with one JSON report printed at the end.

use ndim_scatter::cli::Request;
use ndim_scatter::report::Format;
use ndim_scatter::{BranchPrescription, Integrand};

fn request(r: u32, s: i32, a: f64, sigma: f64, branch: BranchPrescription) -> Request {
    Request {
        integrand: Integrand::new(r, s, a, sigma).expect("valid integrand"),
        branch,
        terms: None,
        overrides: Default::default(),
        truncation_radius: None,
        segment_tolerance: None,
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<28} {:<9} {:>11} {:>9} {:>9} {:>9}", "integrand", "branch", "deviation", "ndim ms", "res ms", "quad ms");
    for (r, s, a) in [(0, -1, 0.0), (0, -2, 0.0), (0, -1, 1.0), (1, -1, 1.0), (1, -1, 2.0)] {
        for branch in BranchPrescription::ALL {
            let report = match request(r, s, a, 1.0, branch).compare(true) {
                Ok(report) => report,
                Err(e) => {
                    println!("{:<28} {branch:<9} {e}", Integrand::new(r, s, a, 1.0)?.describe());
                    continue;
                }
            };
            let t = report.wall_times_ms;
            println!(
                "{:<28} {branch:<9} {:>11.2e} {:>9.3} {:>9.3} {:>9.3}",
                report.integrand,
                report.max_pairwise_deviation.unwrap_or(0.0),
                t.ndim.unwrap_or(0.0),
                t.residue.unwrap_or(0.0),
                t.quadrature.unwrap_or(0.0)
            );
        }
    }

    let report = request(1, -1, 1.0, 1.0, BranchPrescription::Outgoing).compare(false)?;
    println!();
    report.write(Format::Json, false, &mut std::io::stdout())?;
    Ok(())
}
