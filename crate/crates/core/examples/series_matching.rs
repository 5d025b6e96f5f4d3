//! Term-by-term matching of the two expansions of a Gaussian generating
//! functional, which is where the negative-dimension integrals come from.

use ndim_scatter::engine::{match_double_series, match_single_series, match_single_series_up_to};
use ndim_scatter::HalfInteger;

fn main() {
    let single = match_single_series();
    println!("single propagator");
    for rel in &single.relations {
        println!("  {rel}");
    }
    for k in [0, 3] {
        let n = single.apply(&[("k", HalfInteger::from_int(k))]).expect("k binds");
        println!("  k = {k} → {} = {}", n[0].0, n[0].1);
    }
    let failures = single.checks.iter().filter(|c| !c.holds()).count();
    println!("  {} coefficient identities, {failures} failures", single.checks.len());
    let check = &single.checks[2];
    println!("  at k = 2: {} = {}", check.lhs, check.rhs);

    let deeper = match_single_series_up_to(60);
    println!("  up to k = 60: holds = {}", deeper.holds());

    let double = match_double_series();
    println!("\nx^r times a propagator");
    for rel in &double.relations {
        println!("  {rel}");
    }
    for rel in &double.inverse_relations {
        println!("  {rel}");
    }
    for (l, k) in [(0, 0), (1, 2), (3, 1)] {
        let rs = double
            .apply(&[("l", HalfInteger::from_int(l)), ("k", HalfInteger::from_int(k))])
            .expect("indices bind");
        let shown: Vec<String> = rs.iter().map(|(n, v)| format!("{n} = {v}")).collect();
        println!("  (l, k) = ({l}, {k}) → {}", shown.join(", "));
    }
    println!("  {} identities over r ≤ 10, holds = {}", double.checks.len(), double.holds());
}
