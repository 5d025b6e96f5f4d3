//! Gamma functions and Pochhammer symbols at half-integer arguments, held
//! exactly as `q·i^p·π^{h/2}`.

use ndim_scatter::algebra::{
    gamma_duplication_check, gamma_half_integer, pochhammer, pochhammer_reflect, GammaValue, Pochhammer,
};
use ndim_scatter::HalfInteger;

fn h(s: &str) -> HalfInteger {
    s.parse().expect("half-integer literal")
}

fn main() {
    println!("Γ at half-integers");
    for x in ["-5/2", "-3/2", "-1/2", "1/2", "3/2", "5/2", "0", "-2", "4"] {
        let shown = match gamma_half_integer(h(x)) {
            GammaValue::Finite(v) => v.to_string(),
            GammaValue::Pole { order } => format!("pole of order {order}"),
        };
        println!("  Γ({x:>4}) = {shown}");
    }

    println!("\nPochhammer symbols (α)_β");
    for (alpha, beta) in [("1", "-1/2"), ("1", "1/2"), ("1/2", "3"), ("-3", "2"), ("2", "-3"), ("-2", "-1")] {
        let shown = match pochhammer(h(alpha), h(beta)) {
            Pochhammer::Finite(v) => v.to_string(),
            Pochhammer::Pole => "pole".into(),
            Pochhammer::Zero => "0 (denominator pole)".into(),
        };
        println!("  ({alpha})_{{{beta}}} = {shown}");
    }

    // the rewrite that drives the continuation: 1/(1+k)_{1/2} at k = −1
    let rewritten = pochhammer_reflect(h("1"), h("1/2")).expect("finite");
    println!("\n(−1)^(1/2)/(1)_(−1/2) = {}", rewritten.display_with("a"));

    let even: Vec<u32> = (0..=20).step_by(2).filter(|&m| gamma_duplication_check(m) == Ok(true)).collect();
    println!("duplication relation exact for m = {even:?}");
}
