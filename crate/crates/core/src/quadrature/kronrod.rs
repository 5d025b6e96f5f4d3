//! 15-point Kronrod / 7-point Gauss panels and global adaptive bisection.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One panel: Kronrod value and `|K − G|`.
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adaptive {
    pub value: f64,
    pub error: f64,
    pub segments: usize,
    pub converged: bool,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then(other.a.total_cmp(&self.a))
    }
}

pub const MAX_SEGMENTS: usize = 4000;

/// Bisects the worst panel until the summed error is below
/// `max(abs_tol, rel_tol·|I|)`.
///
/// The final sum runs left to right so results do not depend on the order
/// panels were refined in.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Adaptive {
    if a == b {
        return Adaptive {
            value: 0.0,
            error: 0.0,
            segments: 0,
            converged: true,
        };
    }
    let (value, error) = gk15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let mut total_value = value;
    let mut total_error = error;
    let mut converged = true;
    while total_error > abs_tol.max(rel_tol * total_value.abs()) {
        if heap.len() >= MAX_SEGMENTS {
            converged = false;
            break;
        }
        let worst = heap.pop().expect("heap is nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            converged = false;
            break;
        }
        let (lv, le) = gk15(f, worst.a, mid);
        let (rv, re) = gk15(f, mid, worst.b);
        total_value += lv + rv - worst.value;
        total_error += le + re - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Panel { a: mid, b: worst.b, value: rv, error: re });
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    Adaptive {
        value: panels.iter().map(|p| p.value).sum(),
        error: panels.iter().map(|p| p.error).sum(),
        segments: panels.len(),
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn panel_is_exact_for_polynomials() {
        let (v, e) = gk15(&|x: f64| x.powi(10) + 3.0 * x.powi(3), -1.0, 1.0);
        assert!((v - 2.0 / 11.0).abs() < 1e-15);
        assert!(e < 1e-2);
        let (v, _) = gk15(&|x: f64| x.powi(22), 0.0, 1.0);
        assert!((v - 1.0 / 23.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_smooth_and_peaked() {
        let r = adaptive(&|x: f64| x.sin(), 0.0, PI, 1e-12, 1e-12);
        assert!(r.converged && (r.value - 2.0).abs() < 1e-13);
        let eps = 1e-3;
        let r = adaptive(&|x: f64| eps / (x * x + eps * eps), -1.0, 1.0, 1e-10, 1e-10);
        let exact = 2.0 * (1.0 / eps).atan();
        assert!(r.converged && (r.value - exact).abs() < 1e-9, "{}", r.value - exact);
    }

    #[test]
    fn empty_interval() {
        assert_eq!(adaptive(&|x: f64| x, 1.0, 1.0, 1e-10, 0.0).value, 0.0);
    }
}
