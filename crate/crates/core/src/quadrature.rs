//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate falls below `max(abs_tol, rel_tol * |I|)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Stopping rule for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-10,
            rel: 0.0,
            max_intervals: 2000,
        }
    }
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Tolerance {
            abs,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
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
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Segment { a, b, value, error }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        });
    }
    let first = kronrod(&f, a, b);
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    while error > tol.abs.max(tol.rel * value.abs()) {
        if !value.is_finite() {
            break;
        }
        if heap.len() >= tol.max_intervals {
            return Err(Error::NonConvergence(format!(
                "adaptive quadrature on [{a}, {b}] stopped at {} intervals \
                 with error estimate {error:e}",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval cannot be split further in double precision.
            heap.push(worst);
            break;
        }
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Re-sum occasionally to keep rounding drift out of the running totals.
        if heap.len() % 64 == 0 {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let error = heap.iter().map(|s| s.error).sum();
    if !value.is_finite() {
        return Err(Error::NonConvergence(format!(
            "non-finite integrand on [{a}, {b}]"
        )));
    }
    Ok(Estimate {
        value,
        error,
        intervals: heap.len(),
    })
}

/// Integrates `f` over `[a, inf)` through the map `x = a + t/(1-t)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, tol: &Tolerance) -> Result<Estimate> {
    integrate(
        |t: f64| {
            if t >= 1.0 {
                return 0.0;
            }
            let s = 1.0 - t;
            let v = f(a + t / s);
            if v == 0.0 {
                0.0
            } else {
                v / (s * s)
            }
        },
        0.0,
        1.0,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kronrod_rule_is_exact_for_polynomials() {
        // Degree 22 is within the 15-point Kronrod exactness of 3*7+1.
        let est = kronrod(&|x: f64| x.powi(22), -1.0, 1.0);
        assert_relative_eq!(est.value, 2.0 / 23.0, max_relative = 1e-14);
        let est = kronrod(&|x: f64| 3.0 * x * x - x + 2.0, 0.0, 2.0);
        assert_relative_eq!(est.value, 10.0, max_relative = 1e-14);
    }

    #[test]
    fn smooth_and_oscillatory_integrands() {
        let tol = Tolerance::absolute(1e-12);
        let e = integrate(f64::exp, 0.0, 1.0, &tol).unwrap();
        assert_relative_eq!(e.value, std::f64::consts::E - 1.0, max_relative = 1e-13);
        let s = integrate(|x: f64| (50.0 * x).sin(), 0.0, std::f64::consts::PI, &tol).unwrap();
        assert!(s.value.abs() < 1e-11);
    }

    #[test]
    fn endpoint_singularity_converges() {
        let tol = Tolerance {
            abs: 1e-10,
            rel: 0.0,
            max_intervals: 5000,
        };
        let e = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &tol).unwrap();
        assert!((e.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn semi_infinite_lorentzian() {
        let tol = Tolerance::absolute(1e-13);
        let e = integrate_to_infinity(|x| 1.0 / (1.0 + x * x), 0.0, &tol).unwrap();
        assert_relative_eq!(e.value, std::f64::consts::FRAC_PI_2, max_relative = 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let tol = Tolerance {
            abs: 1e-14,
            rel: 0.0,
            max_intervals: 4,
        };
        let r = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &tol);
        assert!(matches!(r, Err(Error::NonConvergence(_))));
    }
}
