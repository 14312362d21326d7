//! Real-argument special functions used by the closed-form solutions.
//!
//! `J0`, `J1` and `erf` are the fdlibm rational approximations (via the
//! `libm` crate). The modified Bessel functions are summed here: the power
//! series below [`SERIES_LIMIT`] and the Hankel asymptotic expansion above it,
//! which at the switch point is already converged below one ulp.
//!
//! Every product of the form `e^{-x} I_n(x)` goes through the scaled forms so
//! that thicknesses of several hundred never overflow.

use crate::error::{Error, Result};

/// Order of a Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Zero,
    One,
}

/// Largest argument accepted by the unscaled [`bessel_i`].
pub const BESSEL_I_MAX_ARG: f64 = 700.0;

/// Largest argument accepted by the J Bessel functions.
pub const BESSEL_J_MAX_ARG: f64 = 1.0e4;

const SERIES_LIMIT: f64 = 20.0;

fn check_nonnegative(function: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::domain(function, format!("argument {x} is not finite")));
    }
    if x < 0.0 {
        return Err(Error::domain(function, format!("argument {x} is negative")));
    }
    Ok(())
}

/// `J0(x)` or `J1(x)` for `0 <= x <= 1e4`.
pub fn bessel_j(order: Order, x: f64) -> Result<f64> {
    check_nonnegative("bessel_j", x)?;
    if x > BESSEL_J_MAX_ARG {
        return Err(Error::domain(
            "bessel_j",
            format!("argument {x} exceeds {BESSEL_J_MAX_ARG}"),
        ));
    }
    Ok(match order {
        Order::Zero => j0(x),
        Order::One => j1(x),
    })
}

/// `I0(x)` or `I1(x)` for `0 <= x <= 700`. Use the scaled forms beyond that.
pub fn bessel_i(order: Order, x: f64) -> Result<f64> {
    check_nonnegative("bessel_i", x)?;
    if x > BESSEL_I_MAX_ARG {
        return Err(Error::domain(
            "bessel_i",
            format!("argument {x} exceeds {BESSEL_I_MAX_ARG}; use the scaled form"),
        ));
    }
    Ok(match order {
        Order::Zero => i0e(x) * x.exp(),
        Order::One => i1e(x) * x.exp(),
    })
}

/// `e^{-x} I0(x)`, free of intermediate overflow.
pub fn scaled_bessel_i0(x: f64) -> Result<f64> {
    check_nonnegative("scaled_bessel_i0", x)?;
    Ok(i0e(x))
}

/// `e^{-x} I1(x)`, free of intermediate overflow.
pub fn scaled_bessel_i1(x: f64) -> Result<f64> {
    check_nonnegative("scaled_bessel_i1", x)?;
    Ok(i1e(x))
}

/// Error function. Exactly odd: the sign is applied after evaluating `|x|`.
pub fn erf(x: f64) -> f64 {
    let y = libm::erf(x.abs());
    if x.is_sign_negative() {
        -y
    } else {
        y
    }
}

/// Complementary error function `1 - erf(x)` without cancellation for large `x`.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Scaled complementary error function `e^{x^2} erfc(x)` for `x >= 0`.
///
/// Negative arguments fall back to the direct product, which is finite as
/// long as `x^2` does not overflow the exponential.
pub fn erfcx(x: f64) -> f64 {
    if x < 26.0 {
        return (x * x).exp() * libm::erfc(x);
    }
    // 1/(x sqrt(pi)) * sum (-1)^k (2k-1)!! / (2x^2)^k
    let inv = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..12 {
        term *= -((2 * k - 1) as f64) * inv;
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    sum / (x * std::f64::consts::PI.sqrt())
}

#[inline]
pub(crate) fn j0(x: f64) -> f64 {
    libm::j0(x)
}

#[inline]
pub(crate) fn j1(x: f64) -> f64 {
    libm::j1(x)
}

/// `J1(x)/x`, with the series `1/2 - x^2/16 + x^4/384` near the origin.
pub fn bessel_j1_over_x(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        0.5 - x2 / 16.0 + x2 * x2 / 384.0
    } else {
        j1(x) / x
    }
}

pub(crate) fn i0e(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        power_series_i(0, x) * (-x).exp()
    } else {
        hankel_scaled_i(0, x)
    }
}

pub(crate) fn i1e(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        power_series_i(1, x) * (-x).exp()
    } else {
        hankel_scaled_i(1, x)
    }
}

/// `sum_k (x/2)^{2k+n} / (k! (k+n)!)`; all terms positive.
fn power_series_i(n: u32, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = if n == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    let mut k = 1u32;
    loop {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
        k += 1;
    }
    sum
}

/// `e^{-x} I_n(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(n) / x^k`.
fn hankel_scaled_i(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60u32 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(Order::Zero, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(Order::One, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_i(Order::Zero, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(Order::One, 0.0).unwrap(), 0.0);
        assert_eq!(scaled_bessel_i0(0.0).unwrap(), 1.0);
        assert_eq!(erf(0.0), 0.0);
    }

    #[test]
    fn first_zero_of_j0() {
        let v = bessel_j(Order::Zero, 2.404825557695773).unwrap();
        assert!(v.abs() < 1e-12, "{v}");
    }

    #[test]
    fn scaled_i0_large_argument() {
        // Leading terms of the Hankel expansion at x = 200.
        let x = 200.0;
        let approx = (1.0 + 1.0 / (8.0 * x)) / (2.0 * std::f64::consts::PI * x).sqrt();
        let v = scaled_bessel_i0(x).unwrap();
        assert_relative_eq!(v, approx, max_relative = 1e-5);
        assert!((v - 0.028227).abs() < 1e-6);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            bessel_j(Order::Zero, -1.0),
            Err(Error::Domain { .. })
        ));
        assert!(bessel_j(Order::One, f64::NAN).is_err());
        assert!(bessel_j(Order::Zero, 2e4).is_err());
        assert!(bessel_i(Order::Zero, 701.0).is_err());
        assert!(bessel_i(Order::One, -0.5).is_err());
        assert!(scaled_bessel_i0(-1e-3).is_err());
        assert!(scaled_bessel_i0(f64::INFINITY).is_err());
    }

    #[test]
    fn erf_is_odd() {
        assert_eq!(erf(-1.3), -erf(1.3));
        assert_eq!(erf(-0.0), -0.0);
        assert!(erf(-0.0).is_sign_negative());
    }

    #[test]
    fn j1_over_x_branches_meet() {
        for &x in &[1e-6, 5e-4, 9.99e-4, 1.0001e-3] {
            assert_relative_eq!(bessel_j1_over_x(x), j1(x) / x, max_relative = 1e-13);
        }
        assert_eq!(bessel_j1_over_x(0.0), 0.5);
    }

    #[test]
    fn erfcx_branches_meet() {
        let below = (25.999f64 * 25.999).exp() * libm::erfc(25.999);
        assert_relative_eq!(erfcx(26.0), below, max_relative = 2e-4);
        assert_relative_eq!(erfcx(26.0), 0.021_683_584_850_562_907, max_relative = 1e-13);
    }

    proptest! {
        #[test]
        fn j0_derivative_is_minus_j1(x in 0.0f64..50.0) {
            let h = 1e-5;
            let x = x.max(h);
            let d = (j0(x + h) - j0(x - h)) / (2.0 * h);
            prop_assert!((d + j1(x)).abs() < 1e-8);
        }

        #[test]
        fn erf_derivative_is_gaussian(x in -4.0f64..4.0) {
            let h = 1e-5;
            let d = (erf(x + h) - erf(x - h)) / (2.0 * h);
            let exact = 2.0 / std::f64::consts::PI.sqrt() * (-x * x).exp();
            prop_assert!((d - exact).abs() < 1e-8);
        }

        #[test]
        fn scaled_i0_times_exp_matches_unscaled(x in 0.0f64..50.0) {
            let lhs = scaled_bessel_i0(x).unwrap() * x.exp();
            let rhs = bessel_i(Order::Zero, x).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs);
        }

        #[test]
        fn i1_is_derivative_of_i0(x in 0.1f64..40.0) {
            let h = 1e-5;
            let d = (i0e(x + h) * (x + h).exp() - i0e(x - h) * (x - h).exp()) / (2.0 * h);
            let i1 = i1e(x) * x.exp();
            prop_assert!((d - i1).abs() <= 1e-7 * i1.max(1.0));
        }
    }
}
