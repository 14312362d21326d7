//! Closed forms for two-level absorbers: the matched line (`gamma = delta_ph`)
//! and a broad line (`Gamma > delta_ph`), plus the Gaussian-photon expansion.
//!
//! All envelopes are real. At `tau = 0` the midpoint of the one-sided limits
//! is returned; [`parts_matched_limits`] and [`parts_broad_limits`] give the
//! limits themselves.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, Tolerance};
use crate::specfun::{bessel_j1_over_x, j0};
use crate::waveforms::OneSided;

/// Inner quadrature tolerance for the `x` integrals.
pub(crate) const INNER_TOLERANCE: f64 = 1e-10;

fn inner_tolerance() -> Tolerance {
    Tolerance {
        abs: INNER_TOLERANCE,
        rel: 0.0,
        max_intervals: 4000,
    }
}

/// Dynamical-beat envelope `e^{-D tau} J0(2 sqrt(T D tau)) Theta(tau)` of a
/// causal photon behind a matched line of thickness `t`.
pub fn analytic_matched(delta_ph: f64, t: f64, tau: f64) -> f64 {
    if tau < 0.0 {
        0.0
    } else if tau == 0.0 {
        0.5
    } else {
        (-delta_ph * tau).exp() * j0(2.0 * (t * delta_ph * tau).sqrt())
    }
}

/// `\int_0^{t} e^{-k (t - x)} J0(2 sqrt(x r tau)) dx`.
fn beat_integral(t: f64, k: f64, r_tau: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    let est = integrate(
        |x| (-k * (t - x)).exp() * j0(2.0 * (x * r_tau).sqrt()),
        0.0,
        t,
        &inner_tolerance(),
    )?;
    Ok(est.value)
}

/// Outputs `(b_s, b_a)` for the symmetric and antisymmetric parts behind a
/// matched line.
pub fn analytic_parts_matched(delta_ph: f64, t: f64, tau: f64) -> Result<(f64, f64)> {
    let half = 0.5 * (-0.5 * t).exp();
    if tau < 0.0 {
        let s = half * (delta_ph * tau).exp();
        return Ok((s, -s));
    }
    if tau == 0.0 {
        return Ok((half, 0.5 - half));
    }
    let beat = j0(2.0 * (t * delta_ph * tau).sqrt());
    let inner = 0.5 * beat_integral(t, 0.5, delta_ph * tau)?;
    let damp = 0.5 * (-delta_ph * tau).exp();
    Ok((damp * (beat - inner), damp * (beat + inner)))
}

/// One-sided limits `(b_s, b_a)` at `tau = 0` behind a matched line.
pub fn parts_matched_limits(t: f64) -> (OneSided, OneSided) {
    let half = 0.5 * (-0.5 * t).exp();
    (
        OneSided {
            left: half,
            right: half,
        },
        OneSided {
            left: -half,
            right: 1.0 - half,
        },
    )
}

/// `T_+ = alpha0 l / (Gamma + D)`, `T_- = alpha0 l / (Gamma - D)`.
pub fn broad_thicknesses(delta_ph: f64, gamma_total: f64, t_b: f64) -> Result<(f64, f64)> {
    if gamma_total <= delta_ph {
        return Err(Error::Validity(format!(
            "broad-line forms need Gamma > delta_ph (Gamma = {gamma_total}, delta_ph = {delta_ph})"
        )));
    }
    let a0l = t_b * gamma_total;
    Ok((a0l / (gamma_total + delta_ph), a0l / (gamma_total - delta_ph)))
}

/// Outputs `(b_s, b_a)` behind a broad line of thickness `t_b = alpha0 l / Gamma`.
pub fn analytic_parts_broad(delta_ph: f64, gamma_total: f64, t_b: f64, tau: f64) -> Result<(f64, f64)> {
    let (tp, tm) = broad_thicknesses(delta_ph, gamma_total, t_b)?;
    if tau < 0.0 {
        let s = 0.5 * (delta_ph * tau - tp).exp();
        return Ok((s, -s));
    }
    let ep = (-tp).exp();
    if tau == 0.0 {
        return Ok((0.5 * ep, 0.5 * (1.0 - ep)));
    }
    let gm = beat_integral(tm, 1.0, (gamma_total - delta_ph) * tau)?;
    let gp = beat_integral(tp, 1.0, (gamma_total + delta_ph) * tau)?;
    let slow = 0.5 * (-delta_ph * tau - tm).exp();
    let fast = 0.5 * (-gamma_total * tau).exp();
    Ok((slow + fast * (gm - gp), slow + fast * (gm + gp)))
}

/// One-sided limits `(b_s, b_a)` at `tau = 0` behind a broad line.
pub fn parts_broad_limits(delta_ph: f64, gamma_total: f64, t_b: f64) -> Result<(OneSided, OneSided)> {
    let (tp, _) = broad_thicknesses(delta_ph, gamma_total, t_b)?;
    let half = 0.5 * (-tp).exp();
    Ok((
        OneSided {
            left: half,
            right: half,
        },
        OneSided {
            left: -half,
            right: 1.0 - half,
        },
    ))
}

/// Two-term expansion for a causal photon behind a broad line (`D << Gamma`):
/// `e^{-Gamma tau}[J0(2 sqrt(a tau)) + (Gamma - D) tau J1(2 sqrt(a tau))/sqrt(a tau)]`,
/// `a = alpha0 l`.
pub fn approx_broad(delta_ph: f64, gamma_total: f64, alpha0_l: f64, tau: f64) -> f64 {
    if tau < 0.0 {
        return 0.0;
    }
    if tau == 0.0 {
        return 0.5;
    }
    let x = 2.0 * (alpha0_l * tau).sqrt();
    // J1(x)/(x/2) = 2 J1(x)/x
    let second = (gamma_total - delta_ph) * tau * 2.0 * bessel_j1_over_x(x);
    (-gamma_total * tau).exp() * (j0(x) + second)
}

/// `(eta, f)` of the Gaussian expansion, `f = (D/Gamma)^2`, `eta = 1/sqrt(1 - f T)`.
pub fn gaussian_eta(delta_ph: f64, gamma: f64, t: f64) -> Result<f64> {
    let f = (delta_ph / gamma).powi(2);
    if f * t >= 1.0 {
        return Err(Error::Validity(format!(
            "Gaussian expansion needs f*T < 1 with f = (delta_ph/Gamma)^2 (f*T = {})",
            f * t
        )));
    }
    Ok(1.0 / (1.0 - f * t).sqrt())
}

/// Gaussian photon `e^{-D^2 t^2 / 4}` behind a line of width `gamma` and
/// thickness `t`, with the response expanded to second order in `nu`:
/// `eta exp[-T - eta^2 D^2 (tau + T/Gamma)^2 / 4]`.
pub fn gaussian_broad(delta_ph: f64, gamma: f64, t: f64, tau: f64) -> Result<f64> {
    let eta = gaussian_eta(delta_ph, gamma, t)?;
    let x = eta * delta_ph * (tau + t / gamma);
    Ok(eta * (-t - 0.25 * x * x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn matched_beat_zero_crossing() {
        let j01 = 2.404_825_557_695_773;
        let tau = j01 * j01 / 40.0;
        assert!(analytic_matched(1.0, 10.0, tau).abs() < 1e-14);
        assert_relative_eq!(tau, 0.14458, max_relative = 1e-4);
        assert_eq!(analytic_matched(1.0, 10.0, -0.1), 0.0);
        assert_relative_eq!(analytic_matched(1.0, 10.0, 1e-14), 1.0, max_relative = 1e-12);
        assert_relative_eq!(analytic_matched(2.0, 0.0, 0.3), (-0.6f64).exp(), max_relative = 1e-15);
    }

    #[test]
    fn matched_boundary_values() {
        let e = 0.5 * (-5.0f64).exp();
        let (s, a) = analytic_parts_matched(1.0, 10.0, -1e-12).unwrap();
        assert!((s - e).abs() < 1e-9 && (a + e).abs() < 1e-9);
        let (s, a) = analytic_parts_matched(1.0, 10.0, 1e-12).unwrap();
        assert!((s - e).abs() < 1e-9 && (a - (1.0 - e)).abs() < 1e-9);
        let (s0, a0) = analytic_parts_matched(1.0, 10.0, 0.0).unwrap();
        let (ls, la) = parts_matched_limits(10.0);
        assert_relative_eq!(s0, ls.midpoint(), max_relative = 1e-15);
        assert_relative_eq!(a0, la.midpoint(), max_relative = 1e-15);
        assert_relative_eq!(a0, 0.5 * (1.0 - (-5.0f64).exp()), max_relative = 1e-15);
    }

    #[test]
    fn matched_parts_sum_to_beat() {
        for tau in [0.01, 0.14, 0.5, 1.0, 3.0, 7.5] {
            let (s, a) = analytic_parts_matched(1.0, 10.0, tau).unwrap();
            assert!((s + a - analytic_matched(1.0, 10.0, tau)).abs() < 1e-9);
        }
        for tau in [-3.0, -0.2] {
            let (s, a) = analytic_parts_matched(1.0, 10.0, tau).unwrap();
            assert_eq!(s + a, 0.0);
        }
    }

    #[test]
    fn broad_limits_and_precursor() {
        let (tp, tm) = broad_thicknesses(1.0, 10.0, 10.0).unwrap();
        assert_relative_eq!(tp, 100.0 / 11.0);
        assert_relative_eq!(tm, 100.0 / 9.0);
        let (s, a) = analytic_parts_broad(1.0, 10.0, 10.0, -0.5).unwrap();
        assert_relative_eq!(s, 0.5 * (-0.5 - tp).exp(), max_relative = 1e-15);
        assert_eq!(a, -s);
        let (_, a0) = analytic_parts_broad(1.0, 10.0, 10.0, 0.0).unwrap();
        assert_relative_eq!(a0, 0.5 * (1.0 - (-tp).exp()), max_relative = 1e-15);
        let (ls, la) = parts_broad_limits(1.0, 10.0, 10.0).unwrap();
        let (s, a) = analytic_parts_broad(1.0, 10.0, 10.0, 1e-13).unwrap();
        assert!((s - ls.right).abs() < 1e-8 && (a - la.right).abs() < 1e-8);
        assert!(analytic_parts_broad(1.0, 1.0, 10.0, 0.3).is_err());
    }

    #[test]
    fn broad_approximation_bound() {
        let mut worst: f64 = 0.0;
        for i in 1..=400 {
            let tau = 2.0 * i as f64 / 400.0;
            let (s, a) = analytic_parts_broad(1.0, 10.0, 10.0, tau).unwrap();
            worst = worst.max((approx_broad(1.0, 10.0, 100.0, tau) - s - a).abs());
        }
        assert!(worst < 0.05, "{worst}");
        assert!(worst > 1e-3);
        assert_relative_eq!(approx_broad(1.0, 10.0, 100.0, 1e-13), 1.0, max_relative = 1e-5);
    }

    #[test]
    fn approx_broad_leading_term_ignores_source_width() {
        let tau = 0.37;
        let a = approx_broad(1.0, 10.0, 100.0, tau);
        let b = approx_broad(0.1, 10.0, 100.0, tau);
        let x = 2.0 * (100.0f64 * tau).sqrt();
        let slope = (-10.0 * tau).exp() * tau * 2.0 * bessel_j1_over_x(x);
        assert_relative_eq!(b - a, 0.9 * slope, max_relative = 1e-12);
    }

    #[test]
    fn gaussian_expansion() {
        assert_eq!(gaussian_broad(1.0, 20.0, 0.0, 0.0).unwrap(), 1.0);
        let t = 2.0;
        let peak = gaussian_broad(1.0, 20.0, t, -t / 20.0).unwrap();
        let eta = 1.0 / (1.0f64 - t / 400.0).sqrt();
        assert_relative_eq!(peak, eta * (-t).exp(), max_relative = 1e-15);
        assert!(matches!(gaussian_broad(1.0, 1.0, 1.0, 0.0), Err(Error::Validity(_))));
    }
}
