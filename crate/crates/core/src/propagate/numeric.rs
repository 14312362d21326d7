//! Spectral propagator: `b(l, tau) = (1/2pi) \int b(0, nu) e^{-i nu tau - A(nu) l} dnu`.
//!
//! The output is split as `input(tau) + S(tau) + q(tau)`. The input term is
//! exact (it carries the jump at `tau = 0`). `S` removes the leading terms of
//! the large-`nu` expansion of `b(0,nu)(e^{-Al} - 1)` in closed form, written in
//! the basis `1/(beta - i nu)^n` whose inverse transforms are
//! `tau^{n-1} e^{-beta tau} / (n-1)!`. The remainder decays like a high power of
//! `1/nu` and is summed with one FFT on a uniform frequency mesh.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::laurent::{self, Rational};
use crate::media::AbsorberSpec;
use crate::series::{NumericDiagnostics, Provenance, TimeSeries};
use crate::waveforms::{PhotonWaveform, TimeGrid};

use super::jump_for;

/// Largest FFT the refinement loop will attempt.
const MAX_FFT_POINTS: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    /// Smallest FFT length.
    pub min_points: usize,
    /// Frequency window half-width in units of the largest rate of the problem.
    pub window_factor: f64,
    /// Number of spectral tail terms removed analytically.
    pub tail_terms: usize,
    /// Accepted max-abs change between successive resolutions.
    pub tolerance: f64,
    /// Resolution doublings tried before giving up.
    pub max_refinements: usize,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            min_points: 1 << 18,
            window_factor: 50.0,
            tail_terms: 6,
            tolerance: 1e-5,
            max_refinements: 2,
        }
    }
}

/// `S(nu) = sum_n d_n / (beta - i nu)^n`, `n >= 2`.
#[derive(Debug, Clone)]
struct Tail {
    beta: f64,
    d: Vec<f64>,
}

impl Tail {
    fn none() -> Self {
        Tail {
            beta: 1.0,
            d: Vec::new(),
        }
    }

    fn new(source: &Rational, response: &Rational, terms: usize, beta: f64) -> Self {
        let order = terms + 1;
        let minus_a: Vec<f64> = response.series(order).iter().map(|c| -c).collect();
        let c = laurent::mul(&source.series(order), &laurent::expm1(&minus_a));
        // Coefficient of u^m in u^n (1 + beta u)^{-n} is C(m-1, m-n) (-beta)^{m-n}.
        let mut d = vec![0.0; order + 1];
        for m in 1..=order {
            let mut acc = c[m];
            for n in 1..m {
                acc -= d[n] * binomial(m - 1, m - n) * (-beta).powi((m - n) as i32);
            }
            d[m] = acc;
        }
        debug_assert!(d[1].abs() <= 1e-12 * (1.0 + c.iter().map(|v| v.abs()).fold(0.0, f64::max)));
        Tail { beta, d }
    }

    fn spectrum(&self, nu: f64) -> Complex64 {
        let w = Complex64::new(self.beta, -nu).inv();
        let mut acc = Complex64::new(0.0, 0.0);
        for &dn in self.d.iter().skip(1).rev() {
            acc = (acc + dn) * w;
        }
        acc
    }

    fn time(&self, tau: f64) -> f64 {
        if tau <= 0.0 || self.d.len() < 2 {
            return 0.0;
        }
        let damp = (-self.beta * tau).exp();
        if damp == 0.0 {
            return 0.0;
        }
        let mut power = 1.0;
        let mut acc = 0.0;
        for (n, &dn) in self.d.iter().enumerate().skip(1) {
            if n > 1 {
                power *= tau / (n - 1) as f64;
            }
            acc += dn * power;
        }
        acc * damp
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `e^z - 1` without cancellation for small `|z|`.
fn expm1_complex(z: Complex64) -> Complex64 {
    let half = (0.5 * z.im).sin();
    Complex64::new(
        z.re.exp_m1() * z.im.cos() - 2.0 * half * half,
        z.re.exp() * z.im.sin(),
    )
}

/// Largest rate setting the spectral width of the problem.
pub(crate) fn spectral_scale(w: &PhotonWaveform, a: &AbsorberSpec) -> f64 {
    a.rates()
        .into_iter()
        .chain([w.delta_ph(), a.alpha0_l()])
        .fold(0.0, f64::max)
}

/// Time span over which the output can still be non-negligible beyond the grid.
fn time_margin(w: &PhotonWaveform, a: &AbsorberSpec) -> f64 {
    let slowest = a
        .rates()
        .into_iter()
        .chain([w.delta_ph()])
        .fold(f64::INFINITY, f64::min);
    let eps = 1e-6 * slowest;
    let delay = ((a.spectral_response(eps) - a.spectral_response(-eps)).im / (2.0 * eps)).abs();
    40.0 / slowest + 2.0 * delay
}

struct Pass {
    values: Vec<Complex64>,
    fft_points: usize,
    nu_max: f64,
    nu_step: f64,
}

fn remainder_on_grid<F>(q: F, grid: &TimeGrid, nu_target: f64, period: f64, min_points: usize) -> Result<Pass>
where
    F: Fn(f64) -> Complex64,
{
    let h = grid.spacing();
    let stride = (h * nu_target / PI).ceil().max(1.0) as usize;
    let delta = h / stride as f64;
    let needed = (period / delta).ceil() as usize;
    let n = needed.max(min_points).max(stride * grid.len()).next_power_of_two();
    if n > MAX_FFT_POINTS {
        return Err(Error::NonConvergence(format!(
            "spectral propagator needs {n} FFT points (limit {MAX_FFT_POINTS}); \
             use a coarser grid or a shorter span"
        )));
    }
    let nu_step = 2.0 * PI / (n as f64 * delta);
    let t0 = grid.t_start();
    let mut buf: Vec<Complex64> = (0..n)
        .map(|j| {
            let k = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
            let nu = k * nu_step;
            q(nu) * Complex64::from_polar(1.0, -nu * t0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = nu_step / (2.0 * PI);
    let values = (0..grid.len()).map(|i| buf[i * stride] * scale).collect();
    Ok(Pass {
        values,
        fft_points: n,
        nu_max: PI / delta,
        nu_step,
    })
}

/// Numerical evaluation of the propagation integral on `grid`.
///
/// The resolution is doubled until two successive passes agree to
/// `opts.tolerance` (max-abs on the grid).
pub fn propagate_numeric(
    w: &PhotonWaveform,
    a: &AbsorberSpec,
    grid: &TimeGrid,
    opts: &NumericOptions,
) -> Result<TimeSeries> {
    let tail = match w.spectrum_in_inverse_s() {
        Some(src) => {
            let response = a.response_in_inverse_s();
            let beta = a.alpha0_l().max(a.rates().into_iter().fold(w.delta_ph(), f64::max));
            Tail::new(&src, &response, opts.tail_terms, beta)
        }
        None => Tail::none(),
    };
    let q = |nu: f64| {
        let r = w.spectral_amplitude(nu) * expm1_complex(-a.spectral_response(nu));
        r - tail.spectrum(nu)
    };

    let nu_target = opts.window_factor * spectral_scale(w, a);
    let span = grid.t_end() - grid.t_start();
    let period = span + 2.0 * time_margin(w, a);

    let mut prev = remainder_on_grid(q, grid, nu_target, period, opts.min_points)?;
    let mut accepted = None;
    let mut drift = f64::INFINITY;
    for r in 1..=opts.max_refinements {
        let f = (1usize << r) as f64;
        let next = remainder_on_grid(q, grid, nu_target * f, period * f, opts.min_points << (2 * r))?;
        drift = prev
            .values
            .iter()
            .zip(&next.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        log::debug!(
            "numeric pass {r}: {} points, nu_max {:.4e}, drift {drift:.3e}",
            next.fft_points,
            next.nu_max
        );
        if drift <= opts.tolerance {
            accepted = Some((next, r));
            break;
        }
        prev = next;
    }
    let Some((pass, refinements)) = accepted else {
        return Err(Error::NonConvergence(format!(
            "spectral propagator drift {drift:.3e} exceeds {:.1e} after {} refinements",
            opts.tolerance, opts.max_refinements
        )));
    };

    let amplitude: Vec<Complex64> = pass
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let tau = grid.time(i);
            v + w.time_amplitude(tau) + tail.time(tau)
        })
        .collect();
    let jump = jump_for(w, grid, &amplitude);
    Ok(TimeSeries {
        grid: *grid,
        amplitude,
        provenance: Provenance::Numeric,
        source: *w,
        medium: Some(*a),
        jump,
        diagnostics: Some(NumericDiagnostics {
            fft_points: pass.fft_points,
            nu_max: pass.nu_max,
            nu_step: pass.nu_step,
            drift,
            refinements,
            tail_terms: tail.d.len().saturating_sub(2),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveforms::WaveformKind;
    use approx::assert_relative_eq;

    #[test]
    fn tail_matches_expansion_at_large_frequency() {
        let w = PhotonWaveform::new(WaveformKind::ExponentialCausal, 1.0).unwrap();
        let a = AbsorberSpec::eit(10.0, 1.0, 20.0, 30.0).unwrap();
        let tail = Tail::new(&w.spectrum_in_inverse_s().unwrap(), &a.response_in_inverse_s(), 6, 300.0);
        for nu in [1e5, 3e5, 1e6] {
            let r = w.spectral_amplitude(nu) * expm1_complex(-a.spectral_response(nu));
            let rest = (r - tail.spectrum(nu)).norm();
            // remainder falls off like nu^-8
            assert!(rest < 1e-6 * r.norm() * (1e5 / nu).powi(6), "{nu}: {rest:e}");
        }
    }

    #[test]
    fn tail_time_function_is_inverse_transform() {
        // 1/(beta - i nu)^3  <->  tau^2 e^{-beta tau} / 2
        let tail = Tail {
            beta: 2.0,
            d: vec![0.0, 0.0, 0.0, 1.0],
        };
        assert_relative_eq!(tail.time(0.7), 0.49 * (-1.4f64).exp() / 2.0, max_relative = 1e-14);
        assert_eq!(tail.time(-0.1), 0.0);
        assert_eq!(tail.time(0.0), 0.0);
    }

    #[test]
    fn complex_expm1_small_and_large() {
        let z = Complex64::new(1e-12, -2e-12);
        let e = expm1_complex(z);
        assert_relative_eq!(e.re, 1e-12, max_relative = 1e-9);
        assert_relative_eq!(e.im, -2e-12, max_relative = 1e-9);
        let z = Complex64::new(-3.0, 1.2);
        let e = expm1_complex(z);
        let direct = z.exp() - 1.0;
        assert!((e - direct).norm() < 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(6, 0), 1.0);
        assert_eq!(binomial(6, 6), 1.0);
    }
}
