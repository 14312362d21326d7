//! Source photon envelopes in the rotating frame.
//!
//! Time and frequency domains are linked by
//! `b(t) = (1/2pi) \int b(nu) e^{-i nu t} dnu`, so `b(nu) = \int b(t) e^{i nu t} dt`.
//! Rates and times are dimensionless in the scenario reference rate.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::Rational;
use crate::series::{Jump, Provenance, TimeSeries};

/// Envelope family of a source photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveformKind {
    /// `e^{-D t} Theta(t)`: a photon from a particle excited at `t = 0`.
    ExponentialCausal,
    /// `e^{-D |t|} / 2`, the even (Lorentzian) spectral component.
    SymmetricPart,
    /// `sign(t) e^{-D |t|} / 2`, the odd (dispersion-like) spectral component.
    AntisymmetricPart,
    /// `e^{-D^2 t^2 / 4}`, unit peak.
    Gaussian,
}

impl WaveformKind {
    pub const ALL: [WaveformKind; 4] = [
        WaveformKind::ExponentialCausal,
        WaveformKind::SymmetricPart,
        WaveformKind::AntisymmetricPart,
        WaveformKind::Gaussian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WaveformKind::ExponentialCausal => "exponential_causal",
            WaveformKind::SymmetricPart => "symmetric",
            WaveformKind::AntisymmetricPart => "antisymmetric",
            WaveformKind::Gaussian => "gaussian",
        }
    }
}

impl fmt::Display for WaveformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WaveformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "exponential_causal" | "exponential" | "causal" => Ok(WaveformKind::ExponentialCausal),
            "symmetric" | "symmetric_part" => Ok(WaveformKind::SymmetricPart),
            "antisymmetric" | "antisymmetric_part" => Ok(WaveformKind::AntisymmetricPart),
            "gaussian" => Ok(WaveformKind::Gaussian),
            other => Err(Error::InvalidParameter(format!(
                "unknown waveform '{other}' (expected exponential_causal, symmetric, \
                 antisymmetric or gaussian)"
            ))),
        }
    }
}

/// A single-photon envelope with spectral halfwidth `delta_ph`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonWaveform {
    kind: WaveformKind,
    delta_ph: f64,
}

/// Left and right limits of an envelope at a discontinuity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneSided {
    pub left: f64,
    pub right: f64,
}

impl OneSided {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.left + self.right)
    }
}

impl PhotonWaveform {
    pub fn new(kind: WaveformKind, delta_ph: f64) -> Result<Self> {
        if !(delta_ph.is_finite() && delta_ph > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "photon halfwidth must be positive and finite, got {delta_ph}"
            )));
        }
        Ok(PhotonWaveform { kind, delta_ph })
    }

    pub fn kind(&self) -> WaveformKind {
        self.kind
    }

    pub fn delta_ph(&self) -> f64 {
        self.delta_ph
    }

    /// Coherence time `1/delta_ph`.
    pub fn tau_ph(&self) -> f64 {
        1.0 / self.delta_ph
    }

    /// Lifetime of the emitting state, `tau_ph / 2`.
    pub fn tau_life(&self) -> f64 {
        0.5 / self.delta_ph
    }

    /// True when the envelope vanishes for `t < 0`.
    pub fn is_causal(&self) -> bool {
        self.kind == WaveformKind::ExponentialCausal
    }

    /// Envelope at time `t`. At a jump (`t = 0`) the midpoint is returned.
    pub fn time_amplitude(&self, t: f64) -> f64 {
        let d = self.delta_ph;
        match self.kind {
            WaveformKind::ExponentialCausal => {
                if t > 0.0 {
                    (-d * t).exp()
                } else if t == 0.0 {
                    0.5
                } else {
                    0.0
                }
            }
            WaveformKind::SymmetricPart => 0.5 * (-d * t.abs()).exp(),
            WaveformKind::AntisymmetricPart => {
                if t > 0.0 {
                    0.5 * (-d * t).exp()
                } else if t == 0.0 {
                    0.0
                } else {
                    -0.5 * (d * t).exp()
                }
            }
            WaveformKind::Gaussian => (-0.25 * d * d * t * t).exp(),
        }
    }

    /// One-sided limits at `t = 0` for the kinds that jump there.
    pub fn jump_at_zero(&self) -> Option<OneSided> {
        match self.kind {
            WaveformKind::ExponentialCausal => Some(OneSided {
                left: 0.0,
                right: 1.0,
            }),
            WaveformKind::AntisymmetricPart => Some(OneSided {
                left: -0.5,
                right: 0.5,
            }),
            _ => None,
        }
    }

    /// Fourier transform `b(0, nu)` of the envelope.
    pub fn spectral_amplitude(&self, nu: f64) -> Complex64 {
        let d = self.delta_ph;
        match self.kind {
            WaveformKind::ExponentialCausal => Complex64::new(d, -nu).inv(),
            WaveformKind::SymmetricPart => Complex64::new(d / (d * d + nu * nu), 0.0),
            WaveformKind::AntisymmetricPart => Complex64::new(0.0, nu / (d * d + nu * nu)),
            WaveformKind::Gaussian => {
                let x = nu / d;
                Complex64::new(2.0 * std::f64::consts::PI.sqrt() / d * (-x * x).exp(), 0.0)
            }
        }
    }

    /// `b(0, nu)` as a rational function of `u = 1/s`, `s = -i nu`.
    /// The Gaussian spectrum is not rational.
    pub(crate) fn spectrum_in_inverse_s(&self) -> Option<Rational> {
        let d = self.delta_ph;
        match self.kind {
            WaveformKind::ExponentialCausal => Some(Rational::new(vec![0.0, 1.0], vec![1.0, d])),
            WaveformKind::SymmetricPart => {
                Some(Rational::new(vec![0.0, 0.0, -d], vec![1.0, 0.0, -d * d]))
            }
            WaveformKind::AntisymmetricPart => {
                Some(Rational::new(vec![0.0, 1.0], vec![1.0, 0.0, -d * d]))
            }
            WaveformKind::Gaussian => None,
        }
    }

    /// Samples the free-space envelope on `grid`.
    pub fn sample(&self, grid: &TimeGrid) -> TimeSeries {
        let amplitude = (0..grid.len())
            .map(|i| Complex64::new(self.time_amplitude(grid.time(i)), 0.0))
            .collect();
        let jump = match (grid.zero_index(), self.jump_at_zero()) {
            (Some(index), Some(limits)) => Some(Jump::real(index, limits)),
            _ => None,
        };
        TimeSeries {
            grid: *grid,
            amplitude,
            provenance: Provenance::Input,
            source: *self,
            medium: None,
            jump,
            diagnostics: None,
        }
    }
}

/// Uniform grid of local times `tau`, in units of the inverse reference rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    n_points: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, n_points: usize) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite()) || t_start >= t_end {
            return Err(Error::InvalidParameter(format!(
                "time grid needs t_start < t_end, got [{t_start}, {t_end}]"
            )));
        }
        if n_points < 2 {
            return Err(Error::InvalidParameter(format!(
                "time grid needs at least 2 points, got {n_points}"
            )));
        }
        Ok(TimeGrid {
            t_start,
            t_end,
            n_points,
        })
    }

    /// Grid from `t_start` with the given spacing, extended to cover `t_end`.
    pub fn with_spacing(t_start: f64, t_end: f64, spacing: f64) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "grid spacing must be positive, got {spacing}"
            )));
        }
        let steps = ((t_end - t_start) / spacing - 1e-9).ceil().max(1.0) as usize;
        TimeGrid::new(t_start, t_start + steps as f64 * spacing, steps + 1)
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.t_end - self.t_start) / (self.n_points - 1) as f64
    }

    /// Index of the sample at `tau = 0`, if the grid hits it.
    pub fn zero_index(&self) -> Option<usize> {
        let h = self.spacing();
        let k = (-self.t_start / h).round();
        if k < 0.0 || k >= self.n_points as f64 {
            return None;
        }
        if (self.t_start + k * h).abs() <= 1e-9 * h {
            Some(k as usize)
        } else {
            None
        }
    }

    /// Time of sample `i`; the sample at `tau = 0` is exactly zero.
    pub fn time(&self, i: usize) -> f64 {
        if Some(i) == self.zero_index() {
            0.0
        } else if i + 1 == self.n_points {
            self.t_end
        } else {
            self.t_start + i as f64 * self.spacing()
        }
    }

    pub fn times(&self) -> Vec<f64> {
        let zero = self.zero_index();
        let h = self.spacing();
        (0..self.n_points)
            .map(|i| {
                if Some(i) == zero {
                    0.0
                } else if i + 1 == self.n_points {
                    self.t_end
                } else {
                    self.t_start + i as f64 * h
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_to_infinity, Tolerance};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn wf(kind: WaveformKind, d: f64) -> PhotonWaveform {
        PhotonWaveform::new(kind, d).unwrap()
    }

    #[test]
    fn time_domain_anchor_values() {
        assert_eq!(wf(WaveformKind::ExponentialCausal, 1.3).time_amplitude(1e-300), 1.0);
        assert_eq!(wf(WaveformKind::SymmetricPart, 1.3).time_amplitude(0.0), 0.5);
        assert_eq!(wf(WaveformKind::AntisymmetricPart, 1.3).time_amplitude(0.0), 0.0);
        assert_eq!(wf(WaveformKind::Gaussian, 1.3).time_amplitude(0.0), 1.0);
    }

    #[test]
    fn spectral_anchor_values() {
        let d = 2.5;
        let e = wf(WaveformKind::ExponentialCausal, d).spectral_amplitude(0.0);
        assert_eq!(e, Complex64::new(1.0 / d, 0.0));
        let a = wf(WaveformKind::AntisymmetricPart, d).spectral_amplitude(0.0);
        assert_eq!(a.norm(), 0.0);
        let s = wf(WaveformKind::SymmetricPart, d).spectral_amplitude(d);
        assert_relative_eq!(s.re, 1.0 / (2.0 * d), max_relative = 1e-15);
    }

    #[test]
    fn rejects_non_positive_rate() {
        assert!(PhotonWaveform::new(WaveformKind::Gaussian, 0.0).is_err());
        assert!(PhotonWaveform::new(WaveformKind::Gaussian, -1.0).is_err());
        assert!(PhotonWaveform::new(WaveformKind::Gaussian, f64::NAN).is_err());
    }

    #[test]
    fn grid_validation_and_zero_snap() {
        assert!(TimeGrid::new(1.0, 1.0, 10).is_err());
        assert!(TimeGrid::new(0.0, 1.0, 1).is_err());
        let g = TimeGrid::new(-1.0, 5.0, 601).unwrap();
        assert_eq!(g.zero_index(), Some(100));
        assert_eq!(g.time(100), 0.0);
        assert_relative_eq!(g.spacing(), 0.01, max_relative = 1e-14);
        let off = TimeGrid::new(-1.0, 5.0, 600).unwrap();
        assert_eq!(off.zero_index(), None);
        let s = TimeGrid::with_spacing(-0.5, 2.0, 0.0025).unwrap();
        assert_eq!(s.len(), 1001);
        assert_eq!(s.zero_index(), Some(200));
    }

    #[test]
    fn causal_sample_vanishes_before_zero() {
        let g = TimeGrid::new(-1.0, 5.0, 601).unwrap();
        let ts = wf(WaveformKind::ExponentialCausal, 1.0).sample(&g);
        for (t, b) in g.times().iter().zip(&ts.amplitude) {
            if *t < 0.0 {
                assert_eq!(b.norm(), 0.0);
            }
        }
        let jump = ts.jump.unwrap();
        assert_eq!(jump.index, 100);
        assert_eq!(ts.amplitude[100].re, 0.5);
    }

    #[test]
    fn decomposition_holds_on_samples() {
        let g = TimeGrid::new(-3.0, 3.0, 1201).unwrap();
        let d = 0.7;
        let s = wf(WaveformKind::SymmetricPart, d).sample(&g);
        let a = wf(WaveformKind::AntisymmetricPart, d).sample(&g);
        let e = wf(WaveformKind::ExponentialCausal, d).sample(&g);
        for i in 0..g.len() {
            assert!((s.amplitude[i] + a.amplitude[i] - e.amplitude[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn spectral_energy_equals_time_energy() {
        // (1/2pi) int |b(nu)|^2 dnu against closed-form time integrals.
        let d = 1.7;
        let expected = [
            (WaveformKind::ExponentialCausal, 1.0 / (2.0 * d)),
            (WaveformKind::SymmetricPart, 1.0 / (4.0 * d)),
            (WaveformKind::AntisymmetricPart, 1.0 / (4.0 * d)),
            (WaveformKind::Gaussian, (2.0 * std::f64::consts::PI).sqrt() / d),
        ];
        let tol = Tolerance {
            abs: 1e-14,
            rel: 1e-13,
            max_intervals: 4000,
        };
        for (kind, exact) in expected {
            let w = wf(kind, d);
            let half = integrate_to_infinity(|nu| w.spectral_amplitude(nu).norm_sqr(), 0.0, &tol)
                .unwrap()
                .value;
            assert_relative_eq!(half / std::f64::consts::PI, exact, max_relative = 1e-10);
        }
    }

    proptest! {
        #[test]
        fn spectral_parity(nu in -100.0f64..100.0, d in 0.01f64..10.0) {
            let s = wf(WaveformKind::SymmetricPart, d);
            let a = wf(WaveformKind::AntisymmetricPart, d);
            prop_assert_eq!(s.spectral_amplitude(-nu), s.spectral_amplitude(nu));
            prop_assert_eq!(a.spectral_amplitude(-nu), -a.spectral_amplitude(nu));
            let e = wf(WaveformKind::ExponentialCausal, d).spectral_amplitude(nu);
            let sum = s.spectral_amplitude(nu) + a.spectral_amplitude(nu);
            prop_assert!((e - sum).norm() <= 1e-14 * e.norm());
        }

        #[test]
        fn rational_form_matches_spectrum(nu in 0.5f64..200.0, d in 0.1f64..5.0) {
            for kind in [WaveformKind::ExponentialCausal, WaveformKind::SymmetricPart,
                         WaveformKind::AntisymmetricPart] {
                let w = wf(kind, d);
                let s = Complex64::new(0.0, -nu);
                let r = w.spectrum_in_inverse_s().unwrap().eval(s.inv());
                let direct = w.spectral_amplitude(nu);
                prop_assert!((r - direct).norm() <= 1e-12 * direct.norm().max(1e-300));
            }
        }
    }
}
