use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::media::AbsorberSpec;
use crate::waveforms::{OneSided, PhotonWaveform, TimeGrid};

/// How a [`TimeSeries`] was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Free-space source envelope, no medium.
    Input,
    /// Spectral propagator.
    Numeric,
    /// Matched-line dynamical-beat solution.
    AnalyticMatched,
    /// Symmetric/antisymmetric closed forms (matched or broad line).
    AnalyticParts,
    /// Two-term broad-line approximation.
    AnalyticBroadApprox,
    /// Adiabatic (spectrally narrow) EIT component.
    AdiabaticEit,
    /// Adiabatic plus nonadiabatic EIT components.
    TotalEit,
    /// Quadratic-expansion solution for a Gaussian photon.
    GaussianApprox,
}

impl Provenance {
    pub const ALL: [Provenance; 8] = [
        Provenance::Input,
        Provenance::Numeric,
        Provenance::AnalyticMatched,
        Provenance::AnalyticParts,
        Provenance::AnalyticBroadApprox,
        Provenance::AdiabaticEit,
        Provenance::TotalEit,
        Provenance::GaussianApprox,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Provenance::Input => "input",
            Provenance::Numeric => "numeric",
            Provenance::AnalyticMatched => "analytic_matched",
            Provenance::AnalyticParts => "analytic_parts",
            Provenance::AnalyticBroadApprox => "analytic_broad_approx",
            Provenance::AdiabaticEit => "adiabatic_eit",
            Provenance::TotalEit => "total_eit",
            Provenance::GaussianApprox => "gaussian_approx",
        }
    }

    pub fn is_analytic(self) -> bool {
        !matches!(self, Provenance::Input | Provenance::Numeric)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Provenance::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| {
                let names: Vec<_> = Provenance::ALL.iter().map(|p| p.name()).collect();
                Error::InvalidParameter(format!(
                    "unknown method '{key}' (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// One-sided limits at a sample where the envelope jumps.
///
/// The sample itself stores the midpoint; integrals use the limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub index: usize,
    pub left: Complex64,
    pub right: Complex64,
}

impl Jump {
    pub fn real(index: usize, limits: OneSided) -> Self {
        Jump {
            index,
            left: Complex64::new(limits.left, 0.0),
            right: Complex64::new(limits.right, 0.0),
        }
    }

    pub fn size(&self) -> Complex64 {
        self.right - self.left
    }
}

/// Resolution and convergence record of a spectral propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericDiagnostics {
    /// FFT length of the accepted run.
    pub fft_points: usize,
    /// Half-width of the frequency window.
    pub nu_max: f64,
    /// Frequency spacing.
    pub nu_step: f64,
    /// Max-abs change on the output grid against the previous resolution.
    pub drift: f64,
    /// Number of resolution doublings performed.
    pub refinements: usize,
    /// Number of leading spectral tail terms removed analytically.
    pub tail_terms: usize,
}

/// Complex envelope samples on a uniform local-time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub grid: TimeGrid,
    pub amplitude: Vec<Complex64>,
    pub provenance: Provenance,
    pub source: PhotonWaveform,
    pub medium: Option<AbsorberSpec>,
    /// Discontinuity at `tau = 0`, when the grid samples it.
    pub jump: Option<Jump>,
    pub diagnostics: Option<NumericDiagnostics>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.amplitude.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitude.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.grid.times()
    }

    pub fn max_abs(&self) -> f64 {
        self.amplitude.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Value just left of sample `i` (differs from the sample only at a jump).
    pub fn left_limit(&self, i: usize) -> Complex64 {
        match self.jump {
            Some(j) if j.index == i => j.left,
            _ => self.amplitude[i],
        }
    }

    /// Value just right of sample `i`.
    pub fn right_limit(&self, i: usize) -> Complex64 {
        match self.jump {
            Some(j) if j.index == i => j.right,
            _ => self.amplitude[i],
        }
    }

    /// Max-abs difference against `other` on a shared grid. With
    /// `exclude = Some(k)`, samples within `k` steps of `tau = 0` are skipped.
    pub fn max_abs_difference(&self, other: &TimeSeries, exclude: Option<usize>) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::InvalidParameter(
                "series are sampled on different grids".into(),
            ));
        }
        let zero = self.grid.zero_index();
        Ok(self
            .amplitude
            .iter()
            .zip(&other.amplitude)
            .enumerate()
            .filter(|(i, _)| match (zero, exclude) {
                (Some(z), Some(k)) => i.abs_diff(z) > k,
                _ => true,
            })
            .map(|(_, (a, b))| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
