//! Transmitted envelopes `b(l, tau)`: the spectral propagator and every closed form.
//!
//! [`evaluate`] is the single entry point that builds a [`TimeSeries`] for a
//! method; [`check_method`] applies the same preconditions without computing.

mod analytic;
mod eit;
mod numeric;

pub use analytic::{
    analytic_matched, analytic_parts_broad, analytic_parts_matched, approx_broad,
    broad_thicknesses, gaussian_broad, gaussian_eta, parts_broad_limits, parts_matched_limits,
};
pub use eit::{
    adiabatic_eit, adiabatic_eit_parts, adiabatic_for, nonadiabatic_eit, nonadiabatic_limits,
    phi_minus, phi_plus, total_eit_at, AdiabaticForm,
};
pub use numeric::{propagate_numeric, NumericOptions};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::media::{AbsorberSpec, LineShape};
use crate::series::{Jump, Provenance, TimeSeries};
use crate::waveforms::{OneSided, PhotonWaveform, TimeGrid, WaveformKind};

/// Relative tolerance for "equal rate" conditions such as `gamma = delta_ph`.
const SAME_RATE: f64 = 1e-9;

/// Settings shared by all methods.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EvalOptions {
    pub numeric: NumericOptions,
    pub eit_form: AdiabaticForm,
}

/// Jump record for an output whose discontinuity equals the input's.
///
/// Propagation through a passive line leaves the jump size unchanged; the
/// stored sample is the midpoint, so the limits sit half a jump either side.
pub(crate) fn jump_for(w: &PhotonWaveform, grid: &TimeGrid, amplitude: &[Complex64]) -> Option<Jump> {
    let index = grid.zero_index()?;
    let limits = w.jump_at_zero()?;
    let half = 0.5 * (limits.right - limits.left);
    let mid = amplitude[index];
    Some(Jump {
        index,
        left: mid - half,
        right: mid + half,
    })
}

fn same_rate(a: f64, b: f64) -> bool {
    (a - b).abs() <= SAME_RATE * a.abs().max(b.abs())
}

fn need_medium(method: Provenance, medium: Option<&AbsorberSpec>) -> Result<&AbsorberSpec> {
    medium.ok_or_else(|| Error::Unsupported(format!("method {method} needs an absorber")))
}

fn need_kinds(method: Provenance, w: &PhotonWaveform, kinds: &[WaveformKind]) -> Result<()> {
    if kinds.contains(&w.kind()) {
        Ok(())
    } else {
        let names: Vec<_> = kinds.iter().map(|k| k.name()).collect();
        Err(Error::Unsupported(format!(
            "method {method} takes {} sources, got {}",
            names.join("/"),
            w.kind()
        )))
    }
}

fn wrong_line(method: Provenance, want: &str, got: &AbsorberSpec) -> Error {
    Error::Unsupported(format!(
        "method {method} needs a {want} medium, got a {} line",
        got.line().name()
    ))
}

const EXPONENTIAL_KINDS: [WaveformKind; 3] = [
    WaveformKind::ExponentialCausal,
    WaveformKind::SymmetricPart,
    WaveformKind::AntisymmetricPart,
];

/// Checks that `method` applies to this source and medium.
pub fn check_method(
    method: Provenance,
    w: &PhotonWaveform,
    medium: Option<&AbsorberSpec>,
    opts: &EvalOptions,
) -> Result<()> {
    let d = w.delta_ph();
    match method {
        Provenance::Input => Ok(()),
        Provenance::Numeric => need_medium(method, medium).map(|_| ()),
        Provenance::AnalyticMatched => {
            need_kinds(method, w, &[WaveformKind::ExponentialCausal])?;
            let m = need_medium(method, medium)?;
            match m.line() {
                LineShape::MatchedLine { gamma } if same_rate(gamma, d) => Ok(()),
                LineShape::MatchedLine { gamma } => Err(Error::Validity(format!(
                    "matched-line forms need gamma = delta_ph (gamma = {gamma}, delta_ph = {d})"
                ))),
                _ => Err(wrong_line(method, "matched", m)),
            }
        }
        Provenance::AnalyticParts => {
            need_kinds(method, w, &EXPONENTIAL_KINDS)?;
            let m = need_medium(method, medium)?;
            match m.line() {
                LineShape::MatchedLine { gamma } if same_rate(gamma, d) => Ok(()),
                LineShape::MatchedLine { gamma } => Err(Error::Validity(format!(
                    "matched-line forms need gamma = delta_ph (gamma = {gamma}, delta_ph = {d})"
                ))),
                LineShape::BroadLine { gamma_total } => {
                    broad_thicknesses(d, gamma_total, m.effective_thickness()).map(|_| ())
                }
                LineShape::Eit { .. } => Err(wrong_line(method, "matched or broad", m)),
            }
        }
        Provenance::AnalyticBroadApprox => {
            need_kinds(method, w, &[WaveformKind::ExponentialCausal])?;
            let m = need_medium(method, medium)?;
            match m.line() {
                LineShape::BroadLine { .. } => Ok(()),
                _ => Err(wrong_line(method, "broad", m)),
            }
        }
        Provenance::AdiabaticEit | Provenance::TotalEit => {
            need_kinds(method, w, &EXPONENTIAL_KINDS)?;
            let m = need_medium(method, medium)?;
            if !matches!(m.line(), LineShape::Eit { .. }) {
                return Err(wrong_line(method, "EIT", m));
            }
            m.eit_params()?;
            if opts.eit_form == AdiabaticForm::Simplified {
                adiabatic_for(w, m, 0.0, opts.eit_form)?;
            }
            if method == Provenance::TotalEit {
                nonadiabatic_limits(w, m)?;
            }
            Ok(())
        }
        Provenance::GaussianApprox => {
            need_kinds(method, w, &[WaveformKind::Gaussian])?;
            let m = need_medium(method, medium)?;
            match m.line() {
                LineShape::MatchedLine { gamma: g } | LineShape::BroadLine { gamma_total: g } => {
                    gaussian_eta(d, g, m.effective_thickness()).map(|_| ())
                }
                LineShape::Eit { .. } => Err(wrong_line(method, "matched or broad", m)),
            }
        }
    }
}

fn pointwise<F>(
    method: Provenance,
    w: &PhotonWaveform,
    medium: &AbsorberSpec,
    grid: &TimeGrid,
    f: F,
) -> Result<TimeSeries>
where
    F: Fn(f64) -> Result<f64>,
{
    let amplitude = grid
        .times()
        .into_iter()
        .map(|tau| f(tau).map(|v| Complex64::new(v, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    let jump = if method == Provenance::AdiabaticEit {
        None
    } else {
        jump_for(w, grid, &amplitude)
    };
    Ok(TimeSeries {
        grid: *grid,
        amplitude,
        provenance: method,
        source: *w,
        medium: Some(*medium),
        jump,
        diagnostics: None,
    })
}

fn pick(kind: WaveformKind, parts: (f64, f64)) -> f64 {
    match kind {
        WaveformKind::SymmetricPart => parts.0,
        WaveformKind::AntisymmetricPart => parts.1,
        _ => parts.0 + parts.1,
    }
}

/// Computes the output of `method` on `grid`.
pub fn evaluate(
    method: Provenance,
    w: &PhotonWaveform,
    medium: Option<&AbsorberSpec>,
    grid: &TimeGrid,
    opts: &EvalOptions,
) -> Result<TimeSeries> {
    check_method(method, w, medium, opts)?;
    if method == Provenance::Input {
        let mut s = w.sample(grid);
        s.medium = medium.copied();
        return Ok(s);
    }
    let m = need_medium(method, medium)?;
    let d = w.delta_ph();
    let t = m.effective_thickness();
    let kind = w.kind();
    match method {
        Provenance::Input => unreachable!(),
        Provenance::Numeric => propagate_numeric(w, m, grid, &opts.numeric),
        Provenance::AnalyticMatched => {
            pointwise(method, w, m, grid, |tau| Ok(analytic_matched(d, t, tau)))
        }
        Provenance::AnalyticParts => match m.line() {
            LineShape::BroadLine { gamma_total } => pointwise(method, w, m, grid, |tau| {
                analytic_parts_broad(d, gamma_total, t, tau).map(|p| pick(kind, p))
            }),
            _ => pointwise(method, w, m, grid, |tau| {
                analytic_parts_matched(d, t, tau).map(|p| pick(kind, p))
            }),
        },
        Provenance::AnalyticBroadApprox => {
            let (g, a0l) = (m.reference_width(), m.alpha0_l());
            pointwise(method, w, m, grid, |tau| Ok(approx_broad(d, g, a0l, tau)))
        }
        Provenance::AdiabaticEit => {
            pointwise(method, w, m, grid, |tau| adiabatic_for(w, m, tau, opts.eit_form))
        }
        Provenance::TotalEit => {
            pointwise(method, w, m, grid, |tau| total_eit_at(w, m, tau, opts.eit_form))
        }
        Provenance::GaussianApprox => {
            let g = m.reference_width();
            pointwise(method, w, m, grid, |tau| gaussian_broad(d, g, t, tau))
        }
    }
}

/// Total EIT output on a grid.
pub fn total_eit(w: &PhotonWaveform, medium: &AbsorberSpec, grid: &TimeGrid) -> Result<TimeSeries> {
    evaluate(Provenance::TotalEit, w, Some(medium), grid, &EvalOptions::default())
}

/// One-sided limits at `tau = 0` of a series with a jump there.
pub fn limits_at_zero(series: &TimeSeries) -> Option<OneSided> {
    series.jump.map(|j| OneSided {
        left: j.left.re,
        right: j.right.re,
    })
}
