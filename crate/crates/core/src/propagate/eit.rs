//! EIT outputs: the adiabatic (window-filtered) part from the quadratic
//! expansion of the response, and the total with the nonadiabatic spike.

use crate::error::{Error, Result};
use crate::media::{AbsorberSpec, EitParams, LineShape};
use crate::specfun::{erfc, erfcx};
use crate::waveforms::{OneSided, PhotonWaveform, WaveformKind};

use super::analytic::{
    analytic_matched, analytic_parts_broad, analytic_parts_matched, parts_broad_limits,
    parts_matched_limits,
};

/// Which expression to use for the adiabatic part of a causal photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdiabaticForm {
    /// `phi_+ e^{-T_eit - D (tau - t_d)}`.
    #[default]
    Full,
    /// `phi_+ e^{-D tau}`, for `D = gamma_m` where `T_eit` and `D t_d` nearly cancel.
    Simplified,
}

/// Window function `phi_+` as a function of `x = delta_eff (tau - t_d)` and
/// `ratio = delta_ph / delta_eff`.
pub fn phi_plus(ratio: f64, x: f64) -> f64 {
    0.5 * (ratio * ratio).exp() * erfc(ratio - 0.5 * x)
}

/// `phi_- = e^{r^2}(1 - erf(x/2 + r))/2`, the partner of [`phi_plus`] for the
/// anti-causal half of the symmetric/antisymmetric parts.
pub fn phi_minus(ratio: f64, x: f64) -> f64 {
    0.5 * (ratio * ratio).exp() * erfc(ratio + 0.5 * x)
}

/// `R_+ = phi_+ e^{-T0 - D u}` and `R_- = phi_- e^{-T0 + D u}`, `u = tau - t_d`,
/// evaluated through `erfcx` so that neither factor overflows.
fn window_pair(delta_ph: f64, p: &EitParams, t0: f64, tau: f64) -> (f64, f64) {
    let k = 0.5 * p.delta_eff;
    let r = delta_ph / p.delta_eff;
    let u = tau - p.t_d;
    let gauss = -t0 - k * k * u * u;
    let z = r - k * u;
    let plus = if z > 0.0 {
        0.5 * (gauss.exp()) * erfcx(z)
    } else {
        0.5 * (r * r - t0 - delta_ph * u).exp() * erfc(z)
    };
    let z = r + k * u;
    let minus = if z > 0.0 {
        0.5 * (gauss.exp()) * erfcx(z)
    } else {
        0.5 * (r * r - t0 + delta_ph * u).exp() * erfc(z)
    };
    (plus, minus)
}

/// Adiabatic output `b_0A` for the causal photon `e^{-D t} Theta(t)`.
pub fn adiabatic_eit(delta_ph: f64, medium: &AbsorberSpec, tau: f64, form: AdiabaticForm) -> Result<f64> {
    let p = medium.eit_params()?;
    let t0 = match form {
        AdiabaticForm::Full => p.t_eit,
        AdiabaticForm::Simplified => {
            check_simplified(delta_ph, medium)?;
            delta_ph * p.t_d
        }
    };
    Ok(window_pair(delta_ph, &p, t0, tau).0)
}

fn check_simplified(delta_ph: f64, medium: &AbsorberSpec) -> Result<()> {
    match medium.line() {
        LineShape::Eit { gamma_m, .. } if (delta_ph - gamma_m).abs() <= 1e-12 * gamma_m => Ok(()),
        LineShape::Eit { gamma_m, .. } => Err(Error::Validity(format!(
            "simplified adiabatic form needs delta_ph = gamma_m (delta_ph = {delta_ph}, gamma_m = {gamma_m})"
        ))),
        other => Err(Error::Unsupported(format!(
            "adiabatic EIT output needs an EIT medium, got a {} line",
            other.name()
        ))),
    }
}

/// Adiabatic outputs `(b_sA, b_aA)` for the symmetric and antisymmetric parts.
pub fn adiabatic_eit_parts(delta_ph: f64, medium: &AbsorberSpec, tau: f64) -> Result<(f64, f64)> {
    let p = medium.eit_params()?;
    let (plus, minus) = window_pair(delta_ph, &p, p.t_eit, tau);
    Ok((0.5 * (plus + minus), 0.5 * (plus - minus)))
}

/// Adiabatic output for any of the three exponential source kinds.
pub fn adiabatic_for(w: &PhotonWaveform, medium: &AbsorberSpec, tau: f64, form: AdiabaticForm) -> Result<f64> {
    let d = w.delta_ph();
    match w.kind() {
        WaveformKind::ExponentialCausal => adiabatic_eit(d, medium, tau, form),
        WaveformKind::SymmetricPart => adiabatic_eit_parts(d, medium, tau).map(|p| p.0),
        WaveformKind::AntisymmetricPart => adiabatic_eit_parts(d, medium, tau).map(|p| p.1),
        WaveformKind::Gaussian => Err(gaussian_unsupported()),
    }
}

fn gaussian_unsupported() -> Error {
    Error::Unsupported(
        "no adiabatic/nonadiabatic decomposition for a Gaussian photon; use the numeric propagator"
            .into(),
    )
}

enum Fast {
    Matched { t: f64 },
    Broad { gamma_total: f64, t_b: f64 },
}

fn fast_line(delta_ph: f64, medium: &AbsorberSpec) -> Result<Fast> {
    let LineShape::Eit { gamma_total, .. } = medium.line() else {
        return Err(Error::Unsupported(format!(
            "EIT output needs an EIT medium, got a {} line",
            medium.line().name()
        )));
    };
    let t_b = medium.effective_thickness();
    if (delta_ph - gamma_total).abs() <= 1e-12 * gamma_total {
        Ok(Fast::Matched { t: t_b })
    } else if delta_ph < gamma_total {
        Ok(Fast::Broad { gamma_total, t_b })
    } else {
        Err(Error::Validity(format!(
            "nonadiabatic part needs delta_ph <= Gamma (delta_ph = {delta_ph}, Gamma = {gamma_total})"
        )))
    }
}

/// Nonadiabatic output: the source through the bare broad line, coupling neglected.
pub fn nonadiabatic_eit(w: &PhotonWaveform, medium: &AbsorberSpec, tau: f64) -> Result<f64> {
    let d = w.delta_ph();
    let parts = match fast_line(d, medium)? {
        Fast::Matched { t } => {
            if w.kind() == WaveformKind::ExponentialCausal {
                return Ok(analytic_matched(d, t, tau));
            }
            analytic_parts_matched(d, t, tau)?
        }
        Fast::Broad { gamma_total, t_b } => analytic_parts_broad(d, gamma_total, t_b, tau)?,
    };
    match w.kind() {
        WaveformKind::ExponentialCausal => Ok(parts.0 + parts.1),
        WaveformKind::SymmetricPart => Ok(parts.0),
        WaveformKind::AntisymmetricPart => Ok(parts.1),
        WaveformKind::Gaussian => Err(gaussian_unsupported()),
    }
}

/// One-sided limits of the nonadiabatic part at `tau = 0`.
pub fn nonadiabatic_limits(w: &PhotonWaveform, medium: &AbsorberSpec) -> Result<OneSided> {
    let d = w.delta_ph();
    let (s, a) = match fast_line(d, medium)? {
        Fast::Matched { t } => parts_matched_limits(t),
        Fast::Broad { gamma_total, t_b } => parts_broad_limits(d, gamma_total, t_b)?,
    };
    match w.kind() {
        WaveformKind::ExponentialCausal => Ok(OneSided {
            left: s.left + a.left,
            right: s.right + a.right,
        }),
        WaveformKind::SymmetricPart => Ok(s),
        WaveformKind::AntisymmetricPart => Ok(a),
        WaveformKind::Gaussian => Err(gaussian_unsupported()),
    }
}

/// Adiabatic plus nonadiabatic output at `tau`.
pub fn total_eit_at(w: &PhotonWaveform, medium: &AbsorberSpec, tau: f64, form: AdiabaticForm) -> Result<f64> {
    Ok(adiabatic_for(w, medium, tau, form)? + nonadiabatic_eit(w, medium, tau)?)
}
