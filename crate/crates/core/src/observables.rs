//! Pulse area, time-integrated intensity and their closed forms.
//!
//! Energies are in the units of the envelope squared times time. `U0(0)` is
//! the free-space energy of the causal photon, `1/(2 delta_ph)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::media::{AbsorberSpec, EitParams};
use crate::propagate::{broad_thicknesses, gaussian_eta};
use crate::quadrature::{integrate, integrate_to_infinity, Tolerance};
use crate::series::TimeSeries;
use crate::specfun::{erfcx, i0e, i1e};
use crate::waveforms::PhotonWaveform;

/// Boundary magnitude above which a time integral is flagged as truncated.
pub const TRUNCATION_THRESHOLD: f64 = 1e-6;

/// A time integral over a finite grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Largest `|amplitude|` at the two grid ends.
    pub boundary: f64,
}

impl Integral {
    pub fn truncated(&self) -> bool {
        self.boundary > TRUNCATION_THRESHOLD
    }
}

fn trapezoid(ts: &TimeSeries, f: impl Fn(Complex64) -> f64, what: &str) -> Integral {
    let n = ts.len();
    let h = ts.grid.spacing();
    let value = (0..n - 1)
        .map(|i| f(ts.right_limit(i)) + f(ts.left_limit(i + 1)))
        .sum::<f64>()
        * 0.5
        * h;
    let boundary = ts.amplitude[0].norm().max(ts.amplitude[n - 1].norm());
    let out = Integral { value, boundary };
    if out.truncated() {
        log::warn!(
            "{what}: envelope is {boundary:.2e} at the grid edge; support is truncated"
        );
    }
    out
}

/// `\int b dtau` (real part).
pub fn pulse_area(ts: &TimeSeries) -> Integral {
    trapezoid(ts, |a| a.re, "pulse area")
}

/// `\int |b|^2 dtau`.
pub fn integrated_intensity(ts: &TimeSeries) -> Integral {
    trapezoid(ts, |a| a.norm_sqr(), "integrated intensity")
}

/// `(1/2pi) \int |b(0,nu)|^2 e^{-2 Re A(nu) l} dnu`, by adaptive quadrature.
pub fn spectral_energy(w: &PhotonWaveform, medium: Option<&AbsorberSpec>) -> Result<f64> {
    let tol = Tolerance {
        abs: 1e-15,
        rel: 1e-13,
        max_intervals: 4000,
    };
    let density = |nu: f64| {
        let b = w.spectral_amplitude(nu).norm_sqr();
        match medium {
            Some(m) => b * (-2.0 * m.spectral_response(nu).re).exp(),
            None => b,
        }
    };
    // the density is even in nu
    let est = integrate_to_infinity(density, 0.0, &tol)?;
    Ok(est.value / PI)
}

/// `U0(0) = 1/(2 delta_ph)`.
pub fn u0(delta_ph: f64) -> f64 {
    0.5 / delta_ph
}

/// Energies of the symmetric part, antisymmetric part and the whole photon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartEnergies {
    pub u_s: f64,
    pub u_a: f64,
    pub u_total: f64,
}

fn non_negative_thickness(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "thickness must be non-negative and finite, got {t}"
        )))
    }
}

/// Matched-line energies in units of `U0(0)`:
/// `U_s = e^{-T}(I0 - I1)/2`, `U_a = e^{-T}(I0 + I1)/2`, `U = e^{-T} I0`.
pub fn u_matched(t: f64) -> Result<PartEnergies> {
    non_negative_thickness(t)?;
    let (i0, i1) = (i0e(t), i1e(t));
    Ok(PartEnergies {
        u_s: 0.5 * (i0 - i1),
        u_a: 0.5 * (i0 + i1),
        u_total: i0,
    })
}

/// Broad-line energies of the symmetric and antisymmetric parts (absolute units).
pub fn u_broad(delta_ph: f64, gamma_total: f64, t_b: f64) -> Result<PartEnergies> {
    non_negative_thickness(t_b)?;
    broad_thicknesses(delta_ph, gamma_total, t_b)?;
    let g2 = gamma_total * gamma_total;
    let a = g2 / (g2 - delta_ph * delta_ph);
    let r = delta_ph / gamma_total;
    let base = u0(delta_ph);
    let beer = (-2.0 * a * t_b).exp();
    let shift = 4.0 * a * a * r * r * t_b;
    let u_plus = 0.5 * beer * (1.0 + shift) * base;
    let u_minus = 0.5 * beer * (1.0 - shift) * base;

    let tol = Tolerance {
        abs: 1e-13,
        rel: 1e-12,
        max_intervals: 2000,
    };
    let w = |x: f64| (-2.0 * a * (t_b - x)).exp() * i0e(x);
    let u1 = 2.0 * a * a * base * integrate(w, 0.0, t_b, &tol)?.value;
    let u2 = 4.0 * a * a * a * base * integrate(|x| (t_b - x) * w(x), 0.0, t_b, &tol)?.value;

    let r3 = r * r * r;
    let u_s = u_plus - r3 * (u1 - u2);
    let u_a = u_minus + r * u1 - r3 * u2;
    Ok(PartEnergies {
        u_s,
        u_a,
        u_total: u_s + u_a,
    })
}

/// Energy of the adiabatic EIT output:
/// `U0(0) e^{-2 T_eit} e^{2 r^2} erfc(sqrt(2) r)`, `r = delta_ph / delta_eff`.
pub fn u_eit_adiabatic(delta_ph: f64, p: &EitParams) -> f64 {
    let r = delta_ph / p.delta_eff;
    u0(delta_ph) * (-2.0 * p.t_eit).exp() * erfcx(std::f64::consts::SQRT_2 * r)
}

/// Energy of the Gaussian photon `e^{-D^2 t^2/4}` behind a line of width
/// `gamma` in the quadratic expansion: `sqrt(2 pi) eta e^{-2T} / D`.
pub fn u_gaussian(delta_ph: f64, gamma: f64, t: f64) -> Result<f64> {
    let eta = gaussian_eta(delta_ph, gamma, t)?;
    Ok((2.0 * PI).sqrt() * eta * (-2.0 * t).exp() / delta_ph)
}

/// Which closed form a thickness scan tabulates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanModel {
    /// Matched line; thickness is `T`.
    Matched,
    /// Broad line; thickness is `T_b`.
    Broad { delta_ph: f64, gamma_total: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub thickness: f64,
    pub u_s: f64,
    pub u_a: f64,
    pub u_total: f64,
    /// `e^{-2T}`.
    pub beer_reference: f64,
}

/// Energies against thickness, normalized to `U0(0)/2` (each part is 1 at zero thickness).
#[derive(Debug, Clone, PartialEq)]
pub struct ThicknessScan {
    pub model: ScanModel,
    pub rows: Vec<ScanRow>,
}

impl ThicknessScan {
    pub const NORMALIZATION: &'static str = "U0(0)/2";
}

pub fn thickness_scan(model: ScanModel, thicknesses: &[f64]) -> Result<ThicknessScan> {
    if thicknesses.is_empty() {
        return Err(Error::InvalidParameter("empty thickness list".into()));
    }
    if thicknesses.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidParameter(
            "thickness values must be strictly increasing".into(),
        ));
    }
    let rows = thicknesses
        .iter()
        .map(|&t| {
            let (e, half) = match model {
                ScanModel::Matched => (u_matched(t)?, 0.5),
                ScanModel::Broad {
                    delta_ph,
                    gamma_total,
                } => (u_broad(delta_ph, gamma_total, t)?, 0.5 * u0(delta_ph)),
            };
            Ok(ScanRow {
                thickness: t,
                u_s: e.u_s / half,
                u_a: e.u_a / half,
                u_total: e.u_total / half,
                beer_reference: (-2.0 * t).exp(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ThicknessScan { model, rows })
}
