//! Absorber models and their complex spectral responses `A(nu) l`.
//!
//! Only the product `alpha0 l` ever enters a formula, so a medium is stored as
//! a line shape plus an effective thickness: `T = alpha0 l / gamma` for the
//! matched line, `T_b = alpha0 l / Gamma` for the broad line and EIT medium.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::Rational;

/// Ratio `Gamma / gamma_m` used by the `fe57-siderite` preset.
///
/// No measured value is available for the electron-spin broadened g-e line
/// of FeCO3; the preset borrows the ratio of the slow-light example.
pub const FE57_LINE_RATIO: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineShape {
    /// Natural line of halfwidth `gamma`, matched to the source.
    MatchedLine { gamma: f64 },
    /// Homogeneous plus inhomogeneous line of total halfwidth `gamma_total`.
    BroadLine { gamma_total: f64 },
    /// Three-level medium: g-e line `gamma_total`, metastable halfwidth
    /// `gamma_m`, coupling `omega` between e and m.
    Eit {
        gamma_total: f64,
        gamma_m: f64,
        omega: f64,
    },
}

impl LineShape {
    pub fn name(&self) -> &'static str {
        match self {
            LineShape::MatchedLine { .. } => "matched",
            LineShape::BroadLine { .. } => "broad",
            LineShape::Eit { .. } => "eit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorberSpec {
    line: LineShape,
    effective_thickness: f64,
}

/// Quadratic expansion coefficients of the EIT response around `nu = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EitParams {
    /// Residual effective thickness at the bottom of the window.
    pub t_eit: f64,
    /// Group delay.
    pub t_d: f64,
    /// Thickness-narrowed window halfwidth.
    pub delta_eff: f64,
    /// Optically thin window halfwidth `Omega^2 / Gamma`.
    pub delta_eit: f64,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

fn thickness(v: f64) -> Result<f64> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!(
            "effective thickness must be non-negative and finite, got {v}"
        )))
    }
}

impl AbsorberSpec {
    pub fn matched(gamma: f64, t: f64) -> Result<Self> {
        Ok(AbsorberSpec {
            line: LineShape::MatchedLine {
                gamma: positive("gamma", gamma)?,
            },
            effective_thickness: thickness(t)?,
        })
    }

    pub fn broad(gamma_total: f64, t_b: f64) -> Result<Self> {
        Ok(AbsorberSpec {
            line: LineShape::BroadLine {
                gamma_total: positive("gamma_total", gamma_total)?,
            },
            effective_thickness: thickness(t_b)?,
        })
    }

    pub fn eit(gamma_total: f64, gamma_m: f64, omega: f64, t_b: f64) -> Result<Self> {
        let gamma_total = positive("gamma_total", gamma_total)?;
        let gamma_m = positive("gamma_m", gamma_m)?;
        let omega = positive("omega", omega)?;
        if gamma_total <= gamma_m {
            return Err(Error::InvalidParameter(format!(
                "EIT medium needs gamma_total > gamma_m, got {gamma_total} <= {gamma_m}"
            )));
        }
        Ok(AbsorberSpec {
            line: LineShape::Eit {
                gamma_total,
                gamma_m,
                omega,
            },
            effective_thickness: thickness(t_b)?,
        })
    }

    /// Level-mixing EIT in 57Fe (siderite): `Gamma = 10 gamma_m`.
    pub fn fe57_siderite(gamma_m: f64, omega: f64, t_b: f64) -> Result<Self> {
        AbsorberSpec::eit(FE57_LINE_RATIO * gamma_m, gamma_m, omega, t_b)
    }

    pub fn line(&self) -> LineShape {
        self.line
    }

    pub fn effective_thickness(&self) -> f64 {
        self.effective_thickness
    }

    /// Halfwidth the effective thickness is referred to (`gamma` or `Gamma`).
    pub fn reference_width(&self) -> f64 {
        match self.line {
            LineShape::MatchedLine { gamma } => gamma,
            LineShape::BroadLine { gamma_total } | LineShape::Eit { gamma_total, .. } => {
                gamma_total
            }
        }
    }

    /// Optical depth per unit halfwidth, `alpha0 l`.
    pub fn alpha0_l(&self) -> f64 {
        self.effective_thickness * self.reference_width()
    }

    /// Copy with a different effective thickness.
    pub fn with_thickness(&self, t: f64) -> Result<Self> {
        Ok(AbsorberSpec {
            line: self.line,
            effective_thickness: thickness(t)?,
        })
    }

    /// All rates characterizing the line shape.
    pub fn rates(&self) -> Vec<f64> {
        match self.line {
            LineShape::MatchedLine { gamma } => vec![gamma],
            LineShape::BroadLine { gamma_total } => vec![gamma_total],
            LineShape::Eit {
                gamma_total,
                gamma_m,
                omega,
            } => vec![gamma_total, gamma_m, omega],
        }
    }

    /// `A(nu) l`.
    pub fn spectral_response(&self, nu: f64) -> Complex64 {
        let a0l = self.alpha0_l();
        match self.line {
            LineShape::MatchedLine { gamma: w } | LineShape::BroadLine { gamma_total: w } => {
                a0l / Complex64::new(w, -nu)
            }
            LineShape::Eit {
                gamma_total,
                gamma_m,
                omega,
            } => {
                let m = Complex64::new(gamma_m, -nu);
                a0l * m / (Complex64::new(gamma_total, -nu) * m + omega * omega)
            }
        }
    }

    /// `A l` as a rational function of `u = 1/s`, `s = -i nu`.
    pub(crate) fn response_in_inverse_s(&self) -> Rational {
        let a0l = self.alpha0_l();
        match self.line {
            LineShape::MatchedLine { gamma: w } | LineShape::BroadLine { gamma_total: w } => {
                Rational::new(vec![0.0, 1.0], vec![1.0, w]).scaled(a0l)
            }
            LineShape::Eit {
                gamma_total,
                gamma_m,
                omega,
            } => Rational::new(
                vec![0.0, 1.0, gamma_m],
                vec![
                    1.0,
                    gamma_total + gamma_m,
                    gamma_total * gamma_m + omega * omega,
                ],
            )
            .scaled(a0l),
        }
    }

    /// EIT design parameters. Requires an EIT medium with `Omega^2 >= gamma_m Gamma`.
    pub fn eit_params(&self) -> Result<EitParams> {
        let LineShape::Eit {
            gamma_total: g,
            gamma_m: gm,
            omega,
        } = self.line
        else {
            return Err(Error::Unsupported(format!(
                "EIT parameters need an EIT medium, got a {} line",
                self.line.name()
            )));
        };
        let o2 = omega * omega;
        if o2 < gm * g {
            return Err(Error::Validity(format!(
                "adiabatic expansion needs Omega^2 >= gamma_m*Gamma (Omega^2 = {o2}, \
                 gamma_m*Gamma = {})",
                gm * g
            )));
        }
        let tb = self.effective_thickness;
        let d0 = o2 + gm * g;
        let curvature = tb * g * (o2 * (g + 2.0 * gm) - gm * gm * gm);
        Ok(EitParams {
            t_eit: tb * gm * g / d0,
            t_d: tb * g * (o2 - gm * gm) / (d0 * d0),
            delta_eff: if curvature > 0.0 {
                (d0 * d0 * d0 / curvature).sqrt()
            } else {
                f64::INFINITY
            },
            delta_eit: o2 / g,
        })
    }

    /// Three-term expansion `T_eit - i nu t_d + nu^2 / delta_eff^2`.
    pub fn adiabatic_response(&self, nu: f64) -> Result<Complex64> {
        let p = self.eit_params()?;
        Ok(Complex64::new(
            p.t_eit + nu * nu / (p.delta_eff * p.delta_eff),
            -nu * p.t_d,
        ))
    }
}
