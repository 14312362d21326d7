//! Precondition checks run before any computation.

use photon_prop::media::LineShape;
use photon_prop::observables::ScanModel;
use photon_prop::propagate::check_method;
use photon_prop::{AbsorberSpec, EvalOptions, TimeGrid};

use crate::config::{OutputKind, Scenario};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.errors.is_empty()
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Scan model implied by the medium, if it has a closed-form energy scan.
pub fn scan_model(s: &Scenario, medium: Option<&AbsorberSpec>) -> Result<ScanModel, String> {
    match medium.map(|m| m.line()) {
        Some(LineShape::MatchedLine { gamma }) => {
            if (gamma - s.delta_ph).abs() <= 1e-9 * gamma {
                Ok(ScanModel::Matched)
            } else {
                Err(format!(
                    "thickness_scan on a matched line needs gamma = delta_ph (gamma = {gamma}, delta_ph = {})",
                    s.delta_ph
                ))
            }
        }
        Some(LineShape::BroadLine { gamma_total }) => {
            if gamma_total > s.delta_ph {
                Ok(ScanModel::Broad {
                    delta_ph: s.delta_ph,
                    gamma_total,
                })
            } else {
                Err(format!(
                    "thickness_scan on a broad line needs Gamma > delta_ph (Gamma = {gamma_total}, delta_ph = {})",
                    s.delta_ph
                ))
            }
        }
        _ => Err("thickness_scan needs a matched or broad medium".into()),
    }
}

pub fn validate(s: &Scenario) -> Report {
    let mut r = Report::default();
    if !valid_name(&s.name) {
        r.errors.push(format!(
            "name '{}' must be non-empty and use only letters, digits, '_' and '-'",
            s.name
        ));
    }
    if s.outputs.is_empty() {
        r.errors.push("no outputs requested".into());
    }
    if !(s.delta_ph.is_finite() && s.delta_ph > 0.0) {
        r.errors.push(format!("delta_ph must be positive, got {}", s.delta_ph));
    }
    let medium = match s.medium.build() {
        Ok(m) => m,
        Err(e) => {
            r.errors.push(format!("medium {}: {e}", s.medium.name()));
            None
        }
    };
    let grid = match s.grid() {
        Ok(g) => Some(g),
        Err(e) => {
            r.errors.push(format!("grid: {e}"));
            None
        }
    };
    if !r.errors.is_empty() {
        return r;
    }
    let grid = grid.expect("checked above");

    let traces = s.wants(OutputKind::TimeTrace) || s.wants(OutputKind::AreasAndEnergies);
    if traces {
        if s.sources.is_empty() {
            r.errors.push("time_trace/areas_and_energies need at least one source".into());
        }
        if s.methods.is_empty() {
            r.errors.push("time_trace/areas_and_energies need at least one method".into());
        }
        let opts = EvalOptions {
            eit_form: s.eit_form(),
            ..EvalOptions::default()
        };
        for &kind in &s.sources {
            let w = s.waveform(kind).expect("delta_ph checked");
            for &method in &s.methods {
                if let Err(e) = check_method(method, &w, medium.as_ref(), &opts) {
                    r.errors.push(format!("method {method} with source {kind}: {e}"));
                }
            }
            if w.jump_at_zero().is_some() && grid.zero_index().is_none() {
                r.warnings.push(format!(
                    "source {kind} jumps at tau = 0 but the grid has no sample there"
                ));
            }
        }
    }
    if s.eit_simplified && !traces {
        r.warnings.push("eit_simplified has no effect without traces".into());
    }

    if let Some(m) = medium.as_ref() {
        if let Ok(p) = m.eit_params() {
            let end = p.t_d + 4.0 / p.delta_eff;
            if traces && s.t_end < end {
                r.warnings.push(format!(
                    "grid ends at t_end = {} before the delayed pulse has passed: \
                     expected delay t_d = {:.6}, window t_d + 4/delta_eff = {end:.6}",
                    s.t_end, p.t_d
                ));
            }
        }
    }

    if s.wants(OutputKind::EitParams) {
        match medium.as_ref().map(|m| m.eit_params()) {
            Some(Ok(_)) => {}
            Some(Err(e)) => r.errors.push(format!("eit_params: {e}")),
            None => r.errors.push("eit_params needs an EIT medium".into()),
        }
    }
    if s.wants(OutputKind::ThicknessScan) {
        if let Err(e) = scan_model(s, medium.as_ref()) {
            r.errors.push(e);
        }
        if s.scan_thickness.is_empty() {
            r.errors.push("thickness_scan needs scan_thickness values".into());
        } else if s.scan_thickness.iter().any(|t| !(t.is_finite() && *t >= 0.0))
            || s.scan_thickness.windows(2).any(|p| p[1] <= p[0])
        {
            r.errors.push("scan_thickness must be non-negative and strictly increasing".into());
        }
    }
    if s.wants(OutputKind::PhiPlus) {
        if s.phi_ratios.is_empty() {
            r.errors.push("phi_plus needs phi_ratios values".into());
        }
        if s.phi_ratios.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            r.errors.push("phi_ratios must be non-negative".into());
        }
    }
    warn_grid_size(&grid, &mut r);
    r
}

fn warn_grid_size(grid: &TimeGrid, r: &mut Report) {
    if grid.len() > 2_000_000 {
        r.warnings.push(format!(
            "grid has {} points; numeric propagation may exceed the FFT size limit",
            grid.len()
        ));
    }
}
