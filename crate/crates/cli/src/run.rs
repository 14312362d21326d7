//! Executes a validated scenario and writes its outputs.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use photon_prop::media::LineShape;
use photon_prop::observables::{
    integrated_intensity, pulse_area, spectral_energy, thickness_scan, u0, u_broad, u_eit_adiabatic,
    u_gaussian, u_matched, PartEnergies,
};
use photon_prop::propagate::{broad_thicknesses, evaluate, phi_plus};
use photon_prop::{
    AbsorberSpec, AdiabaticForm, EvalOptions, PhotonWaveform, Provenance, TimeSeries, WaveformKind,
};

use crate::config::{OutputKind, Scenario};
use crate::error::{CliError, Result};
use crate::output::{fmt_f64, trace_table, Table};
use crate::validate::{scan_model, validate};

pub const TOOL: &str = "photon-prop";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const ENERGY_HEADER: [&str; 7] = [
    "source",
    "method",
    "pulse_area",
    "integrated_intensity",
    "boundary",
    "closed_form_energy",
    "spectral_energy",
];
pub const SCAN_HEADER: [&str; 5] = ["thickness", "u_s", "u_a", "u_total", "beer_reference"];
pub const EIT_HEADER: [&str; 6] = [
    "t_eit",
    "t_d",
    "delta_eff",
    "delta_eit",
    "delta_eff_over_delta_ph",
    "t_d_over_tau_life",
];

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct EitRecord {
    pub t_eit: f64,
    pub t_d: f64,
    pub delta_eff: f64,
    pub delta_eit: f64,
    pub delta_eff_over_delta_ph: f64,
    pub t_d_over_tau_life: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Derived {
    pub tau_life: f64,
    pub u0: f64,
    pub alpha0_l: Option<f64>,
    /// `[T_+, T_-]` for a broad line.
    pub broad_thicknesses: Option<[f64; 2]>,
    pub eit: Option<EitRecord>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct JumpRecord {
    pub index: usize,
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct NumericRecord {
    pub fft_points: usize,
    pub nu_max: f64,
    pub nu_step: f64,
    pub drift: f64,
    pub refinements: usize,
    pub tail_terms: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TraceRecord {
    pub source: String,
    pub method: String,
    pub file: Option<String>,
    /// One-sided limits at `tau = 0`; the CSV holds their midpoint.
    pub jump: Option<JumpRecord>,
    pub numeric: Option<NumericRecord>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub scenario: BTreeMap<String, String>,
    pub derived: Derived,
    pub traces: Vec<TraceRecord>,
    pub files: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub manifest: Manifest,
    pub files: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn eit_record(delta_ph: f64, m: &AbsorberSpec) -> photon_prop::Result<EitRecord> {
    let p = m.eit_params()?;
    let tau_life = 0.5 / delta_ph;
    Ok(EitRecord {
        t_eit: p.t_eit,
        t_d: p.t_d,
        delta_eff: p.delta_eff,
        delta_eit: p.delta_eit,
        delta_eff_over_delta_ph: p.delta_eff / delta_ph,
        t_d_over_tau_life: p.t_d / tau_life,
    })
}

fn derived(s: &Scenario, medium: Option<&AbsorberSpec>) -> Derived {
    let broad = match medium.map(|m| m.line()) {
        Some(LineShape::BroadLine { gamma_total }) => {
            broad_thicknesses(s.delta_ph, gamma_total, medium.unwrap().effective_thickness())
                .ok()
                .map(|(p, m)| [p, m])
        }
        _ => None,
    };
    Derived {
        tau_life: 0.5 / s.delta_ph,
        u0: u0(s.delta_ph),
        alpha0_l: medium.map(|m| m.alpha0_l()),
        broad_thicknesses: broad,
        eit: medium.and_then(|m| eit_record(s.delta_ph, m).ok()),
    }
}

fn pick(e: PartEnergies, kind: WaveformKind) -> f64 {
    match kind {
        WaveformKind::SymmetricPart => e.u_s,
        WaveformKind::AntisymmetricPart => e.u_a,
        _ => e.u_total,
    }
}

/// Closed-form energy of a method's output, where one exists.
fn closed_form_energy(
    w: &PhotonWaveform,
    method: Provenance,
    medium: Option<&AbsorberSpec>,
    form: AdiabaticForm,
) -> photon_prop::Result<Option<f64>> {
    let d = w.delta_ph();
    let kind = w.kind();
    if method == Provenance::Input {
        return Ok(Some(match kind {
            WaveformKind::ExponentialCausal => u0(d),
            WaveformKind::SymmetricPart | WaveformKind::AntisymmetricPart => 0.5 * u0(d),
            WaveformKind::Gaussian => (2.0 * std::f64::consts::PI).sqrt() / d,
        }));
    }
    let Some(m) = medium else { return Ok(None) };
    let t = m.effective_thickness();
    Ok(match (method, m.line()) {
        (Provenance::AnalyticMatched | Provenance::AnalyticParts, LineShape::MatchedLine { .. }) => {
            Some(pick(u_matched(t)?, kind) * u0(d))
        }
        (Provenance::AnalyticParts, LineShape::BroadLine { gamma_total }) => {
            Some(pick(u_broad(d, gamma_total, t)?, kind))
        }
        (Provenance::AdiabaticEit, LineShape::Eit { .. })
            if kind == WaveformKind::ExponentialCausal && form == AdiabaticForm::Full =>
        {
            Some(u_eit_adiabatic(d, &m.eit_params()?))
        }
        (Provenance::GaussianApprox, _) => Some(u_gaussian(d, m.reference_width(), t)?),
        _ => None,
    })
}

fn trace_record(series: &TimeSeries, file: Option<String>) -> TraceRecord {
    TraceRecord {
        source: series.source.kind().name().to_string(),
        method: series.provenance.name().to_string(),
        file,
        jump: series.jump.map(|j| JumpRecord {
            index: j.index,
            left: j.left.re,
            right: j.right.re,
        }),
        numeric: series.diagnostics.map(|d| NumericRecord {
            fft_points: d.fft_points,
            nu_max: d.nu_max,
            nu_step: d.nu_step,
            drift: d.drift,
            refinements: d.refinements,
            tail_terms: d.tail_terms,
        }),
    }
}

/// Validates, computes and writes every requested output into `out_dir`.
pub fn run_scenario(s: &Scenario, out_dir: &Path) -> Result<RunOutput> {
    let report = validate(s);
    if !report.is_clean() {
        return Err(CliError::Validation(report.errors));
    }
    for w in &report.warnings {
        log::warn!("{w}");
    }
    let mut warnings = report.warnings;
    let medium = s.medium.build()?;
    let grid = s.grid()?;
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::io(&format!("cannot create {}", out_dir.display()), e))?;

    let mut files = Vec::new();
    let mut traces = Vec::new();
    let opts = EvalOptions {
        eit_form: s.eit_form(),
        ..EvalOptions::default()
    };
    let write = |name: String, table: &Table, files: &mut Vec<String>| -> Result<()> {
        table.write(&out_dir.join(&name))?;
        log::info!("wrote {name}");
        files.push(name);
        Ok(())
    };

    if s.wants(OutputKind::TimeTrace) || s.wants(OutputKind::AreasAndEnergies) {
        let mut energies = Table::new(ENERGY_HEADER);
        for &kind in &s.sources {
            let w = s.waveform(kind)?;
            let series = s
                .methods
                .iter()
                .map(|&m| {
                    log::info!("{}: {kind} / {m}", s.name);
                    evaluate(m, &w, medium.as_ref(), &grid, &opts)
                })
                .collect::<photon_prop::Result<Vec<_>>>()?;
            let file = s.wants(OutputKind::TimeTrace).then(|| format!("{}_{}_trace.csv", s.name, kind));
            if let Some(name) = &file {
                write(name.clone(), &trace_table(&series), &mut files)?;
            }
            let spectral_free = spectral_energy(&w, None)?;
            let spectral_medium = match medium.as_ref() {
                Some(m) => Some(spectral_energy(&w, Some(m))?),
                None => None,
            };
            for ts in &series {
                traces.push(trace_record(ts, file.clone()));
                let area = pulse_area(ts);
                let energy = integrated_intensity(ts);
                if energy.truncated() {
                    warnings.push(format!(
                        "{kind}/{}: envelope is {:.2e} at the grid edge; areas and energies are truncated",
                        ts.provenance, energy.boundary
                    ));
                }
                let closed = closed_form_energy(&w, ts.provenance, medium.as_ref(), s.eit_form())?;
                let spectral = if ts.provenance == Provenance::Input {
                    Some(spectral_free)
                } else {
                    spectral_medium
                };
                energies.push(vec![
                    kind.name().to_string(),
                    ts.provenance.name().to_string(),
                    fmt_f64(area.value),
                    fmt_f64(energy.value),
                    fmt_f64(energy.boundary),
                    closed.map(fmt_f64).unwrap_or_default(),
                    spectral.map(fmt_f64).unwrap_or_default(),
                ]);
            }
        }
        if s.wants(OutputKind::AreasAndEnergies) {
            write(format!("{}_energies.csv", s.name), &energies, &mut files)?;
        }
    }

    if s.wants(OutputKind::ThicknessScan) {
        let model = scan_model(s, medium.as_ref()).map_err(|e| CliError::Validation(vec![e]))?;
        let scan = thickness_scan(model, &s.scan_thickness)?;
        let mut t = Table::new(SCAN_HEADER);
        for r in &scan.rows {
            t.push(
                [r.thickness, r.u_s, r.u_a, r.u_total, r.beer_reference]
                    .into_iter()
                    .map(fmt_f64)
                    .collect(),
            );
        }
        write(format!("{}_scan.csv", s.name), &t, &mut files)?;
    }

    if s.wants(OutputKind::EitParams) {
        let m = medium.as_ref().expect("validated");
        let e = eit_record(s.delta_ph, m)?;
        let mut t = Table::new(EIT_HEADER);
        t.push(
            [
                e.t_eit,
                e.t_d,
                e.delta_eff,
                e.delta_eit,
                e.delta_eff_over_delta_ph,
                e.t_d_over_tau_life,
            ]
            .into_iter()
            .map(fmt_f64)
            .collect(),
        );
        write(format!("{}_eit_params.csv", s.name), &t, &mut files)?;
    }

    if s.wants(OutputKind::PhiPlus) {
        let mut header = vec!["x".to_string()];
        header.extend(s.phi_ratios.iter().map(|r| format!("phi_plus_{}", fmt_f64(*r))));
        let mut t = Table::new(header);
        for x in grid.times() {
            let mut row = vec![fmt_f64(x)];
            row.extend(s.phi_ratios.iter().map(|&r| fmt_f64(phi_plus(r, x))));
            t.push(row);
        }
        write(format!("{}_phi_plus.csv", s.name), &t, &mut files)?;
    }

    let manifest_name = format!("{}_manifest.json", s.name);
    let manifest = Manifest {
        tool: TOOL.into(),
        version: VERSION.into(),
        scenario: s.to_pairs().into_iter().collect(),
        derived: derived(s, medium.as_ref()),
        traces,
        files: files.clone(),
        warnings: warnings.clone(),
    };
    let mut json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CliError::Parse(format!("cannot encode manifest: {e}")))?;
    json.push('\n');
    std::fs::write(out_dir.join(&manifest_name), json)
        .map_err(|e| CliError::io(&format!("cannot write {manifest_name}"), e))?;
    files.push(manifest_name);
    Ok(RunOutput {
        manifest,
        files,
        warnings,
    })
}
