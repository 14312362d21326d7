//! Named scenarios, one per reproduced figure.

use photon_prop::{Provenance, WaveformKind};

use crate::config::{MediumConfig, OutputKind, Scenario};
use crate::error::{CliError, Result};

pub const PRESET_NAMES: [&str; 8] = ["fig2", "fig3a", "fig3b", "fig5", "fig6a", "fig6b", "fig7", "fe57"];

fn grid(t_start: f64, t_end: f64, spacing: f64) -> (f64, f64, usize) {
    let n = ((t_end - t_start) / spacing).round() as usize + 1;
    (t_start, t_end, n)
}

fn scenario(name: &str, reference_rate: &str, delta_ph: f64, medium: MediumConfig, g: (f64, f64, usize)) -> Scenario {
    Scenario {
        name: name.into(),
        reference_rate: reference_rate.into(),
        sources: Vec::new(),
        delta_ph,
        medium,
        t_start: g.0,
        t_end: g.1,
        n_points: g.2,
        methods: Vec::new(),
        outputs: Vec::new(),
        scan_thickness: Vec::new(),
        phi_ratios: Vec::new(),
        eit_simplified: false,
    }
}

/// Slow-light medium: `Gamma = 10 gamma_m`, `Omega = 2 Gamma`, `T_b = 30`.
const SLOW_LIGHT: MediumConfig = MediumConfig::Eit {
    gamma_total: 10.0,
    gamma_m: 1.0,
    omega: 20.0,
    thickness: 30.0,
};

const EIT_METHODS: [Provenance; 4] = [
    Provenance::Input,
    Provenance::Numeric,
    Provenance::AdiabaticEit,
    Provenance::TotalEit,
];

pub fn preset(name: &str) -> Result<Scenario> {
    use OutputKind::*;
    use WaveformKind::*;
    let s = match name {
        "fig2" => Scenario {
            sources: vec![SymmetricPart, AntisymmetricPart],
            methods: vec![Provenance::Input, Provenance::Numeric, Provenance::AnalyticParts],
            outputs: vec![TimeTrace, AreasAndEnergies],
            ..scenario(
                name,
                "gamma",
                1.0,
                MediumConfig::Matched {
                    gamma: 1.0,
                    thickness: 10.0,
                },
                grid(-2.0, 6.0, 0.01),
            )
        },
        "fig3a" => Scenario {
            sources: vec![ExponentialCausal, AntisymmetricPart],
            methods: vec![Provenance::Input, Provenance::Numeric, Provenance::AnalyticParts],
            outputs: vec![TimeTrace, AreasAndEnergies],
            ..scenario(
                name,
                "delta_ph",
                1.0,
                MediumConfig::Broad {
                    gamma_total: 10.0,
                    thickness: 10.0,
                },
                grid(-0.5, 2.0, 0.0025),
            )
        },
        "fig3b" => Scenario {
            outputs: vec![ThicknessScan],
            scan_thickness: (0..=40).map(|i| i as f64 * 0.25).collect(),
            ..scenario(
                name,
                "delta_ph",
                1.0,
                MediumConfig::Broad {
                    gamma_total: 10.0,
                    thickness: 10.0,
                },
                grid(-0.5, 2.0, 0.0025),
            )
        },
        // the grid holds x = delta_eff (tau - t_d)
        "fig5" => Scenario {
            outputs: vec![PhiPlus],
            phi_ratios: vec![0.1, 0.0],
            ..scenario(name, "delta_eff", 1.0, MediumConfig::None, grid(-8.0, 8.0, 0.02))
        },
        "fig6a" => Scenario {
            sources: vec![ExponentialCausal],
            methods: EIT_METHODS.to_vec(),
            outputs: vec![TimeTrace, EitParams, AreasAndEnergies],
            ..scenario(name, "gamma_m", 1.0, SLOW_LIGHT, grid(-1.0, 6.0, 0.005))
        },
        "fig6b" => Scenario {
            sources: vec![ExponentialCausal],
            methods: EIT_METHODS.to_vec(),
            outputs: vec![TimeTrace, EitParams, AreasAndEnergies],
            ..scenario(name, "gamma_m", 10.0, SLOW_LIGHT, grid(-1.0, 6.0, 0.005))
        },
        "fig7" => Scenario {
            sources: vec![SymmetricPart, AntisymmetricPart],
            methods: EIT_METHODS.to_vec(),
            outputs: vec![TimeTrace, EitParams],
            ..scenario(name, "gamma_m", 1.0, SLOW_LIGHT, grid(-1.0, 6.0, 0.005))
        },
        "fe57" => Scenario {
            sources: vec![ExponentialCausal],
            methods: EIT_METHODS.to_vec(),
            outputs: vec![TimeTrace, EitParams, AreasAndEnergies],
            ..scenario(
                name,
                "gamma_m",
                1.0,
                MediumConfig::Fe57Siderite {
                    gamma_m: 1.0,
                    omega: 20.0,
                    thickness: 30.0,
                },
                grid(-1.0, 6.0, 0.005),
            )
        },
        other => {
            return Err(CliError::Parse(format!(
                "unknown preset '{other}' (valid: {})",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_text;
    use crate::validate::validate;

    #[test]
    fn presets_validate_and_round_trip() {
        for name in PRESET_NAMES {
            let s = preset(name).unwrap();
            let r = validate(&s);
            assert!(r.is_clean(), "{name}: {r:?}");
            assert_eq!(parse_text(&s.to_config_text()).unwrap(), s, "{name}");
            assert!(s.grid().unwrap().spacing() > 0.0);
        }
    }

    #[test]
    fn grids_sample_zero() {
        for name in ["fig2", "fig3a", "fig6a", "fig6b", "fig7", "fe57"] {
            assert!(preset(name).unwrap().grid().unwrap().zero_index().is_some(), "{name}");
        }
    }

    #[test]
    fn unknown_preset_lists_names() {
        let e = preset("fig4").unwrap_err().to_string();
        assert!(e.contains("fig6a") && e.contains("fe57"));
    }
}
