//! Scenario files: `key = value` lines with `#` comments, or a flat JSON object
//! with the same keys. List values are comma separated (JSON arrays also work).
//!
//! ```text
//! name = slow_light
//! sources = exponential_causal
//! delta_ph = 1
//! medium = eit
//! gamma_total = 10
//! gamma_m = 1
//! omega = 20
//! thickness = 30
//! t_start = -1
//! t_end = 6
//! spacing = 0.005
//! methods = numeric, total_eit
//! outputs = time_trace, eit_params
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use photon_prop::{AbsorberSpec, AdiabaticForm, PhotonWaveform, Provenance, TimeGrid, WaveformKind};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputKind {
    TimeTrace,
    ThicknessScan,
    EitParams,
    AreasAndEnergies,
    PhiPlus,
}

impl OutputKind {
    pub const ALL: [OutputKind; 5] = [
        OutputKind::TimeTrace,
        OutputKind::ThicknessScan,
        OutputKind::EitParams,
        OutputKind::AreasAndEnergies,
        OutputKind::PhiPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OutputKind::TimeTrace => "time_trace",
            OutputKind::ThicknessScan => "thickness_scan",
            OutputKind::EitParams => "eit_params",
            OutputKind::AreasAndEnergies => "areas_and_energies",
            OutputKind::PhiPlus => "phi_plus",
        }
    }
}

impl fmt::Display for OutputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OutputKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        OutputKind::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = OutputKind::ALL.iter().map(|o| o.name()).collect();
                format!("unknown output '{s}' (expected one of {})", names.join(", "))
            })
    }
}

/// Absorber as written in a config, before range checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MediumConfig {
    None,
    Matched {
        gamma: f64,
        thickness: f64,
    },
    Broad {
        gamma_total: f64,
        thickness: f64,
    },
    Eit {
        gamma_total: f64,
        gamma_m: f64,
        omega: f64,
        thickness: f64,
    },
    Fe57Siderite {
        gamma_m: f64,
        omega: f64,
        thickness: f64,
    },
}

impl MediumConfig {
    pub fn name(&self) -> &'static str {
        match self {
            MediumConfig::None => "none",
            MediumConfig::Matched { .. } => "matched",
            MediumConfig::Broad { .. } => "broad",
            MediumConfig::Eit { .. } => "eit",
            MediumConfig::Fe57Siderite { .. } => "fe57-siderite",
        }
    }

    pub fn build(&self) -> photon_prop::Result<Option<AbsorberSpec>> {
        Ok(Some(match *self {
            MediumConfig::None => return Ok(None),
            MediumConfig::Matched { gamma, thickness } => AbsorberSpec::matched(gamma, thickness)?,
            MediumConfig::Broad {
                gamma_total,
                thickness,
            } => AbsorberSpec::broad(gamma_total, thickness)?,
            MediumConfig::Eit {
                gamma_total,
                gamma_m,
                omega,
                thickness,
            } => AbsorberSpec::eit(gamma_total, gamma_m, omega, thickness)?,
            MediumConfig::Fe57Siderite {
                gamma_m,
                omega,
                thickness,
            } => AbsorberSpec::fe57_siderite(gamma_m, omega, thickness)?,
        }))
    }

    fn pairs(&self) -> Vec<(&'static str, f64)> {
        match *self {
            MediumConfig::None => vec![],
            MediumConfig::Matched { gamma, thickness } => {
                vec![("gamma", gamma), ("thickness", thickness)]
            }
            MediumConfig::Broad {
                gamma_total,
                thickness,
            } => vec![("gamma_total", gamma_total), ("thickness", thickness)],
            MediumConfig::Eit {
                gamma_total,
                gamma_m,
                omega,
                thickness,
            } => vec![
                ("gamma_total", gamma_total),
                ("gamma_m", gamma_m),
                ("omega", omega),
                ("thickness", thickness),
            ],
            MediumConfig::Fe57Siderite {
                gamma_m,
                omega,
                thickness,
            } => vec![("gamma_m", gamma_m), ("omega", omega), ("thickness", thickness)],
        }
    }
}

/// A fully parsed scenario. Range checks live in [`crate::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    /// Which physical rate the dimensionless rates are measured in.
    pub reference_rate: String,
    pub sources: Vec<WaveformKind>,
    pub delta_ph: f64,
    pub medium: MediumConfig,
    pub t_start: f64,
    pub t_end: f64,
    pub n_points: usize,
    pub methods: Vec<Provenance>,
    pub outputs: Vec<OutputKind>,
    pub scan_thickness: Vec<f64>,
    pub phi_ratios: Vec<f64>,
    pub eit_simplified: bool,
}

impl Scenario {
    pub fn grid(&self) -> photon_prop::Result<TimeGrid> {
        TimeGrid::new(self.t_start, self.t_end, self.n_points)
    }

    pub fn waveform(&self, kind: WaveformKind) -> photon_prop::Result<PhotonWaveform> {
        PhotonWaveform::new(kind, self.delta_ph)
    }

    pub fn eit_form(&self) -> AdiabaticForm {
        if self.eit_simplified {
            AdiabaticForm::Simplified
        } else {
            AdiabaticForm::Full
        }
    }

    pub fn wants(&self, o: OutputKind) -> bool {
        self.outputs.contains(&o)
    }

    /// Canonical `key = value` form; parsing it gives back the same scenario.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        fn list<T: ToString>(v: &[T]) -> String {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        }
        fn nums(v: &[f64]) -> String {
            v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(", ")
        }
        let mut out = vec![
            ("name".to_string(), self.name.clone()),
            ("reference_rate".into(), self.reference_rate.clone()),
            ("sources".into(), list(&self.sources)),
            ("delta_ph".into(), format!("{:?}", self.delta_ph)),
            ("medium".into(), self.medium.name().to_string()),
        ];
        for (k, v) in self.medium.pairs() {
            out.push((k.to_string(), format!("{v:?}")));
        }
        out.extend([
            ("t_start".to_string(), format!("{:?}", self.t_start)),
            ("t_end".into(), format!("{:?}", self.t_end)),
            ("n_points".into(), self.n_points.to_string()),
            ("methods".into(), list(&self.methods)),
            ("outputs".into(), list(&self.outputs)),
            ("scan_thickness".into(), nums(&self.scan_thickness)),
            ("phi_ratios".into(), nums(&self.phi_ratios)),
            ("eit_simplified".into(), self.eit_simplified.to_string()),
        ]);
        out
    }

    pub fn to_config_text(&self) -> String {
        self.to_pairs()
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}

const KEYS: [&str; 20] = [
    "name",
    "reference_rate",
    "sources",
    "delta_ph",
    "medium",
    "gamma",
    "gamma_total",
    "gamma_m",
    "omega",
    "thickness",
    "t_start",
    "t_end",
    "n_points",
    "spacing",
    "methods",
    "outputs",
    "scan_thickness",
    "phi_ratios",
    "eit_simplified",
    "comment",
];

/// Reads a scenario from disk; `.json` files and files starting with `{` are JSON.
pub fn load(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(&format!("cannot read {}", path.display()), e))?;
    let json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    if json {
        parse_json(&text)
    } else {
        parse_text(&text)
    }
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

pub fn parse_text(text: &str) -> Result<Scenario> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| parse_err(format!("line {}: expected 'key = value'", n + 1)))?;
        let key = k.trim().to_string();
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(parse_err(format!("line {}: duplicate key '{key}'", n + 1)));
        }
    }
    from_map(map)
}

pub fn parse_json(text: &str) -> Result<Scenario> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err("JSON config must be an object"))?;
    let scalar = |k: &str, v: &serde_json::Value| -> Result<String> {
        match v {
            serde_json::Value::String(s) => Ok(s.clone()),
            serde_json::Value::Number(n) => Ok(n.to_string()),
            serde_json::Value::Bool(b) => Ok(b.to_string()),
            _ => Err(parse_err(format!("key '{k}': expected a string, number or boolean"))),
        }
    };
    let mut map = BTreeMap::new();
    for (k, v) in obj {
        let s = match v {
            serde_json::Value::Array(items) => items
                .iter()
                .map(|i| scalar(k, i))
                .collect::<Result<Vec<_>>>()?
                .join(","),
            other => scalar(k, other)?,
        };
        map.insert(k.clone(), s);
    }
    from_map(map)
}

struct Fields {
    map: BTreeMap<String, String>,
}

impl Fields {
    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn required(&mut self, key: &str) -> Result<String> {
        self.take(key)
            .ok_or_else(|| parse_err(format!("missing required key '{key}'")))
    }

    fn number(&mut self, key: &str) -> Result<f64> {
        let v = self.required(key)?;
        parse_number(key, &v)
    }

    fn list<T>(&mut self, key: &str, f: impl Fn(&str) -> std::result::Result<T, String>) -> Result<Vec<T>> {
        let Some(v) = self.take(key) else {
            return Ok(Vec::new());
        };
        v.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| f(s).map_err(|e| parse_err(format!("key '{key}': {e}"))))
            .collect()
    }
}

fn parse_number(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse::<f64>()
        .map_err(|_| parse_err(format!("key '{key}': '{v}' is not a number")))
}

/// `a:b:step` (inclusive) or a comma-separated list.
fn parse_values(key: &str, v: &str) -> Result<Vec<f64>> {
    if v.contains(':') {
        let parts: Vec<_> = v.split(':').map(|p| parse_number(key, p)).collect::<Result<_>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(parse_err(format!("key '{key}': range must be start:stop:step")));
        };
        if !(step > 0.0) || stop < start {
            return Err(parse_err(format!("key '{key}': empty or invalid range {v}")));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|i| start + i as f64 * step).collect());
    }
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_number(key, s))
        .collect()
}

fn from_map(map: BTreeMap<String, String>) -> Result<Scenario> {
    if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(parse_err(format!("unknown key '{k}'")));
    }
    let mut f = Fields { map };
    f.take("comment");
    let name = f.required("name")?;
    let reference_rate = f.take("reference_rate").unwrap_or_else(|| "delta_ph".into());
    let sources = f.list("sources", |s| {
        s.parse::<WaveformKind>().map_err(|e| e.to_string())
    })?;
    let delta_ph = f.number("delta_ph")?;
    let medium_name = f.take("medium").unwrap_or_else(|| "none".into());
    let medium = match medium_name.as_str() {
        "none" => MediumConfig::None,
        "matched" => MediumConfig::Matched {
            gamma: f.number("gamma")?,
            thickness: f.number("thickness")?,
        },
        "broad" => MediumConfig::Broad {
            gamma_total: f.number("gamma_total")?,
            thickness: f.number("thickness")?,
        },
        "eit" => MediumConfig::Eit {
            gamma_total: f.number("gamma_total")?,
            gamma_m: f.number("gamma_m")?,
            omega: f.number("omega")?,
            thickness: f.number("thickness")?,
        },
        "fe57-siderite" | "fe57_siderite" => MediumConfig::Fe57Siderite {
            gamma_m: f.number("gamma_m")?,
            omega: f.number("omega")?,
            thickness: f.number("thickness")?,
        },
        other => {
            return Err(parse_err(format!(
                "unknown medium '{other}' (expected none, matched, broad, eit, fe57-siderite)"
            )))
        }
    };
    for k in ["gamma", "gamma_total", "gamma_m", "omega", "thickness"] {
        if f.map.contains_key(k) {
            return Err(parse_err(format!("key '{k}' does not apply to medium '{medium_name}'")));
        }
    }
    let t_start = f.number("t_start")?;
    let t_end = f.number("t_end")?;
    let (t_end, n_points) = match (f.take("n_points"), f.take("spacing")) {
        (Some(n), None) => {
            let n = n
                .trim()
                .parse::<usize>()
                .map_err(|_| parse_err(format!("key 'n_points': '{n}' is not a count")))?;
            (t_end, n)
        }
        (None, Some(h)) => {
            // t_end is extended to a whole number of steps
            let h = parse_number("spacing", &h)?;
            let g = TimeGrid::with_spacing(t_start, t_end, h)
                .map_err(|e| parse_err(format!("key 'spacing': {e}")))?;
            (g.t_end(), g.len())
        }
        (Some(_), Some(_)) => return Err(parse_err("give either 'n_points' or 'spacing', not both")),
        (None, None) => return Err(parse_err("missing grid size: give 'n_points' or 'spacing'")),
    };
    let methods = f.list("methods", |s| s.parse::<Provenance>().map_err(|e| e.to_string()))?;
    let outputs = f.list("outputs", |s| s.parse::<OutputKind>())?;
    let scan_thickness = match f.take("scan_thickness") {
        Some(v) => parse_values("scan_thickness", &v)?,
        None => Vec::new(),
    };
    let phi_ratios = match f.take("phi_ratios") {
        Some(v) => parse_values("phi_ratios", &v)?,
        None => Vec::new(),
    };
    let eit_simplified = match f.take("eit_simplified").as_deref().map(str::trim) {
        None | Some("false") => false,
        Some("true") => true,
        Some(other) => {
            return Err(parse_err(format!("key 'eit_simplified': expected true or false, got '{other}'")))
        }
    };
    Ok(Scenario {
        name,
        reference_rate,
        sources,
        delta_ph,
        medium,
        t_start,
        t_end,
        n_points,
        methods,
        outputs,
        scan_thickness,
        phi_ratios,
        eit_simplified,
    })
}
