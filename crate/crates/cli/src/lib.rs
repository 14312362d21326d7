//! Scenario runner for `photon-prop`: config parsing, validation, figure
//! presets and CSV/JSON output.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod run;
pub mod validate;

pub use config::{load, MediumConfig, OutputKind, Scenario};
pub use error::{CliError, Result};
pub use presets::{preset, PRESET_NAMES};
pub use run::{run_scenario, Manifest, RunOutput};
pub use validate::{validate, Report};

/// Environment variable overriding the default output directory.
pub const OUT_DIR_ENV: &str = "PHOTON_PROP_OUT_DIR";
