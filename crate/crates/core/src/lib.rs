//! Propagation of single-photon wave packets through thick resonant absorbers.
//!
//! A photon envelope `b(0, tau)` ([`waveforms`]) crosses a medium described by
//! its spectral response `A(nu) l` ([`media`]). [`propagate`] computes the
//! output `b(l, tau)` numerically and through the available closed forms;
//! [`observables`] integrates areas and energies. Times are in units of an
//! inverse reference rate, `tau = t - l/c` is the local time.

pub mod error;
mod laurent;
pub mod media;
pub mod observables;
pub mod propagate;
pub mod quadrature;
pub mod series;
pub mod specfun;
pub mod waveforms;

pub use error::{Error, Result};
pub use media::{AbsorberSpec, EitParams, LineShape};
pub use propagate::{evaluate, propagate_numeric, AdiabaticForm, EvalOptions, NumericOptions};
pub use series::{Jump, NumericDiagnostics, Provenance, TimeSeries};
pub use waveforms::{OneSided, PhotonWaveform, TimeGrid, WaveformKind};
