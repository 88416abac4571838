//! Library side of the `fqdist` binary: configuration, the five runners, and
//! report output. Every runner returns an [`Outcome`] holding CSV files and a
//! JSON summary; the process exit status is nonzero iff the summary records a
//! failure.

pub mod config;
pub mod report;
pub mod run;

pub use config::{FieldSpec, SweepConfig};
pub use report::{Outcome, Summary, SCHEMA_VERSION};
pub use run::{run_fourier_test, run_orbit_check, run_sharpness, run_sweep, run_verify, Source, VerifyOptions};
