//! Command-line front end for the EIT noise model: parameter sweeps with
//! deterministic CSV output, analytic/numeric comparison reports and
//! length-scale tables.

pub mod config;
pub mod report;
pub mod sweep;

pub use config::{parse_config, parse_override, ConfigError, Mode, SweepConfig};
pub use report::{compare_report, write_scales, CompareReport};
pub use sweep::{run_sweep, write_csv, Record, SweepError};
