//! Configuration, the noise sweep, CSV output and the oracle validation suite.

pub mod config;
pub mod sweep;
pub mod validation;

pub use config::{load_config, load_config_file, ConfigError, ExperimentConfig, RangeMode};
pub use sweep::{
    csv_bytes, inv_sigma2_grid, run_sweep, run_sweep_with, write_csv, CsvError, GPerturbation,
    SweepRecord, CSV_HEADER,
};
pub use validation::{run_validation, CheckOutcome, ValidationOptions, ValidationReport};
