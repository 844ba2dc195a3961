//! Library surface of the frostlab experiment runner: config parsing and
//! scenario execution, reused by the binary and the acceptance suite.

pub mod config;
pub mod scenario;

pub use config::{ConfigError, ExperimentConfig, Scenario};
pub use scenario::{run, run_config_text, RunOutcome, RunStatus};
