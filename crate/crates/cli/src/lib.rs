//! Scenario files in, CSV/JSON tables out.

pub mod config;
pub mod error;
pub mod output;
pub mod scenarios;

pub use config::{parse_config, Scenario, ScenarioConfig};
pub use error::CliError;
pub use scenarios::{run_scenario, Report};
