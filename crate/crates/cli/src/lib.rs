//! Batch driver: reads a job configuration, runs the selected suites and
//! writes a JSON or text report.

pub mod config;
pub mod run;

pub use config::{ConfigError, JobConfig, Suite};
pub use run::{run, RunReport, Summary};
