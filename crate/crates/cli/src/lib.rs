//! Batch verification front end: configuration parsing, suite
//! orchestration, and deterministic machine-readable reports.

pub mod checks;
pub mod config;
pub mod report;

pub use checks::run_checks;
pub use config::{parse_config, CheckKind, ConfigError, RunConfig};
pub use report::{emit_report, CheckRecord, Report, ReportFormat};
