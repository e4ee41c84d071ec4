//! Command-line front end for `transgression-core`: scenario files, JSON
//! encodings, verification suites and their reports.

pub mod error;
pub mod json;
pub mod report;
pub mod scenario;
pub mod suites;

pub use error::{CliError, CliResult};
pub use report::SuiteReport;
pub use scenario::{GenSpec, Scenario};
pub use suites::{parse_complex, run_suite, Context, SUITES};
