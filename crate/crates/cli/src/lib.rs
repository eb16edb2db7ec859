//! Batch driver: parameter files in, exact reports out.

pub mod case;
pub mod corpus;
pub mod report;
pub mod run;

pub use case::{load_case, load_cases, parse_cases, save_cases, CaseFile};
pub use report::{load_report, save_report, CaseReport, CheckResult, Report};
pub use run::{run, run_case, Command, Route, RunOptions};
