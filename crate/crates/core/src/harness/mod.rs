//! Verification harness: reproducible suites, the small-graph census and the
//! single-instance commands used by the CLI.

pub mod census;
pub mod commands;
pub mod report;
pub mod suites;

pub use census::{run_census, Census, CensusRow, CENSUS_HEADER};
pub use commands::{cmd_aw, cmd_solve, AwMethod, AwOutput, SolveOutput};
pub use report::{CaseRecord, CaseStatus, Outcome, VerificationReport};
pub use suites::{describe_graph, run_suite, RunConfig, Suite, SuiteParams};
