//! Verification suite and JSON reports for the `tatelab` command.

pub mod report;
pub mod suite;
