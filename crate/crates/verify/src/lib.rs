//! Suite runner, evaluation oracle and reports for the sov-core engine.

pub mod concordance;
pub mod config;
pub mod oracle;
pub mod ops;
pub mod report;
pub mod suites;
pub mod tables;
