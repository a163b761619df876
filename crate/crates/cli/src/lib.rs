//! Verification reports for the `critlab` command line: suites, acceptance
//! criteria and their JSON / Markdown rendering.

pub mod acceptance;
pub mod cache;
pub mod report;
pub mod suites;

pub use report::{CheckItem, VerificationReport};
pub use suites::CliError;
