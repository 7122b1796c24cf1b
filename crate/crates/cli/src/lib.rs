//! Session language and report runner for the `arcsub` tool.

pub mod corpus;
pub mod run;
pub mod syntax;

pub use run::{render, run_session, Options, Report, SCHEMA};
pub use syntax::{parse_session, Diagnostic, Session};
