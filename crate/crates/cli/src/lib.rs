//! Problem-file parsing, report generation and command dispatch for the
//! `brim` binary.

pub mod corpus;
pub mod parse;
pub mod problem;
pub mod report;
pub mod runner;
