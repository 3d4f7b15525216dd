//! Command-line front end and benchmark harness for `wex-core`.

pub mod checks;
pub mod cli;
pub mod harness;
pub mod record;
