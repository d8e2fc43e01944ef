//! File formats, reports, charts and the command-line front end for
//! `citerank-core`.

pub mod chart;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod inputs;
pub mod records;
pub mod report;
pub mod store_file;

pub use error::{Error, Result};
