//! File formats, parallel search and the command-line front end for
//! `dynamo-lab-core`.

pub mod cli;
pub mod config_file;
mod error;
pub mod limits;
pub mod parallel;
pub mod pgm;
pub mod table;

pub use error::{LabError, LabResult};
