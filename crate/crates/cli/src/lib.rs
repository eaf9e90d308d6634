//! Command-line front end for the `starconf` library: constructions,
//! verification suites, conjecture campaigns and SVG figures.

pub mod construct;
pub mod error;
pub mod explore;
pub mod range;
pub mod report;
pub mod seeds;
pub mod suites;
pub mod svg;

pub use error::{CliError, CliResult};
