//! Star configurations of points built from osculating hyperplanes of
//! rational normal curves and from Hadamard products of lines, together with
//! exact Hilbert functions of reduced and fat point schemes and checkable
//! certificates for complete intersections, linkage and incidences.
//!
//! All arithmetic is over the rationals; nothing falls back to floating
//! point.

pub mod error;
pub mod certificates;
pub mod exact;
pub mod hadamard;
pub mod hilbert;
pub mod json;
pub mod polygon;
pub mod projgeom;
pub mod rnc;
pub mod sample;

pub use error::{Error, Result};
