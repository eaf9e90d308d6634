//! Exact arithmetic: rationals, fraction-free linear algebra, sparse
//! homogeneous forms and resultants.

pub mod matrix;
pub mod modular;
pub mod poly;
pub mod rational;
pub mod resultant;
pub mod univariate;

pub use matrix::RatMatrix;
pub use poly::{monomials, HomForm};
pub use rational::{rat, rat_frac, Rational};
pub use resultant::{coprime, coprime_with, sylvester_resultant};
pub use univariate::UniPoly;
