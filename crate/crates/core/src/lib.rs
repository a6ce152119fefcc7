//! Exact arithmetic in the Eisenstein and Gaussian integers, power residue
//! symbols, Gauss sums, theta coefficients and the Dirichlet series checks
//! built on them.

pub mod cli;
pub mod error;
pub mod gauss;
pub mod hecke;
pub mod poly;
pub mod rat;
pub mod report;
pub mod ring;
pub mod series;
pub mod suite;
pub mod symbols;
pub mod tau;
pub mod unfold;

pub use error::{Error, Result};
