//! Exact verification of functional equivariance for B-series integrators:
//! rooted trees, tree-indexed series and their coefficient conditions,
//! polynomial vector fields, and integrators expanded exactly in the step
//! size.

pub mod cli;
pub mod error;
pub mod fields;
pub mod integrate;
pub mod io;
pub mod poly;
pub mod random;
pub mod rational;
pub mod series;
pub mod trees;

pub use error::{Error, Result};

/// Resource limits for symbolic work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest tree order accepted by enumeration and series.
    pub max_order: usize,
    /// Largest number of monomials allowed in one symbolic intermediate.
    pub monomial_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: trees::DEFAULT_MAX_ORDER, monomial_budget: 1_000_000 }
    }
}
