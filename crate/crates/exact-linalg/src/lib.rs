//! Exact linear algebra over the rationals, over prime fields, and over
//! multivariate rational function fields.
//!
//! Everything here is immutable after construction and all operations are
//! pure; values can be shared freely across threads. Randomized routines take
//! an explicit RNG.

pub mod linform;
pub mod matrix;
pub mod modular;
pub mod mpoly;
pub mod rat;
pub mod symbolic;

pub use linform::{LinForm, LinMatrix};
pub use matrix::RatMatrix;
pub use modular::{random_prime, ModMatrix};
pub use mpoly::MPoly;
pub use rat::{rat, ratio, Rat};
pub use symbolic::symbolic_rank;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("term budget exceeded: {terms} terms, budget {budget}")]
    TermBudgetExceeded { terms: usize, budget: usize },
    #[error("denominator divisible by modulus {0}")]
    BadPrime(u64),
    #[error("polynomial division is not exact")]
    InexactDivision,
}
