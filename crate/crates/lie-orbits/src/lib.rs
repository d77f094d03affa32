//! The five exceptional simple Lie algebras over Q in a Chevalley basis,
//! nilpotent orbit representatives from weighted Dynkin diagrams, and the
//! two centralizer applications: index certification and minimal
//! double-centralizer dimensions.

pub mod algebra;
pub mod centralizer;
pub mod orbits;
pub mod roots;
pub mod tables;

pub use algebra::{bracket, build_algebra, grade, Grading, LieAlgebra, LieElement};
pub use roots::{build, Kind, Root, RootSystem, ALL_KINDS};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("input error: {0}")]
    Input(String),
    #[error("elements belong to different algebras: {0} vs {1}")]
    AlgebraMismatch(roots::Kind, roots::Kind),
    #[error("non-integer eigenvalue: h does not define an integer grading")]
    NonIntegerGrading,
    #[error(
        "no representative found; the diagram is probably not a nilpotent orbit \
         ({trials} trials, {mod_successes} modular hits)"
    )]
    ProbablyInvalidDiagram { trials: usize, mod_successes: usize },
    #[error("system unsolvable: {0}")]
    Unsolvable(String),
    #[error("no subsystem embedding found for the requested component types")]
    NoEmbedding,
    #[error("linear algebra failure: {0}")]
    Linalg(#[from] exact_linalg::LinalgError),
    #[error("table data error: {0}")]
    TableData(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
