//! Exact integral homology and fundamental-group presentations.
//!
//! Everything here is computed with arbitrary-precision integers and serves
//! as the independent check for the invariance claims of the move calculus.

mod homology;
mod matrix;
mod presentation;
mod snf;

use thiserror::Error;

use crate::complex::ComplexError;
use crate::graph::GraphError;

pub use homology::{boundary_matrix, euler_characteristic, homology, HomologyProfile};
pub use matrix::IntMatrix;
pub use presentation::{
    pi1_presentation, try_trivialize, AbelianGroup, Letter, Presentation, TietzeBudget, Triviality, Word,
};
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("boundary dimension {d} outside 1..={dim}")]
    DimensionOutOfRange { d: usize, dim: usize },
    #[error("homology of the empty complex is not defined here")]
    EmptyComplex,
    #[error("the complex is disconnected")]
    Disconnected,
    #[error("torsion coefficient {0} does not fit in 64 bits")]
    TorsionOverflow(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
