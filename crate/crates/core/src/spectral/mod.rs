//! Double complexes over ℚ, their two filtration spectral sequences, the
//! invariant double complex of a group action and the checks run on its pages.

mod double;
mod group;
mod sequence;
mod theorem_a;

pub use double::DoubleComplex;
pub use group::{build_group_double_complex, group_cohomology_dims, DEFAULT_CELL_BUDGET};
pub use sequence::{
    spectral_sequence, Filtration, Page, PageDifferential, PageIssue, PageSummary, SpectralSequence, SpectralSummary,
};
pub use theorem_a::{default_grid, verify_theorem_a, ClaimCheck, ClaimKind, TheoremAReport};

use thiserror::Error;

use crate::groupaction::ActionError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("malformed double complex: {what}")]
    Shape { what: &'static str },
    #[error("{} map out of cell ({p}, {q}) has the wrong shape", if *horizontal { "horizontal" } else { "vertical" })]
    MapShape { p: usize, q: usize, horizontal: bool },
    #[error("{identity} fails at cell ({p}, {q})")]
    ComplexInvalid { p: usize, q: usize, identity: &'static str },
    #[error("cell ({p}, {q}) has dimension {dim}, over the budget of {budget}")]
    BudgetExceeded { p: usize, q: usize, dim: usize, budget: usize },
    #[error(transparent)]
    Action(#[from] ActionError),
}
