//! Finite groups, their actions on semi-simplicial sets, generic flags and
//! the stabilizer compatibility checks.

mod action;
mod flag;
mod group;
mod mq3;

pub use action::{ActionIssue, ActionReport, GroupAction};
pub use flag::{check_int_inclusion, generic_flag, FlaggedAction, InclusionFailure, InclusionReport};
pub use group::{standard_embedding, FiniteGroup, DEFAULT_GROUP_CAP};
pub use mq3::{check_mq3, maps_from_embeddings, Mq3Context, Mq3Failure, Mq3Maps, Mq3Report, Mq3Variant};

use thiserror::Error;

use crate::extint::ExtInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("table row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("product {a}·{b} = {value} is not an element")]
    EntryOutOfRange { a: usize, b: usize, value: usize },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    MissingInverse { element: usize },
    #[error("({a}·{b})·{c} differs from {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {index} is not a permutation of the stated degree")]
    BadPermutation { index: usize },
    #[error("{a}·{b} leaves the proposed subgroup")]
    NotClosed { a: usize, b: usize },
    #[error("group order exceeds the cap of {cap}")]
    CapExceeded { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("action covers {found} levels, complex has {expected}")]
    LevelCount { expected: usize, found: usize },
    #[error("images at level {level} are not permutations of that level")]
    NotPermutation { level: usize },
    #[error("{generators} generators but {images} image lists")]
    GeneratorCount { generators: usize, images: usize },
    #[error("generators do not generate the group")]
    GeneratorsDoNotGenerate,
    #[error("generator images do not define an action: {0:?}")]
    Inconsistent(ActionIssue),
    #[error("complex has no vertex labels")]
    Unlabelled,
    #[error("group carries no permutation representation")]
    NotPermutationGroup,
    #[error("element {g} sends simplex {simplex} of level {level} outside the complex")]
    ImageMissing { level: usize, simplex: usize, g: usize },
    #[error("flag of depth {requested} needs transitivity through that level, have {available}")]
    NotTransitiveEnough { requested: usize, available: ExtInt },
}
