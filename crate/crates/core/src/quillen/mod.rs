//! Stability profiles, dual ranges, verdicts of the main theorem and the
//! end-to-end family pipeline.

mod family;
mod profile;

pub use family::{
    symmetric_family, verify_family, FamilyFailure, FamilyReport, MemberReport, QuillenFamily, VerifyOptions,
};
pub use profile::{
    check_lemma_combinatorics, dual_gamma, dual_tau, margin, stability_table, verdict, Binding, ExtensionRule,
    LemmaItem, LemmaReport, Margin, RangeFunction, StabilityProfile, StabilityTable, TableRow, Verdict, VerdictKind,
    Witness,
};

use thiserror::Error;

use crate::extint::ExtInt;
use crate::groupaction::{ActionError, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("initial parameter q0 must be at least 1")]
    InitialParameter,
    #[error("family length {0} is not a natural number or ∞")]
    Length(ExtInt),
    #[error("{function:?} table has {len} entries, more than R + 1 = {}", length + 1)]
    TableTooLong { function: RangeFunction, len: usize, length: usize },
    #[error("index {r} is outside the range allowed by R = {length}")]
    IndexOutOfRange { r: i64, length: ExtInt },
    #[error("{function:?} is not defined at r = {r}: past the table with no extension rule")]
    BeyondExtension { function: RangeFunction, r: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family has no members")]
    Empty,
    #[error("{members} members need {} embeddings, got {embeddings}", members - 1)]
    EmbeddingCount { members: usize, embeddings: usize },
    #[error("embedding {r} does not map G_{r} into G_{}", r + 1)]
    EmbeddingShape { r: usize },
    #[error("{members} members but {maps} map sets")]
    MapsCount { members: usize, maps: usize },
    #[error("initial parameter q0 must be at least 1")]
    InitialParameter,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Action(#[from] ActionError),
}
