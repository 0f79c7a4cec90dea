//! Exact-arithmetic engine for Quillen-type stability of bounded cohomology
//! over finite groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactla`]: sparse rational matrices, elimination, subspaces and
//!   cochain complexes.
//! * [`semisimplicial`]: finite semi-simplicial sets and their augmented
//!   function-space complexes.
//! * [`groupaction`]: enumerated finite groups, actions, generic flags and
//!   the stabilizer compatibility checks.
//! * [`spectral`]: double complexes, both filtration spectral sequences and
//!   the group double complex built from an action.
//! * [`quillen`]: stability profiles, dual ranges, verdicts and family
//!   verification.
//!
//! Everything is `no_std` + `alloc`; IO and file formats live in the `qss`
//! companion crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod exactla;
pub mod extint;
pub mod groupaction;
pub mod quillen;
pub mod semisimplicial;
pub mod spectral;

pub use exactla::{CochainComplex, ChainHomotopy, Rational, RationalMatrix};
pub use extint::ExtInt;
pub use groupaction::{FiniteGroup, FlaggedAction, GroupAction};
pub use quillen::{QuillenFamily, StabilityProfile, Verdict, VerdictKind};
pub use semisimplicial::{Flag, SemiSimplicialComplex};
pub use spectral::{DoubleComplex, Filtration, SpectralSequence};
