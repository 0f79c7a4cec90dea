//! Exact linear algebra over ℚ.

mod complex;
mod elim;
mod homotopy;
mod matrix;
mod subspace;

pub use complex::CochainComplex;
pub use elim::rank;
pub use homotopy::{verify_l1_homotopy, BoundViolation, ChainHomotopy, HomotopyDegree, HomotopyReport};
pub use matrix::{RationalMatrix, SparseVec};
pub use subspace::{QuotientSpace, Subspace};

use thiserror::Error;

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
    #[error("shape mismatch: {left:?} against {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("{terms} terms need {} differentials, got {differentials}", terms.saturating_sub(1))]
    TermCount { terms: usize, differentials: usize },
    #[error("differential d^{degree} has shape {found:?}, expected {expected:?}")]
    DifferentialShape { degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("d^{} ∘ d^{degree} is not zero", degree + 1)]
    ComplexInvalid { degree: i64 },
    #[error("homotopy has {maps} maps but {bounds} bounds")]
    HomotopyLength { maps: usize, bounds: usize },
    #[error("homotopy bound C_{degree} is negative")]
    NegativeBound { degree: i64 },
    #[error("homotopy map h_{degree} is missing")]
    HomotopyMissing { degree: i64 },
    #[error("homotopy map h_{degree} has shape {found:?}, expected {expected:?}")]
    HomotopyShape { degree: i64, expected: (usize, usize), found: (usize, usize) },
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    use core::str::FromStr;
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = num_bigint::BigInt::from_str(n.trim()).ok()?;
            let d = num_bigint::BigInt::from_str(d.trim()).ok()?;
            if num_traits::Zero::is_zero(&d) {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => num_bigint::BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}
