use alloc::vec::Vec;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{CochainComplex, LaError, Rational, RationalMatrix};

/// Contracting homotopy of the chain complex dual to a [`CochainComplex`].
///
/// `maps[k + 1]` is `h_k : C_k → C_{k+1}` for `k ≥ −1`, as a
/// `dim C_{k+1} × dim C_k` matrix; `bounds[k + 1]` is the declared `C_k`.
/// Column `σ` of `h_k` holds the coefficients of `h_k(σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainHomotopy {
    maps: Vec<RationalMatrix>,
    bounds: Vec<Rational>,
}

impl ChainHomotopy {
    pub fn new(maps: Vec<RationalMatrix>, bounds: Vec<Rational>) -> Result<Self, LaError> {
        if maps.len() != bounds.len() {
            return Err(LaError::HomotopyLength { maps: maps.len(), bounds: bounds.len() });
        }
        if let Some(k) = bounds.iter().position(|b| *b < Rational::zero()) {
            return Err(LaError::NegativeBound { degree: k as i64 - 1 });
        }
        Ok(ChainHomotopy { maps, bounds })
    }

    pub fn maps(&self) -> &[RationalMatrix] {
        &self.maps
    }

    pub fn bounds(&self) -> &[Rational] {
        &self.bounds
    }

    /// `h_k`, for `k ≥ −1`.
    pub fn map(&self, k: i64) -> Option<&RationalMatrix> {
        usize::try_from(k + 1).ok().and_then(|i| self.maps.get(i))
    }

    pub fn bound(&self, k: i64) -> Option<&Rational> {
        usize::try_from(k + 1).ok().and_then(|i| self.bounds.get(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub degree: i64,
    pub simplex: usize,
    /// `"num/den"` rendering of the column norm.
    pub norm: alloc::string::String,
    pub bound: alloc::string::String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyDegree {
    pub degree: i64,
    /// `d_k h_k + h_{k−1} d_{k−1} = 1` on `C_k`.
    pub identity_holds: bool,
    pub bound_holds: bool,
    pub max_column_norm: alloc::string::String,
    pub violation: Option<BoundViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub up_to: i64,
    pub degrees: Vec<HomotopyDegree>,
    pub passed: bool,
}

/// Checks the homotopy identity and the ℓ¹ column bounds in every degree
/// `−1..=up_to` of the chain complex dual to `complex`.
///
/// Chain boundaries are `d_k = (d^k)ᵀ : C_{k+1} → C_k`; terms past the top of
/// the complex are zero-dimensional.
pub fn verify_l1_homotopy(
    complex: &CochainComplex,
    h: &ChainHomotopy,
    up_to: i64,
) -> Result<HomotopyReport, LaError> {
    let dim = |k: i64| complex.dim(k);
    let boundary = |k: i64| -> RationalMatrix {
        complex
            .chain_boundary(k)
            .unwrap_or_else(|| RationalMatrix::zeros(dim(k), dim(k + 1)))
    };

    for k in -1..=up_to {
        let m = h.map(k).ok_or(LaError::HomotopyMissing { degree: k })?;
        if m.shape() != (dim(k + 1), dim(k)) {
            return Err(LaError::HomotopyShape {
                degree: k,
                expected: (dim(k + 1), dim(k)),
                found: m.shape(),
            });
        }
    }

    let mut degrees = Vec::new();
    for k in -1..=up_to {
        let hk = h.map(k).expect("checked above");
        let mut lhs = boundary(k).mul(hk)?;
        if k >= 0 {
            let prev = h.map(k - 1).expect("checked above");
            lhs = lhs.add(&prev.mul(&boundary(k - 1))?)?;
        }
        let identity_holds = lhs == RationalMatrix::identity(dim(k));

        let bound = h.bound(k).expect("bounds match maps");
        let norms = hk.column_l1_norms();
        let max = norms.iter().cloned().max().unwrap_or_else(Rational::zero);
        let violation = norms.iter().enumerate().find(|(_, n)| *n > bound).map(|(s, n)| BoundViolation {
            degree: k,
            simplex: s,
            norm: alloc::format!("{n}"),
            bound: alloc::format!("{bound}"),
        });
        degrees.push(HomotopyDegree {
            degree: k,
            identity_holds,
            bound_holds: violation.is_none(),
            max_column_norm: alloc::format!("{max}"),
            violation,
        });
    }
    let passed = degrees.iter().all(|d| d.identity_holds && d.bound_holds);
    Ok(HomotopyReport { up_to, degrees, passed })
}
