use alloc::vec::Vec;

use super::elim::rank;
use super::{LaError, RationalMatrix};
use crate::extint::ExtInt;

/// Finite cochain complex over ℚ with an explicit augmentation term.
///
/// `terms[0]` is degree −1 (normally the scalar line), `terms[l + 1]` is
/// degree `l`. `differentials[k]` maps `terms[k]` to `terms[k + 1]`, so it is
/// `d^{k−1}` in degree notation. Past the last term everything is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    terms: Vec<usize>,
    differentials: Vec<RationalMatrix>,
}

impl CochainComplex {
    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(terms: Vec<usize>, differentials: Vec<RationalMatrix>) -> Result<Self, LaError> {
        if terms.is_empty() || differentials.len() + 1 != terms.len() {
            return Err(LaError::TermCount {
                terms: terms.len(),
                differentials: differentials.len(),
            });
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.shape() != (terms[k + 1], terms[k]) {
                return Err(LaError::DifferentialShape {
                    degree: k as i64 - 1,
                    expected: (terms[k + 1], terms[k]),
                    found: d.shape(),
                });
            }
        }
        for k in 1..differentials.len() {
            let comp = differentials[k].mul(&differentials[k - 1])?;
            if !comp.is_zero() {
                return Err(LaError::ComplexInvalid { degree: k as i64 - 2 });
            }
        }
        Ok(CochainComplex { terms, differentials })
    }

    /// Term dimensions, starting at degree −1.
    pub fn terms(&self) -> &[usize] {
        &self.terms
    }

    pub fn differentials(&self) -> &[RationalMatrix] {
        &self.differentials
    }

    /// Dimension of the term in `degree` (−1 for the augmentation); 0 outside.
    pub fn dim(&self, degree: i64) -> usize {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|k| self.terms.get(k).copied())
            .unwrap_or(0)
    }

    /// `d^degree`, if that map is stored.
    pub fn differential(&self, degree: i64) -> Option<&RationalMatrix> {
        usize::try_from(degree + 1).ok().and_then(|k| self.differentials.get(k))
    }

    /// Highest degree carrying a term.
    pub fn top_degree(&self) -> i64 {
        self.terms.len() as i64 - 2
    }

    /// `dim ker d^l − rank d^{l−1}` for every degree `l ≥ 0`. Since degree −1
    /// is part of the complex these are reduced cohomology dimensions.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(rank).collect();
        (0..=self.top_degree())
            .map(|l| {
                let k = (l + 1) as usize;
                let outgoing = ranks.get(k).copied().unwrap_or(0);
                let incoming = ranks[k - 1];
                self.terms[k] - outgoing - incoming
            })
            .collect()
    }

    /// Largest `γ₀` with vanishing cohomology in degrees `0..=γ₀`; `+∞` if
    /// every degree vanishes and `−∞` if degree 0 already fails.
    pub fn acyclicity_degree(&self) -> ExtInt {
        acyclicity_from_dims(&self.cohomology_dims())
    }

    /// The dual chain complex's boundary `C_{k+1} → C_k`, i.e. the transpose
    /// of `d^k`.
    pub fn chain_boundary(&self, k: i64) -> Option<RationalMatrix> {
        self.differential(k).map(RationalMatrix::transpose)
    }
}

fn acyclicity_from_dims(dims: &[usize]) -> ExtInt {
    match dims.iter().position(|&d| d != 0) {
        None => ExtInt::PosInf,
        Some(0) => ExtInt::NegInf,
        Some(first) => ExtInt::Finite(first as i64 - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn triangle_boundary() -> CochainComplex {
        // vertices 0,1,2; edges (0,1),(0,2),(1,2); d^0 f(a,b) = f(b) - f(a)
        let d_aug = RationalMatrix::from_i64_rows(1, &[&[1], &[1], &[1]]);
        let d0 = RationalMatrix::from_i64_rows(3, &[&[-1, 1, 0], &[-1, 0, 1], &[0, -1, 1]]);
        CochainComplex::new(vec![1, 3, 3], vec![d_aug, d0]).unwrap()
    }

    #[test]
    fn circle_has_one_class_in_degree_one() {
        let c = triangle_boundary();
        assert_eq!(rank(&c.differentials()[1]), 2);
        assert_eq!(c.cohomology_dims(), vec![0, 1]);
        assert_eq!(c.acyclicity_degree(), ExtInt::Finite(0));
    }

    #[test]
    fn point_is_acyclic() {
        let c = CochainComplex::new(vec![1, 1], vec![RationalMatrix::identity(1)]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![0]);
        assert_eq!(c.acyclicity_degree(), ExtInt::PosInf);
    }

    #[test]
    fn d_squared_nonzero_is_rejected() {
        let d_aug = RationalMatrix::from_i64_rows(1, &[&[1], &[1]]);
        let d0 = RationalMatrix::from_i64_rows(2, &[&[1, 0]]);
        assert!(matches!(
            CochainComplex::new(vec![1, 2, 1], vec![d_aug, d0]),
            Err(LaError::ComplexInvalid { .. })
        ));
    }

    #[test]
    fn shape_errors() {
        let bad = RationalMatrix::zeros(2, 2);
        assert!(matches!(
            CochainComplex::new(vec![1, 2], vec![bad]),
            Err(LaError::DifferentialShape { .. })
        ));
        assert!(matches!(CochainComplex::new(vec![1, 2], vec![]), Err(LaError::TermCount { .. })));
    }

    #[test]
    fn degree_zero_failure_is_minus_infinity() {
        // Two points: the constants do not fill the kernel of d^0 = 0.
        let c = CochainComplex::new(
            vec![1, 2],
            vec![RationalMatrix::from_i64_rows(1, &[&[1], &[1]])],
        )
        .unwrap();
        assert_eq!(c.cohomology_dims(), vec![1]);
        assert_eq!(c.acyclicity_degree(), ExtInt::NegInf);
    }
}
