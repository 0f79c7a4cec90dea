//! Subspaces of ℚⁿ and quotients between them.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::elim::{bit_length, kernel_vectors};
use super::matrix::{axpy, lookup, scale, SparseVec};
use super::{Rational, RationalMatrix};

/// A subspace of `ℚ^ambient`, kept in Gauss–Jordan form: basis vector `i`
/// has a 1 in column `pivots[i]` and every other basis vector is 0 there.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| alloc::vec![(i, Rational::one())]).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Coordinate subspace spanned by the standard vectors `range`.
    pub fn coordinate(ambient: usize, range: core::ops::Range<usize>) -> Self {
        Subspace {
            ambient,
            basis: range.clone().map(|i| alloc::vec![(i, Rational::one())]).collect(),
            pivots: range.collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = SparseVec>>(ambient: usize, vectors: I) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// `{x : m·x = 0}` inside `ℚ^{m.cols()}`.
    pub fn kernel(m: &RationalMatrix) -> Self {
        let (basis, pivots) = kernel_vectors(m);
        Subspace { ambient: m.cols(), basis, pivots }
    }

    /// Column space of `m` inside `ℚ^{m.rows()}`.
    pub fn image(m: &RationalMatrix) -> Self {
        Subspace::span(m.rows(), m.transpose().into_rows())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Residual of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut out: SparseVec = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if let Some(coef) = lookup(&out, p) {
                let neg = -coef.clone();
                out = axpy(&out, &neg, b);
            }
        }
        out
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(&v);
        if r.is_empty() {
            return false;
        }
        let (pc, pv) = r
            .iter()
            .min_by_key(|(c, v)| (bit_length(v), *c))
            .map(|(c, v)| (*c, v.clone()))
            .expect("nonzero residual");
        let inv = Rational::one() / pv;
        scale(&mut r, &inv);
        for b in &mut self.basis {
            if let Some(coef) = lookup(b, pc) {
                let neg = -coef.clone();
                *b = axpy(b, &neg, &r);
            }
        }
        self.basis.push(r);
        self.pivots.push(pc);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        debug_assert_eq!(self.ambient, other.ambient);
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for v in &small.basis {
            out.insert(v.clone());
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Image of this subspace under `m`.
    pub fn map(&self, m: &RationalMatrix) -> Subspace {
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)))
    }
}

/// A chosen complement of `denominator` inside `numerator`, with coordinates.
///
/// `reps` are vectors of the numerator whose classes form a basis of the
/// quotient. [`QuotientSpace::coords`] expresses a numerator vector in that
/// basis.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    ambient: usize,
    reps: Vec<SparseVec>,
    // Gauss-Jordan basis of numerator; each vector tagged with its class in
    // rep coordinates (denominator vectors carry the zero tag).
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
    tags: Vec<SparseVec>,
}

impl QuotientSpace {
    pub fn new(numerator: &Subspace, denominator: &Subspace) -> Self {
        let mut q = QuotientSpace {
            ambient: numerator.ambient,
            reps: Vec::new(),
            basis: denominator.basis.clone(),
            pivots: denominator.pivots.clone(),
            tags: alloc::vec![Vec::new(); denominator.dim()],
        };
        for v in &numerator.basis {
            q.push_rep(v);
        }
        q
    }

    fn push_rep(&mut self, v: &SparseVec) {
        let k = self.reps.len();
        let mut r = v.clone();
        let mut tag: SparseVec = alloc::vec![(k, Rational::one())];
        for i in 0..self.basis.len() {
            if let Some(coef) = lookup(&r, self.pivots[i]) {
                let neg = -coef.clone();
                r = axpy(&r, &neg, &self.basis[i]);
                tag = axpy(&tag, &neg, &self.tags[i]);
            }
        }
        if r.is_empty() {
            return;
        }
        let (pc, pv) = r
            .iter()
            .min_by_key(|(c, v)| (bit_length(v), *c))
            .map(|(c, v)| (*c, v.clone()))
            .expect("nonzero residual");
        let inv = Rational::one() / pv;
        scale(&mut r, &inv);
        scale(&mut tag, &inv);
        for i in 0..self.basis.len() {
            if let Some(coef) = lookup(&self.basis[i], pc) {
                let neg = -coef.clone();
                self.basis[i] = axpy(&self.basis[i], &neg, &r);
                self.tags[i] = axpy(&self.tags[i], &neg, &tag);
            }
        }
        self.basis.push(r);
        self.pivots.push(pc);
        self.tags.push(tag);
        self.reps.push(v.clone());
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Class of `v` in rep coordinates, or `None` if `v` is outside the
    /// numerator.
    pub fn coords(&self, v: &[(usize, Rational)]) -> Option<SparseVec> {
        let mut r: SparseVec = v.to_vec();
        let mut tag: SparseVec = Vec::new();
        for i in 0..self.basis.len() {
            if let Some(coef) = lookup(&r, self.pivots[i]) {
                let c = coef.clone();
                let neg = -c.clone();
                r = axpy(&r, &neg, &self.basis[i]);
                tag = axpy(&tag, &c, &self.tags[i]);
            }
        }
        if r.is_empty() {
            tag.retain(|(_, v)| !v.is_zero());
            Some(tag)
        } else {
            None
        }
    }
}
