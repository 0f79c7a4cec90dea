use alloc::vec::Vec;

use num_traits::One;

use super::SpectralError;
use crate::exactla::{rank, CochainComplex, Rational, RationalMatrix};

/// A bounded first-quadrant double complex over ℚ.
///
/// Cells are indexed `(p, q)` with `p < cols`, `q < rows`. `d_H` goes from
/// `(p, q)` to `(p + 1, q)` and `d_V` from `(p, q)` to `(p, q + 1)`; the two
/// commute. Maps leaving the grid are zero and not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleComplex {
    dims: Vec<Vec<usize>>,
    horiz: Vec<Vec<RationalMatrix>>,
    vert: Vec<Vec<RationalMatrix>>,
}

impl DoubleComplex {
    /// `dims[p][q]`; `horiz[p][q]` for `p + 1 < cols`; `vert[p][q]` for
    /// `q + 1 < rows`. Checks shapes, `d_H² = 0`, `d_V² = 0` and
    /// `d_H d_V = d_V d_H`.
    pub fn new(
        dims: Vec<Vec<usize>>,
        horiz: Vec<Vec<RationalMatrix>>,
        vert: Vec<Vec<RationalMatrix>>,
    ) -> Result<Self, SpectralError> {
        let cols = dims.len();
        let rows = dims.first().map_or(0, Vec::len);
        if dims.iter().any(|c| c.len() != rows) {
            return Err(SpectralError::Shape { what: "dimension grid is ragged" });
        }
        if horiz.len() != cols.saturating_sub(1) || horiz.iter().any(|c| c.len() != rows) {
            return Err(SpectralError::Shape { what: "horizontal maps do not cover the grid" });
        }
        if vert.len() != cols || vert.iter().any(|c| c.len() != rows.saturating_sub(1)) {
            return Err(SpectralError::Shape { what: "vertical maps do not cover the grid" });
        }
        for p in 0..cols {
            for q in 0..rows {
                if p + 1 < cols && horiz[p][q].shape() != (dims[p + 1][q], dims[p][q]) {
                    return Err(SpectralError::MapShape { p, q, horizontal: true });
                }
                if q + 1 < rows && vert[p][q].shape() != (dims[p][q + 1], dims[p][q]) {
                    return Err(SpectralError::MapShape { p, q, horizontal: false });
                }
            }
        }
        let dc = DoubleComplex { dims, horiz, vert };
        dc.check_identities()?;
        Ok(dc)
    }

    fn check_identities(&self) -> Result<(), SpectralError> {
        let (cols, rows) = self.shape();
        for p in 0..cols {
            for q in 0..rows {
                if p + 2 < cols && !self.horiz[p + 1][q].mul(&self.horiz[p][q]).expect("shapes").is_zero() {
                    return Err(SpectralError::ComplexInvalid { p, q, identity: "d_H d_H = 0" });
                }
                if q + 2 < rows && !self.vert[p][q + 1].mul(&self.vert[p][q]).expect("shapes").is_zero() {
                    return Err(SpectralError::ComplexInvalid { p, q, identity: "d_V d_V = 0" });
                }
                if p + 1 < cols && q + 1 < rows {
                    let hv = self.horiz[p][q + 1].mul(&self.vert[p][q]).expect("shapes");
                    let vh = self.vert[p + 1][q].mul(&self.horiz[p][q]).expect("shapes");
                    if hv != vh {
                        return Err(SpectralError::ComplexInvalid { p, q, identity: "d_H d_V = d_V d_H" });
                    }
                }
            }
        }
        Ok(())
    }

    /// `(cols, rows)`: number of `p` and `q` values.
    pub fn shape(&self) -> (usize, usize) {
        (self.dims.len(), self.dims.first().map_or(0, Vec::len))
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    /// `d_H` out of `(p, q)`, if it lands inside the grid.
    pub fn horizontal(&self, p: usize, q: usize) -> Option<&RationalMatrix> {
        self.horiz.get(p).and_then(|c| c.get(q))
    }

    /// `d_V` out of `(p, q)`, if it lands inside the grid.
    pub fn vertical(&self, p: usize, q: usize) -> Option<&RationalMatrix> {
        self.vert.get(p).and_then(|c| c.get(q))
    }

    /// Largest total degree with a cell.
    pub fn max_total_degree(&self) -> Option<usize> {
        let (c, r) = self.shape();
        (c > 0 && r > 0).then(|| c + r - 2)
    }

    /// Mirror image with the roles of `p` and `q` exchanged.
    pub fn transposed(&self) -> DoubleComplex {
        let (cols, rows) = self.shape();
        let dims = (0..rows).map(|q| (0..cols).map(|p| self.dims[p][q]).collect()).collect();
        let horiz = (0..rows.saturating_sub(1))
            .map(|q| (0..cols).map(|p| self.vert[p][q].clone()).collect())
            .collect();
        let vert = (0..rows).map(|q| (0..cols.saturating_sub(1)).map(|p| self.horiz[p][q].clone()).collect()).collect();
        DoubleComplex { dims, horiz, vert }
    }

    /// Cochain complex of the totalization, `D = d_H + (−1)^p d_V`, with a
    /// zero augmentation term so that its reported dimensions are unreduced.
    pub fn total_complex(&self) -> CochainComplex {
        let layout = TotalLayout::new(self, |p, _| p);
        let n_max = self.max_total_degree().map_or(0, |n| n + 1);
        let mut terms = Vec::with_capacity(n_max + 1);
        terms.push(0);
        terms.extend((0..n_max).map(|n| layout.dim(n)));
        let mut diffs = Vec::with_capacity(n_max);
        diffs.push(RationalMatrix::zeros(terms.get(1).copied().unwrap_or(0), 0));
        for n in 0..n_max.saturating_sub(1) {
            diffs.push(layout.differential(self, n));
        }
        diffs.truncate(terms.len() - 1);
        CochainComplex::new(terms, diffs).expect("total differential squares to zero")
    }

    /// Dimensions of the cohomology of the totalization in degrees `0..=up_to`
    /// (zero past the grid).
    pub fn total_cohomology(&self, up_to: usize) -> Vec<usize> {
        let layout = TotalLayout::new(self, |p, _| p);
        let ranks: Vec<usize> = (0..=up_to + 1).map(|n| rank(&layout.differential(self, n))).collect();
        (0..=up_to)
            .map(|n| {
                let incoming = if n == 0 { 0 } else { ranks[n - 1] };
                layout.dim(n) - ranks[n] - incoming
            })
            .collect()
    }
}

/// Coordinates of the total complex. In each total degree the cells are laid
/// out in increasing order of a filtration key, so `F^s` is a suffix.
#[derive(Debug, Clone)]
pub(crate) struct TotalLayout {
    // per degree: (key, p, q, offset, len), sorted by key
    pub(crate) blocks: Vec<Vec<(usize, usize, usize, usize, usize)>>,
}

impl TotalLayout {
    pub(crate) fn new(dc: &DoubleComplex, key: impl Fn(usize, usize) -> usize) -> Self {
        let (cols, rows) = dc.shape();
        let n_max = dc.max_total_degree().map_or(0, |n| n + 2);
        let blocks = (0..=n_max)
            .map(|n| {
                let mut cells: Vec<(usize, usize, usize)> = (0..=n)
                    .filter(|&p| p < cols && n - p < rows)
                    .map(|p| (key(p, n - p), p, n - p))
                    .collect();
                cells.sort_unstable();
                let mut offset = 0;
                cells
                    .into_iter()
                    .map(|(k, p, q)| {
                        let len = dc.dim(p, q);
                        offset += len;
                        (k, p, q, offset - len, len)
                    })
                    .collect()
            })
            .collect();
        TotalLayout { blocks }
    }

    pub(crate) fn dim(&self, n: usize) -> usize {
        self.blocks.get(n).and_then(|b| b.last()).map_or(0, |&(_, _, _, o, l)| o + l)
    }

    fn offset_of(&self, n: usize, p: usize, q: usize) -> Option<usize> {
        self.blocks.get(n)?.iter().find(|b| b.1 == p && b.2 == q).map(|b| b.3)
    }

    /// First coordinate of `F^s` in degree `n`.
    pub(crate) fn filtration_start(&self, n: usize, s: i64) -> usize {
        let Some(blocks) = self.blocks.get(n) else { return 0 };
        blocks
            .iter()
            .find(|b| b.0 as i64 >= s)
            .map_or(self.dim(n), |b| b.3)
    }

    /// `D : C^n → C^{n+1}` in these coordinates.
    pub(crate) fn differential(&self, dc: &DoubleComplex, n: usize) -> RationalMatrix {
        let mut triplets = Vec::new();
        let one = Rational::one();
        if let Some(blocks) = self.blocks.get(n) {
            for &(_, p, q, off, _) in blocks {
                if let Some(h) = dc.horizontal(p, q) {
                    let t = self.offset_of(n + 1, p + 1, q).expect("target cell is laid out");
                    triplets.extend(h.entries().map(|(i, j, v)| (t + i, off + j, v.clone())));
                }
                if let Some(v) = dc.vertical(p, q) {
                    let t = self.offset_of(n + 1, p, q + 1).expect("target cell is laid out");
                    let sign = if p % 2 == 0 { one.clone() } else { -one.clone() };
                    triplets.extend(v.entries().map(|(i, j, x)| (t + i, off + j, x * &sign)));
                }
            }
        }
        RationalMatrix::from_triplets(self.dim(n + 1), self.dim(n), triplets).expect("in range")
    }
}
