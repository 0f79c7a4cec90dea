//! Gaussian elimination over ℚ.
//!
//! Rows are eliminated column by column. Among the rows whose leading entry
//! sits in the current column, the pivot is the entry with the smallest
//! `bits(numerator) + bits(denominator)`; ties go to the sparser row and then
//! to the earlier one. Work starts on sparse rows and switches to dense rows
//! once the remaining block is more than half full.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::matrix::{axpy, lookup, scale, SparseVec};
use super::{Rational, RationalMatrix};

pub(crate) fn bit_length(v: &Rational) -> u64 {
    v.numer().bits() + v.denom().bits()
}

/// Row echelon form: `rows[i]` has its leading 1 in column `pivots[i]`,
/// pivots strictly increasing.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Clears every entry above each pivot, giving the reduced form.
    pub fn reduce_upward(&mut self) {
        for i in (0..self.rows.len()).rev() {
            let pc = self.pivots[i];
            let (above, rest) = self.rows.split_at_mut(i);
            let prow = &rest[0];
            for row in above.iter_mut() {
                if let Some(coef) = lookup(row, pc) {
                    let neg = -coef.clone();
                    *row = axpy(row, &neg, prow);
                }
            }
        }
    }
}

pub(crate) fn echelon(ncols: usize, rows: Vec<SparseVec>) -> Echelon {
    let mut buckets: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
    let mut active_nnz = 0usize;
    let mut active_rows = 0usize;
    for row in rows.into_iter().filter(|r| !r.is_empty()) {
        active_nnz += row.len();
        active_rows += 1;
        buckets.entry(row[0].0).or_default().push(row);
    }

    let mut out = Echelon { rows: Vec::new(), pivots: Vec::new() };

    while let Some((&col, _)) = buckets.iter().next() {
        // Dense fallback once fill-in passes one half of the remaining block.
        let block = active_rows.saturating_mul(ncols - col);
        if block > 0 && active_nnz.saturating_mul(2) > block && active_rows > 1 {
            let remaining: Vec<SparseVec> = core::mem::take(&mut buckets).into_values().flatten().collect();
            dense_forward(ncols, col, remaining, &mut out);
            return out;
        }

        let mut candidates = buckets.remove(&col).unwrap_or_default();
        let best = candidates
            .iter()
            .enumerate()
            .min_by_key(|(i, r)| (bit_length(&r[0].1), r.len(), *i))
            .map(|(i, _)| i)
            .expect("bucket is never empty");
        let mut pivot = candidates.swap_remove(best);
        active_rows -= 1;
        active_nnz -= pivot.len();
        let inv = Rational::one() / &pivot[0].1;
        scale(&mut pivot, &inv);

        for row in candidates {
            active_nnz -= row.len();
            let neg = -row[0].1.clone();
            let reduced = axpy(&row, &neg, &pivot);
            if reduced.is_empty() {
                active_rows -= 1;
            } else {
                active_nnz += reduced.len();
                buckets.entry(reduced[0].0).or_default().push(reduced);
            }
        }
        out.pivots.push(col);
        out.rows.push(pivot);
    }
    out
}

fn dense_forward(ncols: usize, start: usize, rows: Vec<SparseVec>, out: &mut Echelon) {
    let mut dense: Vec<Vec<Rational>> = rows
        .into_iter()
        .map(|r| {
            let mut d = vec![Rational::zero(); ncols];
            for (c, v) in r {
                d[c] = v;
            }
            d
        })
        .collect();
    for col in start..ncols {
        let best = dense
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[col].is_zero())
            .min_by_key(|(i, r)| (bit_length(&r[col]), r.iter().filter(|v| !v.is_zero()).count(), *i))
            .map(|(i, _)| i);
        let Some(best) = best else { continue };
        let mut pivot = dense.swap_remove(best);
        let inv = Rational::one() / &pivot[col];
        for v in pivot.iter_mut().skip(col) {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        for row in dense.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let coef = row[col].clone();
            for c in col..ncols {
                if !pivot[c].is_zero() {
                    row[c] -= &coef * &pivot[c];
                }
            }
        }
        dense.retain(|r| r.iter().any(|v| !v.is_zero()));
        out.pivots.push(col);
        out.rows.push(
            pivot
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        );
        if dense.is_empty() {
            break;
        }
    }
}

/// Exact rank over ℚ.
pub fn rank(m: &RationalMatrix) -> usize {
    // Eliminate along the shorter side.
    if m.rows() <= m.cols() {
        echelon(m.cols(), m.clone().into_rows()).rank()
    } else {
        echelon(m.rows(), m.transpose().into_rows()).rank()
    }
}

/// Basis of `{x : m·x = 0}`, one vector per free column. Vector `k` has a 1
/// in its free column and 0 in every other free column.
pub(crate) fn kernel_vectors(m: &RationalMatrix) -> (Vec<SparseVec>, Vec<usize>) {
    let mut ech = echelon(m.cols(), m.clone().into_rows());
    ech.reduce_upward();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..m.cols()).filter(|c| !is_pivot[*c]).collect();
    let mut basis: Vec<SparseVec> = free.iter().map(|&f| vec![(f, Rational::one())]).collect();
    let slot: BTreeMap<usize, usize> = free.iter().enumerate().map(|(k, f)| (*f, k)).collect();
    for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
        for (c, v) in row {
            if *c != pc {
                basis[slot[c]].push((pc, -v.clone()));
            }
        }
    }
    for v in &mut basis {
        v.sort_by_key(|e| e.0);
    }
    (basis, free)
}
