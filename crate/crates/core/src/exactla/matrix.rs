use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::{LaError, Rational};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// `a + coef · b` for sparse vectors.
pub(crate) fn axpy(a: &[(usize, Rational)], coef: &Rational, b: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, coef * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + coef * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn lookup(v: &[(usize, Rational)], idx: usize) -> Option<&Rational> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|k| &v[k].1)
}

pub(crate) fn scale(v: &mut SparseVec, by: &Rational) {
    for e in v.iter_mut() {
        e.1 = &e.1 * by;
    }
}

/// Sparse matrix over ℚ, stored row-major.
///
/// Every stored entry is a nonzero rational in lowest terms and every index is
/// inside the declared shape; both hold by construction.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        RationalMatrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions
    /// are summed; entries that cancel to zero are dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self, LaError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LaError::IndexOutOfBounds { row: r, col: c, rows, cols });
            }
            buckets[r].push((c, v));
        }
        let data = buckets.into_iter().map(normalize_row).collect();
        Ok(RationalMatrix { rows, cols, data })
    }

    /// Dense constructor from small integers; handy in tests and fixtures.
    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), cols, "row length must equal column count");
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(c, v)| (c, Rational::from_integer((*v).into())))
                    .collect()
            })
            .collect();
        RationalMatrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given sparse vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                data[*r].push((c, v.clone()));
            }
        }
        RationalMatrix { rows, cols: columns.len(), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        lookup(&self.data[row], col).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, row: usize) -> &[(usize, Rational)] {
        &self.data[row]
    }

    pub(crate) fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }

    /// All stored entries as `(row, col, value)`, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        RationalMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// `self · other`.
    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, LaError> {
        if self.cols != other.rows {
            return Err(LaError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseVec = Vec::new();
                for (k, v) in row {
                    acc = axpy(&acc, v, &other.data[*k]);
                }
                acc
            })
            .collect();
        Ok(RationalMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix, LaError> {
        if self.shape() != other.shape() {
            return Err(LaError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let one = Rational::one();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy(a, &one, b))
            .collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scaled(&self, by: &Rational) -> RationalMatrix {
        if by.is_zero() {
            return RationalMatrix::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in &mut out.data {
            scale(row, by);
        }
        out
    }

    /// `self · v` for a sparse column vector of length `cols`.
    pub fn mul_vec(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Rational::zero();
            let (mut i, mut j) = (0, 0);
            while i < row.len() && j < v.len() {
                match row[i].0.cmp(&v[j].0) {
                    core::cmp::Ordering::Less => i += 1,
                    core::cmp::Ordering::Greater => j += 1,
                    core::cmp::Ordering::Equal => {
                        acc += &row[i].1 * &v[j].1;
                        i += 1;
                        j += 1;
                    }
                }
            }
            if !acc.is_zero() {
                out.push((r, acc));
            }
        }
        out
    }

    /// Contiguous block `rows × cols` as a new matrix.
    pub fn block(&self, rows: core::ops::Range<usize>, cols: core::ops::Range<usize>) -> RationalMatrix {
        let width = cols.end - cols.start;
        let data = self.data[rows.clone()]
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| cols.contains(c))
                    .map(|(c, v)| (c - cols.start, v.clone()))
                    .collect()
            })
            .collect();
        RationalMatrix { rows: rows.end - rows.start, cols: width, data }
    }

    /// ℓ¹-norm of every column.
    pub fn column_l1_norms(&self) -> Vec<Rational> {
        let mut norms = vec![Rational::zero(); self.cols];
        for (_, c, v) in self.entries() {
            norms[c] += v.abs();
        }
        norms
    }
}

fn normalize_row(mut row: Vec<(usize, Rational)>) -> SparseVec {
    row.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            f.write_str("  ")?;
            for c in 0..self.cols {
                write!(f, "{:>5} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        f.write_str("]")
    }
}
