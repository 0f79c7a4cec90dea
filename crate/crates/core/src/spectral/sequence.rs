use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::double::{DoubleComplex, TotalLayout};
use crate::exactla::{rank, QuotientSpace, RationalMatrix, SparseVec, Subspace};

/// Which filtration of the total complex to use.
///
/// `Vertical` filters by column `p`; its `E_1` is the `d_V`-cohomology and
/// page coordinates are `(p, q)`. `Horizontal` filters by row `q`; its `E_1`
/// is the `d_H`-cohomology and page coordinates are `(q, p)`, so the first
/// index is always the filtration degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filtration {
    Vertical,
    Horizontal,
}

/// `d_r` out of one cell, as a matrix in the quotient bases of the two pages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageDifferential {
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub rank: usize,
    pub matrix: RationalMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    pub r: usize,
    /// `dims[s][t]`.
    pub dims: Vec<Vec<usize>>,
    /// Nonzero-shaped differentials, by source cell.
    pub differentials: Vec<PageDifferential>,
}

impl Page {
    pub fn differential(&self, s: usize, t: usize) -> Option<&PageDifferential> {
        self.differentials.iter().find(|d| d.source == (s, t))
    }
}

/// A failed internal consistency check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PageIssue {
    /// `d_r ∘ d_r ≠ 0` starting at `(s, t)`.
    SquareNonzero { r: usize, s: usize, t: usize },
    /// `dim E_{r+1}` disagrees with `dim ker d_r − rank d_r`.
    DimensionMismatch { r: usize, s: usize, t: usize, page: usize, homology: usize },
}

/// Pages, differentials and limit of one filtration spectral sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSequence {
    filtration: Filtration,
    shape: (usize, usize),
    pages: Vec<Page>,
    infinity: Vec<Vec<usize>>,
    stable_page: usize,
    cell_stable: Vec<Vec<usize>>,
    total: Vec<usize>,
    issues: Vec<PageIssue>,
}

/// Serializable digest of a [`SpectralSequence`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub filtration: Filtration,
    pub pages: Vec<PageSummary>,
    pub infinity: Vec<Vec<usize>>,
    pub stable_page: usize,
    pub total_cohomology: Vec<usize>,
    pub issues: Vec<PageIssue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageSummary {
    pub r: usize,
    pub dims: Vec<Vec<usize>>,
    /// `(s, t, rank of d_r out of (s, t))` for every nonzero differential.
    pub ranks: Vec<(usize, usize, usize)>,
}

struct Engine {
    layout: TotalLayout,
    diffs: Vec<RationalMatrix>,
    z_cache: BTreeMap<(usize, usize, usize), Subspace>,
}

impl Engine {
    /// `Z_r^s(n) = {x ∈ F^s : Dx ∈ F^{s+r}}`; `F^s` is everything for `s ≤ 0`.
    fn z(&mut self, n: usize, s: i64, r: i64) -> Subspace {
        let dim = self.layout.dim(n);
        let start = self.layout.filtration_start(n, s);
        let target = self.layout.filtration_start(n + 1, s + r);
        if let Some(z) = self.z_cache.get(&(n, start, target)) {
            return z.clone();
        }
        let z = if target == 0 {
            Subspace::coordinate(dim, start..dim)
        } else {
            let block = self.diffs[n].block(0..target, start..dim);
            let ker = Subspace::kernel(&block);
            let shifted = ker.basis().iter().map(|v| v.iter().map(|(i, x)| (i + start, x.clone())).collect());
            Subspace::span(dim, shifted)
        };
        self.z_cache.insert((n, start, target), z.clone());
        z
    }

    /// `E_r^s(n)` as a quotient of `Z_r^s(n)`.
    fn page_cell(&mut self, n: usize, s: i64, r: i64) -> QuotientSpace {
        let num = self.z(n, s, r);
        let mut den = self.z(n, s + 1, r - 1);
        if n > 0 {
            let below = self.z(n - 1, s - r + 1, r - 1);
            den = den.sum(&below.map(&self.diffs[n - 1]));
        }
        QuotientSpace::new(&num, &den)
    }
}

impl SpectralSequence {
    /// Runs the spectral sequence of `dc` for `filtration` until every
    /// differential vanishes. Pages past `up_to_page` are computed but not
    /// kept.
    pub fn compute(dc: &DoubleComplex, filtration: Filtration, up_to_page: Option<usize>) -> Self {
        let (cols, rows) = dc.shape();
        let (ns, nt) = match filtration {
            Filtration::Vertical => (cols, rows),
            Filtration::Horizontal => (rows, cols),
        };
        let layout = match filtration {
            Filtration::Vertical => TotalLayout::new(dc, |p, _| p),
            Filtration::Horizontal => TotalLayout::new(dc, |_, q| q),
        };
        let n_top = dc.max_total_degree().map_or(0, |n| n + 1);
        let diffs = (0..=n_top).map(|n| layout.differential(dc, n)).collect();
        let mut eng = Engine { layout, diffs, z_cache: BTreeMap::new() };

        // Beyond this page every d_r leaves the grid.
        let r_last = ns.min(nt + 1).max(1);
        let mut pages = Vec::new();
        let mut issues = Vec::new();
        let mut current = cells(&mut eng, ns, nt, 1);
        let mut last_nonzero = 0;
        let mut cell_stable = vec![vec![1; nt]; ns];
        for r in 1..=r_last {
            let mut differentials = Vec::new();
            for s in 0..ns {
                for t in 0..nt {
                    let src = &current[s][t];
                    if t + 1 < r || s + r >= ns || src.dim() == 0 {
                        continue;
                    }
                    let (s2, t2) = (s + r, t + 1 - r);
                    let tgt = &current[s2][t2];
                    if tgt.dim() == 0 {
                        continue;
                    }
                    let n = s + t;
                    let columns: Vec<SparseVec> = src
                        .representatives()
                        .iter()
                        .map(|x| tgt.coords(&eng.diffs[n].mul_vec(x)).expect("Dx lies in Z_r"))
                        .collect();
                    let matrix = RationalMatrix::from_columns(tgt.dim(), &columns);
                    let rk = rank(&matrix);
                    if rk > 0 {
                        last_nonzero = r;
                        cell_stable[s][t] = r + 1;
                        cell_stable[s2][t2] = r + 1;
                    }
                    differentials.push(PageDifferential { source: (s, t), target: (s2, t2), rank: rk, matrix });
                }
            }
            for d in &differentials {
                if let Some(next) = differentials.iter().find(|e| e.source == d.target) {
                    if !next.matrix.mul(&d.matrix).expect("shapes").is_zero() {
                        issues.push(PageIssue::SquareNonzero { r, s: d.source.0, t: d.source.1 });
                    }
                }
            }
            let next = cells(&mut eng, ns, nt, r + 1);
            for s in 0..ns {
                for t in 0..nt {
                    let cur = &current[s][t];
                    let out = differentials.iter().find(|d| d.source == (s, t)).map_or(0, |d| d.rank);
                    let inc = differentials.iter().find(|d| d.target == (s, t)).map_or(0, |d| d.rank);
                    let homology = cur.dim() - out - inc;
                    let page = next[s][t].dim();
                    if page != homology {
                        issues.push(PageIssue::DimensionMismatch { r, s, t, page, homology });
                    }
                }
            }
            pages.push(Page { r, dims: dims_of(&current, ns, nt), differentials });
            current = next;
        }
        let infinity = dims_of(&current, ns, nt);
        if let Some(k) = up_to_page {
            pages.truncate(k.max(1));
        }
        let total = dc.total_cohomology(n_top.saturating_sub(1));
        SpectralSequence {
            filtration,
            shape: (ns, nt),
            pages,
            infinity,
            stable_page: last_nonzero + 1,
            cell_stable,
            total,
            issues,
        }
    }

    pub fn filtration(&self) -> Filtration {
        self.filtration
    }

    /// `(S, T)`: the ranges of the two page indices.
    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn pages(&self) -> &[Page] {
        &self.pages
    }

    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.get(r.checked_sub(1)?)
    }

    pub fn dim(&self, r: usize, s: usize, t: usize) -> usize {
        self.page(r).and_then(|p| p.dims.get(s)).and_then(|c| c.get(t)).copied().unwrap_or(0)
    }

    pub fn infinity(&self) -> &[Vec<usize>] {
        &self.infinity
    }

    /// `Σ_{s+t=n} dim E_∞^{s,t}` for every total degree in the grid.
    pub fn infinity_totals(&self) -> Vec<usize> {
        let (ns, nt) = self.shape;
        let top = (ns + nt).saturating_sub(1);
        let mut out = vec![0; top];
        for (s, col) in self.infinity.iter().enumerate() {
            for (t, &d) in col.iter().enumerate() {
                out[s + t] += d;
            }
        }
        out
    }

    /// First page from which every differential vanishes.
    pub fn stable_page(&self) -> usize {
        self.stable_page
    }

    /// First page from which no differential enters or leaves `(s, t)`.
    pub fn cell_stable_page(&self, s: usize, t: usize) -> usize {
        self.cell_stable[s][t]
    }

    /// Cohomology of the totalization, degrees `0..=S+T−2`.
    pub fn total_cohomology(&self) -> &[usize] {
        &self.total
    }

    pub fn issues(&self) -> &[PageIssue] {
        &self.issues
    }

    /// `E_∞` totals agree with the total cohomology in every degree.
    pub fn converges(&self) -> bool {
        self.infinity_totals() == self.total
    }

    pub fn summary(&self) -> SpectralSummary {
        SpectralSummary {
            filtration: self.filtration,
            pages: self
                .pages
                .iter()
                .map(|p| PageSummary {
                    r: p.r,
                    dims: p.dims.clone(),
                    ranks: p
                        .differentials
                        .iter()
                        .filter(|d| d.rank > 0)
                        .map(|d| (d.source.0, d.source.1, d.rank))
                        .collect(),
                })
                .collect(),
            infinity: self.infinity.clone(),
            stable_page: self.stable_page,
            total_cohomology: self.total.clone(),
            issues: self.issues.clone(),
        }
    }
}

fn cells(eng: &mut Engine, ns: usize, nt: usize, r: usize) -> Vec<Vec<QuotientSpace>> {
    (0..ns)
        .map(|s| (0..nt).map(|t| eng.page_cell(s + t, s as i64, r as i64)).collect())
        .collect()
}

fn dims_of(cells: &[Vec<QuotientSpace>], ns: usize, nt: usize) -> Vec<Vec<usize>> {
    (0..ns)
        .map(|s| (0..nt).map(|t| cells[s][t].dim()).collect())
        .collect()
}

/// Shorthand for [`SpectralSequence::compute`].
pub fn spectral_sequence(dc: &DoubleComplex, filtration: Filtration, up_to_page: Option<usize>) -> SpectralSequence {
    SpectralSequence::compute(dc, filtration, up_to_page)
}
