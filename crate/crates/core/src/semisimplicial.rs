//! Finite semi-simplicial sets.
//!
//! Simplices are opaque ids `0..count` per level. Level −1 is a single
//! implicit point and the face map onto it is never stored.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{ChainHomotopy, CochainComplex, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsError {
    #[error("product complex needs at least one vertex")]
    EmptyVertexSet,
    #[error("complex is not a valid semi-simplicial set ({0} issues)")]
    InvalidComplex(usize),
    #[error("complex carries no vertex-tuple labels")]
    Unlabelled,
    #[error("cone simplex over level-{level} simplex {simplex} is missing")]
    ConeMissing { level: usize, simplex: usize },
    #[error("labels at level {level} do not match the simplices there")]
    LabelShape { level: usize },
}

/// A finite semi-simplicial set.
///
/// `faces[k][s]` lists `δ_0 … δ_{k+1}` of simplex `s` at level `k + 1`, as ids
/// at level `k`. Labels (vertex tuples) are optional and only used for
/// reports and for the coning homotopy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiSimplicialComplex {
    sizes: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vec<Vec<usize>>>>,
}

/// One failed check from [`SemiSimplicialComplex::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationIssue {
    /// Level `level` is empty but a higher level is not.
    EmptyLevelBelowNonempty { level: usize },
    /// Face table size does not match the level sizes.
    MissingFaces { level: usize },
    WrongArity { level: usize, simplex: usize, expected: usize, found: usize },
    FaceOutOfRange { level: usize, simplex: usize, face: usize, id: usize },
    /// `δ_i δ_j ≠ δ_{j−1} δ_i` on simplex `simplex` of `level`.
    FaceIdentity { level: usize, simplex: usize, i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub issues: Vec<ValidationIssue>,
}

/// Chain `o_0 ≺ o_1 ≺ … ≺ o_m` with `o_q` at level `q` and
/// `o_q = δ_{face_index[q]}(o_{q+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub simplices: Vec<usize>,
    pub face_index: Vec<usize>,
}

impl Flag {
    /// Every step is a single face map.
    pub fn is_valid_in(&self, x: &SemiSimplicialComplex) -> bool {
        if self.face_index.len() + 1 != self.simplices.len().max(1) {
            return false;
        }
        self.simplices.iter().enumerate().all(|(q, &s)| s < x.level_size(q))
            && self
                .face_index
                .iter()
                .enumerate()
                .all(|(q, &i)| x.face(q + 1, self.simplices[q + 1], i) == self.simplices[q])
    }
}

impl SemiSimplicialComplex {
    /// Builds a complex from raw face tables without checking them; see
    /// [`validate`](Self::validate).
    pub fn from_faces(sizes: Vec<usize>, faces: Vec<Vec<Vec<usize>>>) -> Self {
        SemiSimplicialComplex { sizes, faces, labels: None }
    }

    /// Attaches vertex-tuple labels: one distinct tuple of length `k + 1` per
    /// simplex at level `k`.
    pub fn with_labels(mut self, labels: Vec<Vec<Vec<usize>>>) -> Result<Self, SsError> {
        if labels.len() != self.sizes.len() {
            return Err(SsError::LabelShape { level: labels.len().min(self.sizes.len()) });
        }
        for (level, tuples) in labels.iter().enumerate() {
            let distinct: BTreeSet<&[usize]> = tuples.iter().map(Vec::as_slice).collect();
            if tuples.len() != self.sizes[level] || distinct.len() != tuples.len() || tuples.iter().any(|t| t.len() != level + 1) {
                return Err(SsError::LabelShape { level });
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn empty() -> Self {
        SemiSimplicialComplex { sizes: Vec::new(), faces: Vec::new(), labels: Some(Vec::new()) }
    }

    /// Builds a complex whose simplices are vertex tuples and whose faces
    /// delete one coordinate. Each level must contain the deletions of the
    /// level above.
    pub fn from_tuples(levels: Vec<Vec<Vec<usize>>>) -> Self {
        let mut levels = levels;
        while levels.last().is_some_and(Vec::is_empty) {
            levels.pop();
        }
        let index: Vec<BTreeMap<&[usize], usize>> = levels
            .iter()
            .map(|lvl| lvl.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect())
            .collect();
        let faces = (1..levels.len())
            .map(|k| {
                levels[k]
                    .iter()
                    .map(|t| {
                        (0..t.len())
                            .map(|i| {
                                let mut f = t.clone();
                                f.remove(i);
                                *index[k - 1].get(f.as_slice()).expect("face of a tuple must be present one level down")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SemiSimplicialComplex {
            sizes: levels.iter().map(Vec::len).collect(),
            faces,
            labels: Some(levels),
        }
    }

    /// Number of stored levels (`top_level + 1` when the top is nonempty).
    pub fn num_levels(&self) -> usize {
        self.sizes.len()
    }

    pub fn level_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn level_size(&self, level: usize) -> usize {
        self.sizes.get(level).copied().unwrap_or(0)
    }

    /// Highest nonempty level, if any.
    pub fn top_level(&self) -> Option<usize> {
        self.sizes.iter().rposition(|&n| n > 0)
    }

    /// `δ_i` of simplex `s` at `level ≥ 1`.
    pub fn face(&self, level: usize, s: usize, i: usize) -> usize {
        self.faces[level - 1][s][i]
    }

    pub fn faces_of(&self, level: usize, s: usize) -> &[usize] {
        &self.faces[level - 1][s]
    }

    pub fn labels(&self) -> Option<&[Vec<Vec<usize>>]> {
        self.labels.as_deref()
    }

    pub fn label(&self, level: usize, s: usize) -> Option<&[usize]> {
        self.labels.as_ref().and_then(|l| l.get(level)).and_then(|l| l.get(s)).map(Vec::as_slice)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        if let Some(top) = self.top_level() {
            for level in 0..top {
                if self.sizes[level] == 0 {
                    issues.push(ValidationIssue::EmptyLevelBelowNonempty { level });
                }
            }
        }
        let mut shape_ok = true;
        for level in 1..self.sizes.len() {
            let Some(table) = self.faces.get(level - 1).filter(|t| t.len() == self.sizes[level]) else {
                issues.push(ValidationIssue::MissingFaces { level });
                shape_ok = false;
                continue;
            };
            for (s, f) in table.iter().enumerate() {
                if f.len() != level + 1 {
                    issues.push(ValidationIssue::WrongArity {
                        level,
                        simplex: s,
                        expected: level + 1,
                        found: f.len(),
                    });
                    shape_ok = false;
                    continue;
                }
                for (face, &id) in f.iter().enumerate() {
                    if id >= self.sizes[level - 1] {
                        issues.push(ValidationIssue::FaceOutOfRange { level, simplex: s, face, id });
                        shape_ok = false;
                    }
                }
            }
        }
        if self.faces.len() > self.sizes.len().saturating_sub(1) {
            issues.push(ValidationIssue::MissingFaces { level: self.sizes.len() });
            shape_ok = false;
        }
        if shape_ok {
            // δ_i ∘ δ_j = δ_{j−1} ∘ δ_i for i < j, on every simplex of level ≥ 2.
            for level in 2..self.sizes.len() {
                for s in 0..self.sizes[level] {
                    for j in 1..=level {
                        for i in 0..j {
                            let lhs = self.face(level - 1, self.face(level, s, j), i);
                            let rhs = self.face(level - 1, self.face(level, s, i), j - 1);
                            if lhs != rhs {
                                issues.push(ValidationIssue::FaceIdentity { level, simplex: s, i, j });
                            }
                        }
                    }
                }
            }
        }
        ValidationReport { passed: issues.is_empty(), issues }
    }

    /// Whether `(lower_level, lower)` is obtained from `(upper_level, upper)`
    /// by finitely many (at least one) face maps.
    pub fn is_face(&self, lower_level: usize, lower: usize, upper_level: usize, upper: usize) -> bool {
        if lower_level >= upper_level {
            return false;
        }
        let mut frontier: BTreeSet<usize> = BTreeSet::from([upper]);
        for level in (lower_level + 1..=upper_level).rev() {
            frontier = frontier.iter().flat_map(|&s| self.faces_of(level, s).iter().copied()).collect();
        }
        frontier.contains(&lower)
    }

    /// Augmented function-space complex `0 → ℚ → F(X_0) → F(X_1) → ⋯` with
    /// `d^l = Σ (−1)^i δ^i`; `d^{−1}` is the inclusion of constants.
    pub fn augmented_cochain_complex(&self) -> Result<CochainComplex, SsError> {
        let report = self.validate();
        if !report.passed {
            return Err(SsError::InvalidComplex(report.issues.len()));
        }
        let top = self.top_level().map_or(0, |t| t + 1);
        let mut terms = vec![1];
        terms.extend_from_slice(&self.sizes[..top]);
        let mut diffs = Vec::with_capacity(top);
        if top > 0 {
            diffs.push(RationalMatrix::from_triplets(
                self.sizes[0],
                1,
                (0..self.sizes[0]).map(|v| (v, 0, Rational::one())),
            )
            .expect("in range"));
        }
        for level in 1..top {
            let triplets = (0..self.sizes[level]).flat_map(|y| {
                self.faces_of(level, y).iter().enumerate().map(move |(i, &x)| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    (y, x, Rational::from_integer(sign.into()))
                })
            });
            diffs.push(
                RationalMatrix::from_triplets(self.sizes[level], self.sizes[level - 1], triplets)
                    .expect("validated ids are in range"),
            );
        }
        Ok(CochainComplex::new(terms, diffs).expect("face identity implies d∘d = 0"))
    }
}

/// Level `q` holds every `(q+1)`-tuple of vertices `0..vertices`, for
/// `q = 0..=top`; faces forget a coordinate.
pub fn product_complex(vertices: usize, top: usize) -> Result<SemiSimplicialComplex, SsError> {
    if vertices == 0 {
        return Err(SsError::EmptyVertexSet);
    }
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..vertices).map(|v| vec![v]).collect()];
    for _ in 0..top {
        let prev = levels.last().expect("nonempty");
        let next = prev
            .iter()
            .flat_map(|t| {
                (0..vertices).map(move |v| {
                    let mut u = t.clone();
                    u.push(v);
                    u
                })
            })
            .collect();
        levels.push(next);
    }
    Ok(SemiSimplicialComplex::from_tuples(levels))
}

/// Complex of injective words on `n` letters: level `q` holds the
/// `(q+1)`-tuples of distinct letters in lexicographic order, faces delete a
/// coordinate, top level `n − 1`. For `n = 0` this is the empty complex.
pub fn injective_words_complex(n: usize) -> SemiSimplicialComplex {
    if n == 0 {
        return SemiSimplicialComplex::empty();
    }
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
    for _ in 1..n {
        let prev = levels.last().expect("nonempty");
        let next = prev
            .iter()
            .flat_map(|t| {
                (0..n).filter(|v| !t.contains(v)).map(move |v| {
                    let mut u = t.clone();
                    u.push(v);
                    u
                })
            })
            .collect();
        levels.push(next);
    }
    SemiSimplicialComplex::from_tuples(levels)
}

fn increasing_tuples(n_points: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n_points, size, &mut Vec::new(), &mut out);
    out
}

/// Boundary of the `n`-simplex: all nonempty proper subsets of `{0..n}` as
/// increasing tuples. Homeomorphic to the `(n−1)`-sphere.
pub fn boundary_simplex(n: usize) -> SemiSimplicialComplex {
    SemiSimplicialComplex::from_tuples((1..=n).map(|size| increasing_tuples(n + 1, size)).collect())
}

/// The full `n`-simplex: all nonempty subsets of `{0..n}`.
pub fn full_simplex(n: usize) -> SemiSimplicialComplex {
    SemiSimplicialComplex::from_tuples((1..=n + 1).map(|size| increasing_tuples(n + 1, size)).collect())
}

/// Coning homotopy at `vertex` on a labelled complex that contains every
/// tuple `(vertex, σ)`: `h_{−1}(1) = (vertex)`, `h_k(σ) = (vertex, σ)`.
///
/// Maps run from `h_{−1}` through `h_{top}`; the last one is the zero map
/// into the (absent) level above the top. All bounds are 1.
pub fn coning_homotopy(x: &SemiSimplicialComplex, vertex: usize) -> Result<ChainHomotopy, SsError> {
    let labels = x.labels().ok_or(SsError::Unlabelled)?;
    let index: Vec<BTreeMap<&[usize], usize>> = labels
        .iter()
        .map(|lvl| lvl.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect())
        .collect();
    let top = x.top_level().map_or(0, |t| t + 1);
    let mut maps = Vec::with_capacity(top + 1);
    let apex = *index
        .first()
        .and_then(|l| l.get([vertex].as_slice()))
        .ok_or(SsError::ConeMissing { level: 0, simplex: vertex })?;
    maps.push(RationalMatrix::from_triplets(x.level_size(0), 1, [(apex, 0, Rational::one())]).expect("in range"));
    for level in 0..top {
        let rows = x.level_size(level + 1);
        let mut triplets = Vec::new();
        if level + 1 < top {
            for (s, t) in labels[level].iter().enumerate() {
                let mut coned = vec![vertex];
                coned.extend_from_slice(t);
                let id = *index[level + 1]
                    .get(coned.as_slice())
                    .ok_or(SsError::ConeMissing { level, simplex: s })?;
                triplets.push((id, s, Rational::one()));
            }
        }
        maps.push(RationalMatrix::from_triplets(rows, x.level_size(level), triplets).expect("in range"));
    }
    let bounds = vec![Rational::one(); maps.len()];
    Ok(ChainHomotopy::new(maps, bounds).expect("lengths agree"))
}
