use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{ActionError, FiniteGroup};
use crate::extint::ExtInt;
use crate::semisimplicial::SemiSimplicialComplex;

/// Levelwise action of a finite group on a semi-simplicial set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    complex: SemiSimplicialComplex,
    // act[level][g * size + s] = g·s
    act: Vec<Vec<usize>>,
}

/// One failed law from [`GroupAction::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActionIssue {
    IdentityMoves { level: usize, simplex: usize },
    NotCompatible { level: usize, g: usize, h: usize, simplex: usize },
    NotEquivariant { level: usize, g: usize, simplex: usize, face: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionReport {
    pub passed: bool,
    pub issues: Vec<ActionIssue>,
}

impl GroupAction {
    /// `act[level][g]` is the permutation of level-`level` ids induced by `g`.
    /// Only shapes are checked here; see [`validate`](Self::validate).
    pub fn new(
        group: FiniteGroup,
        complex: SemiSimplicialComplex,
        act: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, ActionError> {
        if act.len() != complex.num_levels() {
            return Err(ActionError::LevelCount { expected: complex.num_levels(), found: act.len() });
        }
        let mut flat = Vec::with_capacity(act.len());
        for (level, per_g) in act.into_iter().enumerate() {
            let size = complex.level_size(level);
            if per_g.len() != group.order() || per_g.iter().any(|p| !is_permutation(p, size)) {
                return Err(ActionError::NotPermutation { level });
            }
            flat.push(per_g.into_iter().flatten().collect());
        }
        Ok(GroupAction { group, complex, act: flat })
    }

    /// Extends images of generators to the whole group along a breadth-first
    /// walk of the Cayley graph. `images[k][level]` is the permutation of
    /// level ids induced by `generators[k]`.
    pub fn from_generator_images(
        group: FiniteGroup,
        complex: SemiSimplicialComplex,
        generators: &[usize],
        images: &[Vec<Vec<usize>>],
    ) -> Result<Self, ActionError> {
        if generators.len() != images.len() {
            return Err(ActionError::GeneratorCount { generators: generators.len(), images: images.len() });
        }
        let levels = complex.num_levels();
        for img in images {
            if img.len() != levels {
                return Err(ActionError::LevelCount { expected: levels, found: img.len() });
            }
            for (level, p) in img.iter().enumerate() {
                if !is_permutation(p, complex.level_size(level)) {
                    return Err(ActionError::NotPermutation { level });
                }
            }
        }
        let n = group.order();
        let mut table: Vec<Option<Vec<Vec<usize>>>> = vec![None; n];
        table[group.identity()] = Some((0..levels).map(|l| (0..complex.level_size(l)).collect()).collect());
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(h) = queue.pop_front() {
            for (&gen, img) in generators.iter().zip(images) {
                let gh = group.mul(gen, h);
                if table[gh].is_none() {
                    let prev = table[h].as_ref().expect("visited");
                    let composed = (0..levels).map(|l| prev[l].iter().map(|&s| img[l][s]).collect()).collect();
                    table[gh] = Some(composed);
                    queue.push_back(gh);
                }
            }
        }
        if table.iter().any(Option::is_none) {
            return Err(ActionError::GeneratorsDoNotGenerate);
        }
        let per_g: Vec<Vec<Vec<usize>>> = table.into_iter().map(|t| t.expect("checked")).collect();
        let act = (0..levels).map(|l| per_g.iter().map(|p| p[l].clone()).collect()).collect();
        let a = GroupAction::new(group, complex, act)?;
        if let Some(issue) = a.validate().issues.into_iter().next() {
            return Err(ActionError::Inconsistent(issue));
        }
        Ok(a)
    }

    /// A permutation group acting letterwise on a complex labelled by vertex
    /// tuples, e.g. injective words or product complexes.
    pub fn on_vertex_labels(group: FiniteGroup, complex: SemiSimplicialComplex) -> Result<Self, ActionError> {
        let labels = complex.labels().ok_or(ActionError::Unlabelled)?;
        if group.degree().is_none() {
            return Err(ActionError::NotPermutationGroup);
        }
        let mut act = Vec::with_capacity(labels.len());
        for (level, tuples) in labels.iter().enumerate() {
            let index: BTreeMap<&[usize], usize> =
                tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
            let mut per_g = Vec::with_capacity(group.order());
            for g in group.elements() {
                let p = group.permutation(g).expect("permutation group");
                let mut row = Vec::with_capacity(tuples.len());
                for (s, t) in tuples.iter().enumerate() {
                    let img: Vec<usize> = t
                        .iter()
                        .map(|&v| p.get(v).copied().unwrap_or(v))
                        .collect();
                    row.push(*index.get(img.as_slice()).ok_or(ActionError::ImageMissing { level, simplex: s, g })?);
                }
                per_g.push(row);
            }
            act.push(per_g);
        }
        GroupAction::new(group, complex, act)
    }

    /// Trivial action of the one-element group.
    pub fn trivial(complex: SemiSimplicialComplex) -> Self {
        let act = (0..complex.num_levels()).map(|l| vec![(0..complex.level_size(l)).collect()]).collect();
        GroupAction::new(FiniteGroup::trivial(), complex, act).expect("identity action")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn complex(&self) -> &SemiSimplicialComplex {
        &self.complex
    }

    /// `g · s` at `level`.
    pub fn act(&self, level: usize, g: usize, s: usize) -> usize {
        self.act[level][g * self.complex.level_size(level) + s]
    }

    /// Permutation of level ids induced by `g`.
    pub fn permutation(&self, level: usize, g: usize) -> &[usize] {
        let n = self.complex.level_size(level);
        &self.act[level][g * n..(g + 1) * n]
    }

    /// Checks identity and compatibility laws and that the action commutes
    /// with every face map.
    pub fn validate(&self) -> ActionReport {
        let mut issues = Vec::new();
        let e = self.group.identity();
        for level in 0..self.complex.num_levels() {
            let n = self.complex.level_size(level);
            for s in 0..n {
                if self.act(level, e, s) != s {
                    issues.push(ActionIssue::IdentityMoves { level, simplex: s });
                }
            }
            'compat: for g in self.group.elements() {
                for h in self.group.elements() {
                    let gh = self.group.mul(g, h);
                    for s in 0..n {
                        if self.act(level, gh, s) != self.act(level, g, self.act(level, h, s)) {
                            issues.push(ActionIssue::NotCompatible { level, g, h, simplex: s });
                            break 'compat;
                        }
                    }
                }
            }
            if level == 0 {
                continue;
            }
            for g in self.group.elements() {
                for s in 0..n {
                    let gs = self.act(level, g, s);
                    for face in 0..=level {
                        let lhs = self.complex.face(level, gs, face);
                        let rhs = self.act(level - 1, g, self.complex.face(level, s, face));
                        if lhs != rhs {
                            issues.push(ActionIssue::NotEquivariant { level, g, simplex: s, face });
                        }
                    }
                }
            }
        }
        ActionReport { passed: issues.is_empty(), issues }
    }

    /// Orbit partition of one level, each orbit sorted, orbits ordered by
    /// their minimal id.
    pub fn orbits(&self, level: usize) -> Vec<Vec<usize>> {
        let n = self.complex.level_size(level);
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit: Vec<usize> = self.group.elements().map(|g| self.act(level, g, s)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &t in &orbit {
                seen[t] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Elements fixing `s`, in increasing id order.
    pub fn stabilizer(&self, level: usize, s: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.act(level, g, s) == s).collect()
    }

    /// Largest `τ₀` such that levels `0..=τ₀` are each a single orbit; `−∞` if
    /// level 0 is not. A complex transitive through its top reports the top
    /// level.
    pub fn transitivity_degree(&self) -> ExtInt {
        let top = self.complex.top_level();
        let mut last = ExtInt::NegInf;
        for level in 0..=top.map_or(0, |t| t) {
            if top.is_none() || self.orbits(level).len() != 1 {
                break;
            }
            last = ExtInt::Finite(level as i64);
        }
        last
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&x| x < n && !core::mem::replace(&mut seen[x], true))
}
