use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{ActionError, GroupAction};
use crate::semisimplicial::Flag;

/// An action together with a generic flag `o_0 ≺ ⋯ ≺ o_depth`, the
/// stabilizers `H_q` and the conjugating elements `w_{q,i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlaggedAction {
    action: GroupAction,
    flag: Flag,
    stabilizers: Vec<Vec<usize>>,
    // w[q][i] for q in 0..depth, i in 0..=q+1
    w: Vec<Vec<usize>>,
}

/// Builds the canonical generic flag of depth `depth`: `o_depth` is the
/// minimal id at that level and `o_q = δ_0(o_{q+1})`. Each `w_{q,i}` is the
/// minimal element with `w · δ_i(o_{q+1}) = o_q`.
pub fn generic_flag(action: &GroupAction, depth: usize) -> Result<FlaggedAction, ActionError> {
    let available = action.transitivity_degree();
    if !available.at_least(depth as i64) {
        return Err(ActionError::NotTransitiveEnough { requested: depth, available });
    }
    let x = action.complex();
    let mut simplices = alloc::vec![0; depth + 1];
    for q in (0..depth).rev() {
        simplices[q] = x.face(q + 1, simplices[q + 1], 0);
    }
    let flag = Flag { simplices, face_index: alloc::vec![0; depth] };
    let stabilizers = (0..=depth).map(|q| action.stabilizer(q, flag.simplices[q])).collect();
    let g = action.group();
    let w = (0..depth)
        .map(|q| {
            (0..=q + 1)
                .map(|i| {
                    let face = x.face(q + 1, flag.simplices[q + 1], i);
                    g.elements()
                        .find(|&e| action.act(q, e, face) == flag.simplices[q])
                        .expect("level q is a single orbit")
                })
                .collect()
        })
        .collect();
    Ok(FlaggedAction { action: action.clone(), flag, stabilizers, w })
}

impl FlaggedAction {
    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn flag(&self) -> &Flag {
        &self.flag
    }

    pub fn depth(&self) -> usize {
        self.stabilizers.len() - 1
    }

    /// `H_q` for `q ∈ −1..=depth`; `H_{−1}` is the whole group.
    pub fn stabilizer(&self, q: i64) -> Vec<usize> {
        if q < 0 {
            self.action.group().elements().collect()
        } else {
            self.stabilizers[q as usize].clone()
        }
    }

    pub fn stabilizer_orders(&self) -> Vec<usize> {
        self.stabilizers.iter().map(Vec::len).collect()
    }

    /// `w_{q,i}` for `q ∈ −1..depth`, `i ∈ 0..=q+1`; `w_{−1,0}` is the identity.
    pub fn w(&self, q: i64, i: usize) -> usize {
        if q < 0 {
            self.action.group().identity()
        } else {
            self.w[q as usize][i]
        }
    }

    pub fn w_table(&self) -> &[Vec<usize>] {
        &self.w
    }

    /// Replaces one stored `w_{q,i}`; meant for building negative fixtures.
    pub fn with_w(mut self, q: usize, i: usize, element: usize) -> Self {
        self.w[q][i] = element;
        self
    }

    /// `Int(w_{q,i})` on `H_{q+1}` as `(h, w h w⁻¹)` pairs.
    pub fn conjugation(&self, q: i64, i: usize) -> Vec<(usize, usize)> {
        let g = self.action.group();
        let w = self.w(q, i);
        self.stabilizer(q + 1).into_iter().map(|h| (h, g.conjugate(w, h))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InclusionFailure {
    /// `w_{q,i} · δ_i(o_{q+1}) ≠ o_q`.
    WrongFace { q: usize, i: usize, w: usize },
    /// `w h w⁻¹ ∉ H_q` for this `h ∈ H_{q+1}`.
    NotContained { q: usize, i: usize, h: usize, image: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub passed: bool,
    pub pairs_checked: usize,
    pub failures: Vec<InclusionFailure>,
}

/// Checks `δ_i(o_{q+1}) = w⁻¹ · o_q` and `w H_{q+1} w⁻¹ ⊆ H_q` for every
/// stored `w_{q,i}`.
pub fn check_int_inclusion(f: &FlaggedAction) -> InclusionReport {
    let a = f.action();
    let x = a.complex();
    let o = &f.flag().simplices;
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for (q, row) in f.w_table().iter().enumerate() {
        let h_q = &f.stabilizers[q];
        for (i, &w) in row.iter().enumerate() {
            pairs_checked += 1;
            if a.act(q, w, x.face(q + 1, o[q + 1], i)) != o[q] {
                failures.push(InclusionFailure::WrongFace { q, i, w });
            }
            for (h, image) in f.conjugation(q as i64, i) {
                if h_q.binary_search(&image).is_err() {
                    failures.push(InclusionFailure::NotContained { q, i, h, image });
                    break;
                }
            }
        }
    }
    InclusionReport { passed: failures.is_empty(), pairs_checked, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extint::ExtInt;
    use crate::groupaction::FiniteGroup;
    use crate::semisimplicial::{boundary_simplex, injective_words_complex};

    fn s_on_words(n: usize) -> GroupAction {
        GroupAction::on_vertex_labels(FiniteGroup::symmetric(n).unwrap(), injective_words_complex(n)).unwrap()
    }

    #[test]
    fn stabilizer_orders_follow_factorials() {
        let f = generic_flag(&s_on_words(3), 2).unwrap();
        assert_eq!(f.stabilizer_orders(), [2, 1, 1]);
        assert!(f.flag().is_valid_in(f.action().complex()));
        let f4 = generic_flag(&s_on_words(4), 3).unwrap();
        assert_eq!(f4.stabilizer_orders(), [6, 2, 1, 1]);
        assert!(check_int_inclusion(&f4).passed);
    }

    #[test]
    fn flag_descends_by_first_face() {
        let f = generic_flag(&s_on_words(3), 2).unwrap();
        let x = f.action().complex();
        let words: Vec<&[usize]> = f.flag().simplices.iter().enumerate().map(|(q, &s)| x.label(q, s).unwrap()).collect();
        assert_eq!(words, [&[2][..], &[1, 2][..], &[0, 1, 2][..]]);
    }

    #[test]
    fn depth_zero_is_vacuous() {
        let f = generic_flag(&s_on_words(3), 0).unwrap();
        assert_eq!(f.stabilizer_orders(), [2]);
        assert!(f.w_table().is_empty());
        let report = check_int_inclusion(&f);
        assert!(report.passed);
        assert_eq!(report.pairs_checked, 0);
    }

    #[test]
    fn not_transitive_enough() {
        let err = generic_flag(&GroupAction::trivial(boundary_simplex(2)), 0).unwrap_err();
        assert_eq!(err, ActionError::NotTransitiveEnough { requested: 0, available: ExtInt::NegInf });
        assert!(generic_flag(&s_on_words(3), 3).is_err());
    }

    #[test]
    fn corrupted_w_is_caught() {
        let f = generic_flag(&s_on_words(4), 3).unwrap();
        let g = f.action().group();
        // A 3-cycle on letters 0, 1, 3 neither fixes the right face nor
        // normalises H_1 = Sym{0, 1}.
        let bad = g.find_permutation(&[1, 3, 2, 0]).unwrap();
        let report = check_int_inclusion(&f.with_w(0, 1, bad));
        assert!(!report.passed);
        assert!(report.failures.iter().all(|x| matches!(
            x,
            InclusionFailure::WrongFace { q: 0, i: 1, .. } | InclusionFailure::NotContained { q: 0, i: 1, .. }
        )));
        assert!(report.failures.iter().any(|x| matches!(x, InclusionFailure::NotContained { .. })));
    }
}
