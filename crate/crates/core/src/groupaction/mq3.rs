use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, FlaggedAction};

/// Which stabilizer compatibility condition to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mq3Variant {
    A,
    B,
    C,
}

/// Extra maps for variants b and c, indexed by `p + 1` for
/// `p ∈ −1..=depth`.
///
/// `projections[p + 1]` maps each element of `H_{r,p}` (as a `G_r` id) to its
/// image in `G_{r−p−1}`. `sections[p + 1][g]` is `σ_{r,p}(g)` as a `G_r` id.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mq3Maps {
    #[serde(default)]
    pub projections: Option<Vec<BTreeMap<usize, usize>>>,
    #[serde(default)]
    pub sections: Option<Vec<Vec<usize>>>,
}

/// One member `G_r` of a family, with everything needed to compare its
/// stabilizers against the earlier groups.
#[derive(Debug, Clone, Copy)]
pub struct Mq3Context<'a> {
    pub r: usize,
    pub flagged: &'a FlaggedAction,
    /// `G_0 ..= G_r`.
    pub groups: &'a [FiniteGroup],
    /// `ι_k : G_k → G_{k+1}` for `k < r`.
    pub embeddings: &'a [Vec<usize>],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mq3Failure {
    MissingData { what: String },
    /// `H_{r,p}` differs from the image of `G_{r−p−1}` in `G_r`.
    StabilizerMismatch { p: i64, expected_order: usize, found_order: usize, witness: usize },
    /// `Int(w_{r,p,i})` disagrees with `ι` at `g ∈ G_{r−p−2}`.
    ConjugationMismatch { p: i64, i: usize, g: usize, expected: usize, found: usize },
    /// The projection's domain is not exactly `H_{r,p}`.
    ProjectionDomain { p: i64 },
    /// The identification (variant a), projection or section fails to be a
    /// homomorphism at `(a, b)`.
    NotHomomorphism { p: i64, a: usize, b: usize },
    NotSurjective { p: i64, missing: usize },
    /// `π_{r,p}(w h w⁻¹) ≠ ι(π_{r,p+1}(h))` (variant b) or
    /// `π_{r,p}(w σ(g) w⁻¹) ≠ ι(g)` (variant c).
    SquareFails { p: i64, i: usize, element: usize },
    NotSection { p: i64, g: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mq3Report {
    pub variant: Mq3Variant,
    pub r: usize,
    pub passed: bool,
    pub failures: Vec<Mq3Failure>,
    pub notes: Vec<String>,
}

impl Mq3Context<'_> {
    fn group(&self, k: i64, trivial: &'_ FiniteGroup) -> FiniteGroup {
        if k < 0 {
            trivial.clone()
        } else {
            self.groups[k as usize].clone()
        }
    }

    /// `ι_{k}` as a map `G_k → G_{k+1}`, with `G_k` trivial for `k < 0`.
    fn iota(&self, k: i64, g: usize) -> usize {
        if k < 0 {
            self.groups.get((k + 1).max(0) as usize).map_or(0, FiniteGroup::identity)
        } else {
            self.embeddings[k as usize][g]
        }
    }

    /// Composite embedding `G_k → G_r`.
    fn embed(&self, k: i64, g: usize) -> usize {
        if k < 0 {
            return self.groups[self.r].identity();
        }
        (k as usize..self.r).fold(g, |x, j| self.embeddings[j][x])
    }
}

/// Checks one of the stabilizer compatibility conditions for member `r`
/// elementwise, for `p ∈ −1..=depth` and each conjugating element.
pub fn check_mq3(ctx: &Mq3Context<'_>, variant: Mq3Variant, maps: &Mq3Maps) -> Mq3Report {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let f = ctx.flagged;
    let depth = f.depth() as i64;
    let r = ctx.r as i64;
    if ctx.groups.len() <= ctx.r || ctx.embeddings.len() < ctx.r {
        failures.push(Mq3Failure::MissingData { what: String::from("groups G_0..G_r or embeddings") });
        return Mq3Report { variant, r: ctx.r, passed: false, failures, notes };
    }
    let gr = &ctx.groups[ctx.r];
    let trivial = FiniteGroup::trivial();

    match variant {
        Mq3Variant::A => {
            for p in -1..=depth {
                let k = r - p - 1;
                let gk = ctx.group(k, &trivial);
                let mut image: Vec<usize> = gk.elements().map(|g| ctx.embed(k, g)).collect();
                image.sort_unstable();
                image.dedup();
                let h = f.stabilizer(p);
                if image != h {
                    let witness = h
                        .iter()
                        .find(|x| image.binary_search(x).is_err())
                        .or_else(|| image.iter().find(|x| h.binary_search(x).is_err()))
                        .copied()
                        .unwrap_or(0);
                    failures.push(Mq3Failure::StabilizerMismatch {
                        p,
                        expected_order: gk.order(),
                        found_order: h.len(),
                        witness,
                    });
                }
                'hom: for a in gk.elements() {
                    for b in gk.elements() {
                        if ctx.embed(k, gk.mul(a, b)) != gr.mul(ctx.embed(k, a), ctx.embed(k, b)) {
                            failures.push(Mq3Failure::NotHomomorphism { p, a, b });
                            break 'hom;
                        }
                    }
                }
                if p < depth {
                    let small = ctx.group(k - 1, &trivial);
                    for i in 0..=(p + 1) as usize {
                        let w = f.w(p, i);
                        for g in small.elements() {
                            let found = gr.conjugate(w, ctx.embed(k - 1, g));
                            let expected = ctx.embed(k, ctx.iota(k - 1, g));
                            if found != expected {
                                failures.push(Mq3Failure::ConjugationMismatch { p, i, g, expected, found });
                                break;
                            }
                        }
                    }
                }
            }
        }
        Mq3Variant::B | Mq3Variant::C => {
            let Some(pi) = maps.projections.as_ref().filter(|v| v.len() as i64 >= depth + 2) else {
                failures.push(Mq3Failure::MissingData { what: String::from("projections") });
                return Mq3Report { variant, r: ctx.r, passed: false, failures, notes };
            };
            let sections = if variant == Mq3Variant::C {
                match maps.sections.as_ref().filter(|v| v.len() as i64 >= depth + 2) {
                    Some(s) => Some(s),
                    None => {
                        failures.push(Mq3Failure::MissingData { what: String::from("sections") });
                        return Mq3Report { variant, r: ctx.r, passed: false, failures, notes };
                    }
                }
            } else {
                None
            };
            notes.push(String::from("projection kernels are finite, hence amenable"));
            for p in -1..=depth {
                let k = r - p - 1;
                let gk = ctx.group(k, &trivial);
                let h = f.stabilizer(p);
                let map = &pi[(p + 1) as usize];
                if map.keys().copied().ne(h.iter().copied()) || map.values().any(|&v| v >= gk.order()) {
                    failures.push(Mq3Failure::ProjectionDomain { p });
                    continue;
                }
                if let Some((a, b)) = first_non_hom(gr, &gk, map) {
                    failures.push(Mq3Failure::NotHomomorphism { p, a, b });
                }
                let mut hit = alloc::vec![false; gk.order()];
                for &v in map.values() {
                    hit[v] = true;
                }
                if let Some(missing) = hit.iter().position(|x| !x) {
                    failures.push(Mq3Failure::NotSurjective { p, missing });
                }
                if let Some(sig) = sections {
                    let s = &sig[(p + 1) as usize];
                    if s.len() != gk.order() {
                        failures.push(Mq3Failure::MissingData { what: alloc::format!("section at p = {p}") });
                        continue;
                    }
                    for g in gk.elements() {
                        let back = map.get(&s[g]).copied();
                        if back != Some(g) {
                            failures.push(Mq3Failure::NotSection { p, g });
                            break;
                        }
                    }
                    'hom: for a in gk.elements() {
                        for b in gk.elements() {
                            if s[gk.mul(a, b)] != gr.mul(s[a], s[b]) {
                                failures.push(Mq3Failure::NotHomomorphism { p, a, b });
                                break 'hom;
                            }
                        }
                    }
                }
            }
            // Squares, for p ≤ depth − 1.
            for p in -1..depth {
                let k = r - p - 1;
                let (upper, lower) = (&pi[(p + 2) as usize], &pi[(p + 1) as usize]);
                for i in 0..=(p + 1) as usize {
                    let w = f.w(p, i);
                    match sections {
                        None => {
                            for (&h, &below) in upper {
                                let conj = gr.conjugate(w, h);
                                if lower.get(&conj).copied() != Some(ctx.iota(k - 1, below)) {
                                    failures.push(Mq3Failure::SquareFails { p, i, element: h });
                                    break;
                                }
                            }
                        }
                        Some(sig) => {
                            for (g, &sg) in sig[(p + 2) as usize].iter().enumerate() {
                                let conj = gr.conjugate(w, sg);
                                if lower.get(&conj).copied() != Some(ctx.iota(k - 1, g)) {
                                    failures.push(Mq3Failure::SquareFails { p, i, element: g });
                                    break;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Mq3Report { variant, r: ctx.r, passed: failures.is_empty(), failures, notes }
}

fn first_non_hom(src: &FiniteGroup, dst: &FiniteGroup, map: &BTreeMap<usize, usize>) -> Option<(usize, usize)> {
    for (&a, &fa) in map {
        for (&b, &fb) in map {
            if map.get(&src.mul(a, b)).copied() != Some(dst.mul(fa, fb)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Projections and sections read off the standard identifications
/// `H_{r,p} = ι(G_{r−p−1})`: `π` inverts the composite embedding and `σ` is
/// the embedding itself. Returns `None` if some stabilizer is not such an
/// image.
pub fn maps_from_embeddings(ctx: &Mq3Context<'_>) -> Option<Mq3Maps> {
    let depth = ctx.flagged.depth() as i64;
    let r = ctx.r as i64;
    let trivial = FiniteGroup::trivial();
    let mut projections = Vec::new();
    let mut sections = Vec::new();
    for p in -1..=depth {
        let k = r - p - 1;
        let gk = ctx.group(k, &trivial);
        let sigma: Vec<usize> = gk.elements().map(|g| ctx.embed(k, g)).collect();
        let pi: BTreeMap<usize, usize> = sigma.iter().enumerate().map(|(g, &x)| (x, g)).collect();
        if pi.keys().copied().ne(ctx.flagged.stabilizer(p).into_iter()) {
            return None;
        }
        projections.push(pi);
        sections.push(sigma);
    }
    Some(Mq3Maps { projections: Some(projections), sections: Some(sections) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::groupaction::{generic_flag, standard_embedding, GroupAction};
    use crate::semisimplicial::injective_words_complex;

    struct Family {
        groups: Vec<FiniteGroup>,
        embeddings: Vec<Vec<usize>>,
        flagged: Vec<Option<FlaggedAction>>,
    }

    fn symmetric(rmax: usize) -> Family {
        let groups: Vec<FiniteGroup> = (0..=rmax).map(|n| FiniteGroup::symmetric(n).unwrap()).collect();
        let embeddings = (0..rmax).map(|k| standard_embedding(&groups[k], &groups[k + 1]).unwrap()).collect();
        let flagged = (0..=rmax)
            .map(|r| {
                let a = GroupAction::on_vertex_labels(groups[r].clone(), injective_words_complex(r)).unwrap();
                (r > 0).then(|| generic_flag(&a, r - 1).unwrap())
            })
            .collect();
        Family { groups, embeddings, flagged }
    }

    fn ctx(fam: &Family, r: usize) -> Mq3Context<'_> {
        Mq3Context {
            r,
            flagged: fam.flagged[r].as_ref().unwrap(),
            groups: &fam.groups[..=r],
            embeddings: &fam.embeddings[..r],
        }
    }

    #[test]
    fn symmetric_family_passes_all_variants() {
        let fam = symmetric(4);
        for r in 1..=4 {
            let c = ctx(&fam, r);
            let maps = maps_from_embeddings(&c).unwrap();
            for v in [Mq3Variant::A, Mq3Variant::B, Mq3Variant::C] {
                let report = check_mq3(&c, v, &maps);
                assert!(report.passed, "r={r} {v:?}: {:?}", report.failures);
            }
        }
    }

    #[test]
    fn missing_maps() {
        let fam = symmetric(3);
        let report = check_mq3(&ctx(&fam, 3), Mq3Variant::B, &Mq3Maps::default());
        assert!(matches!(report.failures.as_slice(), [Mq3Failure::MissingData { .. }]));
    }

    #[test]
    fn non_centralising_w_breaks_a() {
        let fam = symmetric(4);
        let f = fam.flagged[4].as_ref().unwrap().clone();
        let g = f.action().group();
        // t = (0 2) lies in H_0 = Sym{0,1,2}, so t·w_{0,1} still sends
        // δ_1(o_1) to o_0 and conjugates H_1 into H_0, but not identically.
        let t = g.find_permutation(&[2, 1, 0, 3]).unwrap();
        let corrupted = f.clone().with_w(0, 1, g.mul(t, f.w(0, 1)));
        assert!(crate::groupaction::check_int_inclusion(&corrupted).passed);
        let c = Mq3Context { flagged: &corrupted, ..ctx(&fam, 4) };
        let maps = maps_from_embeddings(&c).unwrap();
        let a = check_mq3(&c, Mq3Variant::A, &maps);
        assert!(!a.passed);
        assert!(a.failures.iter().all(|x| matches!(x, Mq3Failure::ConjugationMismatch { p: 0, i: 1, .. })));
        let b = check_mq3(&c, Mq3Variant::B, &maps);
        assert!(b.failures.iter().all(|x| matches!(x, Mq3Failure::SquareFails { p: 0, i: 1, .. })));
    }

    #[test]
    fn trivial_family_is_vacuous() {
        let groups = vec![FiniteGroup::trivial(), FiniteGroup::trivial()];
        let embeddings = vec![vec![0]];
        let a = GroupAction::trivial(crate::semisimplicial::full_simplex(0));
        let f = generic_flag(&a, 0).unwrap();
        let c = Mq3Context { r: 1, flagged: &f, groups: &groups, embeddings: &embeddings };
        let maps = maps_from_embeddings(&c).unwrap();
        for v in [Mq3Variant::A, Mq3Variant::B, Mq3Variant::C] {
            assert!(check_mq3(&c, v, &maps).passed);
        }
    }
}
