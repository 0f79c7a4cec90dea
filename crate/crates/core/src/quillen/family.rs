use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::profile::{stability_table, RangeFunction, StabilityProfile, StabilityTable};
use super::FamilyError;
use crate::extint::ExtInt;
use crate::groupaction::{
    check_int_inclusion, check_mq3, generic_flag, standard_embedding, FiniteGroup, GroupAction, InclusionReport,
    Mq3Context, Mq3Maps, Mq3Report, Mq3Variant,
};
use crate::semisimplicial::injective_words_complex;
use crate::spectral::{verify_theorem_a, TheoremAReport};

/// Groups `G_0 < ⋯ < G_R` acting on complexes `X(0), …, X(R)`, with the
/// embeddings `ι_r`, the stabilizer condition to check and optionally a
/// declared profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuillenFamily {
    members: Vec<GroupAction>,
    embeddings: Vec<Vec<usize>>,
    variant: Mq3Variant,
    maps: Vec<Mq3Maps>,
    q0: usize,
    declared: Option<StabilityProfile>,
}

impl QuillenFamily {
    /// `embeddings[r]` maps `G_r` into `G_{r+1}` as a list of element ids.
    pub fn new(
        members: Vec<GroupAction>,
        embeddings: Vec<Vec<usize>>,
        variant: Mq3Variant,
        q0: usize,
    ) -> Result<Self, FamilyError> {
        if members.is_empty() {
            return Err(FamilyError::Empty);
        }
        if embeddings.len() + 1 != members.len() {
            return Err(FamilyError::EmbeddingCount { members: members.len(), embeddings: embeddings.len() });
        }
        for (r, e) in embeddings.iter().enumerate() {
            let (src, tgt) = (members[r].group().order(), members[r + 1].group().order());
            if e.len() != src || e.iter().any(|&x| x >= tgt) {
                return Err(FamilyError::EmbeddingShape { r });
            }
        }
        if q0 == 0 {
            return Err(FamilyError::InitialParameter);
        }
        let maps = alloc::vec![Mq3Maps::default(); members.len()];
        Ok(QuillenFamily { members, embeddings, variant, maps, q0, declared: None })
    }

    /// Maps for variants b and c, one entry per member.
    pub fn with_maps(mut self, maps: Vec<Mq3Maps>) -> Result<Self, FamilyError> {
        if maps.len() != self.members.len() {
            return Err(FamilyError::MapsCount { members: self.members.len(), maps: maps.len() });
        }
        self.maps = maps;
        Ok(self)
    }

    pub fn with_profile(mut self, profile: StabilityProfile) -> Self {
        self.declared = Some(profile);
        self
    }

    /// Replaces `ι_r`; meant for negative fixtures.
    pub fn with_embedding(mut self, r: usize, embedding: Vec<usize>) -> Self {
        self.embeddings[r] = embedding;
        self
    }

    /// `R`.
    pub fn length(&self) -> usize {
        self.members.len() - 1
    }

    pub fn members(&self) -> &[GroupAction] {
        &self.members
    }

    pub fn embeddings(&self) -> &[Vec<usize>] {
        &self.embeddings
    }

    pub fn variant(&self) -> Mq3Variant {
        self.variant
    }

    pub fn maps(&self) -> &[Mq3Maps] {
        &self.maps
    }

    pub fn q0(&self) -> usize {
        self.q0
    }

    pub fn declared_profile(&self) -> Option<&StabilityProfile> {
        self.declared.as_ref()
    }
}

/// `S_0 < S_1 < ⋯ < S_R` acting letterwise on injective words, with the
/// standard embeddings, variant a and `q₀ = 1`.
pub fn symmetric_family(big_r: usize) -> Result<QuillenFamily, FamilyError> {
    let mut members = Vec::with_capacity(big_r + 1);
    for r in 0..=big_r {
        let g = FiniteGroup::symmetric(r)?;
        members.push(GroupAction::on_vertex_labels(g, injective_words_complex(r))?);
    }
    let embeddings = (0..big_r)
        .map(|r| standard_embedding(members[r].group(), members[r + 1].group()).expect("S_r sits in S_{r+1}"))
        .collect();
    QuillenFamily::new(members, embeddings, Mq3Variant::A, 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyFailure {
    /// The action of member `r` is not a valid action.
    ActionInvalid { r: usize },
    /// `X(r)` fails the face identity.
    ComplexInvalid { r: usize },
    /// `ι_r` is not a homomorphism at `(a, b)`.
    NotHomomorphism { r: usize, a: usize, b: usize },
    NotInjective { r: usize },
    ProfileMismatch { r: usize, function: RangeFunction, declared: ExtInt, computed: ExtInt },
    /// The declared profile has the wrong length or initial parameter.
    ProfileShape { what: String },
    InclusionFailed { r: usize },
    Mq3Failed { r: usize },
    StabilizerOrder { r: usize, p: usize, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberReport {
    pub r: usize,
    pub group_order: usize,
    pub level_sizes: Vec<usize>,
    /// Acyclicity degree of the augmented complex.
    pub gamma: ExtInt,
    /// Transitivity degree.
    pub tau: ExtInt,
    pub orbit_counts: Vec<usize>,
    /// `|H_{r,q}|` along the generic flag of depth `τ(r)`.
    pub stabilizer_orders: Vec<usize>,
    pub inclusion: Option<InclusionReport>,
    pub mq3: Option<Mq3Report>,
    pub theorem_a: Option<TheoremAReport>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub length: usize,
    pub variant: Mq3Variant,
    pub members: Vec<MemberReport>,
    /// The profile computed from the members.
    pub computed_profile: StabilityProfile,
    pub table: StabilityTable,
    pub failures: Vec<FamilyFailure>,
    pub passed: bool,
}

/// Knobs for [`verify_family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Rows of the stability table.
    pub q_max: usize,
    /// Also run the stabilizer spectral sequence checks on each member with this cell budget.
    pub theorem_a_budget: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { q_max: 6, theorem_a_budget: None }
    }
}

/// Computes `γ(r)` and `τ(r)` for every member, checks the embeddings, the
/// conjugation inclusions and the stabilizer condition, compares with the
/// declared profile and tabulates the verdicts. Failures are collected; the
/// report always covers every member.
pub fn verify_family(fam: &QuillenFamily, opts: VerifyOptions) -> FamilyReport {
    let mut failures = Vec::new();
    let groups: Vec<FiniteGroup> = fam.members.iter().map(|a| a.group().clone()).collect();

    for (r, e) in fam.embeddings.iter().enumerate() {
        if let Some((a, b)) = groups[r].homomorphism_violation(&groups[r + 1], e) {
            failures.push(FamilyFailure::NotHomomorphism { r, a, b });
        } else if !groups[r].is_embedding(&groups[r + 1], e) {
            failures.push(FamilyFailure::NotInjective { r });
        }
    }

    let mut members = Vec::with_capacity(fam.members.len());
    let mut gammas = Vec::new();
    let mut taus = Vec::new();
    for (r, action) in fam.members.iter().enumerate() {
        let x = action.complex();
        let mut notes = Vec::new();
        if !x.validate().passed {
            failures.push(FamilyFailure::ComplexInvalid { r });
        }
        if !action.validate().passed {
            failures.push(FamilyFailure::ActionInvalid { r });
        }
        let gamma = x.augmented_cochain_complex().map_or(ExtInt::NegInf, |c| c.acyclicity_degree());
        let tau = action.transitivity_degree();
        gammas.push(gamma);
        taus.push(tau);
        let orbit_counts = (0..x.num_levels()).map(|k| action.orbits(k).len()).collect();

        let mut report = MemberReport {
            r,
            group_order: action.group().order(),
            level_sizes: x.level_sizes().to_vec(),
            gamma,
            tau,
            orbit_counts,
            stabilizer_orders: Vec::new(),
            inclusion: None,
            mq3: None,
            theorem_a: None,
            notes: Vec::new(),
        };
        match tau.finite().filter(|&t| t >= 0) {
            Some(depth) => {
                let flagged = generic_flag(action, depth as usize).expect("depth within the transitivity degree");
                report.stabilizer_orders = flagged.stabilizer_orders();
                let inclusion = check_int_inclusion(&flagged);
                if !inclusion.passed {
                    failures.push(FamilyFailure::InclusionFailed { r });
                }
                report.inclusion = Some(inclusion);
                let ctx = Mq3Context { r, flagged: &flagged, groups: &groups[..=r], embeddings: &fam.embeddings[..r] };
                let mq3 = check_mq3(&ctx, fam.variant, &fam.maps[r]);
                if !mq3.passed {
                    failures.push(FamilyFailure::Mq3Failed { r });
                }
                report.mq3 = Some(mq3);
                if fam.variant == Mq3Variant::A {
                    for (p, &found) in report.stabilizer_orders.iter().enumerate() {
                        let expected = r.checked_sub(p + 1).map_or(1, |k| groups[k].order());
                        if found != expected {
                            failures.push(FamilyFailure::StabilizerOrder { r, p, expected, found });
                        }
                    }
                }
            }
            None => notes.push(String::from("not transitive on vertices; no generic flag")),
        }
        if let Some(budget) = opts.theorem_a_budget {
            match verify_theorem_a(action, gamma, tau, None, budget) {
                Ok(rep) => report.theorem_a = Some(rep),
                Err(e) => notes.push(format!("stabilizer spectral sequence checks skipped: {e}")),
            }
        }
        report.notes = notes;
        members.push(report);
    }

    let big_r = fam.length();
    let computed = StabilityProfile::new(big_r, fam.q0, gammas, taus).expect("tables cover [R] and q0 ≥ 1");
    let profile = match &fam.declared {
        Some(d) => {
            if d.length() != ExtInt::Finite(big_r as i64) || d.q0() != fam.q0 {
                failures.push(FamilyFailure::ProfileShape {
                    what: format!("declared R = {}, q0 = {}; family has R = {big_r}, q0 = {}", d.length(), d.q0(), fam.q0),
                });
            }
            for r in 0..=big_r {
                for f in [RangeFunction::Gamma, RangeFunction::Tau] {
                    let c = computed.value(f, r as i64).expect("in range");
                    match d.value(f, r as i64) {
                        Ok(v) if v == c => {}
                        Ok(v) => failures.push(FamilyFailure::ProfileMismatch { r, function: f, declared: v, computed: c }),
                        Err(_) => failures.push(FamilyFailure::ProfileShape { what: format!("declared profile undefined at r = {r}") }),
                    }
                }
            }
            d
        }
        None => &computed,
    };
    let table = stability_table(profile, opts.q_max);
    let passed = failures.is_empty() && members.iter().all(|m| m.theorem_a.as_ref().is_none_or(|t| t.passed));
    FamilyReport { length: big_r, variant: fam.variant, members, computed_profile: computed, table, failures, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn symmetric_family_through_four() {
        let fam = symmetric_family(4).unwrap();
        let rep = verify_family(&fam, VerifyOptions::default());
        assert!(rep.passed, "{:?}", rep.failures);
        for m in &rep.members[2..] {
            let r = m.r as i64;
            assert_eq!(m.gamma, ExtInt::Finite(r - 2));
            assert_eq!(m.tau, ExtInt::Finite(r - 1));
            let want: Vec<usize> = (0..m.r).map(|q| factorial(m.r - q - 1)).collect();
            assert_eq!(m.stabilizer_orders, want);
            assert!(m.mq3.as_ref().unwrap().passed);
        }
        assert_eq!(rep.members[1].gamma, ExtInt::PosInf);
        assert_eq!(rep.members[0].tau, ExtInt::NegInf);
    }

    #[test]
    fn miswired_embedding_is_reported() {
        let fam = symmetric_family(4).unwrap();
        let mut bad = fam.embeddings()[3].clone();
        // Swap the images of a transposition and a 3-cycle.
        bad.swap(1, 3);
        let rep = verify_family(&fam.clone().with_embedding(3, bad), VerifyOptions::default());
        assert!(!rep.passed);
        assert!(rep.failures.iter().any(|f| matches!(f, FamilyFailure::NotHomomorphism { r: 3, .. })));
        assert!(rep.failures.iter().any(|f| matches!(f, FamilyFailure::Mq3Failed { r: 4 })));
    }

    #[test]
    fn declared_profile_must_match() {
        let fam = symmetric_family(2).unwrap();
        let declared = StabilityProfile::new(2, 1, vec![ExtInt::PosInf, ExtInt::PosInf, ExtInt::Finite(1)], vec![
            ExtInt::NegInf,
            ExtInt::Finite(0),
            ExtInt::Finite(1),
        ])
        .unwrap();
        let rep = verify_family(&fam.with_profile(declared), VerifyOptions::default());
        assert_eq!(rep.failures, vec![FamilyFailure::ProfileMismatch {
            r: 2,
            function: RangeFunction::Gamma,
            declared: ExtInt::Finite(1),
            computed: ExtInt::Finite(0),
        }]);
    }

    #[test]
    fn single_member_is_vacuous() {
        let fam = symmetric_family(0).unwrap();
        let rep = verify_family(&fam, VerifyOptions::default());
        assert!(rep.passed);
        assert!(rep.table.rows.is_empty());
    }
}
