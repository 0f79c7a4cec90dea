use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::ProfileError;
use crate::extint::ExtInt;

/// How a finite table continues past its last entry.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionRule {
    /// Undefined past the table; evaluation there is refused.
    #[default]
    None,
    /// Repeats the last entry.
    Constant,
    /// `slope · r + offset`.
    Affine { slope: i64, offset: i64 },
    Infinity,
}

/// Which of the two functions is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RangeFunction {
    Gamma,
    Tau,
}

/// `(R, γ, τ, q₀)`: acyclicity and transitivity ranges of a family of
/// length `R`, each given by a table plus an extension rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct StabilityProfile {
    length: ExtInt,
    q0: usize,
    gamma: Vec<ExtInt>,
    tau: Vec<ExtInt>,
    gamma_rule: ExtensionRule,
    tau_rule: ExtensionRule,
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    #[serde(rename = "R")]
    length: ExtInt,
    q0: usize,
    gamma: Vec<ExtInt>,
    tau: Vec<ExtInt>,
    #[serde(default)]
    extension: RawExtension,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawExtension {
    Same(ExtensionRule),
    Split { gamma: ExtensionRule, tau: ExtensionRule },
}

impl Default for RawExtension {
    fn default() -> Self {
        RawExtension::Same(ExtensionRule::None)
    }
}

impl TryFrom<RawProfile> for StabilityProfile {
    type Error = ProfileError;

    fn try_from(raw: RawProfile) -> Result<Self, ProfileError> {
        let (g, t) = match raw.extension {
            RawExtension::Same(rule) => (rule, rule),
            RawExtension::Split { gamma, tau } => (gamma, tau),
        };
        StabilityProfile::with_rules(raw.length, raw.q0, raw.gamma, raw.tau, g, t)
    }
}

impl From<StabilityProfile> for RawProfile {
    fn from(p: StabilityProfile) -> Self {
        let extension = if p.gamma_rule == p.tau_rule {
            RawExtension::Same(p.gamma_rule)
        } else {
            RawExtension::Split { gamma: p.gamma_rule, tau: p.tau_rule }
        };
        RawProfile { length: p.length, q0: p.q0, gamma: p.gamma, tau: p.tau, extension }
    }
}

impl StabilityProfile {
    /// A profile given entirely by tables on `[R]`.
    pub fn new(length: usize, q0: usize, gamma: Vec<ExtInt>, tau: Vec<ExtInt>) -> Result<Self, ProfileError> {
        Self::with_rules(ExtInt::Finite(length as i64), q0, gamma, tau, ExtensionRule::None, ExtensionRule::None)
    }

    /// `length` may be `+∞`; the rules then say how the tables continue.
    pub fn with_rules(
        length: ExtInt,
        q0: usize,
        gamma: Vec<ExtInt>,
        tau: Vec<ExtInt>,
        gamma_rule: ExtensionRule,
        tau_rule: ExtensionRule,
    ) -> Result<Self, ProfileError> {
        if q0 == 0 {
            return Err(ProfileError::InitialParameter);
        }
        if !length.at_least(0) {
            return Err(ProfileError::Length(length));
        }
        let p = StabilityProfile { length, q0, gamma, tau, gamma_rule, tau_rule };
        if let ExtInt::Finite(r_max) = length {
            for f in [RangeFunction::Gamma, RangeFunction::Tau] {
                if p.table(f).len() as i64 > r_max + 1 {
                    return Err(ProfileError::TableTooLong { function: f, len: p.table(f).len(), length: r_max as usize });
                }
                for r in 0..=r_max {
                    p.value(f, r)?;
                }
            }
        }
        Ok(p)
    }

    /// `R`, possibly `+∞`.
    pub fn length(&self) -> ExtInt {
        self.length
    }

    pub fn q0(&self) -> usize {
        self.q0
    }

    pub fn table(&self, f: RangeFunction) -> &[ExtInt] {
        match f {
            RangeFunction::Gamma => &self.gamma,
            RangeFunction::Tau => &self.tau,
        }
    }

    pub fn rule(&self, f: RangeFunction) -> ExtensionRule {
        match f {
            RangeFunction::Gamma => self.gamma_rule,
            RangeFunction::Tau => self.tau_rule,
        }
    }

    /// `γ(r)` or `τ(r)` for `r ∈ [R]`.
    pub fn value(&self, f: RangeFunction, r: i64) -> Result<ExtInt, ProfileError> {
        let out_of_range = ProfileError::IndexOutOfRange { r, length: self.length };
        if r < 0 || !self.length.at_least(r) {
            return Err(out_of_range);
        }
        let table = self.table(f);
        if let Some(v) = table.get(r as usize) {
            return Ok(*v);
        }
        match self.rule(f) {
            ExtensionRule::None => Err(ProfileError::BeyondExtension { function: f, r }),
            ExtensionRule::Constant => table.last().copied().ok_or(ProfileError::BeyondExtension { function: f, r }),
            ExtensionRule::Affine { slope, offset } => Ok(ExtInt::Finite(slope * r + offset)),
            ExtensionRule::Infinity => Ok(ExtInt::PosInf),
        }
    }

    /// `γ(r)`.
    pub fn gamma(&self, r: i64) -> Result<ExtInt, ProfileError> {
        self.value(RangeFunction::Gamma, r)
    }

    /// `τ(r)`.
    pub fn tau(&self, r: i64) -> Result<ExtInt, ProfileError> {
        self.value(RangeFunction::Tau, r)
    }

    /// Largest `r ∈ [R−1]` at which every verdict can be evaluated, or `None`
    /// if there is none. Unbounded profiles are cut at a horizon that leaves
    /// room for degree `q_max`.
    pub fn horizon(&self, q_max: usize) -> Option<usize> {
        let bound = |f: RangeFunction| -> Option<i64> {
            match self.rule(f) {
                ExtensionRule::None => Some(self.table(f).len() as i64 - 2),
                _ => None,
            }
        };
        let mut h = match self.length {
            ExtInt::Finite(r) => r - 1,
            _ => (self.gamma.len().max(self.tau.len()) + 2 * q_max + 2) as i64,
        };
        for f in [RangeFunction::Gamma, RangeFunction::Tau] {
            if let Some(b) = bound(f) {
                h = h.min(b);
            }
        }
        usize::try_from(h).ok()
    }

    fn check_index(&self, r: usize) -> Result<(), ProfileError> {
        if self.length.at_least(r as i64 + 1) {
            Ok(())
        } else {
            Err(ProfileError::IndexOutOfRange { r: r as i64, length: self.length })
        }
    }
}

/// Which side of `min{γ̃, τ̃ − 1}` attains the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Binding {
    Gamma,
    Tau,
    Both,
    /// `q < q₀`: the minimum is empty.
    Initial,
    /// `r + 1 − 2(q − q₀) < 0`: both duals are `−∞`.
    Undefined,
}

/// The minimizing `j` (when the minimum is over a nonempty range) and the
/// function that binds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub j: Option<i64>,
    pub binding: Binding,
}

/// `min{γ̃(q, r), τ̃(q, r) − 1}` with its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Margin {
    pub q: i64,
    pub r: i64,
    pub gamma: ExtInt,
    pub tau: ExtInt,
    pub value: ExtInt,
    pub witness: Witness,
}

impl Margin {
    pub fn holds(&self) -> bool {
        self.value.at_least(0)
    }
}

fn dual_raw(p: &StabilityProfile, f: RangeFunction, q: i64, r: i64) -> Result<(ExtInt, Option<i64>), ProfileError> {
    let q0 = p.q0 as i64;
    if r + 1 - 2 * (q - q0) < 0 {
        return Ok((ExtInt::NegInf, None));
    }
    let mut best = (ExtInt::PosInf, None);
    for j in q0..=q {
        let v = p.value(f, r + 1 - 2 * (q - j))?.sub_int(j);
        if best.1.is_none() || v < best.0 {
            best = (v, Some(j));
        }
    }
    Ok(best)
}

/// Margin at any `(q, r)` with `r ≥ −2`; used by the recursive lemma checks,
/// which step below `r = 0`.
pub(crate) fn margin_raw(p: &StabilityProfile, q: i64, r: i64) -> Result<Margin, ProfileError> {
    let (g, jg) = dual_raw(p, RangeFunction::Gamma, q, r)?;
    let (t, jt) = dual_raw(p, RangeFunction::Tau, q, r)?;
    let t1 = t.sub_int(1);
    let value = g.min(t1);
    let witness = if r + 1 - 2 * (q - p.q0 as i64) < 0 {
        Witness { j: None, binding: Binding::Undefined }
    } else if q < p.q0 as i64 {
        Witness { j: None, binding: Binding::Initial }
    } else if g < t1 {
        Witness { j: jg, binding: Binding::Gamma }
    } else if t1 < g {
        Witness { j: jt, binding: Binding::Tau }
    } else {
        Witness { j: jt, binding: Binding::Both }
    };
    Ok(Margin { q, r, gamma: g, tau: t, value, witness })
}

/// Dual acyclicity range `γ̃(q, r)` for `r ∈ [R−1]`.
pub fn dual_gamma(p: &StabilityProfile, q: usize, r: usize) -> Result<ExtInt, ProfileError> {
    p.check_index(r)?;
    Ok(dual_raw(p, RangeFunction::Gamma, q as i64, r as i64)?.0)
}

/// Dual transitivity function `τ̃(q, r)` for `r ∈ [R−1]`.
pub fn dual_tau(p: &StabilityProfile, q: usize, r: usize) -> Result<ExtInt, ProfileError> {
    p.check_index(r)?;
    Ok(dual_raw(p, RangeFunction::Tau, q as i64, r as i64)?.0)
}

/// `min{γ̃(q, r), τ̃(q, r) − 1}` for `r ∈ [R−1]`.
pub fn margin(p: &StabilityProfile, q: usize, r: usize) -> Result<Margin, ProfileError> {
    p.check_index(r)?;
    margin_raw(p, q as i64, r as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Isomorphism,
    Injection,
    Unknown,
}

impl VerdictKind {
    /// `≅`, `↪` or `?`.
    pub fn symbol(self) -> &'static str {
        match self {
            VerdictKind::Isomorphism => "≅",
            VerdictKind::Injection => "↪",
            VerdictKind::Unknown => "?",
        }
    }
}

/// What the main theorem says about `H^q(ι_r)`. `source` is the margin the
/// verdict rests on: at `(q, r)` for isomorphisms and unknowns, at
/// `(q − 1, r)` for injections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub q: usize,
    pub r: usize,
    pub kind: VerdictKind,
    pub source: Margin,
}

/// Isomorphism if the margin at `(q, r)` is nonnegative (always for
/// `q < q₀`), else injection if it is at `(q − 1, r)`, else unknown.
pub fn verdict(p: &StabilityProfile, q: usize, r: usize) -> Result<Verdict, ProfileError> {
    let here = margin(p, q, r)?;
    if here.holds() {
        return Ok(Verdict { q, r, kind: VerdictKind::Isomorphism, source: here });
    }
    if q > 0 {
        let below = margin(p, q - 1, r)?;
        if below.holds() {
            return Ok(Verdict { q, r, kind: VerdictKind::Injection, source: below });
        }
    }
    Ok(Verdict { q, r, kind: VerdictKind::Unknown, source: here })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub q: usize,
    /// Least `r` with an isomorphism verdict.
    pub first_isomorphism: Option<usize>,
    /// Least `r` from which every `r'` up to the horizon is an isomorphism.
    pub stable_from: Option<usize>,
    /// `verdicts[r]` for `r = 0..=horizon`.
    pub verdicts: Vec<VerdictKind>,
}

/// Verdict grid for `q ≤ q_max` and `r ∈ [horizon]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityTable {
    pub q0: usize,
    pub horizon: Option<usize>,
    pub rows: Vec<TableRow>,
}

impl StabilityTable {
    /// `r(q)` for each row; `None` means never within the horizon.
    pub fn r_of_q(&self) -> Vec<Option<usize>> {
        self.rows.iter().map(|row| row.first_isomorphism).collect()
    }
}

pub fn stability_table(p: &StabilityProfile, q_max: usize) -> StabilityTable {
    let Some(horizon) = p.horizon(q_max) else {
        return StabilityTable { q0: p.q0, horizon: None, rows: Vec::new() };
    };
    let rows = (0..=q_max)
        .map(|q| {
            let verdicts: Vec<VerdictKind> = (0..=horizon)
                .map(|r| verdict(p, q, r).map_or(VerdictKind::Unknown, |v| v.kind))
                .collect();
            let first_isomorphism = verdicts.iter().position(|&k| k == VerdictKind::Isomorphism);
            let stable_from = match verdicts.iter().rposition(|&k| k != VerdictKind::Isomorphism) {
                None => Some(0),
                Some(last) if last < horizon => Some(last + 1),
                Some(_) => None,
            };
            TableRow { q, first_isomorphism, stable_from, verdicts }
        })
        .collect();
    StabilityTable { q0: p.q0, horizon: Some(horizon), rows }
}

/// One consequence of the combinatorial lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaItem {
    /// 1 to 4.
    pub item: u8,
    /// The `p` for items 3 and 4.
    pub p: Option<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub q: usize,
    pub r: usize,
    /// The premise `q ≥ q₀` and `min{γ̃, τ̃ − 1} ≥ 0` failed; nothing checked.
    pub vacuous: bool,
    pub items: Vec<LemmaItem>,
    pub passed: bool,
}

/// Checks the four consequences of the combinatorial lemma at `(q, r)`.
pub fn check_lemma_combinatorics(p: &StabilityProfile, q: usize, r: usize) -> Result<LemmaReport, ProfileError> {
    let premise = q >= p.q0 && margin(p, q, r)?.holds();
    if !premise {
        return Ok(LemmaReport { q, r, vacuous: true, items: Vec::new(), passed: true });
    }
    let (qi, ri) = (q as i64, r as i64);
    let mut items = Vec::new();
    let first = p.gamma(ri + 1)?.at_least(qi) && p.tau(ri + 1)?.at_least(qi + 1);
    items.push(LemmaItem { item: 1, p: None, holds: first });
    items.push(LemmaItem { item: 2, p: None, holds: margin_raw(p, qi - 1, ri)?.holds() });
    for k in 0..=q - p.q0 {
        let ki = k as i64;
        let (item, m) = if k % 2 == 1 {
            (3, margin_raw(p, qi - ki, ri - ki - 1)?)
        } else {
            (4, margin_raw(p, qi - ki - 1, ri - ki - 2)?)
        };
        items.push(LemmaItem { item, p: Some(k), holds: m.holds() });
    }
    let passed = items.iter().all(|i| i.holds);
    Ok(LemmaReport { q, r, vacuous: false, items, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use ExtInt::{Finite, NegInf, PosInf};

    fn gl() -> StabilityProfile {
        StabilityProfile::with_rules(
            PosInf,
            2,
            vec![PosInf],
            vec![Finite(0)],
            ExtensionRule::Infinity,
            ExtensionRule::Affine { slope: 1, offset: 0 },
        )
        .unwrap()
    }

    fn sl(big_r: usize) -> StabilityProfile {
        let mut tau: Vec<ExtInt> = (0..big_r as i64).map(Finite).collect();
        tau.push(Finite(big_r as i64 - 1));
        StabilityProfile::new(big_r, 2, vec![PosInf; big_r + 1], tau).unwrap()
    }

    #[test]
    fn gl_closed_form_where_evaluable() {
        let p = gl();
        for q in 3..=8i64 {
            for r in 0..=20i64 {
                let m = margin(&p, q as usize, r as usize).unwrap();
                if r + 1 - 2 * (q - 2) >= 0 {
                    assert_eq!(m.value, Finite(r - (2 * q - 2)), "q={q} r={r}");
                    assert_eq!(m.witness, Witness { j: Some(2), binding: Binding::Tau });
                } else {
                    assert_eq!(m.value, NegInf);
                }
            }
        }
    }

    #[test]
    fn gl_verdicts_in_degree_three() {
        let p = gl();
        for r in 0..=10 {
            let k = verdict(&p, 3, r).unwrap().kind;
            let want = match r {
                0 | 1 => VerdictKind::Unknown,
                2 | 3 => VerdictKind::Injection,
                _ => VerdictKind::Isomorphism,
            };
            assert_eq!(k, want, "r={r}");
        }
        let t = stability_table(&p, 6);
        assert_eq!(&t.r_of_q()[3..], &[Some(4), Some(6), Some(8), Some(10)]);
        assert_eq!(t.rows[5].stable_from, Some(8));
    }

    #[test]
    fn below_initial_parameter_is_iso() {
        let p = gl();
        assert_eq!(dual_gamma(&p, 1, 0).unwrap(), PosInf);
        assert_eq!(dual_tau(&p, 0, 0).unwrap(), PosInf);
        let v = verdict(&p, 0, 0).unwrap();
        assert_eq!(v.kind, VerdictKind::Isomorphism);
        assert_eq!(v.source.witness.binding, Binding::Initial);
    }

    #[test]
    fn sl_at_last_link() {
        // The definition gives R − 2q + 1 for q ≥ 3.
        let p = sl(6);
        assert_eq!(margin(&p, 4, 5).unwrap().value, Finite(-1));
        assert_eq!(margin(&p, 3, 5).unwrap().value, Finite(1));
        assert!(margin(&p, 3, 6).is_err());
        assert_eq!(verdict(&p, 4, 5).unwrap().kind, VerdictKind::Injection);
    }

    #[test]
    fn never_when_gamma_is_minus_infinity() {
        let p = StabilityProfile::new(6, 1, vec![NegInf; 7], vec![PosInf; 7]).unwrap();
        let t = stability_table(&p, 4);
        for row in &t.rows[1..] {
            assert_eq!(row.first_isomorphism, None);
            assert!(row.verdicts.iter().all(|&k| k == VerdictKind::Unknown || row.q == 1));
        }
        assert_eq!(t.rows[0].first_isomorphism, Some(0));
    }

    #[test]
    fn index_checks() {
        let p = sl(4);
        assert_eq!(dual_gamma(&p, 3, 4), Err(ProfileError::IndexOutOfRange { r: 4, length: Finite(4) }));
        let short = StabilityProfile::with_rules(PosInf, 1, vec![Finite(0); 3], vec![Finite(0); 3], ExtensionRule::None, ExtensionRule::None)
            .unwrap();
        assert_eq!(short.horizon(3), Some(1));
        assert_eq!(margin(&short, 1, 2), Err(ProfileError::BeyondExtension { function: RangeFunction::Gamma, r: 3 }));
        assert_eq!(StabilityProfile::new(2, 0, vec![], vec![]), Err(ProfileError::InitialParameter));
        assert!(StabilityProfile::new(2, 1, vec![Finite(0); 2], vec![Finite(0); 3]).is_err());
    }

    #[test]
    fn lemma_on_gl() {
        let rep = check_lemma_combinatorics(&gl(), 3, 4).unwrap();
        assert!(!rep.vacuous && rep.passed);
        assert_eq!(rep.items.len(), 4);
        assert!(check_lemma_combinatorics(&gl(), 3, 3).unwrap().vacuous);
    }

    #[test]
    fn single_member_table_is_empty() {
        let p = StabilityProfile::new(0, 1, vec![PosInf], vec![Finite(0)]).unwrap();
        let t = stability_table(&p, 3);
        assert_eq!(t.horizon, None);
        assert!(t.rows.is_empty());
    }
}
