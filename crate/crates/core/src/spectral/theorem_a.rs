use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::group::{build_group_double_complex, group_cohomology_dims};
use super::sequence::{spectral_sequence, Filtration, PageIssue, SpectralSummary};
use super::SpectralError;
use crate::extint::ExtInt;
use crate::groupaction::{generic_flag, GroupAction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    /// `E_∞^t = 0` for `t ≤ γ₀ + 1`.
    Vanishing,
    /// `dim E_1^{p,q} = dim H^q(H_{p−1}; ℚ)` for `p ≤ τ₀ + 1`.
    StabilizerCohomology,
    /// `E_2^{p,0} = 0` for `p ≤ τ₀ + 1`.
    BottomRowE2,
    /// Bottom-row `d_1`: zero for odd `p`, iso for even `p ≤ τ₀`, injective
    /// at `p = τ₀ + 1` when that is even.
    BottomRowD1,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: ClaimKind,
    pub applicable: bool,
    pub passed: bool,
    /// Human-readable range actually covered.
    pub range: String,
    pub failures: Vec<String>,
}

/// Outcome of [`verify_theorem_a`]. Page grids are indexed `[p][q]` in the
/// orientation of the stabilizer spectral sequence: `p` runs over the levels
/// `X_{p−1}`, `q` over the group-cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremAReport {
    pub gamma0: ExtInt,
    pub tau0: ExtInt,
    /// Largest group degree in the double complex.
    pub max_p: usize,
    /// Largest row, i.e. the complex is cut after `X_{max_q − 1}`.
    pub max_q: usize,
    /// Total degrees up to this one are unaffected by the truncation.
    pub reliable_total_degree: ExtInt,
    pub total_cohomology: Vec<usize>,
    pub e1: Vec<Vec<usize>>,
    pub e2: Vec<Vec<usize>>,
    pub e_infinity: Vec<Vec<usize>>,
    /// `|H_q|` along the generic flag, `q = 0..`.
    pub stabilizer_orders: Vec<usize>,
    pub checks: Vec<ClaimCheck>,
    pub issues: Vec<PageIssue>,
    pub notes: Vec<String>,
    pub passed: bool,
    /// Every page of the stabilizer spectral sequence.
    pub summary: SpectralSummary,
}

/// Grid `(max_p, max_q)` that covers every claim for the given ranges:
/// group degrees through `γ₀ + 2` and rows through `τ₀ + 2`, both capped by
/// the height of the complex.
pub fn default_grid(action: &GroupAction, gamma0: ExtInt, tau0: ExtInt) -> (usize, usize) {
    let rows = action.complex().top_level().map_or(0, |t| t + 1);
    let p = match gamma0 {
        ExtInt::NegInf => 2,
        ExtInt::Finite(g) => usize::try_from(g + 2).unwrap_or(2).max(2),
        ExtInt::PosInf => rows + 1,
    };
    let q = match tau0 {
        ExtInt::Finite(t) if t >= 0 => (t as usize + 2).max(p),
        _ => p,
    };
    (p, q.min(rows))
}

fn cap(e: ExtInt, bound: i64) -> i64 {
    match e {
        ExtInt::NegInf => -1,
        ExtInt::Finite(v) => v.min(bound),
        ExtInt::PosInf => bound,
    }
}

fn range_text(lo: i64, hi: i64, var: &str) -> String {
    if hi < lo {
        String::from("empty")
    } else {
        format!("{lo} ≤ {var} ≤ {hi}")
    }
}

/// Builds the invariant double complex of `action`, runs the stabilizer
/// spectral sequence and checks every [`ClaimKind`] on the cells that the
/// truncation leaves intact. `grid` defaults to [`default_grid`].
pub fn verify_theorem_a(
    action: &GroupAction,
    gamma0: ExtInt,
    tau0: ExtInt,
    grid: Option<(usize, usize)>,
    budget: usize,
) -> Result<TheoremAReport, SpectralError> {
    let (max_p, max_q) = grid.unwrap_or_else(|| default_grid(action, gamma0, tau0));
    let rows_complete = max_q >= action.complex().top_level().map_or(0, |t| t + 1);
    let flag = match tau0 {
        ExtInt::Finite(t) if t >= 0 => Some(generic_flag(action, t as usize)?),
        _ => None,
    };
    let dc = build_group_double_complex(action, max_p, max_q, budget)?;
    let ss = spectral_sequence(&dc, Filtration::Horizontal, None);
    let grid_of = |r: usize| -> Vec<Vec<usize>> {
        (0..=max_q).map(|s| (0..=max_p).map(|t| ss.dim(r, s, t)).collect()).collect()
    };
    let e1 = grid_of(1);
    let e2 = if ss.pages().len() >= 2 { grid_of(2) } else { ss.infinity().to_vec() };
    let e_infinity = ss.infinity().to_vec();

    // Cells of total degree n see every map they need when n < max_p and the
    // rows are either complete or reach past n.
    let reliable = if rows_complete { max_p as i64 - 1 } else { (max_p as i64).min(max_q as i64) - 1 };
    let row_reliable = |s: usize| rows_complete || s < max_q;
    let totals = ss.infinity_totals();
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    // (i)
    {
        let hi = cap(gamma0.add_int(1), reliable);
        let applicable = gamma0 != ExtInt::NegInf;
        let mut failures = Vec::new();
        if applicable {
            for t in 0..=hi.max(-1) {
                let t = t as usize;
                let d = totals.get(t).copied().unwrap_or(0);
                if d != 0 {
                    failures.push(format!("E_∞ has dimension {d} in total degree {t}"));
                }
            }
        }
        checks.push(ClaimCheck {
            claim: ClaimKind::Vanishing,
            applicable,
            passed: failures.is_empty(),
            range: if applicable { range_text(0, hi, "t") } else { String::from("not applicable") },
            failures,
        });
    }

    let tau_hi = cap(tau0.add_int(1), max_q as i64);
    let mut stabilizer_orders = Vec::new();

    // (ii)
    {
        let mut failures = Vec::new();
        let applicable = flag.is_some();
        let q_hi = max_p as i64 - 1;
        if let Some(f) = &flag {
            stabilizer_orders = f.stabilizer_orders();
            let g = action.group();
            for p in 0..=tau_hi {
                let h = g.subgroup(&f.stabilizer(p - 1)).expect("stabilizers are subgroups");
                let expected = group_cohomology_dims(&h, q_hi.max(0) as usize);
                for q in 0..=q_hi {
                    let (p, q) = (p as usize, q as usize);
                    if e1[p][q] != expected[q] {
                        failures.push(format!(
                            "E_1^{{{p},{q}}} has dimension {}, H^{q}(H_{}) has {}",
                            e1[p][q],
                            p as i64 - 1,
                            expected[q]
                        ));
                    }
                }
            }
        }
        checks.push(ClaimCheck {
            claim: ClaimKind::StabilizerCohomology,
            applicable,
            passed: failures.is_empty(),
            range: if applicable {
                format!("{}, {}", range_text(0, tau_hi, "p"), range_text(0, q_hi, "q"))
            } else {
                String::from("not applicable")
            },
            failures,
        });
    }

    // (iii)
    let bottom_hi = (0..=tau_hi).filter(|&p| row_reliable(p as usize)).last().unwrap_or(-1);
    {
        let applicable = flag.is_some() && max_p >= 1;
        let mut failures = Vec::new();
        if applicable {
            for p in 0..=bottom_hi {
                let p = p as usize;
                if e2[p][0] != 0 {
                    failures.push(format!("E_2^{{{p},0}} has dimension {}", e2[p][0]));
                }
            }
        }
        checks.push(ClaimCheck {
            claim: ClaimKind::BottomRowE2,
            applicable,
            passed: failures.is_empty(),
            range: if applicable { range_text(0, bottom_hi, "p") } else { String::from("not applicable") },
            failures,
        });
    }

    // (iv), (v)
    {
        let applicable = flag.is_some() && max_p >= 1;
        let hi = cap(tau0.add_int(1), max_q as i64 - 1);
        let tau = tau0.finite().unwrap_or(-1);
        let mut failures = Vec::new();
        if applicable {
            let page = ss.page(1).expect("first page");
            for p in 0..=hi {
                let pu = p as usize;
                let rank = page.differential(pu, 0).map_or(0, |d| d.rank);
                let (src, tgt) = (e1[pu][0], e1[pu + 1][0]);
                let ok = if p % 2 == 1 {
                    rank == 0
                } else if p <= tau {
                    rank == src && rank == tgt
                } else {
                    rank == src
                };
                if !ok {
                    let want = if p % 2 == 1 { "zero" } else if p <= tau { "an isomorphism" } else { "injective" };
                    failures.push(format!("d_1 out of ({p},0) has rank {rank} on {src} → {tgt}, expected {want}"));
                }
            }
            let top = tau + 1;
            if top % 2 == 0 && top <= hi && action.complex().level_size(top as usize) == 0 {
                notes.push(format!(
                    "X_{top} is empty, so d_1 out of ({top},0) lands in zero and cannot be injective"
                ));
            }
        }
        checks.push(ClaimCheck {
            claim: ClaimKind::BottomRowD1,
            applicable,
            passed: failures.is_empty(),
            range: if applicable { range_text(0, hi, "p") } else { String::from("not applicable") },
            failures,
        });
    }

    if !rows_complete {
        notes.push(format!("rows stop at X_{}; claims are checked only where the cut is invisible", max_q as i64 - 1));
    }
    let issues = ss.issues().to_vec();
    let passed = checks.iter().all(|c| c.passed) && issues.is_empty();
    Ok(TheoremAReport {
        gamma0,
        tau0,
        max_p,
        max_q,
        reliable_total_degree: ExtInt::Finite(reliable),
        total_cohomology: ss.total_cohomology().to_vec(),
        e1,
        e2,
        e_infinity,
        stabilizer_orders,
        checks,
        issues,
        notes,
        passed,
        summary: ss.summary(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupaction::FiniteGroup;
    use crate::semisimplicial::{boundary_simplex, injective_words_complex};
    use crate::spectral::DEFAULT_CELL_BUDGET;

    fn words(n: usize) -> GroupAction {
        GroupAction::on_vertex_labels(FiniteGroup::symmetric(n).unwrap(), injective_words_complex(n)).unwrap()
    }

    #[test]
    fn s3_on_words_passes_everything() {
        let r = verify_theorem_a(&words(3), ExtInt::Finite(1), ExtInt::Finite(2), None, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!((r.max_p, r.max_q), (3, 3));
        assert!(r.checks.iter().all(|c| c.applicable && c.passed), "{:?}", r.checks);
        assert!(r.passed);
        assert_eq!(r.stabilizer_orders, [2, 1, 1]);
        assert_eq!(&r.total_cohomology[..3], &[0, 0, 0]);
        for p in 0..=3 {
            assert_eq!(r.e1[p][0], 1);
            assert_eq!(r.e2[p][0], 0);
        }
    }

    #[test]
    fn trivial_group_on_circle_only_vanishing_applies() {
        let a = GroupAction::trivial(boundary_simplex(2));
        let r = verify_theorem_a(&a, ExtInt::Finite(0), ExtInt::NegInf, None, DEFAULT_CELL_BUDGET).unwrap();
        let applicable: Vec<ClaimKind> = r.checks.iter().filter(|c| c.applicable).map(|c| c.claim).collect();
        assert_eq!(applicable, [ClaimKind::Vanishing]);
        assert_eq!(r.checks[0].range, "0 ≤ t ≤ 1");
        assert!(r.passed);
    }
}
