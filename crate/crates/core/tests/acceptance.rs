//! Acceptance suite. Prints one line per criterion and exits nonzero when a
//! criterion outside `KNOWN_RED` fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qss_core::exactla::{verify_l1_homotopy, CochainComplex};
use qss_core::extint::ExtInt::{self, Finite, PosInf};
use qss_core::groupaction::generic_flag;
use qss_core::quillen::{
    check_lemma_combinatorics, margin, stability_table, symmetric_family, verdict, verify_family, ExtensionRule,
    StabilityProfile, VerdictKind, VerifyOptions,
};
use qss_core::semisimplicial::{
    boundary_simplex, coning_homotopy, full_simplex, injective_words_complex, product_complex,
};
use qss_core::spectral::{
    group_cohomology_dims, spectral_sequence, verify_theorem_a, ClaimKind, Filtration, DEFAULT_CELL_BUDGET,
};
use qss_core::{FiniteGroup, GroupAction, SemiSimplicialComplex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Criteria expected to fail; see the SL discussion in the README.
const KNOWN_RED: &[u8] = &[2];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn gl_slope_two() -> Outcome {
    let p = StabilityProfile::with_rules(
        PosInf,
        2,
        vec![PosInf],
        vec![Finite(0)],
        ExtensionRule::Infinity,
        ExtensionRule::Affine { slope: 1, offset: 0 },
    )
    .map_err(|e| e.to_string())?;
    let mut exact = 0;
    for q in 3..=8i64 {
        for r in 0..=20i64 {
            let m = margin(&p, q as usize, r as usize).map_err(|e| e.to_string())?.value;
            let closed = r - (2 * q - 2);
            if r + 1 - 2 * (q - 2) >= 0 {
                ensure(m == Finite(closed), || format!("q={q} r={r}: {m:?} ≠ {closed}"))?;
                exact += 1;
            } else {
                ensure(m == ExtInt::NegInf && closed < 0, || format!("q={q} r={r}: {m:?} outside the evaluable range"))?;
            }
        }
    }
    let rq = stability_table(&p, 8).r_of_q();
    for q in 3..=8 {
        ensure(rq[q] == Some(2 * q - 2), || format!("r({q}) = {:?}", rq[q]))?;
    }
    Ok(format!("{exact} evaluable points exact, r(q) = 2q−2 for 3 ≤ q ≤ 8"))
}

fn sl_thresholds() -> Outcome {
    let mut mismatches = Vec::new();
    for big_r in 4..=12usize {
        let mut tau: Vec<ExtInt> = (0..big_r as i64).map(Finite).collect();
        tau.push(Finite(big_r as i64 - 1));
        let p = StabilityProfile::new(big_r, 2, vec![PosInf; big_r + 1], tau).map_err(|e| e.to_string())?;
        for q in 3..=6usize {
            let v = verdict(&p, q, big_r - 1).map_err(|e| e.to_string())?.kind;
            let iso = v == VerdictKind::Isomorphism;
            let inj = iso || v == VerdictKind::Injection;
            let (want_iso, want_inj) = (big_r + 2 >= 2 * q, big_r + 4 >= 2 * q);
            if iso != want_iso || inj != want_inj {
                mismatches.push(format!("R={big_r} q={q}: {}", v.symbol()));
            }
        }
    }
    if mismatches.is_empty() {
        Ok(String::from("all 36 verdicts match"))
    } else {
        Err(format!("{} of 36 differ ({})", mismatches.len(), mismatches.join(", ")))
    }
}

/// Reduced cohomology of the words complex: zero below the top, the number
/// of derangements on top. Checked against an Euler characteristic count.
fn words_cohomology_oracle(x: &SemiSimplicialComplex, r: usize) -> Result<(), String> {
    let euler: i64 = std::iter::once(1i64)
        .chain(x.level_sizes().iter().map(|&n| n as i64))
        .enumerate()
        .map(|(k, n)| if k % 2 == 0 { n } else { -n })
        .sum();
    let derangements = (0..=r).map(|k| (if k % 2 == 0 { 1 } else { -1 }) * (factorial(r) / factorial(k)) as i64).sum::<i64>();
    ensure(euler.abs() == derangements, || format!("r={r}: Euler {euler}, derangements {derangements}"))?;
    let h = x.augmented_cochain_complex().map_err(|e| e.to_string())?.cohomology_dims();
    let mut want = vec![0usize; r];
    want[r - 1] = derangements as usize;
    ensure(h == want, || format!("r={r}: cohomology {h:?}, expected {want:?}"))
}

fn symmetric_family_end_to_end() -> Outcome {
    let fam = symmetric_family(5).map_err(|e| e.to_string())?;
    let rep = verify_family(&fam, VerifyOptions::default());
    ensure(rep.passed, || format!("family failures: {:?}", rep.failures))?;
    for r in 2..=5usize {
        let m = &rep.members[r];
        let a = &fam.members()[r];
        ensure(m.gamma == Finite(r as i64 - 2), || format!("γ({r}) = {:?}", m.gamma))?;
        ensure(m.tau == Finite(r as i64 - 1), || format!("τ({r}) = {:?}", m.tau))?;
        words_cohomology_oracle(a.complex(), r)?;
        // Exhaustive orbit of the first simplex at every level.
        let g = a.group();
        for k in 0..r {
            let orbit: std::collections::BTreeSet<usize> = g.elements().map(|e| a.act(k, e, 0)).collect();
            ensure(orbit.len() == a.complex().level_size(k), || format!("r={r}: level {k} is not one orbit"))?;
        }
        let want: Vec<usize> = (0..r).map(|q| factorial(r - q - 1)).collect();
        ensure(m.stabilizer_orders == want, || format!("r={r}: stabilizer orders {:?}", m.stabilizer_orders))?;
        let mq3 = m.mq3.as_ref().ok_or_else(|| format!("r={r}: MQ3 not run"))?;
        ensure(mq3.passed, || format!("r={r}: MQ3a {:?}", mq3.failures))?;
    }
    Ok(String::from("γ = r−2, τ = r−1, |H_q| = (r−q−1)!, MQ3a for r = 2..5"))
}

fn spectral_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut nonzero = 0;
    for i in 0..100 {
        let dc = common::random_double_complex(&mut rng, 5);
        let total = dc.total_complex().cohomology_dims();
        if total.iter().any(|&d| d > 0) {
            nonzero += 1;
        }
        for f in [Filtration::Vertical, Filtration::Horizontal] {
            let ss = spectral_sequence(&dc, f, None);
            ensure(ss.issues().is_empty(), || format!("complex {i} {f:?}: {:?}", ss.issues()))?;
            let mut sums = vec![0usize; total.len().max(1)];
            for (s, col) in ss.infinity().iter().enumerate() {
                for (t, &d) in col.iter().enumerate() {
                    if d > 0 {
                        ensure(s + t < sums.len(), || format!("complex {i} {f:?}: E_∞ beyond the top degree"))?;
                        sums[s + t] += d;
                    }
                }
            }
            sums.truncate(total.len());
            ensure(sums == total, || format!("complex {i} {f:?}: E_∞ sums {sums:?}, total {total:?}"))?;
        }
    }
    Ok(format!("100 complexes ({nonzero} with nonzero cohomology), both filtrations"))
}

fn theorem_a_s3() -> Outcome {
    let a = GroupAction::on_vertex_labels(FiniteGroup::symmetric(3).map_err(|e| e.to_string())?, injective_words_complex(3))
        .map_err(|e| e.to_string())?;
    let gamma0 = a.complex().augmented_cochain_complex().map_err(|e| e.to_string())?.acyclicity_degree();
    let tau0 = a.transitivity_degree();
    ensure((gamma0, tau0) == (Finite(1), Finite(2)), || format!("γ₀ = {gamma0:?}, τ₀ = {tau0:?}"))?;
    let rep = verify_theorem_a(&a, gamma0, tau0, None, DEFAULT_CELL_BUDGET).map_err(|e| e.to_string())?;
    ensure(rep.passed, || format!("claims: {:?}", rep.checks))?;
    for kind in [ClaimKind::Vanishing, ClaimKind::StabilizerCohomology, ClaimKind::BottomRowE2, ClaimKind::BottomRowD1] {
        ensure(rep.checks.iter().any(|c| c.claim == kind && c.applicable && c.passed), || format!("{kind:?} not checked"))?;
    }
    let mut totals = [0usize; 3];
    for (s, col) in rep.e_infinity.iter().enumerate() {
        for (t, &d) in col.iter().enumerate() {
            if s + t <= 2 {
                totals[s + t] += d;
            }
        }
    }
    ensure(totals == [0, 0, 0], || format!("E_∞ totals {totals:?}"))?;
    for p in 0..=3 {
        ensure(rep.e2[p][0] == 0, || format!("E_2^{{{p},0}} = {}", rep.e2[p][0]))?;
    }
    let d1 = rep.summary.pages.iter().find(|pg| pg.r == 1).ok_or("no E_1 page")?;
    for p in 0..=2usize {
        let rank = d1.ranks.iter().find(|&&(s, t, _)| (s, t) == (p, 0)).map_or(0, |&(_, _, k)| k);
        let (src, tgt) = (rep.e1[p][0], rep.e1[p + 1][0]);
        if p % 2 == 1 {
            ensure(rank == 0, || format!("d_1 out of p={p} has rank {rank}"))?;
        } else {
            ensure(rank == src && rank == tgt, || format!("d_1 out of p={p}: rank {rank}, {src} → {tgt}"))?;
        }
    }
    let flag = generic_flag(&a, 2).map_err(|e| e.to_string())?;
    for p in 0..=3usize {
        let stab = if p == 0 { a.group().clone() } else { a.group().subgroup(&flag.stabilizer(p as i64 - 1)).map_err(|e| e.to_string())? };
        let h = group_cohomology_dims(&stab, 2);
        ensure(h == [1, 0, 0], || format!("H^*(H_{}) = {h:?}", p as i64 - 1))?;
        for q in 0..=2 {
            ensure(rep.e1[p][q] == h[q], || format!("E_1^{{{p},{q}}} = {}, bar resolution {}", rep.e1[p][q], h[q]))?;
        }
    }
    Ok(String::from("E_∞ = 0 in degrees 0..2, E_2^{p,0} = 0 for p ≤ 3, d_1 pattern, E_1 from stabilizers"))
}

fn lemma_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e33a);
    let (mut premises, mut counterexamples) = (0usize, Vec::new());
    for i in 0..1000 {
        let p = common::random_profile(&mut rng, 12);
        let big_r = p.length().finite().unwrap_or(0) as usize;
        for q in 0..=8 {
            for r in 0..big_r {
                let rep = check_lemma_combinatorics(&p, q, r).map_err(|e| format!("profile {i}: {e}"))?;
                if !rep.vacuous {
                    premises += 1;
                }
                if !rep.passed {
                    counterexamples.push(format!("profile {i} (q={q}, r={r})"));
                }
            }
        }
    }
    ensure(counterexamples.is_empty(), || format!("{} counterexamples, first {}", counterexamples.len(), counterexamples[0]))?;
    ensure(premises > 0, || String::from("no point satisfied the premise"))?;
    Ok(format!("1000 profiles, {premises} points with the premise, 0 counterexamples"))
}

fn l1_homotopy() -> Outcome {
    let x = product_complex(2, 4).map_err(|e| e.to_string())?;
    let h = coning_homotopy(&x, 0).map_err(|e| e.to_string())?;
    ensure(h.bounds().iter().all(|b| b.to_string() == "1"), || String::from("coning bounds are not 1"))?;
    let c = x.augmented_cochain_complex().map_err(|e| e.to_string())?;
    let rep = verify_l1_homotopy(&c, &h, 3).map_err(|e| e.to_string())?;
    ensure(rep.passed, || format!("{:?}", rep.degrees))?;
    let g = c.acyclicity_degree();
    ensure(g.at_least(3), || format!("acyclicity degree {g:?}"))?;
    Ok(format!("h_{{−1}}..h_3 with C = 1, acyclicity degree {g}"))
}

fn d_squared_zero(c: &CochainComplex) -> bool {
    c.differentials().windows(2).all(|w| w[1].mul(&w[0]).map_or(false, |m| m.is_zero()))
}

fn constructor_fuzz() -> Outcome {
    let mut outputs: Vec<(String, SemiSimplicialComplex)> = Vec::new();
    for n in 0..=5 {
        outputs.push((format!("words({n})"), injective_words_complex(n)));
        outputs.push((format!("boundary({n})"), boundary_simplex(n)));
        outputs.push((format!("full({n})"), full_simplex(n)));
    }
    for v in 1..=5usize {
        for top in 0..=5u32 {
            if v.pow(top + 1) <= 4000 {
                outputs.push((format!("product({v},{top})"), product_complex(v, top as usize).map_err(|e| e.to_string())?));
            }
        }
    }
    for (name, x) in &outputs {
        let rep = x.validate();
        ensure(rep.passed, || format!("{name}: {:?}", rep.issues))?;
        let c = x.augmented_cochain_complex().map_err(|e| format!("{name}: {e}"))?;
        ensure(d_squared_zero(&c), || format!("{name}: d∘d ≠ 0"))?;
    }
    Ok(format!("{} constructor outputs", outputs.len()))
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Outcome, Duration); 8] = [
        (1, "GL slope-two range", gl_slope_two, Duration::from_secs(1)),
        (2, "SL finite-family thresholds", sl_thresholds, Duration::from_secs(1)),
        (3, "symmetric family on injective words", symmetric_family_end_to_end, Duration::from_secs(60)),
        (4, "spectral sequence vs total cohomology", spectral_oracle, Duration::from_secs(30)),
        (5, "stabilizer spectral sequence for S3", theorem_a_s3, Duration::from_secs(120)),
        (6, "combinatorial lemma fuzz", lemma_fuzz, Duration::from_secs(60)),
        (7, "l1 coning homotopy", l1_homotopy, Duration::from_secs(60)),
        (8, "semi-simplicial identity fuzz", constructor_fuzz, Duration::from_secs(60)),
    ];
    let mut unexpected = 0;
    for (id, title, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > limit => Err(format!("{detail}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        let red = KNOWN_RED.contains(&id);
        match &outcome {
            Ok(detail) => println!("criterion {id} PASS [{took:.2?}] {title}: {detail}"),
            Err(why) if red => println!("criterion {id} FAIL (known) [{took:.2?}] {title}: {why}"),
            Err(why) => println!("criterion {id} FAIL [{took:.2?}] {title}: {why}"),
        }
        if outcome.is_err() != red {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria did not meet expectations");
        ExitCode::FAILURE
    }
}
