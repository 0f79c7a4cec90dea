mod common;

use proptest::prelude::*;
use qss_core::extint::ExtInt::{self, Finite, NegInf, PosInf};
use qss_core::quillen::{
    check_lemma_combinatorics, dual_gamma, dual_tau, margin, stability_table, verdict, ExtensionRule, StabilityProfile,
    VerdictKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q_MAX: usize = 6;

fn raise<R: Rng>(rng: &mut R, v: ExtInt) -> ExtInt {
    match (v, rng.gen_range(0..6)) {
        (_, 0) => PosInf,
        (Finite(x), k) => Finite(x + k as i64 - 1),
        (NegInf, k) if k < 3 => NegInf,
        (NegInf, k) => Finite(k as i64 - 4),
        (PosInf, _) => PosInf,
    }
}

fn dominating<R: Rng>(rng: &mut R, p: &StabilityProfile) -> StabilityProfile {
    let big_r = p.length().finite().unwrap() as usize;
    let gamma = p.table(qss_core::quillen::RangeFunction::Gamma).iter().map(|&v| raise(rng, v)).collect();
    let tau = p.table(qss_core::quillen::RangeFunction::Tau).iter().map(|&v| raise(rng, v)).collect();
    StabilityProfile::new(big_r, p.q0(), gamma, tau).unwrap()
}

fn indices(p: &StabilityProfile) -> std::ops::Range<usize> {
    0..p.length().finite().unwrap() as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn monotone_dominance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weak = common::random_profile(&mut rng, 10);
        let strong = dominating(&mut rng, &weak);
        for q in 0..=Q_MAX {
            for r in indices(&weak) {
                if verdict(&weak, q, r).unwrap().kind == VerdictKind::Isomorphism {
                    prop_assert_eq!(verdict(&strong, q, r).unwrap().kind, VerdictKind::Isomorphism, "q={} r={}", q, r);
                }
                prop_assert!(margin(&strong, q, r).unwrap().value >= margin(&weak, q, r).unwrap().value);
            }
        }
    }

    #[test]
    fn isomorphisms_propagate_down(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_profile(&mut rng, 10);
        for q in 1..=Q_MAX {
            for r in indices(&p) {
                if verdict(&p, q, r).unwrap().kind == VerdictKind::Isomorphism {
                    prop_assert_eq!(verdict(&p, q - 1, r).unwrap().kind, VerdictKind::Isomorphism);
                }
            }
        }
    }

    #[test]
    fn lemma_consequences_hold(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_profile(&mut rng, 12);
        for q in 0..=Q_MAX {
            for r in indices(&p) {
                let rep = check_lemma_combinatorics(&p, q, r).unwrap();
                prop_assert!(rep.passed, "{:?}", rep);
            }
        }
    }

    #[test]
    fn all_infinite_profiles_have_infinite_duals(big_r in 1usize..=12, q0 in 1usize..=3) {
        let p = StabilityProfile::new(big_r, q0, vec![PosInf; big_r + 1], vec![PosInf; big_r + 1]).unwrap();
        for q in 0..=Q_MAX {
            for r in 0..big_r {
                let evaluable = r as i64 + 1 - 2 * (q as i64 - q0 as i64) >= 0;
                let g = dual_gamma(&p, q, r).unwrap();
                let t = dual_tau(&p, q, r).unwrap();
                if evaluable {
                    prop_assert_eq!((g, t), (PosInf, PosInf));
                } else {
                    prop_assert_eq!((g, t), (NegInf, NegInf));
                }
            }
        }
    }
}

#[test]
fn gl_closed_form_at_every_evaluable_point() {
    let p = StabilityProfile::with_rules(
        PosInf,
        2,
        vec![PosInf],
        vec![Finite(0)],
        ExtensionRule::Infinity,
        ExtensionRule::Affine { slope: 1, offset: 0 },
    )
    .unwrap();
    for q in 2..=8i64 {
        for r in 0..=30i64 {
            if r + 1 - 2 * (q - 2) >= 0 {
                assert_eq!(margin(&p, q as usize, r as usize).unwrap().value, Finite(r - (2 * q - 2)));
            }
        }
    }
    let t = stability_table(&p, 8);
    for q in 2..=8 {
        assert_eq!(t.r_of_q()[q], Some(2 * q - 2));
    }
}

#[test]
fn sl_last_link_follows_the_definition() {
    // τ(r) = r below R and τ(R) = R − 1; at r = R − 1 the minimum is
    // min{R − 2q + 2, R − q − 1} − 1, which is R − 2q + 1 once q ≥ 3.
    for big_r in 4..=14usize {
        let mut tau: Vec<ExtInt> = (0..big_r as i64).map(Finite).collect();
        tau.push(Finite(big_r as i64 - 1));
        let p = StabilityProfile::new(big_r, 2, vec![PosInf; big_r + 1], tau).unwrap();
        for q in 3..=6i64 {
            let r = big_r as i64 - 1;
            if r + 1 - 2 * (q - 2) < 0 {
                continue;
            }
            let want = (big_r as i64 - 2 * q + 2).min(big_r as i64 - q - 1) - 1;
            assert_eq!(margin(&p, q as usize, r as usize).unwrap().value, Finite(want), "R={big_r} q={q}");
            assert_eq!(want, big_r as i64 - 2 * q + 1);
        }
    }
}
