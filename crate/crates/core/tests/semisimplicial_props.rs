use proptest::prelude::*;
use qss_core::semisimplicial::{boundary_simplex, full_simplex, injective_words_complex, product_complex};
use qss_core::SemiSimplicialComplex;

fn constructors() -> Vec<(String, SemiSimplicialComplex)> {
    let mut out = Vec::new();
    for n in 0..=5 {
        out.push((format!("words({n})"), injective_words_complex(n)));
        out.push((format!("boundary({n})"), boundary_simplex(n)));
        out.push((format!("full({n})"), full_simplex(n)));
    }
    for v in 1usize..=5 {
        for top in 0..=5 {
            if v.pow(top as u32 + 1) <= 4000 {
                out.push((format!("product({v},{top})"), product_complex(v, top).unwrap()));
            }
        }
    }
    out
}

#[test]
fn every_constructor_output_validates() {
    for (name, x) in constructors() {
        let r = x.validate();
        assert!(r.passed, "{name}: {:?}", r.issues);
    }
}

#[test]
fn augmented_differentials_square_to_zero() {
    for (name, x) in constructors() {
        let c = x.augmented_cochain_complex().unwrap();
        for (k, pair) in c.differentials().windows(2).enumerate() {
            assert!(pair[1].mul(&pair[0]).unwrap().is_zero(), "{name}: d∘d ≠ 0 after term {k}");
        }
    }
}

#[test]
fn product_complex_is_contractible_through_its_top() {
    let x = product_complex(2, 3).unwrap();
    let dims = x.augmented_cochain_complex().unwrap().cohomology_dims();
    // Only the cut-off top level may carry cohomology.
    assert!(dims[..3].iter().all(|&d| d == 0), "{dims:?}");
}

fn pick(xs: &[(String, SemiSimplicialComplex)], i: usize) -> &SemiSimplicialComplex {
    &xs[i % xs.len()].1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn face_relation_is_transitive_and_level_decreasing(which in any::<usize>(), picks in prop::collection::vec(any::<usize>(), 6)) {
        let xs = constructors();
        let x = pick(&xs, which);
        let Some(top) = x.top_level() else { return Ok(()) };
        let (la, lb, lc) = {
            let mut l = [picks[0] % (top + 1), picks[1] % (top + 1), picks[2] % (top + 1)];
            l.sort();
            (l[0], l[1], l[2])
        };
        let a = picks[3] % x.level_size(la);
        let b = picks[4] % x.level_size(lb);
        let c = picks[5] % x.level_size(lc);
        if x.is_face(la, a, lb, b) && x.is_face(lb, b, lc, c) {
            prop_assert!(x.is_face(la, a, lc, c));
        }
        // Strict: nothing is a face of itself or of something at a lower level.
        prop_assert!(!x.is_face(lb, b, lb, b));
        if la < lb {
            prop_assert!(!x.is_face(lb, b, la, a));
        }
        // Every iterated face is a face.
        let mut s = c;
        for (step, level) in (lb..lc).rev().enumerate() {
            s = x.face(level + 1, s, (picks[step % 6]) % (level + 2));
            prop_assert!(x.is_face(level, s, lc, c));
        }
    }
}
