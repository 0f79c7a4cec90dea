use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::{DoubleComplex, SpectralError};
use crate::exactla::{rank, Rational, RationalMatrix};
use crate::groupaction::{FiniteGroup, GroupAction};

/// Default cap on the dimension of a single cell.
pub const DEFAULT_CELL_BUDGET: usize = 20_000;

/// Invariant double complex `L^{p,q} = F(G^{p+1} × X_{q−1})^G` for
/// `p ≤ max_p`, `q ≤ max_q`, with `X_{−1}` a point.
///
/// An invariant function is stored by its values on the orbit
/// representatives `(e, g_1, …, g_p, y)`, indexed in mixed radix with `y`
/// fastest, so cell `(p, q)` has dimension `|G|^p · |X_{q−1}|`.
pub fn build_group_double_complex(
    action: &GroupAction,
    max_p: usize,
    max_q: usize,
    budget: usize,
) -> Result<DoubleComplex, SpectralError> {
    let g = action.group();
    let x = action.complex();
    let level = |q: usize| if q == 0 { 1 } else { x.level_size(q - 1) };
    let mut dims = vec![vec![0; max_q + 1]; max_p + 1];
    for (p, col) in dims.iter_mut().enumerate() {
        for (q, d) in col.iter_mut().enumerate() {
            let dim = u32::try_from(p)
                .ok()
                .and_then(|e| g.order().checked_pow(e))
                .and_then(|n| n.checked_mul(level(q)))
                .unwrap_or(usize::MAX);
            if dim > budget {
                return Err(SpectralError::BudgetExceeded { p, q, dim, budget });
            }
            *d = dim;
        }
    }
    let horiz = (0..max_p)
        .map(|p| {
            (0..=max_q)
                .map(|q| {
                    let act = |h: usize, y: usize| if q == 0 { y } else { action.act(q - 1, h, y) };
                    bar_differential(g, p, level(q), act)
                })
                .collect()
        })
        .collect();
    let vert = (0..=max_p)
        .map(|p| (0..max_q).map(|q| vertical_map(action, g.order().pow(p as u32), q)).collect())
        .collect();
    DoubleComplex::new(dims, horiz, vert)
}

/// `d_H f(g_0, …, g_{p+1}, y) = Σ (−1)^i f(…, ĝ_i, …, y)` between the
/// representative bases of columns `p` and `p + 1`. The `i = 0` term is moved
/// back to a representative by `g_1⁻¹`.
fn bar_differential(g: &FiniteGroup, p: usize, xs: usize, act: impl Fn(usize, usize) -> usize) -> RationalMatrix {
    let n = g.order();
    let src_dim = n.pow(p as u32) * xs;
    let tgt_dim = src_dim * n;
    let one = Rational::one();
    let mut triplets = Vec::with_capacity(tgt_dim * (p + 2));
    let mut digits = vec![0usize; p + 1];
    for row in 0..tgt_dim {
        let y = row % xs;
        let mut rest = row / xs;
        for d in digits.iter_mut().rev() {
            *d = rest % n;
            rest /= n;
        }
        // i = 0: drop g_0 = e and renormalise by g_1⁻¹.
        let h = g.inv(digits[0]);
        let mut col = 0;
        for &gi in &digits[1..] {
            col = col * n + g.mul(h, gi);
        }
        triplets.push((row, col * xs + act(h, y), one.clone()));
        for i in 1..=p + 1 {
            let mut col = 0;
            for (k, &gk) in digits.iter().enumerate() {
                if k + 1 != i {
                    col = col * n + gk;
                }
            }
            let sign = if i % 2 == 0 { one.clone() } else { -one.clone() };
            triplets.push((row, col * xs + y, sign));
        }
    }
    RationalMatrix::from_triplets(tgt_dim, src_dim, triplets).expect("indices in range")
}

/// `d_V` from row `q` to row `q + 1` in a column with `blocks` group tuples:
/// the augmented coboundary applied in the last coordinate.
fn vertical_map(action: &GroupAction, blocks: usize, q: usize) -> RationalMatrix {
    let x = action.complex();
    let src = if q == 0 { 1 } else { x.level_size(q - 1) };
    let tgt = x.level_size(q);
    let one = Rational::one();
    let mut triplets = Vec::new();
    for b in 0..blocks {
        for y in 0..tgt {
            if q == 0 {
                triplets.push((b * tgt + y, b, one.clone()));
            } else {
                for (i, &f) in x.faces_of(q, y).iter().enumerate() {
                    let sign = if i % 2 == 0 { one.clone() } else { -one.clone() };
                    triplets.push((b * tgt + y, b * src + f, sign));
                }
            }
        }
    }
    RationalMatrix::from_triplets(blocks * tgt, blocks * src, triplets).expect("indices in range")
}

/// `dim H^q(G; ℚ)` for `q = 0..=up_to` from the homogeneous bar complex
/// `F(G^{q+1})^G`.
pub fn group_cohomology_dims(g: &FiniteGroup, up_to: usize) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=up_to).map(|p| rank(&bar_differential(g, p, 1, |_, y| y))).collect();
    (0..=up_to)
        .map(|q| {
            let incoming = if q == 0 { 0 } else { ranks[q - 1] };
            g.order().pow(q as u32) - ranks[q] - incoming
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semisimplicial::{boundary_simplex, injective_words_complex};

    fn s3_words() -> GroupAction {
        GroupAction::on_vertex_labels(FiniteGroup::symmetric(3).unwrap(), injective_words_complex(3)).unwrap()
    }

    #[test]
    fn cell_dimensions() {
        let dc = build_group_double_complex(&s3_words(), 3, 3, DEFAULT_CELL_BUDGET).unwrap();
        let xs = [1, 3, 6, 6];
        for p in 0..=3 {
            for q in 0..=3 {
                assert_eq!(dc.dim(p, q), 6usize.pow(p as u32) * xs[q]);
            }
        }
    }

    #[test]
    fn trivial_group_rows_alternate() {
        let a = GroupAction::trivial(boundary_simplex(2));
        let dc = build_group_double_complex(&a, 3, 2, DEFAULT_CELL_BUDGET).unwrap();
        for q in 0..=2 {
            assert!(dc.horizontal(0, q).unwrap().is_zero());
            assert_eq!(dc.horizontal(1, q).unwrap(), &RationalMatrix::identity(dc.dim(1, q)));
            assert!(dc.horizontal(2, q).unwrap().is_zero());
            assert_eq!(dc.dim(0, q), dc.dim(3, q));
        }
    }

    #[test]
    fn budget_guard() {
        let err = build_group_double_complex(&s3_words(), 3, 3, 100).unwrap_err();
        assert_eq!(err, SpectralError::BudgetExceeded { p: 2, q: 1, dim: 108, budget: 100 });
    }

    #[test]
    fn finite_groups_have_no_rational_cohomology() {
        for n in 1..=3 {
            let g = FiniteGroup::symmetric(n).unwrap();
            assert_eq!(group_cohomology_dims(&g, 2), vec![1, 0, 0]);
        }
    }
}
