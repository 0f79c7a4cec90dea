#![allow(dead_code)]

use qss_core::exactla::Rational;
use qss_core::extint::ExtInt::{self, Finite, NegInf, PosInf};
use qss_core::quillen::StabilityProfile;
use qss_core::{DoubleComplex, RationalMatrix};
use rand::seq::SliceRandom;
use rand::Rng;

const MAX_CELL: usize = 3;
const COEFFS: [i64; 4] = [-2, -1, 1, 2];

type Arrow = ((usize, usize), usize, (usize, usize), usize, i64);

/// A random first-quadrant double complex on a grid of at most `max_grid`
/// columns and rows with cells of dimension at most 3 and entries in
/// `{−2, …, 2}`. It is a direct sum of staircases and commuting squares,
/// permuted and re-signed cell by cell.
pub fn random_double_complex<R: Rng>(rng: &mut R, max_grid: usize) -> DoubleComplex {
    let cols = rng.gen_range(1..=max_grid);
    let rows = rng.gen_range(1..=max_grid);
    let mut dims = vec![vec![0usize; rows]; cols];
    let mut arrows: Vec<Arrow> = Vec::new();
    let pieces = rng.gen_range(0..=2 * cols * rows);
    for _ in 0..pieces {
        let (cells, edges) = if rng.gen_bool(0.2) { square(rng, cols, rows) } else { staircase(rng, cols, rows) };
        if cells.is_empty() || cells.iter().any(|&(p, q)| dims[p][q] >= MAX_CELL) {
            continue;
        }
        let slots: Vec<usize> = cells.iter().map(|&(p, q)| dims[p][q]).collect();
        for &(p, q) in &cells {
            dims[p][q] += 1;
        }
        for (a, b, c) in edges {
            arrows.push((cells[a], slots[a], cells[b], slots[b], c));
        }
    }
    // Signed permutation of every cell basis.
    let frames: Vec<Vec<(Vec<usize>, Vec<i64>)>> = dims
        .iter()
        .map(|col| {
            col.iter()
                .map(|&d| {
                    let mut perm: Vec<usize> = (0..d).collect();
                    perm.shuffle(rng);
                    (perm, (0..d).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect())
                })
                .collect()
        })
        .collect();
    let mut horiz: Vec<Vec<Vec<(usize, usize, Rational)>>> = vec![vec![Vec::new(); rows]; cols.saturating_sub(1)];
    let mut vert: Vec<Vec<Vec<(usize, usize, Rational)>>> = vec![vec![Vec::new(); rows.saturating_sub(1)]; cols];
    for ((p, q), i, (p2, q2), j, c) in arrows {
        let (pi, si) = (&frames[p][q].0, &frames[p][q].1);
        let (pj, sj) = (&frames[p2][q2].0, &frames[p2][q2].1);
        let v = Rational::from_integer((c * si[i] * sj[j]).into());
        let entry = (pj[j], pi[i], v);
        if p2 == p + 1 {
            horiz[p][q].push(entry);
        } else {
            vert[p][q].push(entry);
        }
    }
    let dim = |p: usize, q: usize| dims[p][q];
    let horiz = horiz
        .into_iter()
        .enumerate()
        .map(|(p, col)| {
            col.into_iter()
                .enumerate()
                .map(|(q, t)| RationalMatrix::from_triplets(dim(p + 1, q), dim(p, q), t).unwrap())
                .collect()
        })
        .collect();
    let vert = vert
        .into_iter()
        .enumerate()
        .map(|(p, col)| {
            col.into_iter()
                .enumerate()
                .map(|(q, t)| RationalMatrix::from_triplets(dim(p, q + 1), dim(p, q), t).unwrap())
                .collect()
        })
        .collect();
    DoubleComplex::new(dims.clone(), horiz, vert).expect("pieces commute")
}

/// Cells `s_{2m} = (p+m, q−m)`, `s_{2m+1} = (p+m+1, q−m)` with `s_{2m} → s_{2m+1}`
/// horizontal and `s_{2m+2} → s_{2m+1}` vertical; a random contiguous run.
fn staircase<R: Rng>(rng: &mut R, cols: usize, rows: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize, i64)>) {
    let p = rng.gen_range(0..cols) as i64;
    let q = rng.gen_range(0..rows) as i64;
    let len = rng.gen_range(1..=5);
    let start = rng.gen_range(0..2);
    let mut cells = Vec::new();
    for k in start..start + len {
        let m = k / 2;
        let (cp, cq) = if k % 2 == 0 { (p + m, q - m) } else { (p + m + 1, q - m) };
        if cp >= cols as i64 || cq < 0 {
            break;
        }
        cells.push((cp as usize, cq as usize));
    }
    let mut edges = Vec::new();
    for i in 0..cells.len().saturating_sub(1) {
        let c = *COEFFS.choose(rng).unwrap();
        // Even global index: horizontal out of cell i; odd: vertical out of cell i+1.
        if (start + i as i64) % 2 == 0 {
            edges.push((i, i + 1, c));
        } else {
            edges.push((i + 1, i, c));
        }
    }
    (cells, edges)
}

/// `(p,q) → (p+1,q)`, `(p,q) → (p,q+1)` and onward to `(p+1,q+1)` with
/// `h'·v = v'·h`.
fn square<R: Rng>(rng: &mut R, cols: usize, rows: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize, i64)>) {
    if cols < 2 || rows < 2 {
        return (Vec::new(), Vec::new());
    }
    let p = rng.gen_range(0..cols - 1);
    let q = rng.gen_range(0..rows - 1);
    loop {
        let (h, v, v2) = (*COEFFS.choose(rng).unwrap(), *COEFFS.choose(rng).unwrap(), *COEFFS.choose(rng).unwrap());
        // h2 · v = v2 · h
        if (v2 * h) % v == 0 && COEFFS.contains(&(v2 * h / v)) {
            let h2 = v2 * h / v;
            let cells = vec![(p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)];
            return (cells, vec![(0, 1, h), (0, 2, v), (1, 3, v2), (2, 3, h2)]);
        }
    }
}

pub fn random_ext<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> ExtInt {
    match rng.gen_range(0..10) {
        0 => NegInf,
        1 => PosInf,
        _ => Finite(rng.gen_range(lo..=hi)),
    }
}

/// A finite profile with `R ∈ 1..=max_r`, `q₀ ∈ 1..=3` and full tables.
pub fn random_profile<R: Rng>(rng: &mut R, max_r: usize) -> StabilityProfile {
    let big_r = rng.gen_range(1..=max_r);
    let q0 = rng.gen_range(1..=3);
    let hi = big_r as i64 + 2;
    let gamma = (0..=big_r).map(|_| random_ext(rng, -1, hi)).collect();
    let tau = (0..=big_r).map(|_| random_ext(rng, -1, hi)).collect();
    StabilityProfile::new(big_r, q0, gamma, tau).expect("full tables")
}
