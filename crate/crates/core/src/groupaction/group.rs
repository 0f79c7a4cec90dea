use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::GroupError;

/// Default ceiling on the order of an enumerated group.
pub const DEFAULT_GROUP_CAP: usize = 5040;

// Orders above this keep no multiplication table; products are composed from
// the permutations instead.
const TABLE_LIMIT: usize = 1024;

/// A finite group with every element enumerated as an id `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    identity: usize,
    inverse: Vec<usize>,
    table: Option<Vec<u32>>,
    perms: Option<Vec<Vec<usize>>>,
    perm_index: BTreeMap<Vec<usize>, usize>,
}

impl FiniteGroup {
    /// The group with one element.
    pub fn trivial() -> Self {
        FiniteGroup::symmetric(0).expect("order 1")
    }

    /// Group from a full multiplication table `table[a][b] = a·b`.
    ///
    /// Associativity is checked on all triples up to order 64 and on a fixed
    /// spread of triples above that.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: a, len: row.len(), order: n });
            }
            if let Some(b) = row.iter().position(|&c| c >= n) {
                return Err(GroupError::EntryOutOfRange { a, b, value: row[b] });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![0; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or(GroupError::MissingInverse { element: a })?;
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            // Every pair (a, b) against a few spread-out c.
            for a in 0..n {
                for b in 0..n {
                    for k in 0..4 {
                        let c = (a * 31 + b * 17 + k * (n / 4 + 1)) % n;
                        if !assoc(a, b, c) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }
        let flat = table.iter().flatten().map(|&c| c as u32).collect();
        Ok(FiniteGroup {
            order: n,
            identity,
            inverse,
            table: Some(flat),
            perms: None,
            perm_index: BTreeMap::new(),
        })
    }

    /// Closure of permutation generators of `{0..degree}` in image notation
    /// (`g[x]` is the image of `x`). Elements are numbered in lexicographic
    /// order of their image arrays, so the identity is id 0. Products compose
    /// right to left: `(g·h)(x) = g(h(x))`.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<Self, GroupError> {
        for (index, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&x| x < degree && !core::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(GroupError::BadPermutation { index });
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut found: BTreeMap<Vec<usize>, ()> = BTreeMap::from([(id.clone(), ())]);
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for g in generators {
                let gh: Vec<usize> = h.iter().map(|&x| g[x]).collect();
                if !found.contains_key(&gh) {
                    if found.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    found.insert(gh.clone(), ());
                    queue.push_back(gh);
                }
            }
        }
        Ok(Self::from_sorted_perms(degree, found.into_keys().collect()))
    }

    /// The full symmetric group on `{0..n}`, in lexicographic order.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        let order: usize = (1..=n).product();
        if order > DEFAULT_GROUP_CAP {
            return Err(GroupError::CapExceeded { cap: DEFAULT_GROUP_CAP });
        }
        let mut perms = Vec::with_capacity(order);
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            if !next_permutation(&mut cur) {
                break;
            }
        }
        Ok(Self::from_sorted_perms(n, perms))
    }

    fn from_sorted_perms(degree: usize, perms: Vec<Vec<usize>>) -> Self {
        let n = perms.len();
        let perm_index: BTreeMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let inverse = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; degree];
                for (x, &y) in p.iter().enumerate() {
                    inv[y] = x;
                }
                perm_index[&inv]
            })
            .collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for g in &perms {
                for h in &perms {
                    let gh: Vec<usize> = h.iter().map(|&x| g[x]).collect();
                    t.push(perm_index[&gh] as u32);
                }
            }
            t
        });
        FiniteGroup { order: n, identity: 0, inverse, table, perms: Some(perms), perm_index }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order + b] as usize,
            None => {
                let p = self.perms.as_ref().expect("table-free groups are permutation groups");
                let ab: Vec<usize> = p[b].iter().map(|&x| p[a][x]).collect();
                self.perm_index[&ab]
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a · b · a⁻¹`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    /// Degree of the underlying permutation representation, if any.
    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].len())
    }

    pub fn permutation(&self, g: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[g].as_slice())
    }

    pub fn find_permutation(&self, perm: &[usize]) -> Option<usize> {
        self.perm_index.get(perm).copied()
    }

    /// The subgroup on `elements`, renumbered `0..k` in the given order.
    pub fn subgroup(&self, elements: &[usize]) -> Result<FiniteGroup, GroupError> {
        let index: BTreeMap<usize, usize> = elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let table = elements
            .iter()
            .map(|&a| {
                elements
                    .iter()
                    .map(|&b| index.get(&self.mul(a, b)).copied().ok_or(GroupError::NotClosed { a, b }))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteGroup::from_table(table)
    }

    /// Full multiplication table as nested rows.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.elements().map(|a| self.elements().map(|b| self.mul(a, b)).collect()).collect()
    }

    /// First pair `(a, b)` with `f(a·b) ≠ f(a)·f(b)`, if any.
    pub fn homomorphism_violation(&self, target: &FiniteGroup, f: &[usize]) -> Option<(usize, usize)> {
        if f.len() != self.order || f.iter().any(|&x| x >= target.order()) {
            return Some((self.order, self.order));
        }
        for a in self.elements() {
            for b in self.elements() {
                if f[self.mul(a, b)] != target.mul(f[a], f[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Whether `f` is an injective homomorphism into `target`.
    pub fn is_embedding(&self, target: &FiniteGroup, f: &[usize]) -> bool {
        if self.homomorphism_violation(target, f).is_some() {
            return false;
        }
        let mut seen = vec![false; target.order()];
        f.iter().all(|&x| !core::mem::replace(&mut seen[x], true))
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Embedding of a permutation group of degree `k` into one of degree
/// `k' ≥ k` by fixing the extra points; `None` if some extended
/// permutation is missing from `big`.
pub fn standard_embedding(small: &FiniteGroup, big: &FiniteGroup) -> Option<Vec<usize>> {
    let (ds, db) = (small.degree()?, big.degree()?);
    if ds > db {
        return None;
    }
    small
        .elements()
        .map(|g| {
            let mut p = small.permutation(g)?.to_vec();
            p.extend(ds..db);
            big.find_permutation(&p)
        })
        .collect()
}
