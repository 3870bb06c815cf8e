//! Antisymmetrizers: the permutation sum and the ordered product of R-matrices.

use std::fmt;

use rustc_hash::FxHashMap;

use super::{encode, rational_ring, yang_r, TensorElement, TensorRing};
use crate::index::IndexSet;
use crate::rational::{factorial, Rat};
use crate::ring::Ring;

/// Arrangement of factors in an ordered product as the index increases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Factors placed left to right as the index increases.
    Increasing,
    /// Factors placed right to left as the index increases.
    Decreasing,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::Increasing, Orientation::Decreasing];

    pub fn order(self, range: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        let mut v: Vec<usize> = range.collect();
        if self == Orientation::Decreasing {
            v.reverse();
        }
        v
    }

    pub fn arrow(self) -> &'static str {
        match self {
            Orientation::Increasing => "right",
            Orientation::Decreasing => "left",
        }
    }
}

/// `(outer, inner)` orientation of a nested ordered product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrientationPair {
    pub outer: Orientation,
    pub inner: Orientation,
}

impl OrientationPair {
    pub fn all() -> Vec<OrientationPair> {
        let mut v = Vec::new();
        for outer in Orientation::BOTH {
            for inner in Orientation::BOTH {
                v.push(OrientationPair { outer, inner });
            }
        }
        v
    }
}

impl fmt::Display for OrientationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "outer={},inner={}", self.outer.arrow(), self.inner.arrow())
    }
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out.into_iter()
        .map(|p| {
            let mut inv = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            (p, if inv % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// All permutations of `0..k` with their signs, in lexicographic order.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    permutations(k)
}

/// `H_k = (1/k!) Σ_σ sgn σ · P_σ`; zero when `k > N`.
pub fn antisymmetrizer(k: usize, set: IndexSet) -> TensorElement<Rat> {
    let n = set.dim();
    let r = rational_ring(set, k);
    let mut out = r.empty();
    if k > n {
        return out;
    }
    let w = factorial(k as u64).recip();
    let perms = permutations(k);
    let mut col = vec![0usize; k];
    let mut row = vec![0usize; k];
    // Only columns with distinct entries survive.
    let mut used = vec![false; n];
    fn distinct(pos: usize, k: usize, n: usize, col: &mut [usize], used: &mut [bool], f: &mut dyn FnMut(&[usize])) {
        if pos == k {
            f(col);
            return;
        }
        for a in 0..n {
            if !used[a] {
                used[a] = true;
                col[pos] = a;
                distinct(pos + 1, k, n, col, used, f);
                used[a] = false;
            }
        }
    }
    let mut emit = |c: &[usize]| {
        for (p, s) in &perms {
            for i in 0..k {
                row[i] = c[p[i]];
            }
            let v = if *s > 0 { w.clone() } else { -&w };
            r.add_entry(&mut out, (encode(n, &row), encode(n, c)), v);
        }
    };
    distinct(0, k, n, &mut col, &mut used, &mut emit);
    out
}

/// `(k!(k−1)!…1!)^{-1} · Π_p (Π_{q>p} R_pq(q−p))` with the given arrangement.
pub fn ordered_antisymmetrizer(k: usize, set: IndexSet, orient: OrientationPair) -> TensorElement<Rat> {
    let r = rational_ring(set, k);
    if k <= 1 {
        return r.identity();
    }
    let rm = yang_r(set);
    let mut acc = r.identity();
    for p in orient.outer.order(1..=k - 1) {
        for q in orient.inner.order(p + 1..=k) {
            let f = rm.at_rat(&Rat::from((q - p) as i64));
            let e = r.embed(&f, &[p, q], k).expect("valid positions");
            acc = r.mul(&acc, &e);
        }
    }
    let mut norm = Rat::one();
    for j in 1..=k {
        norm *= &factorial(j as u64);
    }
    r.scale(&norm.recip(), &acc)
}

/// The reported convention for `H_k`; for `k ≥ 3` only this pair and its
/// mirror reproduce the permutation sum.
pub const H_ORIENTATION: OrientationPair =
    OrientationPair { outer: Orientation::Decreasing, inner: Orientation::Decreasing };

/// Orientations whose ordered product reproduces the permutation-sum projector.
pub fn resolve_h_orientation(k: usize, set: IndexSet) -> Vec<OrientationPair> {
    let oracle = antisymmetrizer(k, set);
    OrientationPair::all().into_iter().filter(|o| ordered_antisymmetrizer(k, set, *o) == oracle).collect()
}

/// The predicate `H X = H X H` defining the subalgebra `F_k`.
pub fn in_fk<R: Ring>(ring: &TensorRing<R>, h: &TensorElement<R::Elem>, x: &TensorElement<R::Elem>) -> bool {
    let hx = ring.mul(h, x);
    ring.mul(&hx, h) == hx
}

/// Rational tensor `h` lifted into the ring and multiplied on the left of `x`,
/// only touching rows where `h` is nonzero.
pub fn left_mul_rational<R: Ring>(ring: &TensorRing<R>, h: &TensorElement<Rat>, x: &TensorElement<R::Elem>) -> TensorElement<R::Elem> {
    let mut by_row: FxHashMap<u64, Vec<(u64, &R::Elem)>> = FxHashMap::default();
    for (&(r, c), e) in x.entries() {
        by_row.entry(r).or_default().push((c, e));
    }
    let mut out = ring.with_sites(x.sites()).empty();
    for (&(r, m), hv) in h.entries() {
        if let Some(row) = by_row.get(&m) {
            for &(c, e) in row {
                ring.add_entry(&mut out, (r, c), ring.base.scale(hv, e));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::binomial;

    #[test]
    fn small_cases() {
        let set = IndexSet::gl(2);
        let r1 = rational_ring(set, 1);
        assert_eq!(antisymmetrizer(1, set), r1.identity());
        let r2 = rational_ring(set, 2);
        let expect = r2.scale(&Rat::new(1, 2), &r2.sub(&r2.identity(), &super::super::flip(set)));
        assert_eq!(antisymmetrizer(2, set), expect);
        assert!(antisymmetrizer(3, set).is_empty());
    }

    #[test]
    fn projector_and_trace() {
        for n in 1..=4 {
            let set = IndexSet::gl(n);
            for k in 1..=n {
                let h = antisymmetrizer(k, set);
                let r = rational_ring(set, k);
                assert_eq!(r.mul(&h, &h), h);
                assert_eq!(r.trace(&h), binomial(n as u64, k as u64));
            }
        }
    }

    #[test]
    fn some_ordered_product_matches() {
        for n in 2..=3 {
            let set = IndexSet::gl(n);
            for k in 1..=n {
                assert!(!resolve_h_orientation(k, set).is_empty(), "N={n} k={k}");
            }
        }
    }
}
