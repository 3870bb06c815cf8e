//! Sparse elements of `End(C^N)^{⊗n}` with coefficients in a ring.
//!
//! A multi-index `(a_1,…,a_n)` of positions is packed into a `u64` in base `N`
//! with site 1 as the most significant digit.

pub mod antisym;
pub mod laurent;
pub mod rmatrix;

use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{invalid, Result};
use crate::index::IndexSet;
use crate::rational::Rat;
use crate::ring::{Rationals, Ring};
use crate::series::TruncatedSeries;

pub use antisym::{
    antisymmetrizer, in_fk, ordered_antisymmetrizer, resolve_h_orientation, Orientation, OrientationPair, H_ORIENTATION,
};
pub use laurent::{BiLaurent, LaurentRing};
pub use rmatrix::{flip, qmat, r_tilde, yang_r, UPolyTensor};

pub type Key = (u64, u64);

#[derive(Clone, PartialEq)]
pub struct TensorElement<E> {
    sites: usize,
    set: IndexSet,
    entries: FxHashMap<Key, E>,
}

impl<E: fmt::Debug> fmt::Debug for TensorElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.entries.keys().collect();
        keys.sort();
        write!(f, "Tensor[{} sites over {}]{{", self.sites, self.set)?;
        for k in keys {
            let (r, c) = (self.decode(k.0), self.decode(k.1));
            write!(f, " {r:?}->{c:?}: {:?};", self.entries[k])?;
        }
        write!(f, " }}")
    }
}

impl<E> TensorElement<E> {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn set(&self) -> IndexSet {
        self.set
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Key, &E)> {
        self.entries.iter()
    }

    pub fn get(&self, row: u64, col: u64) -> Option<&E> {
        self.entries.get(&(row, col))
    }

    /// Entry at position multi-indices.
    pub fn at(&self, row: &[usize], col: &[usize]) -> Option<&E> {
        self.entries.get(&(self.encode(row), self.encode(col)))
    }

    pub fn encode(&self, idx: &[usize]) -> u64 {
        debug_assert_eq!(idx.len(), self.sites);
        encode(self.set.dim(), idx)
    }

    pub fn decode(&self, key: u64) -> Vec<usize> {
        decode(self.set.dim(), self.sites, key)
    }

    /// Entries in key order.
    pub fn sorted_entries(&self) -> Vec<(Key, &E)> {
        let mut v: Vec<_> = self.entries.iter().map(|(k, e)| (*k, e)).collect();
        v.sort_by_key(|x| x.0);
        v
    }

    pub fn into_entries(self) -> FxHashMap<Key, E> {
        self.entries
    }

    pub fn from_map(set: IndexSet, sites: usize, entries: FxHashMap<Key, E>) -> Self {
        TensorElement { sites, set, entries }
    }
}

pub fn encode(n: usize, idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |acc, &d| acc * n as u64 + d as u64)
}

pub fn decode(n: usize, sites: usize, mut key: u64) -> Vec<usize> {
    let mut out = vec![0; sites];
    for s in (0..sites).rev() {
        out[s] = (key % n as u64) as usize;
        key /= n as u64;
    }
    out
}

/// All multi-indices of length `len` over `0..n`, in lexicographic order.
pub fn all_indices(n: usize, len: usize) -> Vec<Vec<usize>> {
    let total = (n as u64).pow(len as u32);
    (0..total).map(|k| decode(n, len, k)).collect()
}

/// `End(C^N)^{⊗sites}` over a coefficient ring.
#[derive(Clone, Debug)]
pub struct TensorRing<R> {
    pub base: R,
    pub set: IndexSet,
    pub sites: usize,
}

impl<R: Ring> TensorRing<R> {
    pub fn new(base: R, set: IndexSet, sites: usize) -> Self {
        TensorRing { base, set, sites }
    }

    pub fn with_sites(&self, sites: usize) -> Self {
        TensorRing { base: self.base.clone(), set: self.set, sites }
    }

    pub fn empty(&self) -> TensorElement<R::Elem> {
        TensorElement { sites: self.sites, set: self.set, entries: FxHashMap::default() }
    }

    /// Accumulate `e` into entry `key`, dropping zeros.
    pub fn add_entry(&self, t: &mut TensorElement<R::Elem>, key: Key, e: R::Elem) {
        use std::collections::hash_map::Entry;
        match t.entries.entry(key) {
            Entry::Occupied(mut o) => {
                self.base.add_assign(o.get_mut(), &e);
                if self.base.is_zero(o.get()) {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !self.base.is_zero(&e) {
                    v.insert(e);
                }
            }
        }
    }

    pub fn scalar(&self, c: R::Elem) -> TensorElement<R::Elem> {
        let mut t = self.empty();
        if self.base.is_zero(&c) {
            return t;
        }
        let n = self.set.dim() as u64;
        for k in 0..n.pow(self.sites as u32) {
            t.entries.insert((k, k), c.clone());
        }
        t
    }

    pub fn identity(&self) -> TensorElement<R::Elem> {
        self.scalar(self.base.one())
    }

    /// `E_ij` on a single site (positions).
    pub fn matrix_unit(&self, i: usize, j: usize) -> TensorElement<R::Elem> {
        let mut t = self.with_sites(1).empty();
        t.entries.insert((i as u64, j as u64), self.base.one());
        t
    }

    /// Lift a rational tensor coefficientwise.
    pub fn lift(&self, x: &TensorElement<Rat>) -> TensorElement<R::Elem> {
        TensorElement {
            sites: x.sites,
            set: x.set,
            entries: x.entries.iter().map(|(k, c)| (*k, self.base.from_rat(c))).collect(),
        }
    }

    pub fn map<S: Ring, F>(&self, x: &TensorElement<R::Elem>, target: &S, mut f: F) -> TensorElement<S::Elem>
    where
        F: FnMut(&R::Elem) -> S::Elem,
    {
        let mut entries = FxHashMap::default();
        for (k, e) in &x.entries {
            let y = f(e);
            if !target.is_zero(&y) {
                entries.insert(*k, y);
            }
        }
        TensorElement { sites: x.sites, set: x.set, entries }
    }

    pub fn mul_tensors(&self, a: &TensorElement<R::Elem>, b: &TensorElement<R::Elem>) -> TensorElement<R::Elem> {
        assert_eq!(a.sites, b.sites, "site counts differ");
        let mut by_row: FxHashMap<u64, Vec<(u64, &R::Elem)>> = FxHashMap::default();
        for (&(r, c), e) in &b.entries {
            by_row.entry(r).or_default().push((c, e));
        }
        let mut acc: FxHashMap<Key, R::Elem> = FxHashMap::default();
        for (&(r, m), x) in &a.entries {
            if let Some(row) = by_row.get(&m) {
                for &(c, y) in row {
                    let slot = acc.entry((r, c)).or_insert_with(|| self.base.zero());
                    self.base.mul_add_assign(slot, x, y);
                }
            }
        }
        acc.retain(|_, e| !self.base.is_zero(e));
        TensorElement { sites: a.sites, set: a.set, entries: acc }
    }

    /// Product of a sequence, left to right.
    pub fn product<'a, I>(&self, factors: I) -> TensorElement<R::Elem>
    where
        I: IntoIterator<Item = &'a TensorElement<R::Elem>>,
        R::Elem: 'a,
    {
        let mut it = factors.into_iter();
        let Some(first) = it.next() else {
            return self.identity();
        };
        let mut acc = first.clone();
        for f in it {
            acc = self.mul_tensors(&acc, f);
        }
        acc
    }

    pub fn add_tensors(&self, a: &TensorElement<R::Elem>, b: &TensorElement<R::Elem>) -> TensorElement<R::Elem> {
        let mut out = a.clone();
        for (k, e) in &b.entries {
            self.add_entry(&mut out, *k, e.clone());
        }
        out
    }

    pub fn neg_tensor(&self, a: &TensorElement<R::Elem>) -> TensorElement<R::Elem> {
        TensorElement {
            sites: a.sites,
            set: a.set,
            entries: a.entries.iter().map(|(k, e)| (*k, self.base.neg(e))).collect(),
        }
    }

    pub fn sub_tensors(&self, a: &TensorElement<R::Elem>, b: &TensorElement<R::Elem>) -> TensorElement<R::Elem> {
        self.add_tensors(a, &self.neg_tensor(b))
    }

    pub fn scale_tensor(&self, c: &Rat, a: &TensorElement<R::Elem>) -> TensorElement<R::Elem> {
        self.map(a, &self.base, |e| self.base.scale(c, e))
    }

    /// Multiply every entry on the left by a ring element.
    pub fn left_scalar(&self, c: &R::Elem, a: &TensorElement<R::Elem>) -> TensorElement<R::Elem> {
        self.map(a, &self.base, |e| self.base.mul(c, e))
    }

    /// `ι_{s_1}⊗…⊗ι_{s_m}(x)` in `n` sites; positions are 1-based and increasing.
    pub fn embed(&self, x: &TensorElement<R::Elem>, positions: &[usize], n: usize) -> Result<TensorElement<R::Elem>> {
        if positions.len() != x.sites {
            return invalid(format!("{} positions for a {}-site tensor", positions.len(), x.sites));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("embedding positions must be strictly increasing");
        }
        if positions.iter().any(|&p| p == 0 || p > n) {
            return invalid(format!("embedding position outside 1..={n}"));
        }
        let dim = self.set.dim();
        let others: Vec<usize> = (1..=n).filter(|s| !positions.contains(s)).collect();
        let fill = all_indices(dim, others.len());
        let mut out = TensorElement { sites: n, set: x.set, entries: FxHashMap::default() };
        let mut row = vec![0usize; n];
        let mut col = vec![0usize; n];
        for (&(r, c), e) in &x.entries {
            let (rd, cd) = (x.decode(r), x.decode(c));
            for (t, &p) in positions.iter().enumerate() {
                row[p - 1] = rd[t];
                col[p - 1] = cd[t];
            }
            for f in &fill {
                for (t, &p) in others.iter().enumerate() {
                    row[p - 1] = f[t];
                    col[p - 1] = f[t];
                }
                out.entries.insert((encode(dim, &row), encode(dim, &col)), e.clone());
            }
        }
        Ok(out)
    }

    /// Full trace to a ring element.
    pub fn trace(&self, x: &TensorElement<R::Elem>) -> R::Elem {
        let mut keys: Vec<_> = x.entries.keys().filter(|(r, c)| r == c).collect();
        keys.sort();
        let mut acc = self.base.zero();
        for k in keys {
            self.base.add_assign(&mut acc, &x.entries[k]);
        }
        acc
    }

    /// Trace over the given 1-based sites; the rest keep their order.
    pub fn partial_trace(&self, x: &TensorElement<R::Elem>, traced: &[usize]) -> Result<TensorElement<R::Elem>> {
        if traced.iter().any(|&s| s == 0 || s > x.sites) {
            return invalid("traced site out of range");
        }
        let dim = self.set.dim();
        let keep: Vec<usize> = (1..=x.sites).filter(|s| !traced.contains(s)).collect();
        let mut out = TensorElement { sites: keep.len(), set: x.set, entries: FxHashMap::default() };
        for (&(r, c), e) in &x.entries {
            let (rd, cd) = (x.decode(r), x.decode(c));
            if traced.iter().any(|&s| rd[s - 1] != cd[s - 1]) {
                continue;
            }
            let rk: Vec<usize> = keep.iter().map(|&s| rd[s - 1]).collect();
            let ck: Vec<usize> = keep.iter().map(|&s| cd[s - 1]).collect();
            self.add_entry(&mut out, (encode(dim, &rk), encode(dim, &ck)), e.clone());
        }
        Ok(out)
    }

    /// Prime transposition `E_ij ↦ ε_ij E_{-j,-i}` on one 1-based site.
    pub fn site_prime(&self, x: &TensorElement<R::Elem>, site: usize) -> Result<TensorElement<R::Elem>> {
        self.set.require_signed()?;
        if site == 0 || site > x.sites {
            return invalid("site out of range");
        }
        let dim = self.set.dim();
        let mut out = TensorElement { sites: x.sites, set: x.set, entries: FxHashMap::default() };
        for (&(r, c), e) in &x.entries {
            let (mut rd, mut cd) = (x.decode(r), x.decode(c));
            let (a, b) = (rd[site - 1], cd[site - 1]);
            let (sign, na, nb) = self.set.prime(a, b);
            rd[site - 1] = na;
            cd[site - 1] = nb;
            let v = if sign < 0 { self.base.neg(e) } else { e.clone() };
            out.entries.insert((encode(dim, &rd), encode(dim, &cd)), v);
        }
        Ok(out)
    }

    /// `X_{s_1…s_k}` for an element given on `k` sites, with entries mapped into `n` sites.
    pub fn is_zero_tensor(&self, x: &TensorElement<R::Elem>) -> bool {
        x.entries.values().all(|e| self.base.is_zero(e))
    }

    /// JSON debug dump with multi-index keys in labels.
    pub fn debug_json<F>(&self, x: &TensorElement<R::Elem>, mut enc: F) -> serde_json::Value
    where
        F: FnMut(&R::Elem) -> serde_json::Value,
    {
        let rows: Vec<serde_json::Value> = x
            .sorted_entries()
            .into_iter()
            .map(|((r, c), e)| {
                let lab = |k: u64| -> Vec<i32> { x.decode(k).into_iter().map(|p| self.set.label(p)).collect() };
                serde_json::json!({ "row": lab(r), "col": lab(c), "value": enc(e) })
            })
            .collect();
        serde_json::json!({ "sites": x.sites, "entries": rows })
    }
}

/// Series-valued tensors and tensor-valued series.
impl<R: Ring> TensorRing<R> {
    /// `tr(a·b)` without forming the product.
    pub fn trace_mul(&self, a: &TensorElement<R::Elem>, b: &TensorElement<R::Elem>) -> R::Elem {
        let mut keys: Vec<_> = a.entries.keys().filter(|k| b.entries.contains_key(&(k.1, k.0))).collect();
        keys.sort();
        let mut acc = self.base.zero();
        for k in keys {
            self.base.mul_add_assign(&mut acc, &a.entries[k], &b.entries[&(k.1, k.0)]);
        }
        acc
    }

    /// Reorganize a tensor with series entries as a series of tensors.
    pub fn to_series(&self, x: &TensorElement<TruncatedSeries<R::Elem>>, d: usize) -> TruncatedSeries<TensorElement<R::Elem>> {
        let mut coeffs: Vec<TensorElement<R::Elem>> =
            (0..=d).map(|_| TensorElement { sites: x.sites, set: x.set, entries: FxHashMap::default() }).collect();
        for (k, s) in &x.entries {
            for (r, c) in s.coeffs().iter().enumerate().take(d + 1) {
                if !self.base.is_zero(c) {
                    coeffs[r].entries.insert(*k, c.clone());
                }
            }
        }
        TruncatedSeries::from_coeffs(coeffs)
    }

    /// Inverse of [`TensorRing::to_series`].
    pub fn from_series(&self, s: &TruncatedSeries<TensorElement<R::Elem>>) -> TensorElement<TruncatedSeries<R::Elem>> {
        let d = s.trunc();
        let (sites, set) = (s.coeff(0).sites, s.coeff(0).set);
        let mut grouped: FxHashMap<Key, Vec<R::Elem>> = FxHashMap::default();
        for (r, t) in s.coeffs().iter().enumerate() {
            for (k, e) in &t.entries {
                grouped.entry(*k).or_insert_with(|| vec![self.base.zero(); d + 1])[r] = e.clone();
            }
        }
        let entries = grouped.into_iter().map(|(k, v)| (k, TruncatedSeries::from_coeffs(v))).collect();
        TensorElement { sites, set, entries }
    }
}

/// Re-expand every series entry at `u ↦ a·u + b`.
pub fn substitute_entries<R: Ring>(
    ring: &R,
    x: &TensorElement<TruncatedSeries<R::Elem>>,
    a: &Rat,
    b: &Rat,
) -> Result<TensorElement<TruncatedSeries<R::Elem>>> {
    let mut entries = FxHashMap::default();
    for (k, s) in &x.entries {
        entries.insert(*k, s.substitute_affine(a, b, ring)?);
    }
    Ok(TensorElement { sites: x.sites, set: x.set, entries })
}

impl<R: Ring> Ring for TensorRing<R> {
    type Elem = TensorElement<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.empty()
    }
    fn one(&self) -> Self::Elem {
        self.identity()
    }
    fn from_rat(&self, c: &Rat) -> Self::Elem {
        self.scalar(self.base.from_rat(c))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.is_zero_tensor(a)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add_tensors(a, b)
    }
    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        for (k, e) in &b.entries {
            self.add_entry(acc, *k, e.clone());
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.neg_tensor(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul_tensors(a, b)
    }
    fn scale(&self, c: &Rat, a: &Self::Elem) -> Self::Elem {
        self.scale_tensor(c, a)
    }
}

/// Rational tensors, the common case for R-matrices and projectors.
pub fn rational_ring(set: IndexSet, sites: usize) -> TensorRing<Rationals> {
    TensorRing::new(Rationals, set, sites)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_unit_and_involution() {
        let set = IndexSet::gl(2);
        let r = rational_ring(set, 1);
        let e12 = r.matrix_unit(0, 1);
        let x = r.embed(&e12, &[2], 2).unwrap();
        assert_eq!(x.len(), 2);
        for a in 0..2 {
            assert_eq!(x.at(&[a, 0], &[a, 1]), Some(&Rat::one()));
        }
        let r3 = rational_ring(set, 3);
        let p13 = r3.embed(&flip(set), &[1, 3], 3).unwrap();
        assert_eq!(r3.mul(&p13, &p13), r3.identity());
        assert!(r3.embed(&flip(set), &[3, 1], 3).is_err());
        assert!(r3.embed(&flip(set), &[1, 4], 3).is_err());
        let id1 = r.identity();
        assert_eq!(r.embed(&id1, &[2], 3).unwrap(), r3.identity());
    }

    #[test]
    fn traces() {
        let set = IndexSet::gl(3);
        let r = rational_ring(set, 2);
        assert_eq!(r.trace(&r.identity()), Rat::from(9));
        let r1 = rational_ring(set, 1);
        assert_eq!(r1.trace(&r1.matrix_unit(1, 1)), Rat::one());
        assert_eq!(r1.trace(&r1.matrix_unit(0, 1)), Rat::zero());
        // tr_2(P) = id
        assert_eq!(r.partial_trace(&flip(set), &[2]).unwrap(), r1.identity());
    }

    #[test]
    fn prime_examples() {
        let so = IndexSet::so(4);
        let r = rational_ring(so, 1);
        let (p1, p2) = (so.pos(1).unwrap(), so.pos(2).unwrap());
        let e = r.site_prime(&r.matrix_unit(p1, p2), 1).unwrap();
        assert_eq!(e, r.matrix_unit(so.pos(-2).unwrap(), so.pos(-1).unwrap()));
        let sp = IndexSet::sp(2);
        let r = rational_ring(sp, 1);
        let (m1, q1) = (sp.pos(-1).unwrap(), sp.pos(1).unwrap());
        let e = r.site_prime(&r.matrix_unit(q1, m1), 1).unwrap();
        assert_eq!(e, r.neg(&r.matrix_unit(q1, m1)));
        let gl = rational_ring(IndexSet::gl(2), 1);
        assert!(gl.site_prime(&gl.identity(), 1).is_err());
    }

    #[test]
    fn prime_is_involution() {
        let set = IndexSet::sp(4);
        let r = rational_ring(set, 2);
        let q = qmat(set).unwrap();
        for s in 1..=2 {
            let twice = r.site_prime(&r.site_prime(&q, s).unwrap(), s).unwrap();
            assert_eq!(twice, q);
        }
        // one-sided prime of the flip is Q
        assert_eq!(r.site_prime(&flip(set), 1).unwrap(), q);
    }
}
