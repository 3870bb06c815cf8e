//! The Yang R-matrix `R(u) = u − P` and its twisted partner `R̃(u) = u − Q`.

use rustc_hash::FxHashMap;

use super::{encode, rational_ring, TensorElement, TensorRing};
use crate::error::Result;
use crate::index::IndexSet;
use crate::rational::Rat;
use crate::ring::Ring;

/// Polynomial in `u` with rational tensor coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct UPolyTensor {
    pub set: IndexSet,
    pub sites: usize,
    pub coeffs: Vec<TensorElement<Rat>>,
}

impl UPolyTensor {
    /// Evaluate at `u = x` in any ring.
    pub fn at<R: Ring>(&self, ring: &R, x: &R::Elem) -> TensorElement<R::Elem> {
        let tr = TensorRing::new(ring.clone(), self.set, self.sites);
        let mut out = tr.empty();
        let mut power = ring.one();
        for c in &self.coeffs {
            for (k, v) in c.entries() {
                tr.add_entry(&mut out, *k, ring.scale(v, &power));
            }
            power = ring.mul(&power, x);
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn at_rat(&self, x: &Rat) -> TensorElement<Rat> {
        self.at(&crate::ring::Rationals, x)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// The flip `P = Σ E_ij ⊗ E_ji`.
pub fn flip(set: IndexSet) -> TensorElement<Rat> {
    let n = set.dim();
    let mut entries = FxHashMap::default();
    for i in 0..n {
        for j in 0..n {
            entries.insert((encode(n, &[i, j]), encode(n, &[j, i])), Rat::one());
        }
    }
    TensorElement::from_map(set, 2, entries)
}

/// `Q = Σ E_ij′ ⊗ E_ji = Σ ε_ij E_{-j,-i} ⊗ E_ji`.
pub fn qmat(set: IndexSet) -> Result<TensorElement<Rat>> {
    set.require_signed()?;
    let n = set.dim();
    let mut entries = FxHashMap::default();
    for i in 0..n {
        for j in 0..n {
            let (s, a, b) = set.prime(i, j);
            entries.insert((encode(n, &[a, j]), encode(n, &[b, i])), Rat::from(s));
        }
    }
    Ok(TensorElement::from_map(set, 2, entries))
}

pub fn yang_r(set: IndexSet) -> UPolyTensor {
    let r = rational_ring(set, 2);
    UPolyTensor { set, sites: 2, coeffs: vec![r.neg(&flip(set)), r.identity()] }
}

pub fn r_tilde(set: IndexSet) -> Result<UPolyTensor> {
    let r = rational_ring(set, 2);
    Ok(UPolyTensor { set, sites: 2, coeffs: vec![r.neg(&qmat(set)?), r.identity()] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MPoly, PolyRing};

    type P = MPoly<u8>;

    fn poly_ring() -> PolyRing<u8> {
        PolyRing::default()
    }

    #[test]
    fn scalar_case() {
        let r = yang_r(IndexSet::gl(1));
        let u = P::var(0);
        let val = r.at(&poly_ring(), &u);
        assert_eq!(val.len(), 1);
        assert_eq!(val.get(0, 0).unwrap(), &u.sub(&P::one()));
    }

    #[test]
    fn unitarity_and_q_support() {
        for n in 2..=3 {
            let set = IndexSet::gl(n);
            let pr = poly_ring();
            let u = P::var(0);
            let r = yang_r(set);
            let tr = TensorRing::new(pr, set, 2);
            let lhs = tr.mul(&r.at(&pr, &u), &r.at(&pr, &u.neg()));
            let rhs = tr.scalar(P::one().sub(&u.mul(&u)));
            assert_eq!(lhs, rhs);
        }
        let set = IndexSet::so(3);
        let q = qmat(set).unwrap();
        for ((r, _), _) in q.sorted_entries() {
            let d = q.decode(r);
            assert_eq!(d[1], set.neg(d[0]));
        }
        assert!(r_tilde(IndexSet::gl(2)).is_err());
    }
}
