//! Two-variable Laurent expansions in `u^{-1}, v^{-1}` with a total-order cutoff.
//!
//! Key `(a, b)` stands for `u^{-a} v^{-b}`; negative keys are positive powers.
//! Terms with `a + b > cutoff` are discarded after every operation, so a
//! product is exact in every coefficient with `a + b ≤ cutoff`.

use std::collections::BTreeMap;

use crate::rational::Rat;
use crate::ring::Ring;
use crate::series::TruncatedSeries;

pub type BiLaurent<E> = BTreeMap<(i32, i32), E>;

#[derive(Clone, Debug)]
pub struct LaurentRing<R> {
    pub base: R,
    pub cutoff: i32,
}

impl<R: Ring> LaurentRing<R> {
    pub fn new(base: R, cutoff: i32) -> Self {
        LaurentRing { base, cutoff }
    }

    fn put(&self, m: &mut BiLaurent<R::Elem>, k: (i32, i32), e: R::Elem) {
        if k.0 + k.1 > self.cutoff {
            return;
        }
        match m.get_mut(&k) {
            Some(slot) => {
                self.base.add_assign(slot, &e);
                if self.base.is_zero(slot) {
                    m.remove(&k);
                }
            }
            None => {
                if !self.base.is_zero(&e) {
                    m.insert(k, e);
                }
            }
        }
    }

    /// `c · u^{-a} v^{-b}`.
    pub fn term(&self, a: i32, b: i32, c: R::Elem) -> BiLaurent<R::Elem> {
        let mut m = BiLaurent::new();
        self.put(&mut m, (a, b), c);
        m
    }

    /// `c_u·u + c_v·v + c_0` with rational coefficients.
    pub fn linear(&self, cu: &Rat, cv: &Rat, c0: &Rat) -> BiLaurent<R::Elem> {
        let mut m = BiLaurent::new();
        self.put(&mut m, (-1, 0), self.base.from_rat(cu));
        self.put(&mut m, (0, -1), self.base.from_rat(cv));
        self.put(&mut m, (0, 0), self.base.from_rat(c0));
        m
    }

    /// A series in `u^{-1}` (when `in_u`) or in `v^{-1}`.
    pub fn from_series(&self, s: &TruncatedSeries<R::Elem>, in_u: bool) -> BiLaurent<R::Elem> {
        let mut m = BiLaurent::new();
        for (r, c) in s.coeffs().iter().enumerate() {
            let k = if in_u { (r as i32, 0) } else { (0, r as i32) };
            self.put(&mut m, k, c.clone());
        }
        m
    }

    /// Apply a coefficientwise map into another ring.
    pub fn map<S: Ring, F: FnMut(&R::Elem) -> S::Elem>(
        &self,
        x: &BiLaurent<R::Elem>,
        target: &LaurentRing<S>,
        mut f: F,
    ) -> BiLaurent<S::Elem> {
        let mut m = BiLaurent::new();
        for (k, e) in x {
            target.put(&mut m, *k, f(e));
        }
        m
    }

    /// Coefficients whose total order does not exceed `bound`.
    pub fn exact_part(&self, x: &BiLaurent<R::Elem>, bound: i32) -> BiLaurent<R::Elem> {
        x.iter().filter(|(k, _)| k.0 + k.1 <= bound).map(|(k, e)| (*k, e.clone())).collect()
    }
}

impl<R: Ring> Ring for LaurentRing<R> {
    type Elem = BiLaurent<R::Elem>;

    fn zero(&self) -> Self::Elem {
        BiLaurent::new()
    }
    fn one(&self) -> Self::Elem {
        self.term(0, 0, self.base.one())
    }
    fn from_rat(&self, c: &Rat) -> Self::Elem {
        self.term(0, 0, self.base.from_rat(c))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.values().all(|e| self.base.is_zero(e))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut m = a.clone();
        self.add_assign(&mut m, b);
        m
    }
    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        for (k, e) in b {
            self.put(acc, *k, e.clone());
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|(k, e)| (*k, self.base.neg(e))).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut m = BiLaurent::new();
        for (ka, ea) in a {
            for (kb, eb) in b {
                let k = (ka.0 + kb.0, ka.1 + kb.1);
                if k.0 + k.1 > self.cutoff {
                    continue;
                }
                self.put(&mut m, k, self.base.mul(ea, eb));
            }
        }
        m
    }
    fn scale(&self, c: &Rat, a: &Self::Elem) -> Self::Elem {
        let mut m = BiLaurent::new();
        for (k, e) in a {
            self.put(&mut m, *k, self.base.scale(c, e));
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rationals;

    #[test]
    fn products_and_cutoff() {
        let l = LaurentRing::new(Rationals, 2);
        let a = l.linear(&Rat::one(), &Rat::from(-1), &Rat::zero());
        let b = l.linear(&Rat::one(), &Rat::one(), &Rat::zero());
        let mut expect = l.term(-2, 0, Rat::one());
        expect = l.sub(&expect, &l.term(0, -2, Rat::one()));
        assert_eq!(l.mul(&a, &b), expect);
        let x = l.term(1, 1, Rat::one());
        assert!(l.is_zero(&l.mul(&x, &l.term(1, 0, Rat::one()))));
        assert_eq!(l.mul(&x, &a), l.sub(&l.term(0, 1, Rat::one()), &l.term(1, 0, Rat::one())));
    }
}
