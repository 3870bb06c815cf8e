//! Sparse commutative polynomials over ℚ in an arbitrary ordered variable type.

use std::fmt;
use std::hash::Hash;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::rational::Rat;
use crate::ring::Ring;

/// Exponent vector: `(variable, power)` pairs, sorted by variable, powers > 0.
pub type PMono<V> = SmallVec<[(V, u32); 4]>;

pub trait PolyVar: Copy + Ord + Hash + fmt::Debug + Send + Sync {}
impl<T: Copy + Ord + Hash + fmt::Debug + Send + Sync> PolyVar for T {}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly<V: PolyVar> {
    terms: FxHashMap<PMono<V>, Rat>,
}

fn mono_mul<V: PolyVar>(a: &[(V, u32)], b: &[(V, u32)]) -> PMono<V> {
    let mut out = PMono::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl<V: PolyVar> Default for MPoly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: PolyVar> MPoly<V> {
    pub fn zero() -> Self {
        MPoly { terms: FxHashMap::default() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(PMono::new(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn var(v: V) -> Self {
        let mut p = Self::zero();
        p.terms.insert(smallvec::smallvec![(v, 1)], Rat::one());
        p
    }

    /// `c · Π v^e` from an unsorted exponent list.
    pub fn monomial(c: Rat, vars: &[(V, u32)]) -> Self {
        let mut m = PMono::new();
        for &(v, e) in vars {
            if e > 0 {
                m = mono_mul(&m, &[(v, e)]);
            }
        }
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMono<V>, &Rat)> {
        self.terms.iter()
    }

    /// Terms in a canonical order (by exponent vector).
    pub fn sorted_terms(&self) -> Vec<(PMono<V>, Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&PMono::new()).cloned().unwrap_or_default()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&PMono::new()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: PMono<V>, c: Rat) {
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), c * x)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        self.mul_add_into(other, &mut out);
        out
    }

    pub fn mul_add_into(&self, other: &Self, acc: &mut Self) {
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                acc.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().map(|x| x.1).sum()).max()
    }

    /// Degree in one variable; `None` for zero.
    pub fn degree_in(&self, v: V) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().find(|x| x.0 == v).map_or(0, |x| x.1))
            .max()
    }

    /// Variables that occur, sorted.
    pub fn vars(&self) -> Vec<V> {
        let mut vs: Vec<V> = self.terms.keys().flat_map(|m| m.iter().map(|x| x.0)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn derivative(&self, v: V) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|x| x.0 == v) {
                let e = m[pos].1;
                let mut m2 = m.clone();
                if e == 1 {
                    m2.remove(pos);
                } else {
                    m2[pos].1 = e - 1;
                }
                out.add_term(m2, c * &Rat::from(e as i64));
            }
        }
        out
    }

    /// Evaluate at a point given by a value function.
    pub fn eval<F: Fn(V) -> Rat>(&self, value: F) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.iter() {
                t *= &value(v).pow(e);
                if t.is_zero() {
                    break;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Replace every variable for which `image` returns `Some` by that polynomial.
    pub fn substitute<F>(&self, mut image: F) -> MPoly<V>
    where
        F: FnMut(V) -> Option<MPoly<V>>,
    {
        let mut cache: FxHashMap<V, MPoly<V>> = FxHashMap::default();
        let mut out = MPoly::<V>::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::<V>::constant(c.clone());
            for &(v, e) in m.iter() {
                let img = cache.entry(v).or_insert_with(|| image(v).unwrap_or_else(|| MPoly::var(v))).clone();
                t = t.mul(&img.pow(e));
                if t.is_zero() {
                    break;
                }
            }
            out.add_assign(&t);
        }
        out
    }

    /// Split off the exponent of `v`: `p = Σ_e coeffs[e] · v^e`.
    pub fn collect_in(&self, v: V) -> Vec<MPoly<V>> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = match rest.iter().position(|x| x.0 == v) {
                Some(p) => rest.remove(p).1 as usize,
                None => 0,
            };
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// Keep the terms whose monomial satisfies the predicate.
    pub fn filter_terms<F: Fn(&[(V, u32)]) -> bool>(&self, keep: F) -> Self {
        MPoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Apply a sign-and-rename map to every variable; `None` kills the term.
    pub fn rename<W: PolyVar, F>(&self, mut f: F) -> MPoly<W>
    where
        F: FnMut(V) -> Option<(W, Rat)>,
    {
        let mut out = MPoly::<W>::zero();
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono: PMono<W> = PMono::new();
            for &(v, e) in m.iter() {
                match f(v) {
                    Some((w, s)) => {
                        coeff *= &s.pow(e);
                        mono = mono_mul(&mono, &[(w, e)]);
                    }
                    None => continue 'terms,
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }
}

impl<V: PolyVar> fmt::Debug for MPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}")?;
            for (v, e) in m.iter() {
                if *e == 1 {
                    write!(f, "·{v:?}")?;
                } else {
                    write!(f, "·{v:?}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// `MPoly<V>` as a coefficient ring.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing<V>(std::marker::PhantomData<V>);

impl<V> Default for PolyRing<V> {
    fn default() -> Self {
        PolyRing(std::marker::PhantomData)
    }
}

impl<V: PolyVar> Ring for PolyRing<V> {
    type Elem = MPoly<V>;

    fn zero(&self) -> MPoly<V> {
        MPoly::zero()
    }
    fn one(&self) -> MPoly<V> {
        MPoly::one()
    }
    fn from_rat(&self, c: &Rat) -> MPoly<V> {
        MPoly::constant(c.clone())
    }
    fn is_zero(&self, a: &MPoly<V>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MPoly<V>, b: &MPoly<V>) -> MPoly<V> {
        a.add(b)
    }
    fn add_assign(&self, acc: &mut MPoly<V>, b: &MPoly<V>) {
        acc.add_assign(b);
    }
    fn neg(&self, a: &MPoly<V>) -> MPoly<V> {
        a.neg()
    }
    fn mul(&self, a: &MPoly<V>, b: &MPoly<V>) -> MPoly<V> {
        a.mul(b)
    }
    fn mul_add_assign(&self, acc: &mut MPoly<V>, a: &MPoly<V>, b: &MPoly<V>) {
        a.mul_add_into(b, acc);
    }
    fn scale(&self, c: &Rat, a: &MPoly<V>) -> MPoly<V> {
        a.scale(c)
    }
    fn try_inverse(&self, a: &MPoly<V>) -> Option<MPoly<V>> {
        a.as_constant().filter(|c| !c.is_zero()).map(|c| MPoly::constant(c.recip()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = MPoly<u8>;

    fn q(n: i64) -> Rat {
        Rat::from(n)
    }

    #[test]
    fn basic_arithmetic() {
        let x = P::var(0);
        let y = P::var(1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.eval(|v| if v == 0 { q(2) } else { q(3) }), q(25));
        assert_eq!(sq.derivative(0), x.scale(&q(2)).add(&y.scale(&q(2))));
        assert!(s.sub(&s).is_zero());
        let c = sq.collect_in(0);
        assert_eq!(c.len(), 3);
        assert_eq!(c[2], P::one());
    }

    #[test]
    fn substitution() {
        let x = P::var(0);
        let p = x.mul(&x).add(&P::var(1));
        let r = p.substitute(|v| (v == 0).then(|| P::var(1).add(&P::one())));
        // (y+1)^2 + y
        assert_eq!(r.eval(|_| q(2)), q(11));
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec((-5i64..=5, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|ts| {
            let mut p = P::zero();
            for (c, a, b, d) in ts {
                p.add_assign(&P::monomial(q(c), &[(0, a), (1, b), (2, d)]));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn leibniz(a in arb_poly(), b in arb_poly()) {
            let lhs = a.mul(&b).derivative(1);
            let rhs = a.derivative(1).mul(&b).add(&a.mul(&b.derivative(1)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(), x in -3i64..=3, y in -3i64..=3) {
            let pt = |v: u8| match v { 0 => q(x), 1 => q(y), _ => q(x - y) };
            prop_assert_eq!(a.mul(&b).eval(pt), &a.eval(pt) * &b.eval(pt));
        }
    }
}
