//! Truncated formal series `Σ_{s≤D} c_s u^{-s}` over an arbitrary ring.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::rational::{binomial, Rat};
use crate::ring::{Rationals, Ring};

/// Default truncation order.
pub const DEFAULT_TRUNC: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> TruncatedSeries<E> {
    /// From explicit coefficients `c_0..c_D`; missing ones must be supplied by the caller.
    pub fn from_coeffs(coeffs: Vec<E>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, s: usize) -> &E {
        &self.coeffs[s]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn map<F, T: Clone>(&self, f: F) -> TruncatedSeries<T>
    where
        F: FnMut(&E) -> T,
    {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Keep only orders `≤ d`.
    pub fn truncate(&self, d: usize) -> Self {
        assert!(d <= self.trunc(), "cannot claim accuracy beyond the stored order");
        TruncatedSeries { coeffs: self.coeffs[..=d].to_vec() }
    }
}

impl<E: Clone> TruncatedSeries<E> {
    pub fn constant<R: Ring<Elem = E>>(ring: &R, c: E, d: usize) -> Self {
        let mut coeffs = vec![ring.zero(); d + 1];
        coeffs[0] = c;
        TruncatedSeries { coeffs }
    }

    pub fn zero<R: Ring<Elem = E>>(ring: &R, d: usize) -> Self {
        TruncatedSeries { coeffs: vec![ring.zero(); d + 1] }
    }

    pub fn one<R: Ring<Elem = E>>(ring: &R, d: usize) -> Self {
        Self::constant(ring, ring.one(), d)
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.coeffs.iter().all(|c| ring.is_zero(c))
    }

    fn check_trunc(&self, other: &Self) {
        assert_eq!(self.trunc(), other.trunc(), "series truncation orders differ");
    }

    pub fn add<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        self.check_trunc(other);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        self.check_trunc(other);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| ring.sub(a, b)).collect(),
        }
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.map(|c| ring.neg(c))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, c: &Rat, ring: &R) -> Self {
        self.map(|x| ring.scale(c, x))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        self.check_trunc(other);
        let d = self.trunc();
        let mut coeffs = vec![ring.zero(); d + 1];
        for i in 0..=d {
            if ring.is_zero(&self.coeffs[i]) {
                continue;
            }
            for j in 0..=d - i {
                if ring.is_zero(&other.coeffs[j]) {
                    continue;
                }
                ring.mul_add_assign(&mut coeffs[i + j], &self.coeffs[i], &other.coeffs[j]);
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiply every coefficient on the left by a ring element.
    pub fn left_mul<R: Ring<Elem = E>>(&self, a: &E, ring: &R) -> Self {
        self.map(|c| ring.mul(a, c))
    }

    /// `s(a·u + b)` re-expanded in `u⁻¹`.
    ///
    /// Uses `(au+b)^{-r} = Σ_m C(r+m-1, m) (−b/a)^m a^{-r} u^{-r-m}`; the output
    /// coefficient at order `s` only involves input orders `≤ s`.
    pub fn substitute_affine<R: Ring<Elem = E>>(&self, a: &Rat, b: &Rat, ring: &R) -> Result<Self> {
        if a.is_zero() {
            return invalid("substitute_affine needs a ≠ 0");
        }
        let d = self.trunc();
        let ratio = -(b / a);
        let inv_a = a.recip();
        let mut coeffs = vec![ring.zero(); d + 1];
        coeffs[0] = self.coeffs[0].clone();
        for r in 1..=d {
            if ring.is_zero(&self.coeffs[r]) {
                continue;
            }
            let base = inv_a.pow(r as u32);
            for s in r..=d {
                let m = (s - r) as u64;
                let w = &(&base * &binomial(s as u64 - 1, m)) * &ratio.pow(m as u32);
                if w.is_zero() {
                    continue;
                }
                let term = ring.scale(&w, &self.coeffs[r]);
                ring.add_assign(&mut coeffs[s], &term);
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Right inverse `b` with `s·b = 1 + O(u^{-(D+1)})`; needs an invertible `c_0`.
    pub fn invert<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Self> {
        let b0 = ring.try_inverse(&self.coeffs[0]).ok_or(Error::SingularLeadingTerm)?;
        let d = self.trunc();
        let mut out: Vec<E> = Vec::with_capacity(d + 1);
        out.push(b0.clone());
        for m in 1..=d {
            let mut acc = ring.zero();
            for i in 1..=m {
                ring.mul_add_assign(&mut acc, &self.coeffs[i], &out[m - i]);
            }
            out.push(ring.neg(&ring.mul(&b0, &acc)));
        }
        Ok(TruncatedSeries { coeffs: out })
    }
}

/// Ring structure on series of a fixed truncation order.
#[derive(Clone, Debug)]
pub struct SeriesRing<R> {
    pub base: R,
    pub trunc: usize,
}

impl<R: Ring> SeriesRing<R> {
    pub fn new(base: R, trunc: usize) -> Self {
        SeriesRing { base, trunc }
    }

    /// `c_0 + c_1 u^{-1} + …` padded with zeros up to the truncation order.
    pub fn from_prefix(&self, prefix: Vec<R::Elem>) -> TruncatedSeries<R::Elem> {
        let mut coeffs = prefix;
        coeffs.truncate(self.trunc + 1);
        while coeffs.len() <= self.trunc {
            coeffs.push(self.base.zero());
        }
        TruncatedSeries { coeffs }
    }

    /// Lift a rational series coefficientwise.
    pub fn lift(&self, s: &TruncatedSeries<Rat>) -> TruncatedSeries<R::Elem> {
        s.truncate(self.trunc).map(|c| self.base.from_rat(c))
    }
}

impl<R: Ring> Ring for SeriesRing<R> {
    type Elem = TruncatedSeries<R::Elem>;

    fn zero(&self) -> Self::Elem {
        TruncatedSeries::zero(&self.base, self.trunc)
    }
    fn one(&self) -> Self::Elem {
        TruncatedSeries::one(&self.base, self.trunc)
    }
    fn from_rat(&self, c: &Rat) -> Self::Elem {
        TruncatedSeries::constant(&self.base, self.base.from_rat(c), self.trunc)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero(&self.base)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b, &self.base)
    }
    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        for (x, y) in acc.coeffs.iter_mut().zip(&b.coeffs) {
            self.base.add_assign(x, y);
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b, &self.base)
    }
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let d = self.trunc;
        for i in 0..=d {
            if self.base.is_zero(&a.coeffs[i]) {
                continue;
            }
            for j in 0..=d - i {
                if self.base.is_zero(&b.coeffs[j]) {
                    continue;
                }
                self.base.mul_add_assign(&mut acc.coeffs[i + j], &a.coeffs[i], &b.coeffs[j]);
            }
        }
    }
    fn scale(&self, c: &Rat, a: &Self::Elem) -> Self::Elem {
        a.scale(c, &self.base)
    }
    fn try_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.invert(&self.base).ok()
    }
}

/// Polynomial in `u` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<Rat>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1·u`.
    pub fn linear(c0: Rat, c1: Rat) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly(vec![]);
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::new(out)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }
}

/// A proper rational function `num/den` in `u`, expanded at `u = ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFactor {
    pub num: UPoly,
    pub den: UPoly,
}

impl RationalFactor {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        let Some(dd) = den.degree() else {
            return invalid("zero denominator");
        };
        if num.degree().is_some_and(|nd| nd > dd) {
            return invalid("numerator degree exceeds denominator degree");
        }
        Ok(RationalFactor { num, den })
    }

    pub fn constant(c: Rat) -> Self {
        RationalFactor { num: UPoly::constant(c), den: UPoly::constant(Rat::one()) }
    }

    /// `θ(u) = 1 + N/(1−2u)`.
    pub fn theta_sp(n: usize) -> Self {
        let num = UPoly::linear(Rat::from(n as i64 + 1), Rat::from(-2));
        let den = UPoly::linear(Rat::one(), Rat::from(-2));
        RationalFactor { num, den }
    }
}

/// Taylor expansion of `f` at `u = ∞` up to `u^{-D}`.
///
/// With `w = u⁻¹` and `δ = deg den`, `f = (w^δ num(1/w)) / (w^δ den(1/w))`,
/// a quotient of power series in `w` whose denominator has a nonzero constant term.
pub fn expand_rational(f: &RationalFactor, d: usize) -> Result<TruncatedSeries<Rat>> {
    let dd = match f.den.degree() {
        Some(x) => x,
        None => return invalid("zero denominator"),
    };
    if f.num.degree().is_some_and(|nd| nd > dd) {
        return invalid("improper rational factor");
    }
    let rev = |p: &UPoly| -> Vec<Rat> { (0..=d).map(|s| if s <= dd { p.coeff(dd - s) } else { Rat::zero() }).collect() };
    let num = TruncatedSeries::from_coeffs(rev(&f.num));
    let den = TruncatedSeries::from_coeffs(rev(&f.den));
    let inv = den.invert(&Rationals)?;
    Ok(num.mul(&inv, &Rationals))
}

/// `{"trunc": D, "coeffs": [...]}` with a caller-supplied coefficient encoder.
pub fn series_json<E, F, T>(s: &TruncatedSeries<E>, f: F) -> serde_json::Value
where
    E: Clone,
    F: FnMut(&E) -> T,
    T: Serialize,
{
    #[derive(Serialize)]
    struct Out<T> {
        trunc: usize,
        coeffs: Vec<T>,
    }
    serde_json::to_value(Out { trunc: s.trunc(), coeffs: s.coeffs.iter().map(f).collect() })
        .expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn rs(v: &[(i64, i64)]) -> TruncatedSeries<Rat> {
        TruncatedSeries::from_coeffs(v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn shift_geometric() {
        // 1 + u^{-1} under u → u − 1
        let s = rs(&[(1, 1), (1, 1), (0, 1), (0, 1), (0, 1)]);
        let t = s.substitute_affine(&q(1, 1), &q(-1, 1), &Rationals).unwrap();
        assert_eq!(t, rs(&[(1, 1), (1, 1), (1, 1), (1, 1), (1, 1)]));
    }

    #[test]
    fn reflect_shift() {
        // u^{-1} under u → 3 − u
        let s = rs(&[(0, 1), (1, 1), (0, 1), (0, 1)]);
        let t = s.substitute_affine(&q(-1, 1), &q(3, 1), &Rationals).unwrap();
        assert_eq!(t, rs(&[(0, 1), (-1, 1), (-3, 1), (-9, 1)]));
        assert!(s.substitute_affine(&Rat::zero(), &q(3, 1), &Rationals).is_err());
    }

    #[test]
    fn rational_examples() {
        let c = expand_rational(&RationalFactor::constant(q(5, 1)), 3).unwrap();
        assert_eq!(c, rs(&[(5, 1), (0, 1), (0, 1), (0, 1)]));
        let f = RationalFactor::new(UPoly::constant(q(1, 1)), UPoly::linear(q(3, 1), q(-2, 1))).unwrap();
        assert_eq!(expand_rational(&f, 3).unwrap(), rs(&[(0, 1), (-1, 2), (-3, 4), (-9, 8)]));
        let theta = expand_rational(&RationalFactor::theta_sp(2), 3).unwrap();
        assert_eq!(theta, rs(&[(1, 1), (-1, 1), (-1, 2), (-1, 4)]));
        let bad = RationalFactor::new(UPoly::linear(q(0, 1), q(1, 1)), UPoly::constant(q(1, 1)));
        assert!(bad.is_err());
    }

    #[test]
    fn invert_geometric() {
        let s = rs(&[(1, 1), (3, 1), (0, 1), (0, 1)]);
        assert_eq!(s.invert(&Rationals).unwrap(), rs(&[(1, 1), (-3, 1), (9, 1), (-27, 1)]));
        assert!(rs(&[(0, 1), (1, 1)]).invert(&Rationals).is_err());
    }

    fn arb_series(d: usize) -> impl Strategy<Value = TruncatedSeries<Rat>> {
        proptest::collection::vec((-9i64..=9, 1i64..=5), d + 1)
            .prop_map(|v| TruncatedSeries::from_coeffs(v.into_iter().map(|(n, m)| q(n, m)).collect()))
    }

    fn arb_affine() -> impl Strategy<Value = (Rat, Rat)> {
        ((-4i64..=4).prop_filter("a≠0", |a| *a != 0), 1i64..=3, -5i64..=5, 1i64..=3)
            .prop_map(|(a, ad, b, bd)| (q(a, ad), q(b, bd)))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(4), b in arb_series(4), c in arb_series(4)) {
            let r = Rationals;
            prop_assert_eq!(a.mul(&b, &r).mul(&c, &r), a.mul(&b.mul(&c, &r), &r));
            prop_assert_eq!(a.mul(&b.add(&c, &r), &r), a.mul(&b, &r).add(&a.mul(&c, &r), &r));
        }

        #[test]
        fn substitution_is_multiplicative(a in arb_series(4), b in arb_series(4), (x, y) in arb_affine()) {
            let r = Rationals;
            let lhs = a.mul(&b, &r).substitute_affine(&x, &y, &r).unwrap();
            let rhs = a.substitute_affine(&x, &y, &r).unwrap().mul(&b.substitute_affine(&x, &y, &r).unwrap(), &r);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn substitution_composes(a in arb_series(4), (a1, b1) in arb_affine(), (a2, b2) in arb_affine()) {
            let r = Rationals;
            let two = a.substitute_affine(&a1, &b1, &r).unwrap().substitute_affine(&a2, &b2, &r).unwrap();
            let one = a.substitute_affine(&(&a1 * &a2), &(&(&a1 * &b2) + &b1), &r).unwrap();
            prop_assert_eq!(two, one);
        }

        #[test]
        fn double_inverse(a in arb_series(4), c0 in 1i64..=4) {
            let r = Rationals;
            let mut v = a.into_coeffs();
            v[0] = q(c0, 1);
            let s = TruncatedSeries::from_coeffs(v);
            let inv = s.invert(&r).unwrap();
            prop_assert_eq!(s.mul(&inv, &r), TruncatedSeries::one(&r, 4));
            prop_assert_eq!(inv.invert(&r).unwrap(), s);
        }
    }
}
