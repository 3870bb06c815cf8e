//! Free associative algebras over ℚ modulo a commutation rule, kept in PBW
//! normal form.
//!
//! A monomial is in normal form when its generators are non-decreasing in the
//! order `(level, row, col)`. Products are normalized by the recursion
//! `m·a·g = m·g·a + m·[a,g]` for `a > g`, memoized per `(monomial, generator)`.

mod rewrite;
mod rules;

use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use rustc_hash::{FxBuildHasher, FxHashMap};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{invalid, Error, Result};
use crate::index::IndexSet;
use crate::rational::Rat;
use crate::ring::Ring;

pub use rewrite::{normal_order_traced, Strategy};
pub use rules::{CommutationRule, GlRule, RuleTag, Word, YangianRule};

/// The symbol `T_ij^(level)` (or `E_ij` under the gl rule) on positions.
///
/// Field order fixes the canonical generator order: level first, then row, then column.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenIndex {
    pub level: u16,
    pub row: u8,
    pub col: u8,
}

impl GenIndex {
    pub const fn new(row: u8, col: u8, level: u16) -> Self {
        GenIndex { level, row, col }
    }
}

impl fmt::Debug for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}{}^({})", self.row, self.col, self.level)
    }
}

pub type Monomial = SmallVec<[GenIndex; 6]>;

/// Sum of levels.
pub fn monomial_degree(m: &[GenIndex]) -> u32 {
    m.iter().map(|g| g.level as u32).sum()
}

#[derive(Clone, PartialEq)]
pub struct AlgebraElement {
    tag: RuleTag,
    terms: FxHashMap<Monomial, Rat>,
}

impl AlgebraElement {
    pub fn tag(&self) -> RuleTag {
        self.tag
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[GenIndex]) -> Rat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms sorted by monomial, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        v
    }

    /// The scalar part if the element is a rational multiple of 1.
    pub fn as_scalar(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }

    /// Max over monomials of the sum of levels.
    pub fn filtration_degree(&self) -> Result<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).max().ok_or(Error::UndefinedDegree)
    }

    /// Exact JSON form with signed labels from `set`.
    pub fn to_json(&self, set: &IndexSet) -> serde_json::Value {
        let terms: Vec<JsonTerm> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| JsonTerm {
                monomial: m
                    .iter()
                    .map(|g| [set.label(g.row as usize), set.label(g.col as usize), g.level as i32])
                    .collect(),
                coeff: c,
            })
            .collect();
        serde_json::to_value(JsonElement { terms }).expect("serializable")
    }

    fn from_map(tag: RuleTag, mut terms: FxHashMap<Monomial, Rat>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        AlgebraElement { tag, terms }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .iter()
            .map(|(m, c)| {
                if m.is_empty() {
                    format!("{c:?}")
                } else {
                    let body: Vec<String> = m.iter().map(|g| format!("{g:?}")).collect();
                    format!("{c:?}·{}", body.join("·"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    monomial: Vec<[i32; 3]>,
    coeff: Rat,
}

#[derive(Serialize, Deserialize)]
struct JsonElement {
    terms: Vec<JsonTerm>,
}

type Expansion = Arc<Vec<(Monomial, Rat)>>;

struct Inner {
    rule: Box<dyn CommutationRule>,
    dim: usize,
    cache: DashMap<(Monomial, GenIndex), Expansion, FxBuildHasher>,
}

/// An algebra presented by generators `x_ij^(r)` on `dim` positions and a
/// commutation rule. Cloning is cheap and shares the normalization cache.
#[derive(Clone)]
pub struct Algebra {
    inner: Arc<Inner>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({:?}, dim={})", self.inner.rule.tag(), self.inner.dim)
    }
}

fn add_into(acc: &mut FxHashMap<Monomial, Rat>, m: Monomial, c: Rat) {
    use std::collections::hash_map::Entry;
    match acc.entry(m) {
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

impl Algebra {
    pub fn new(rule: Box<dyn CommutationRule>, dim: usize) -> Self {
        Algebra {
            inner: Arc::new(Inner { rule, dim, cache: DashMap::with_hasher(FxBuildHasher) }),
        }
    }

    /// The Yangian `Y(gl_N)` (on any index set of size `N`).
    pub fn yangian(dim: usize) -> Self {
        Self::new(Box::new(YangianRule), dim)
    }

    /// The enveloping algebra `U(gl_N)`.
    pub fn gl(dim: usize) -> Self {
        Self::new(Box::new(GlRule), dim)
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn tag(&self) -> RuleTag {
        self.inner.rule.tag()
    }

    pub fn rule(&self) -> &dyn CommutationRule {
        self.inner.rule.as_ref()
    }

    pub fn cache_len(&self) -> usize {
        self.inner.cache.len()
    }

    pub fn validate(&self, g: GenIndex) -> Result<()> {
        let d = self.inner.dim;
        if g.row as usize >= d || g.col as usize >= d {
            return invalid(format!("generator {g:?} outside index range 0..{d}"));
        }
        if g.level == 0 {
            return invalid("level-0 generators are scalars and never stored");
        }
        if let Some(max) = self.inner.rule.max_level() {
            if g.level > max {
                return invalid(format!("level {} exceeds {max} for this rule", g.level));
            }
        }
        Ok(())
    }

    /// The generator `x_ij^(r)` as an element.
    pub fn gen(&self, row: usize, col: usize, level: u16) -> AlgebraElement {
        let g = GenIndex::new(row as u8, col as u8, level);
        self.validate(g).expect("valid generator");
        self.monomial_element(SmallVec::from_slice(&[g]), Rat::one())
    }

    fn monomial_element(&self, m: Monomial, c: Rat) -> AlgebraElement {
        let mut terms = FxHashMap::default();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AlgebraElement { tag: self.tag(), terms }
    }

    /// PBW normal form of `coeff · w_1 ⋯ w_n`.
    pub fn normal_order(&self, word: &[GenIndex], coeff: &Rat) -> Result<AlgebraElement> {
        for &g in word {
            self.validate(g)?;
        }
        let mut acc = FxHashMap::default();
        for (m, c) in self.mul_word(&[], word) {
            add_into(&mut acc, m, &c * coeff);
        }
        Ok(AlgebraElement::from_map(self.tag(), acc))
    }

    /// Normal form of `m · g` for normal `m`.
    fn mul_gen(&self, m: &[GenIndex], g: GenIndex) -> Expansion {
        match m.last() {
            None => return Arc::new(vec![(SmallVec::from_slice(&[g]), Rat::one())]),
            Some(&a) if a <= g => {
                let mut out: Monomial = SmallVec::from_slice(m);
                out.push(g);
                return Arc::new(vec![(out, Rat::one())]);
            }
            _ => {}
        }
        let key = (Monomial::from_slice(m), g);
        if let Some(hit) = self.inner.cache.get(&key) {
            return hit.value().clone();
        }
        let (&a, prefix) = m.split_last().expect("non-empty");
        let mut acc: FxHashMap<Monomial, Rat> = FxHashMap::default();
        for (m1, c1) in self.mul_gen(prefix, g).iter() {
            for (m2, c2) in self.mul_gen(m1, a).iter() {
                add_into(&mut acc, m2.clone(), c1 * c2);
            }
        }
        for (word, c) in self.inner.rule.bracket(a, g) {
            for (m1, c1) in self.mul_word(prefix, &word) {
                add_into(&mut acc, m1, &c * &c1);
            }
        }
        let out: Expansion = Arc::new(acc.into_iter().collect());
        self.inner.cache.insert(key, out.clone());
        out
    }

    /// Normal form of `m · w` for normal `m` and an arbitrary word `w`.
    fn mul_word(&self, m: &[GenIndex], w: &[GenIndex]) -> Vec<(Monomial, Rat)> {
        let mut cur: Vec<(Monomial, Rat)> = vec![(Monomial::from_slice(m), Rat::one())];
        for &g in w {
            let mut next: FxHashMap<Monomial, Rat> = FxHashMap::default();
            for (m1, c1) in &cur {
                for (m2, c2) in self.mul_gen(m1, g).iter() {
                    add_into(&mut next, m2.clone(), c1 * c2);
                }
            }
            cur = next.into_iter().collect();
        }
        cur
    }

    fn mul_monomials(&self, a: &[GenIndex], b: &[GenIndex], acc: &mut FxHashMap<Monomial, Rat>, c: &Rat) {
        if let (Some(x), Some(y)) = (a.last(), b.first()) {
            if x > y {
                for (m, c1) in self.mul_word(a, b) {
                    add_into(acc, m, c * &c1);
                }
                return;
            }
        }
        let mut m = Monomial::from_slice(a);
        m.extend_from_slice(b);
        add_into(acc, m, c.clone());
    }

    fn check_tag(&self, a: &AlgebraElement) -> Result<()> {
        if a.tag != self.tag() {
            return invalid(format!("element of {:?} used in {:?}", a.tag, self.tag()));
        }
        Ok(())
    }

    /// `ab − ba` in normal form.
    pub fn commutator(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_tag(a)?;
        self.check_tag(b)?;
        let mut acc = FxHashMap::default();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let c = c1 * c2;
                self.mul_monomials(m1, m2, &mut acc, &c);
                self.mul_monomials(m2, m1, &mut acc, &-c);
            }
        }
        Ok(AlgebraElement::from_map(self.tag(), acc))
    }

    /// Rebuild an element from its JSON form.
    pub fn from_json(&self, v: &serde_json::Value, set: &IndexSet) -> Result<AlgebraElement> {
        let parsed: JsonElement = serde_json::from_value(v.clone())?;
        let mut out = self.zero();
        for t in parsed.terms {
            let mut word = Vec::with_capacity(t.monomial.len());
            for [r, c, l] in t.monomial {
                if !(1..=u16::MAX as i32).contains(&l) {
                    return invalid(format!("bad level {l}"));
                }
                word.push(GenIndex::new(set.pos(r)? as u8, set.pos(c)? as u8, l as u16));
            }
            let e = self.normal_order(&word, &t.coeff)?;
            self.add_assign(&mut out, &e);
        }
        Ok(out)
    }

    /// Apply a generator substitution `g ↦ image(g)` multiplicatively into `target`.
    pub fn substitute<F>(&self, a: &AlgebraElement, target: &Algebra, mut image: F) -> AlgebraElement
    where
        F: FnMut(GenIndex) -> AlgebraElement,
    {
        let mut memo: FxHashMap<GenIndex, AlgebraElement> = FxHashMap::default();
        let mut out = target.zero();
        for (m, c) in a.sorted_terms() {
            let mut prod = target.from_rat(&c);
            for g in m.iter() {
                let img = memo.entry(*g).or_insert_with(|| image(*g)).clone();
                prod = target.mul(&prod, &img);
                if prod.is_zero() {
                    break;
                }
            }
            target.add_assign(&mut out, &prod);
        }
        out
    }
}

impl Ring for Algebra {
    type Elem = AlgebraElement;

    fn zero(&self) -> AlgebraElement {
        AlgebraElement { tag: self.tag(), terms: FxHashMap::default() }
    }

    fn one(&self) -> AlgebraElement {
        self.monomial_element(Monomial::new(), Rat::one())
    }

    fn from_rat(&self, c: &Rat) -> AlgebraElement {
        self.monomial_element(Monomial::new(), c.clone())
    }

    fn is_zero(&self, a: &AlgebraElement) -> bool {
        a.terms.is_empty()
    }

    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }

    fn add_assign(&self, acc: &mut AlgebraElement, b: &AlgebraElement) {
        for (m, c) in &b.terms {
            add_into(&mut acc.terms, m.clone(), c.clone());
        }
    }

    fn neg(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { tag: a.tag, terms: a.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut acc = FxHashMap::default();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                self.mul_monomials(m1, m2, &mut acc, &(c1 * c2));
            }
        }
        AlgebraElement::from_map(self.tag(), acc)
    }

    fn mul_add_assign(&self, acc: &mut AlgebraElement, a: &AlgebraElement, b: &AlgebraElement) {
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                self.mul_monomials(m1, m2, &mut acc.terms, &(c1 * c2));
            }
        }
    }

    fn scale(&self, c: &Rat, a: &AlgebraElement) -> AlgebraElement {
        if c.is_zero() {
            return self.zero();
        }
        AlgebraElement { tag: a.tag, terms: a.terms.iter().map(|(m, x)| (m.clone(), c * x)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: u8, j: u8, r: u16) -> GenIndex {
        GenIndex::new(i - 1, j - 1, r)
    }

    #[test]
    fn reorders_first_level() {
        let y = Algebra::yangian(2);
        let got = y.normal_order(&[t(1, 2, 1), t(1, 1, 1)], &Rat::one()).unwrap();
        assert_eq!(got.coeff(&[t(1, 1, 1), t(1, 2, 1)]), Rat::one());
        assert_eq!(got.coeff(&[t(1, 2, 1)]), -Rat::one());
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn mixed_levels() {
        let y = Algebra::yangian(2);
        let got = y.normal_order(&[t(1, 2, 1), t(2, 1, 2)], &Rat::one()).unwrap();
        // level-1 generators sort before level-2 ones, so this word is already normal
        assert_eq!(got.len(), 1);
        let swapped = y.normal_order(&[t(2, 1, 2), t(1, 2, 1)], &Rat::one()).unwrap();
        let mut expect = y.normal_order(&[t(1, 2, 1), t(2, 1, 2)], &Rat::one()).unwrap();
        y.add_assign(&mut expect, &y.gen(1, 1, 2).clone());
        let neg = y.neg(&y.gen(0, 0, 2));
        y.add_assign(&mut expect, &neg);
        // T21^(2) T12^(1) = T12^(1) T21^(2) − [T12^(1), T21^(2)] = … − (T11^(2) − T22^(2))
        assert_eq!(swapped, expect);
    }

    #[test]
    fn gl_bracket() {
        let u = Algebra::gl(2);
        let c = u.commutator(&u.gen(0, 1, 1), &u.gen(1, 0, 1)).unwrap();
        let expect = u.sub(&u.gen(0, 0, 1), &u.gen(1, 1, 1));
        assert_eq!(c, expect);
    }

    #[test]
    fn mixed_rules_rejected() {
        let y = Algebra::yangian(2);
        let u = Algebra::gl(2);
        assert!(y.commutator(&y.gen(0, 0, 1), &u.gen(0, 0, 1)).is_err());
    }

    #[test]
    fn invalid_index() {
        let y = Algebra::yangian(2);
        assert!(y.normal_order(&[t(3, 1, 1)], &Rat::one()).is_err());
        assert!(y.normal_order(&[t(1, 1, 0)], &Rat::one()).is_err());
        assert!(Algebra::gl(2).normal_order(&[t(1, 1, 2)], &Rat::one()).is_err());
    }

    #[test]
    fn degrees() {
        let y = Algebra::yangian(2);
        assert_eq!(y.gen(0, 0, 3).filtration_degree().unwrap(), 3);
        assert_eq!(y.mul(&y.gen(0, 0, 1), &y.gen(1, 1, 2)).filtration_degree().unwrap(), 3);
        assert_eq!(y.one().filtration_degree().unwrap(), 0);
        assert!(y.zero().filtration_degree().is_err());
    }

    #[test]
    fn json_round_trip() {
        let set = IndexSet::so(3);
        let y = Algebra::yangian(3);
        let e = y.normal_order(&[t(3, 1, 2), t(1, 2, 1), t(2, 2, 1)], &Rat::new(-3, 4)).unwrap();
        let v = e.to_json(&set);
        assert_eq!(y.from_json(&v, &set).unwrap(), e);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"coeff\":\"-3/4\""));
    }
}
