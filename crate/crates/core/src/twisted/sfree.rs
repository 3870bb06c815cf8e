//! Free words in the symbols `S_ij^(r)` and their expansion into `Y(gl_N)`.

use std::fmt;

use dashmap::DashMap;
use rustc_hash::{FxBuildHasher, FxHashMap};
use smallvec::SmallVec;

use crate::algebra::{Algebra, AlgebraElement, GenIndex};
use crate::error::{invalid, Result};
use crate::index::IndexSet;
use crate::rational::Rat;
use crate::ring::Ring;

/// A product of `S` symbols; `GenIndex` is reused for `S_ij^(r)`.
pub type SWord = SmallVec<[GenIndex; 4]>;

#[derive(Clone, PartialEq, Default)]
pub struct SElement {
    terms: FxHashMap<SWord, Rat>,
}

impl SElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SWord, &Rat)> {
        self.terms.iter()
    }

    pub fn sorted_terms(&self) -> Vec<(SWord, Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn as_scalar(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&SWord::new()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, w: SWord, c: Rat) {
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
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

    /// JSON: `{"terms":[{"word":[[i,j,r],…],"coeff":"p/q"}]}` with signed labels.
    pub fn to_json(&self, set: &IndexSet) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(w, c)| {
                let word: Vec<[i64; 3]> = w
                    .iter()
                    .map(|g| [set.label(g.row as usize) as i64, set.label(g.col as usize) as i64, g.level as i64])
                    .collect();
                serde_json::json!({ "word": word, "coeff": c.to_string() })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value, set: &IndexSet) -> Result<SElement> {
        let mut out = SElement::default();
        let Some(terms) = v.get("terms").and_then(|t| t.as_array()) else {
            return invalid("S-element JSON needs a terms array");
        };
        for t in terms {
            let c: Rat = t["coeff"].as_str().unwrap_or("").parse()?;
            let mut w = SWord::new();
            for g in t["word"].as_array().into_iter().flatten() {
                let a = g.as_array().filter(|a| a.len() == 3);
                let Some(a) = a else { return invalid("S-word entries are [i,j,r]") };
                let num = |x: &serde_json::Value| x.as_i64().ok_or_else(|| crate::Error::Parse("integer".into()));
                let (i, j, r) = (num(&a[0])?, num(&a[1])?, num(&a[2])?);
                if r < 1 {
                    return invalid("S-symbol levels start at 1");
                }
                w.push(GenIndex::new(set.pos(i as i32)? as u8, set.pos(j as i32)? as u8, r as u16));
            }
            out.add_term(w, c);
        }
        Ok(out)
    }
}

impl fmt::Debug for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(w, c)| {
                let s: Vec<String> = w.iter().map(|g| format!("S{}{}^({})", g.row, g.col, g.level)).collect();
                if s.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}·{}", s.join("·"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The free associative algebra on the `S` symbols of an index set.
#[derive(Clone, Copy, Debug)]
pub struct FreeS {
    pub set: IndexSet,
}

impl FreeS {
    pub fn new(set: IndexSet) -> Self {
        FreeS { set }
    }

    /// `S_ij^(r)`; `r = 0` gives `δ_ij`.
    pub fn gen(&self, i: usize, j: usize, r: u16) -> SElement {
        let mut e = SElement::default();
        if r == 0 {
            if i == j {
                e.add_term(SWord::new(), Rat::one());
            }
        } else {
            e.add_term(SmallVec::from_slice(&[GenIndex::new(i as u8, j as u8, r)]), Rat::one());
        }
        e
    }

    /// Apply a substitution of every symbol into some ring, multiplicatively.
    pub fn substitute<R: Ring, F>(&self, a: &SElement, target: &R, mut image: F) -> R::Elem
    where
        F: FnMut(GenIndex) -> R::Elem,
    {
        let mut memo: FxHashMap<GenIndex, R::Elem> = FxHashMap::default();
        let mut out = target.zero();
        for (w, c) in a.sorted_terms() {
            let mut prod = target.from_rat(&c);
            for g in w.iter() {
                let img = memo.entry(*g).or_insert_with(|| image(*g)).clone();
                prod = target.mul(&prod, &img);
                if target.is_zero(&prod) {
                    break;
                }
            }
            target.add_assign(&mut out, &prod);
        }
        out
    }
}

impl Ring for FreeS {
    type Elem = SElement;

    fn zero(&self) -> SElement {
        SElement::default()
    }
    fn one(&self) -> SElement {
        self.from_rat(&Rat::one())
    }
    fn from_rat(&self, c: &Rat) -> SElement {
        let mut e = SElement::default();
        e.add_term(SWord::new(), c.clone());
        e
    }
    fn is_zero(&self, a: &SElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &SElement, b: &SElement) -> SElement {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }
    fn add_assign(&self, acc: &mut SElement, b: &SElement) {
        for (w, c) in &b.terms {
            acc.add_term(w.clone(), c.clone());
        }
    }
    fn neg(&self, a: &SElement) -> SElement {
        SElement { terms: a.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
    fn mul(&self, a: &SElement, b: &SElement) -> SElement {
        let mut out = SElement::default();
        self.mul_add_assign(&mut out, a, b);
        out
    }
    fn mul_add_assign(&self, acc: &mut SElement, a: &SElement, b: &SElement) {
        for (w1, c1) in &a.terms {
            for (w2, c2) in &b.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                acc.add_term(w, c1 * c2);
            }
        }
    }
    fn scale(&self, c: &Rat, a: &SElement) -> SElement {
        if c.is_zero() {
            return SElement::default();
        }
        SElement { terms: a.terms.iter().map(|(w, x)| (w.clone(), c * x)).collect() }
    }
}

/// `S_ij^(r) ↦ Σ_{a+b=r} Σ_k ε_kj (−1)^b T_ik^(a) T_{-j,-k}^(b)` into `Y(gl_N)`.
#[derive(Clone, Debug)]
pub struct SExpander {
    alg: Algebra,
    set: IndexSet,
    cache: std::sync::Arc<DashMap<GenIndex, AlgebraElement, FxBuildHasher>>,
}

impl SExpander {
    pub fn new(alg: Algebra, set: IndexSet) -> Result<Self> {
        set.require_signed()?;
        if alg.dim() != set.dim() {
            return invalid("algebra and index set sizes differ");
        }
        Ok(SExpander { alg, set, cache: Default::default() })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn set(&self) -> IndexSet {
        self.set
    }

    /// `T_ij^(r)` with `T^(0) = δ`.
    fn t(&self, i: usize, j: usize, r: u16) -> AlgebraElement {
        if r == 0 {
            if i == j {
                self.alg.one()
            } else {
                self.alg.zero()
            }
        } else {
            self.alg.gen(i, j, r)
        }
    }

    /// Image of one symbol (`r ≥ 0`).
    pub fn generator(&self, i: usize, j: usize, r: u16) -> AlgebraElement {
        let g = GenIndex::new(i as u8, j as u8, r);
        if r > 0 {
            if let Some(hit) = self.cache.get(&g) {
                return hit.value().clone();
            }
        }
        let n = self.set.dim();
        let mut out = self.alg.zero();
        for a in 0..=r {
            let b = r - a;
            let sign = if b % 2 == 0 { 1 } else { -1 };
            for k in 0..n {
                let c = Rat::from(self.set.eps(k, j) * sign);
                let x = self.t(i, k, a);
                if x.is_zero() {
                    continue;
                }
                let y = self.t(self.set.neg(j), self.set.neg(k), b);
                if y.is_zero() {
                    continue;
                }
                let p = self.alg.mul(&x, &y);
                self.alg.add_assign(&mut out, &self.alg.scale(&c, &p));
            }
        }
        if r > 0 {
            self.cache.insert(g, out.clone());
        }
        out
    }

    pub fn expand(&self, w: &SElement) -> AlgebraElement {
        FreeS::new(self.set).substitute(w, &self.alg, |g| self.generator(g.row as usize, g.col as usize, g.level))
    }
}

/// The coefficient family of the symmetry relation: for each `i, j, r`,
/// `S_ij^(r) − ε_ij (−1)^r S_{-j,-i}^(r) ± c_r S_ij^(r−1)` with `c_r = 1` iff `r`
/// is even (upper sign orthogonal).
pub fn symmetry_residuals(set: IndexSet, d: usize) -> Result<Vec<((usize, usize, usize), SElement)>> {
    let form = set.require_signed()?;
    let fs = FreeS::new(set);
    let n = set.dim();
    let mut out = Vec::new();
    for r in 1..=d {
        for i in 0..n {
            for j in 0..n {
                let sign_r = if r % 2 == 0 { 1 } else { -1 };
                let mut e = fs.gen(i, j, r as u16);
                let other = fs.scale(&Rat::from(set.eps(i, j) * sign_r), &fs.gen(set.neg(j), set.neg(i), r as u16));
                e = fs.sub(&e, &other);
                if r % 2 == 0 {
                    let corr = fs.scale(&Rat::from(form.upper_sign()), &fs.gen(i, j, r as u16 - 1));
                    e = fs.add(&e, &corr);
                }
                out.push(((i, j, r), e));
            }
        }
    }
    Ok(out)
}

/// Rewrite every symbol into a fixed representative of its `(i,j) ~ (−j,−i)`
/// orbit using the symmetry relation; self-paired symbols with
/// `ε_ij(−1)^r = −1` drop to lower level.
pub fn reduce_symmetry(set: IndexSet, e: &SElement) -> Result<SElement> {
    let form = set.require_signed()?;
    let fs = FreeS::new(set);
    fn image(set: IndexSet, sign: i64, i: usize, j: usize, r: u16, fs: &FreeS) -> SElement {
        if r == 0 {
            return fs.gen(i, j, 0);
        }
        let (ni, nj) = (set.neg(j), set.neg(i));
        let er = set.eps(i, j) * if r % 2 == 0 { 1 } else { -1 };
        let corr = if r % 2 == 0 { Rat::from(-sign) } else { Rat::zero() };
        if (i, j) < (ni, nj) {
            return fs.gen(i, j, r);
        }
        let lower = || image(set, sign, i, j, r - 1, fs);
        if (i, j) == (ni, nj) {
            if er == 1 {
                return fs.gen(i, j, r);
            }
            return fs.scale(&(&corr / &Rat::from(2)), &lower());
        }
        fs.add(&fs.scale(&Rat::from(er), &fs.gen(ni, nj, r)), &fs.scale(&corr, &lower()))
    }
    let sign = form.upper_sign();
    Ok(fs.substitute(e, &fs, |g| image(set, sign, g.row as usize, g.col as usize, g.level, &fs)))
}
