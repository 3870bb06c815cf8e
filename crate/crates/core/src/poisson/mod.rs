//! Poisson degenerations: polynomial functions on truncated current spaces,
//! the brackets between their coordinates, Bethe symbol polynomials and the
//! rank certificates built on them.
//!
//! Coordinates are `v_ij^(r)` with `1 ≤ r ≤ M` on the positions of an index
//! set. Over a signed set the coordinates obey `y_ij^(r) = ε_ij (−1)^r
//! y_{-j,-i}^(r)`; every polynomial is kept in terms of one representative per
//! orbit, and coordinates forced to vanish never appear.

mod bethe;
mod rank;
mod slice;
mod verify;

use std::fmt;

use crate::algebra::{monomial_degree, AlgebraElement};
use crate::error::{invalid, Result};
use crate::index::IndexSet;
use crate::poly::{MPoly, PolyRing};
use crate::rational::Rat;
use crate::twisted::SElement;

pub use bethe::*;
pub use rank::*;
pub use slice::*;
pub use verify::*;

/// The coordinate `v_{row,col}^(level)` on positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub level: u16,
    pub row: u8,
    pub col: u8,
}

impl Var {
    pub const fn new(row: usize, col: usize, level: u16) -> Self {
        Var { level, row: row as u8, col: col as u8 }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}{}^({})", self.row, self.col, self.level)
    }
}

pub type PoissonPoly = MPoly<Var>;
pub type PoissonRing = PolyRing<Var>;

/// `P(g_{M,N})` over a plain set, `P(f_{M,N})` over a signed one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoissonSpace {
    set: IndexSet,
    m: u16,
}

impl PoissonSpace {
    pub fn new(set: IndexSet, m: u16) -> Result<Self> {
        if m == 0 {
            return invalid("M must be at least 1");
        }
        Ok(PoissonSpace { set, m })
    }

    pub fn plain(n: usize, m: u16) -> Result<Self> {
        Self::new(IndexSet::plain(n)?, m)
    }

    pub fn set(&self) -> IndexSet {
        self.set
    }

    pub fn m(&self) -> u16 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    pub fn is_twisted(&self) -> bool {
        self.set.is_signed()
    }

    /// `v_ij^(r) = sign · rep`, or `None` when the coordinate vanishes
    /// (`r > M`, or a self-paired coordinate with `ε(−1)^r = −1`).
    pub fn representative(&self, i: usize, j: usize, r: u16) -> Option<(Rat, Var)> {
        if r == 0 || r > self.m {
            return None;
        }
        if !self.is_twisted() {
            return Some((Rat::one(), Var::new(i, j, r)));
        }
        let (eps, a, b) = self.set.prime(i, j);
        let sign = if r % 2 == 0 { eps } else { -eps };
        match (i, j).cmp(&(a, b)) {
            std::cmp::Ordering::Less => Some((Rat::one(), Var::new(i, j, r))),
            std::cmp::Ordering::Greater => Some((Rat::from(sign), Var::new(a, b, r))),
            std::cmp::Ordering::Equal => (sign == 1).then(|| (Rat::one(), Var::new(i, j, r))),
        }
    }

    /// `v_ij^(r)` as a polynomial; `v_ij^(0) = δ_ij`.
    pub fn var(&self, i: usize, j: usize, r: u16) -> PoissonPoly {
        if r == 0 {
            return if i == j { PoissonPoly::one() } else { PoissonPoly::zero() };
        }
        match self.representative(i, j, r) {
            Some((s, v)) => PoissonPoly::var(v).scale(&s),
            None => PoissonPoly::zero(),
        }
    }

    /// All representative coordinates, sorted.
    pub fn variables(&self) -> Vec<Var> {
        let n = self.dim();
        let mut out = Vec::new();
        for r in 1..=self.m {
            for i in 0..n {
                for j in 0..n {
                    if let Some((_, v)) = self.representative(i, j, r) {
                        if v == Var::new(i, j, r) {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_representative(&self, v: Var) -> bool {
        (v.row as usize) < self.dim()
            && (v.col as usize) < self.dim()
            && self.representative(v.row as usize, v.col as usize, v.level).map(|(_, w)| w) == Some(v)
    }

    /// Rewrite arbitrary coordinates into representatives and drop the ideal `v^(r)`, `r > M`.
    pub fn reduce(&self, p: &PoissonPoly) -> PoissonPoly {
        p.rename(|v| self.representative(v.row as usize, v.col as usize, v.level).map(|(s, w)| (w, s)))
    }

    /// Error unless every coordinate of `p` is a representative of this space.
    pub fn check(&self, p: &PoissonPoly) -> Result<()> {
        match p.vars().into_iter().find(|&v| !self.is_representative(v)) {
            Some(v) => invalid(format!("{v:?} is not a coordinate of {self}")),
            None => Ok(()),
        }
    }

    /// Bracket of two coordinates, with the summation window
    /// `max(1, p+q−M) ≤ r ≤ min(p,q)`.
    pub fn gen_bracket(&self, a: Var, b: Var) -> PoissonPoly {
        let (i, j, p) = (a.row as usize, a.col as usize, a.level);
        let (k, l, q) = (b.row as usize, b.col as usize, b.level);
        let lo = 1.max((p + q).saturating_sub(self.m));
        let mut out = PoissonPoly::zero();
        for r in lo..=p.min(q) {
            let s = p + q - r;
            out.add_assign(&self.var(k, j, r - 1).mul(&self.var(i, l, s)));
            out = out.sub(&self.var(k, j, s).mul(&self.var(i, l, r - 1)));
            if self.is_twisted() {
                let set = self.set;
                let (nj, nk, nl, ni) = (set.neg(j), set.neg(k), set.neg(l), set.neg(i));
                let first = self.var(i, nk, r - 1).mul(&self.var(nj, l, s)).scale(&Rat::from(set.eps(k, nj)));
                let second = self.var(k, ni, s).mul(&self.var(nl, j, r - 1)).scale(&Rat::from(set.eps(i, nl)));
                let sign = if (p + r - 1) % 2 == 0 { Rat::one() } else { Rat::from(-1) };
                out.add_assign(&first.sub(&second).scale(&sign));
            }
        }
        out
    }

    /// `{f, g}` by the Leibniz rule.
    pub fn bracket(&self, f: &PoissonPoly, g: &PoissonPoly) -> Result<PoissonPoly> {
        self.check(f)?;
        self.check(g)?;
        let gv = g.vars();
        let dg: Vec<(Var, PoissonPoly)> = gv.iter().map(|&b| (b, g.derivative(b))).collect();
        let mut out = PoissonPoly::zero();
        for a in f.vars() {
            let mut h = PoissonPoly::zero();
            for (b, gb) in &dg {
                let c = self.gen_bracket(a, *b);
                if !c.is_zero() {
                    h.add_assign(&c.mul(gb));
                }
            }
            if !h.is_zero() {
                out.add_assign(&f.derivative(a).mul(&h));
            }
        }
        Ok(out)
    }

    /// Degree-`d` symbol of a Yangian element, reduced modulo the `M`-ideal.
    pub fn symbol(&self, a: &AlgebraElement, d: u32) -> Result<PoissonPoly> {
        if self.is_twisted() {
            return invalid("Yangian symbols live on a plain space");
        }
        if !a.is_zero() && a.filtration_degree()? > d {
            return invalid(format!("element has filtration degree above {d}"));
        }
        let mut out = PoissonPoly::zero();
        for (m, c) in a.terms() {
            if monomial_degree(m) != d {
                continue;
            }
            let mut t = PoissonPoly::constant(c.clone());
            for g in m.iter() {
                t = t.mul(&self.var(g.row as usize, g.col as usize, g.level));
            }
            out.add_assign(&t);
        }
        Ok(out)
    }

    /// Degree-`d` symbol of a word in the twisted generators.
    pub fn symbol_s(&self, e: &SElement, d: u32) -> Result<PoissonPoly> {
        if !self.is_twisted() {
            return invalid("twisted symbols live on a signed space");
        }
        let mut out = PoissonPoly::zero();
        for (w, c) in e.terms() {
            let deg = monomial_degree(w);
            if deg > d {
                return invalid(format!("word of degree {deg} above {d}"));
            }
            if deg != d {
                continue;
            }
            let mut t = PoissonPoly::constant(c.clone());
            for g in w.iter() {
                t = t.mul(&self.var(g.row as usize, g.col as usize, g.level));
            }
            out.add_assign(&t);
        }
        Ok(out)
    }

    /// The part of `p` of weighted degree `d`, where `v^(r)` has weight `r`.
    pub fn graded_part(&self, p: &PoissonPoly, d: u32) -> PoissonPoly {
        p.filter_terms(|m| m.iter().map(|(v, e)| v.level as u32 * e).sum::<u32>() == d)
    }

    /// The symbol embedding `y_ij^(r) ↦ x_ij^(r) + ε_ij(−1)^r x_{-j,-i}^(r)` into
    /// the plain space of the same size and `M`.
    pub fn embed(&self, p: &PoissonPoly) -> Result<PoissonPoly> {
        self.check(p)?;
        let plain = PoissonSpace::plain(self.dim(), self.m)?;
        Ok(p.substitute(|v| {
            let (i, j, r) = (v.row as usize, v.col as usize, v.level);
            let (eps, a, b) = self.set.prime(i, j);
            let s = if r % 2 == 0 { eps } else { -eps };
            Some(plain.var(i, j, r).add(&plain.var(a, b, r).scale(&Rat::from(s))))
        }))
    }

    /// Signed-label JSON: `{"terms":[{"monomial":[[i,j,r],…],"coeff":"p/q"}]}`,
    /// repeating a coordinate once per power.
    pub fn to_json(&self, p: &PoissonPoly) -> serde_json::Value {
        let mut terms: Vec<(Vec<[i64; 3]>, Rat)> = p
            .terms()
            .map(|(m, c)| {
                let mut mono = Vec::new();
                for &(v, e) in m.iter() {
                    for _ in 0..e {
                        mono.push([
                            self.set.label(v.row as usize) as i64,
                            self.set.label(v.col as usize) as i64,
                            v.level as i64,
                        ]);
                    }
                }
                (mono, c.clone())
            })
            .collect();
        terms.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let terms: Vec<serde_json::Value> = terms
            .into_iter()
            .map(|(m, c)| serde_json::json!({ "monomial": m, "coeff": c.to_string() }))
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn label(&self, v: Var) -> String {
        format!("v[{},{}]^({})", self.set.label(v.row as usize), self.set.label(v.col as usize), v.level)
    }
}

impl fmt::Display for PoissonSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} with M = {}", self.set, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_bracket_at_m1() {
        let s = PoissonSpace::plain(2, 1).unwrap();
        let (x11, x12) = (s.var(0, 0, 1), s.var(0, 1, 1));
        assert_eq!(s.bracket(&x11, &x12).unwrap(), x12);
        assert!(s.bracket(&x11, &x11).unwrap().is_zero());
        let c = s.bracket(&s.var(0, 1, 1), &s.var(1, 0, 1)).unwrap();
        assert_eq!(c, s.var(0, 0, 1).sub(&s.var(1, 1, 1)));
    }

    #[test]
    fn truncation_window() {
        let s = PoissonSpace::plain(2, 2).unwrap();
        // Only r = 2 survives: the r = 1 term would need level 3.
        let b = s.bracket(&s.var(0, 1, 2), &s.var(1, 0, 2)).unwrap();
        assert_eq!(b, s.var(1, 1, 1).mul(&s.var(0, 0, 2)).sub(&s.var(1, 1, 2).mul(&s.var(0, 0, 1))));
        let b = s.bracket(&s.var(0, 1, 1), &s.var(1, 0, 2)).unwrap();
        assert_eq!(b, s.var(0, 0, 2).sub(&s.var(1, 1, 2)));
    }

    #[test]
    fn twisted_reduction() {
        let sp = PoissonSpace::new(IndexSet::sp(2), 2).unwrap();
        // ε_{1,-1}(−1)^r: self-paired coordinate survives at odd levels only.
        assert!(sp.representative(1, 0, 1).is_some());
        assert!(sp.representative(1, 0, 2).is_none());
        assert_eq!(sp.variables().len(), 3 + 1);
        let so = PoissonSpace::new(IndexSet::so(3), 1).unwrap();
        assert_eq!(so.variables().len(), 3);
        assert_eq!(so.var(2, 1, 1), so.var(1, 0, 1).scale(&Rat::from(-1)));
        assert!(so.check(&PoissonPoly::var(Var::new(2, 1, 1))).is_err());
    }
}
