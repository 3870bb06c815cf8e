//! Principal nilpotents, evaluation points and the affine slices through them.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::index::{FormType, IndexSet};
use crate::linalg::Matrix;
use crate::rational::Rat;

use super::{PoissonPoly, PoissonSpace, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NilpotentVariant {
    /// The element used for the current-space slices.
    Current,
    /// The element of `so_{2n}` used for the classical slice.
    Classical,
}

/// The principal nilpotent of the opposite Borel subalgebra, in positions.
///
/// Plain sets: `Σ E_{i+1,i}`. Signed sets: the displayed sums over
/// `E_{i,i−1} ∓ E_{1−i,−i}` closed off by the form-specific tail.
pub fn principal_nilpotent(set: IndexSet, variant: NilpotentVariant) -> Result<Matrix> {
    let n = set.dim();
    let mut e = vec![vec![Rat::zero(); n]; n];
    let mut put = |a: i32, b: i32, c: i64| -> Result<()> {
        let (i, j) = (set.pos(a)?, set.pos(b)?);
        e[i][j] += &Rat::from(c);
        Ok(())
    };
    let form = match set.form() {
        None => {
            if variant != NilpotentVariant::Current {
                return invalid("the classical element is defined for so_{2n} only");
            }
            for i in 1..n as i32 {
                put(i + 1, i, 1)?;
            }
            return Ok(e);
        }
        Some(f) => f,
    };
    let h = set.half() as i32;
    let odd = n % 2 == 1;
    let even_so = form == FormType::Orthogonal && !odd;
    if variant == NilpotentVariant::Classical && !even_so {
        return invalid("the classical element is defined for so_{2n} only");
    }
    let tail_sign = if even_so && variant == NilpotentVariant::Current { 1 } else { -1 };
    for i in 2..=h {
        put(i, i - 1, 1)?;
        put(1 - i, -i, tail_sign)?;
    }
    match (odd, variant) {
        (true, _) => {
            put(1, 0, 1)?;
            put(0, -1, -1)?;
        }
        (false, NilpotentVariant::Current) => put(1, -1, 1)?,
        (false, NilpotentVariant::Classical) => {
            if h < 2 {
                return invalid("the classical element needs n ≥ 2");
            }
            put(2, -1, 1)?;
            put(1, -2, -1)?;
        }
    }
    Ok(e)
}

/// Rational values on representative coordinates; absent coordinates are 0.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CurrentPoint {
    values: BTreeMap<Var, Rat>,
}

impl CurrentPoint {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn set(&mut self, v: Var, x: Rat) {
        if x.is_zero() {
            self.values.remove(&v);
        } else {
            self.values.insert(v, x);
        }
    }

    pub fn get(&self, v: Var) -> Rat {
        self.values.get(&v).cloned().unwrap_or_default()
    }

    pub fn eval(&self, p: &PoissonPoly) -> Rat {
        p.eval(|v| self.get(v))
    }

    /// The point `E · t^{M−1}`; errors unless `E` lies in the space at level `M`.
    pub fn from_matrix(space: &PoissonSpace, e: &Matrix, level: u16) -> Result<Self> {
        let n = space.dim();
        let mut pt = CurrentPoint::zero();
        for i in 0..n {
            for j in 0..n {
                if let Some((_, v)) = space.representative(i, j, level) {
                    if v == Var::new(i, j, level) {
                        pt.set(v, e[i][j].clone());
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let implied = pt.eval(&space.var(i, j, level));
                if implied != e[i][j] {
                    return invalid(format!("matrix entry ({i},{j}) violates the symmetry of {space} at level {level}"));
                }
            }
        }
        Ok(pt)
    }

    /// Independent uniform integers in `[−bound, bound]` on the given coordinates.
    pub fn random<R: Rng>(coords: &[Var], bound: i64, rng: &mut R) -> Self {
        let mut pt = CurrentPoint::zero();
        for &v in coords {
            pt.set(v, Rat::from(rng.gen_range(-bound..=bound)));
        }
        pt
    }

    /// `{"v[i,j]^(r)": "p/q"}` over nonzero coordinates.
    pub fn to_json(&self, space: &PoissonSpace) -> serde_json::Value {
        let m: serde_json::Map<String, serde_json::Value> =
            self.values.iter().map(|(v, x)| (space.label(*v), serde_json::Value::String(x.to_string()))).collect();
        serde_json::Value::Object(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SliceKind {
    /// `E^(M) + g_{M,N} ∩ b_N[t]`.
    T,
    /// `E^(M) + f_{M,N} ∩ b_N[t]`.
    S,
    /// `E + b_{2n} ∩ so_{2n}`.
    S2n,
}

/// An affine slice: coordinates `v_ij^(r)` with `i ≤ j` are free, all others
/// are fixed to the base point.
#[derive(Clone, Debug)]
pub struct Slice {
    kind: SliceKind,
    space: PoissonSpace,
    nilpotent: Matrix,
    base: CurrentPoint,
    free: Vec<Var>,
}

impl Slice {
    pub fn t(n: usize, m: u16) -> Result<Self> {
        let space = PoissonSpace::plain(n, m)?;
        let e = principal_nilpotent(space.set(), NilpotentVariant::Current)?;
        Self::build(SliceKind::T, space, e)
    }

    /// Needs `M` odd for `so_{2n+1}`, `sp_{2n}` and even for `so_{2n}`.
    pub fn s(set: IndexSet, m: u16) -> Result<Self> {
        set.require_signed()?;
        let space = PoissonSpace::new(set, m)?;
        let e = principal_nilpotent(set, NilpotentVariant::Current)?;
        Self::build(SliceKind::S, space, e)
    }

    pub fn s2n(set: IndexSet) -> Result<Self> {
        if set.form() != Some(FormType::Orthogonal) || set.dim() % 2 == 1 {
            return invalid("the classical slice is for so_{2n}");
        }
        let space = PoissonSpace::new(set, 1)?;
        let e = principal_nilpotent(set, NilpotentVariant::Classical)?;
        Self::build(SliceKind::S2n, space, e)
    }

    fn build(kind: SliceKind, space: PoissonSpace, e: Matrix) -> Result<Self> {
        let n = space.dim();
        if (0..n).any(|i| (i..n).any(|j| !e[i][j].is_zero())) {
            return invalid("base nilpotent must be strictly lower triangular");
        }
        let base = CurrentPoint::from_matrix(&space, &e, space.m())?;
        let free = space.variables().into_iter().filter(|v| v.row <= v.col).collect();
        Ok(Slice { kind, space, nilpotent: e, base, free })
    }

    pub fn kind(&self) -> SliceKind {
        self.kind
    }

    pub fn space(&self) -> &PoissonSpace {
        &self.space
    }

    pub fn nilpotent(&self) -> &Matrix {
        &self.nilpotent
    }

    /// `E^(M)` as a point of the whole space.
    pub fn base_point(&self) -> &CurrentPoint {
        &self.base
    }

    pub fn free(&self) -> &[Var] {
        &self.free
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// The point of the slice with the given free coordinates.
    pub fn point(&self, free_values: &CurrentPoint) -> CurrentPoint {
        let mut pt = self.base.clone();
        for &v in &self.free {
            pt.set(v, free_values.get(v));
        }
        pt
    }
}

/// Substitute the fixed coordinates; the result involves only `s.free()`.
pub fn restrict_to_slice(p: &PoissonPoly, s: &Slice) -> Result<PoissonPoly> {
    s.space.check(p)?;
    Ok(p.substitute(|v| if v.row <= v.col { None } else { Some(PoissonPoly::constant(s.base.get(v))) }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(set: IndexSet, terms: &[(i32, i32, i64)]) -> Matrix {
        let n = set.dim();
        let mut e = vec![vec![Rat::zero(); n]; n];
        for &(a, b, c) in terms {
            e[set.pos(a).unwrap()][set.pos(b).unwrap()] = Rat::from(c);
        }
        e
    }

    #[test]
    fn displayed_nilpotents() {
        let cur = NilpotentVariant::Current;
        assert_eq!(principal_nilpotent(IndexSet::sp(2), cur).unwrap(), unit(IndexSet::sp(2), &[(1, -1, 1)]));
        assert_eq!(principal_nilpotent(IndexSet::so(3), cur).unwrap(), unit(IndexSet::so(3), &[(1, 0, 1), (0, -1, -1)]));
        assert_eq!(
            principal_nilpotent(IndexSet::so(4), NilpotentVariant::Classical).unwrap(),
            unit(IndexSet::so(4), &[(2, 1, 1), (-1, -2, -1), (2, -1, 1), (1, -2, -1)])
        );
        assert_eq!(
            principal_nilpotent(IndexSet::so(4), cur).unwrap(),
            unit(IndexSet::so(4), &[(2, 1, 1), (-1, -2, 1), (1, -1, 1)])
        );
        assert!(principal_nilpotent(IndexSet::sp(2), NilpotentVariant::Classical).is_err());
    }

    #[test]
    fn slice_parity() {
        assert!(Slice::s(IndexSet::sp(2), 2).is_err());
        assert!(Slice::s(IndexSet::so(4), 1).is_err());
        assert!(Slice::s(IndexSet::so(4), 2).is_ok());
        assert_eq!(Slice::s2n(IndexSet::so(4)).unwrap().dim(), 4);
    }

    #[test]
    fn restriction() {
        let t = Slice::t(3, 2).unwrap();
        let sp = t.space();
        assert_eq!(restrict_to_slice(&sp.var(1, 0, 2), &t).unwrap(), PoissonPoly::one());
        assert!(restrict_to_slice(&sp.var(1, 0, 1), &t).unwrap().is_zero());
        assert!(restrict_to_slice(&sp.var(2, 0, 2), &t).unwrap().is_zero());
        assert_eq!(restrict_to_slice(&sp.var(0, 2, 1), &t).unwrap(), sp.var(0, 2, 1));
        assert_eq!(t.dim(), 2 * 6);
    }
}
