//! Bethe symbol polynomials from `det(u^M + X(u) + Z v)`.

use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::poly::MPoly;
use crate::rational::{binomial, Rat};
use crate::yangian::{Symmetry, ZMatrix};

use super::{PoissonPoly, PoissonSpace, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum DVar {
    U,
    V,
    C(Var),
}

type DPoly = MPoly<DVar>;

/// Determinant by expansion over column subsets, row by row.
fn det(a: &[Vec<DPoly>]) -> DPoly {
    let n = a.len();
    let mut f: Vec<DPoly> = vec![DPoly::zero(); 1 << n];
    f[0] = DPoly::one();
    for s in 1usize..(1 << n) {
        let row = s.count_ones() as usize - 1;
        let mut acc = DPoly::zero();
        for c in 0..n {
            if s & (1 << c) == 0 || f[s ^ (1 << c)].is_zero() {
                continue;
            }
            let above = (s >> (c + 1)).count_ones();
            let t = a[row][c].mul(&f[s ^ (1 << c)]);
            if above % 2 == 0 {
                acc.add_assign(&t);
            } else {
                acc = acc.sub(&t);
            }
        }
        f[s] = acc;
    }
    f.pop().expect("nonempty")
}

/// Coefficients of a polynomial in `u, v` keyed by `(deg_u, deg_v)`.
pub type UvCoefficients = BTreeMap<(u32, u32), PoissonPoly>;

fn split_uv(p: &DPoly) -> UvCoefficients {
    let mut out: UvCoefficients = BTreeMap::new();
    for (m, c) in p.terms() {
        let (mut eu, mut ev) = (0, 0);
        let mut rest = Vec::new();
        for &(x, e) in m.iter() {
            match x {
                DVar::U => eu = e,
                DVar::V => ev = e,
                DVar::C(v) => rest.push((v, e)),
            }
        }
        out.entry((eu, ev)).or_default().add_assign(&PoissonPoly::monomial(c.clone(), &rest));
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn lift(p: &PoissonPoly) -> DPoly {
    p.rename(|v| Some((DVar::C(v), Rat::one())))
}

fn check_z(space: &PoissonSpace, z: &ZMatrix) -> Result<()> {
    if z.set() != space.set() {
        return invalid(format!("Z is over {}, space over {}", z.set(), space.set()));
    }
    if space.is_twisted() && z.symmetry() == Symmetry::None {
        return invalid("twisted Z must satisfy Z′ = ±Z");
    }
    Ok(())
}

/// `det(u^M + X(u) + Z v)` with `X(u)_ij = Σ_r v_ij^(r) u^{M−r}`.
pub fn current_determinant(space: &PoissonSpace, z: &ZMatrix) -> Result<UvCoefficients> {
    check_z(space, z)?;
    let n = space.dim();
    let m = space.m();
    let mut a = vec![vec![DPoly::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            if i == j {
                e.add_assign(&DPoly::monomial(Rat::one(), &[(DVar::U, m as u32)]));
            }
            for r in 1..=m {
                let x = lift(&space.var(i, j, r));
                let shift = m - r;
                e.add_assign(&if shift == 0 { x } else { x.mul(&DPoly::monomial(Rat::one(), &[(DVar::U, shift as u32)])) });
            }
            e.add_assign(&DPoly::monomial(z.entry(i, j).clone(), &[(DVar::V, 1)]));
        }
    }
    Ok(split_uv(&det(&a)))
}

/// `b_k^(r)` (or `a_k^(r)`), `r = 0..kM`: the coefficient of `u^{kM−r} v^{N−k}`
/// divided by `binomial(N, k)`, for every `k = 1..N`.
pub fn bethe_polys(space: &PoissonSpace, z: &ZMatrix) -> Result<Vec<Vec<PoissonPoly>>> {
    let d = current_determinant(space, z)?;
    let n = space.dim() as u32;
    let m = space.m() as u32;
    Ok((1..=n)
        .map(|k| {
            let c = binomial(n as u64, k as u64).recip();
            (0..=k * m)
                .map(|r| d.get(&(k * m - r, n - k)).map(|p| p.scale(&c)).unwrap_or_default())
                .collect()
        })
        .collect())
}

pub fn bethe_poly(space: &PoissonSpace, k: usize, z: &ZMatrix) -> Result<Vec<PoissonPoly>> {
    if k == 0 || k > space.dim() {
        return invalid(format!("k = {k} outside 1..={}", space.dim()));
    }
    Ok(bethe_polys(space, z)?.swap_remove(k - 1))
}

/// Coefficients at `u^k v^l` of `det(u + Y + Z v)`, `Y` the degree-one coordinates.
pub fn classical_det_poly(z: &ZMatrix) -> Result<UvCoefficients> {
    if z.set().is_signed() && z.symmetry() != Symmetry::PrimeSkew {
        return invalid("the classical family needs Z′ = −Z");
    }
    current_determinant(&PoissonSpace::new(z.set(), 1)?, z)
}

/// The coefficients `(k, r)` with `1 ≤ r ≤ kM` that are expected to be free
/// generators: all of them on a plain space, those with `N − k + r` even on a
/// signed one.
pub fn generator_indices(space: &PoissonSpace) -> Vec<(usize, usize)> {
    let n = space.dim();
    let m = space.m() as usize;
    let mut out = Vec::new();
    for k in 1..=n {
        for r in 1..=k * m {
            if !space.is_twisted() || (n - k + r) % 2 == 0 {
                out.push((k, r));
            }
        }
    }
    out
}

/// The generator coefficients in `generator_indices` order.
pub fn bethe_generators(space: &PoissonSpace, z: &ZMatrix) -> Result<Vec<((usize, usize), PoissonPoly)>> {
    let all = bethe_polys(space, z)?;
    Ok(generator_indices(space).into_iter().map(|(k, r)| ((k, r), all[k - 1][r].clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::IndexSet;

    #[test]
    fn two_by_two() {
        let s = PoissonSpace::plain(2, 1).unwrap();
        let (z1, z2) = (Rat::from(3), Rat::from(5));
        let z = ZMatrix::diag(s.set(), &[z1.clone(), z2.clone()]).unwrap();
        let b = bethe_polys(&s, &z).unwrap();
        let (x11, x12, x21, x22) = (s.var(0, 0, 1), s.var(0, 1, 1), s.var(1, 0, 1), s.var(1, 1, 1));
        let half = Rat::new(1, 2);
        assert_eq!(b[0][0], PoissonPoly::constant(&(&z1 + &z2) * &half));
        assert_eq!(b[0][1], x11.scale(&z2).add(&x22.scale(&z1)).scale(&half));
        assert_eq!(b[1][0], PoissonPoly::one());
        assert_eq!(b[1][1], x11.add(&x22));
        assert_eq!(b[1][2], x11.mul(&x22).sub(&x12.mul(&x21)));
    }

    #[test]
    fn one_by_one() {
        let z = ZMatrix::diag(IndexSet::gl(1), &[Rat::from(7)]).unwrap();
        let c = classical_det_poly(&z).unwrap();
        let x = PoissonSpace::plain(1, 1).unwrap().var(0, 0, 1);
        assert_eq!(c.len(), 3);
        assert_eq!(c[&(1, 0)], PoissonPoly::one());
        assert_eq!(c[&(0, 0)], x);
        assert_eq!(c[&(0, 1)], PoissonPoly::constant(Rat::from(7)));
    }
}
