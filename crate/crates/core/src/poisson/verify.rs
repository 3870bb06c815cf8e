//! Verification suites on the Poisson side.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::Result;
use crate::index::IndexSet;
use crate::rational::Rat;
use crate::report::Detail;
use crate::ring::Ring;
use crate::twisted::{twisted_bethe, SMatrix, S_ORIENTATION};
use crate::yangian::{bethe_series_sum, ZMatrix};

use super::*;

fn random_var<R: Rng>(space: &PoissonSpace, rng: &mut R) -> Var {
    let vars = space.variables();
    vars[rng.gen_range(0..vars.len())]
}

/// Jacobi identity on `count` seeded triples of coordinates.
pub fn verify_jacobi(space: &PoissonSpace, seed: u64, count: usize) -> Result<Vec<Detail>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[Var; 3]> =
        (0..count).map(|_| [random_var(space, &mut rng), random_var(space, &mut rng), random_var(space, &mut rng)]).collect();
    triples
        .par_iter()
        .map(|[a, b, c]| {
            let (a, b, c) = (PoissonPoly::var(*a), PoissonPoly::var(*b), PoissonPoly::var(*c));
            let mut sum = PoissonPoly::zero();
            for (x, y, z) in [(&a, &b, &c), (&b, &c, &a), (&c, &a, &b)] {
                sum.add_assign(&space.bracket(x, &space.bracket(y, z)?)?);
            }
            Ok(Detail::new(format!("Jacobi {a:?}, {b:?}, {c:?} on {space}"), sum.is_zero()))
        })
        .collect()
}

/// A sum of up to three products of two generators, levels ≤ 3.
pub fn random_quadratic<R: Rng>(alg: &Algebra, rng: &mut R) -> AlgebraElement {
    let n = alg.dim();
    let mut out = alg.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut t = alg.from_rat(&Rat::from(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
        for _ in 0..2 {
            t = alg.mul(&t, &alg.gen(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(1..=3)));
        }
        out = alg.add(&out, &t);
    }
    out
}

/// `symbol([X,Y]) = {symbol X, symbol Y}` modulo the `M`-ideal for seeded
/// random quadratic `X, Y` in `Y(gl_n)`.
pub fn verify_symbol_hom(n: usize, m: u16, seed: u64, pairs: usize) -> Result<Vec<Detail>> {
    let alg = Algebra::yangian(n);
    let space = PoissonSpace::plain(n, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = Vec::with_capacity(pairs);
    while xs.len() < pairs {
        let (x, y) = (random_quadratic(&alg, &mut rng), random_quadratic(&alg, &mut rng));
        if !x.is_zero() && !y.is_zero() {
            xs.push((x, y));
        }
    }
    xs.par_iter()
        .enumerate()
        .map(|(idx, (x, y))| {
            let (dx, dy) = (x.filtration_degree()?, y.filtration_degree()?);
            let lhs = space.symbol(&alg.commutator(x, y)?, dx + dy - 1)?;
            let rhs = space.bracket(&space.symbol(x, dx)?, &space.symbol(y, dy)?)?;
            Ok(Detail::new(format!("pair {idx} (N={n}, M={m}, degrees {dx},{dy})"), lhs == rhs))
        })
        .collect()
}

/// Symbols of the Yangian coefficients `B_k^(r)` against the determinant expansion.
pub fn verify_laplace_plain(z: &ZMatrix, m: u16) -> Result<Vec<Detail>> {
    let space = PoissonSpace::new(z.set(), m)?;
    let n = space.dim();
    let alg = Algebra::yangian(n);
    let polys = bethe_polys(&space, z)?;
    (1..=n)
        .into_par_iter()
        .map(|k| {
            let d = k * m as usize;
            let b = bethe_series_sum(&alg, k, z, d)?;
            (0..=d)
                .map(|r| {
                    let s = space.symbol(b.coeff(r), r as u32)?;
                    Ok(Detail::new(format!("b_{k}^({r}) for {} at M={m}", z.describe()), s == polys[k - 1][r]))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.concat())
}

/// `A_k(u)` with `S_ij^(r) ↦ y_ij^(r)`; coefficient `r` in weighted degree `r`.
pub fn twisted_symbols(space: &PoissonSpace, z: &ZMatrix, k: usize) -> Result<Vec<PoissonPoly>> {
    let d = k * space.m() as usize;
    let sm = SMatrix::from_fn(PoissonRing::default(), space.set(), d, |i, j, r| space.var(i, j, r))?;
    let a = twisted_bethe(&sm, z, k, S_ORIENTATION)?;
    Ok((0..=d).map(|r| space.graded_part(a.coeff(r), r as u32)).collect())
}

/// Symbols of the twisted coefficients `A_k^(r)` against the determinant expansion.
pub fn verify_laplace_twisted(z: &ZMatrix, m: u16) -> Result<Vec<Detail>> {
    let space = PoissonSpace::new(z.set(), m)?;
    let polys = bethe_polys(&space, z)?;
    (1..=space.dim())
        .into_par_iter()
        .map(|k| {
            let sym = twisted_symbols(&space, z, k)?;
            Ok(sym
                .iter()
                .enumerate()
                .map(|(r, s)| Detail::new(format!("a_{k}^({r}) for {} at M={m}", z.describe()), *s == polys[k - 1][r]))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.concat())
}

/// Pairwise involution of all generator coefficients.
pub fn verify_involution(space: &PoissonSpace, z: &ZMatrix) -> Result<Vec<Detail>> {
    let gens = bethe_generators(space, z)?;
    let mut pairs = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            pairs.push((a, b));
        }
    }
    pairs
        .par_iter()
        .map(|&(a, b)| {
            let ((ka, ra), fa) = &gens[a];
            let ((kb, rb), fb) = &gens[b];
            let c = space.bracket(fa, fb)?;
            Ok(Detail::new(format!("{{c_{ka}^({ra}), c_{kb}^({rb})}} on {space}"), c.is_zero()))
        })
        .collect()
}

/// `{c_N^(r), v} = 0` for every coordinate `v`.
pub fn verify_symbol_centrality(space: &PoissonSpace, z: &ZMatrix) -> Result<Vec<Detail>> {
    let n = space.dim();
    let top = bethe_poly(space, n, z)?;
    let vars = space.variables();
    let mut jobs = Vec::new();
    for (r, f) in top.iter().enumerate().skip(1) {
        for &v in &vars {
            jobs.push((r, f, v));
        }
    }
    jobs.par_iter()
        .map(|(r, f, v)| {
            let c = space.bracket(f, &PoissonPoly::var(*v))?;
            Ok(Detail::new(format!("{{c_{n}^({r}), {}}}", space.label(*v)), c.is_zero()))
        })
        .collect()
}

/// `a_k^(r) = 0` exactly when `N − k + r` is odd, for `r = 0..kM`.
pub fn verify_parity(space: &PoissonSpace, z: &ZMatrix) -> Result<Vec<Detail>> {
    let n = space.dim();
    let all = bethe_polys(space, z)?;
    let mut out = Vec::new();
    for (k, coeffs) in all.iter().enumerate() {
        let k = k + 1;
        for (r, c) in coeffs.iter().enumerate() {
            let even = (n - k + r) % 2 == 0;
            out.push(Detail::new(
                format!("a_{k}^({r}) {} on {space}", if even { "nonzero" } else { "zero" }),
                c.is_zero() != even,
            ));
        }
    }
    Ok(out)
}

/// Generator coefficients with labels.
fn labelled(gens: Vec<((usize, usize), PoissonPoly)>, name: char) -> Vec<(String, PoissonPoly)> {
    gens.into_iter().map(|((k, r), f)| (format!("{name}_{k}^({r})"), f)).collect()
}

/// Jacobian rank of the generators on the whole space (algebraic independence).
pub fn certify_independence(space: &PoissonSpace, z: &ZMatrix, seed: u64) -> Result<RankCertificate> {
    let name = if space.is_twisted() { 'a' } else { 'b' };
    let fs = labelled(bethe_generators(space, z)?, name);
    let expected = fs.len();
    Ok(certify_jacobian(&format!("independence on {space}"), space, &fs, &space.variables(), expected, seed))
}

/// Jacobian rank of the restricted generators in the slice coordinates.
pub fn certify_slice(slice: &Slice, z: &ZMatrix, expected: usize, seed: u64) -> Result<RankCertificate> {
    let space = slice.space();
    let name = if space.is_twisted() { 'a' } else { 'b' };
    let fs = labelled(bethe_generators(space, z)?, name)
        .into_iter()
        .map(|(l, f)| Ok((l, restrict_to_slice(&f, slice)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(certify_jacobian(&format!("{:?} slice of {space}", slice.kind()), space, &fs, slice.free(), expected, seed))
}

/// The classical family of `det(u + Y + Z v)` restricted to `s_{2n}`.
pub fn certify_classical_so2n(z: &ZMatrix, seed: u64) -> Result<RankCertificate> {
    let slice = Slice::s2n(z.set())?;
    let fs = classical_det_poly(z)?
        .into_iter()
        .filter(|(_, p)| p.as_constant().is_none())
        .map(|((a, b), p)| Ok((format!("[u^{a} v^{b}]"), restrict_to_slice(&p, &slice)?)))
        .collect::<Result<Vec<_>>>()?;
    let expected = slice.dim();
    Ok(certify_jacobian("classical family on s_2n", slice.space(), &fs, slice.free(), expected, seed))
}

/// Poisson rank at `E^(M)` and at seeded random points.
#[derive(Clone, Debug, serde::Serialize)]
pub struct PoissonRankReport {
    pub at_base: usize,
    pub expected: usize,
    pub sampled: Vec<(u64, usize)>,
}

impl PoissonRankReport {
    pub fn details(&self) -> Vec<Detail> {
        let mut out = vec![Detail::new(format!("rank at E^(M) = {} (expected {})", self.at_base, self.expected), self.at_base == self.expected)];
        for (seed, r) in &self.sampled {
            out.push(Detail::new(format!("rank {r} ≤ {} at seed {seed}", self.expected), *r <= self.expected));
        }
        out
    }
}

pub fn poisson_rank_report(slice: &Slice, expected: usize, seed: u64, samples: usize) -> PoissonRankReport {
    let space = *slice.space();
    let vars = space.variables();
    let sampled = (0..samples as u64)
        .into_par_iter()
        .map(|a| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed + a);
            (seed + a, poisson_rank_at(&space, &CurrentPoint::random(&vars, POINT_BOUND, &mut rng)))
        })
        .collect();
    PoissonRankReport { at_base: poisson_rank_at(&space, slice.base_point()), expected, sampled }
}

/// A diagonal `Z` with pairwise distinct entries: `1..N` on a plain set,
/// `z_{±i} = ±i` on a signed one.
pub fn generic_z(set: IndexSet) -> Result<ZMatrix> {
    if set.is_signed() {
        let half: Vec<Rat> = (1..=set.half() as i64).map(Rat::from).collect();
        ZMatrix::signed_diag(set, &half, crate::yangian::Symmetry::PrimeSkew)
    } else {
        ZMatrix::diag(set, &(1..=set.dim() as i64).map(Rat::from).collect::<Vec<_>>())
    }
}
