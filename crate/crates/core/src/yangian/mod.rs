//! The Yangian `Y(gl_N)`: the generator matrix `T(u)`, Bethe series, the
//! quantum determinant, and exact checks of the defining identities.

pub mod zmatrix;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{invalid, Error, Result};
use crate::index::IndexSet;
use crate::rational::{binomial, factorial, Rat};
use crate::report::Detail;
use crate::ring::Ring;
use crate::series::{SeriesRing, TruncatedSeries};
use crate::tensor::antisym::signed_permutations;
use crate::tensor::{
    antisymmetrizer, flip, in_fk, substitute_entries, BiLaurent, LaurentRing, TensorElement, TensorRing,
};

pub use zmatrix::{Symmetry, ZMatrix};

pub type Series = TruncatedSeries<AlgebraElement>;
pub type SeriesTensor = TensorElement<Series>;

/// `T_ij(u) = δ_ij + Σ_r T_ij^(r) u^{-r}`.
pub fn t_series(alg: &Algebra, i: usize, j: usize, d: usize) -> Series {
    let mut c = Vec::with_capacity(d + 1);
    c.push(if i == j { alg.one() } else { alg.zero() });
    for r in 1..=d {
        c.push(alg.gen(i, j, r as u16));
    }
    TruncatedSeries::from_coeffs(c)
}

/// `T(u)` as a one-site tensor with series entries.
pub fn t_matrix(alg: &Algebra, set: IndexSet, d: usize) -> SeriesTensor {
    let ring = series_tensors(alg, set, d, 1);
    let mut t = ring.empty();
    let n = set.dim();
    for i in 0..n {
        for j in 0..n {
            ring.add_entry(&mut t, (i as u64, j as u64), t_series(alg, i, j, d));
        }
    }
    t
}

/// `End(C^N)^{⊗sites} ⊗ A[[u^{-1}]]` truncated at `d`.
pub fn series_tensors(alg: &Algebra, set: IndexSet, d: usize, sites: usize) -> TensorRing<SeriesRing<Algebra>> {
    TensorRing::new(SeriesRing::new(alg.clone(), d), set, sites)
}

/// A one-site tensor `X(u)` re-expanded at `u + shift`.
pub fn shifted(alg: &Algebra, x: &SeriesTensor, shift: i64) -> SeriesTensor {
    substitute_entries(alg, x, &Rat::one(), &Rat::from(shift)).expect("a = 1")
}

/// Inverse `T̂(u)` of the generator matrix.
pub fn t_hat(alg: &Algebra, set: IndexSet, d: usize) -> SeriesTensor {
    let one_site = TensorRing::new(alg.clone(), set, 1);
    let s = one_site.to_series(&t_matrix(alg, set, d), d);
    let inv = s.invert(&one_site).expect("T(u) starts with the identity");
    one_site.from_series(&inv)
}

/// `X_{p_1}(u−p_1) ⋯ X_{p_m}(u−p_m)` in `k` sites, factors in the listed order.
pub fn ordered_shifted_product(alg: &Algebra, x: &SeriesTensor, order: &[usize], k: usize, d: usize) -> SeriesTensor {
    let ring = series_tensors(alg, x.set(), d, k);
    let one = ring.with_sites(1);
    let mut acc = ring.identity();
    for &p in order {
        let xp = shifted(alg, x, -(p as i64));
        let e = one.embed(&xp, &[p], k).expect("valid site");
        acc = ring.mul(&acc, &e);
    }
    acc
}

/// `T_1(u−1) ⋯ T_k(u−k)`.
pub fn fused_t(alg: &Algebra, set: IndexSet, k: usize, d: usize) -> SeriesTensor {
    let order: Vec<usize> = (1..=k).collect();
    ordered_shifted_product(alg, &t_matrix(alg, set, d), &order, k, d)
}

fn require_plain(set: IndexSet, k: usize) -> Result<()> {
    if set.is_signed() {
        return invalid("Bethe series of Y(gl_N) use a plain index set");
    }
    if k == 0 || k > set.dim() {
        return invalid(format!("k = {k} outside 1..={}", set.dim()));
    }
    Ok(())
}

/// `B_k(u)` from the double permutation sum: terms are grouped by the
/// injective tuples `(g(1..k), h(1..k))` with the `z`-completions summed.
pub fn bethe_series_sum(alg: &Algebra, k: usize, z: &ZMatrix, d: usize) -> Result<Series> {
    let set = z.set();
    require_plain(set, k)?;
    let n = set.dim();
    let nfact = factorial(n as u64).recip();
    let perms = signed_permutations(n);
    let mut coeff: FxHashMap<(Vec<usize>, Vec<usize>), Rat> = FxHashMap::default();
    for (g, sg) in &perms {
        for (h, sh) in &perms {
            let mut c = Rat::from(sg * sh);
            for i in k..n {
                c = &c * z.entry(g[i], h[i]);
                if c.is_zero() {
                    break;
                }
            }
            if !c.is_zero() {
                *coeff.entry((g[..k].to_vec(), h[..k].to_vec())).or_insert_with(Rat::zero) += &(&c * &nfact);
            }
        }
    }
    let sr = SeriesRing::new(alg.clone(), d);
    let shifted_t: Vec<Vec<Vec<Series>>> = (1..=k)
        .map(|p| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| t_series(alg, i, j, d).substitute_affine(&Rat::one(), &Rat::from(-(p as i64)), alg))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut keys: Vec<_> = coeff.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    keys.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = sr.zero();
    for ((a, b), c) in keys {
        let mut prod = sr.from_rat(&c);
        for p in 0..k {
            prod = sr.mul(&prod, &shifted_t[p][a[p]][b[p]]);
        }
        sr.add_assign(&mut out, &prod);
    }
    Ok(out)
}

/// `B_k(u) = tr(H_N · T_1(u−1)⋯T_k(u−k) · Z_{k+1}⋯Z_N)` by tensor contraction.
pub fn bethe_series_trace(alg: &Algebra, k: usize, z: &ZMatrix, d: usize) -> Result<Series> {
    let set = z.set();
    require_plain(set, k)?;
    let n = set.dim();
    let ring = series_tensors(alg, set, d, n);
    let one = ring.with_sites(1);
    let mut x = fused_into(alg, set, k, n, d);
    let zt = one.lift(&z.tensor());
    for p in k + 1..=n {
        x = ring.mul(&x, &one.embed(&zt, &[p], n)?);
    }
    let h = ring.lift(&antisymmetrizer(n, set));
    Ok(ring.trace_mul(&h, &x))
}

/// `T_1(u−1)⋯T_k(u−k)` inside `n ≥ k` sites.
fn fused_into(alg: &Algebra, set: IndexSet, k: usize, n: usize, d: usize) -> SeriesTensor {
    let t = t_matrix(alg, set, d);
    let order: Vec<usize> = (1..=k).collect();
    ordered_shifted_product(alg, &t, &order, n, d)
}

/// `B_k(u)` by the permutation sum, cross-checked against the trace route.
pub fn bethe_series(alg: &Algebra, k: usize, z: &ZMatrix, d: usize) -> Result<Series> {
    let a = bethe_series_sum(alg, k, z, d)?;
    let b = bethe_series_trace(alg, k, z, d)?;
    if a != b {
        let r = (0..=d).find(|&r| a.coeff(r) != b.coeff(r)).unwrap_or(0);
        return Err(Error::DualPathMismatch(format!(
            "B_{k} for Z = {}: permutation sum and trace differ at u^-{r}",
            z.describe()
        )));
    }
    Ok(a)
}

/// `Σ_g sgn g · T_{g(1),1}(u−1) ⋯ T_{g(N),N}(u−N)`.
pub fn quantum_determinant(alg: &Algebra, set: IndexSet, d: usize) -> Result<Series> {
    require_plain(set, set.dim())?;
    let n = set.dim();
    let sr = SeriesRing::new(alg.clone(), d);
    let mut out = sr.zero();
    for (g, s) in signed_permutations(n) {
        let mut prod = sr.from_rat(&Rat::from(s));
        for (p, &gp) in g.iter().enumerate() {
            let t = t_series(alg, gp, p, d).substitute_affine(&Rat::one(), &Rat::from(-(p as i64 + 1)), alg)?;
            prod = sr.mul(&prod, &t);
        }
        sr.add_assign(&mut out, &prod);
    }
    Ok(out)
}

/// `B̂_k(u) = tr_k(H_k · T̂_k(u−k)⋯T̂_1(u−1) · Z_1⋯Z_k)`; `B̂_0 = 1`.
pub fn hat_bethe_series(alg: &Algebra, k: usize, z: &ZMatrix, d: usize) -> Result<Series> {
    let set = z.set();
    if k == 0 {
        return Ok(SeriesRing::new(alg.clone(), d).one());
    }
    require_plain(set, k)?;
    let ring = series_tensors(alg, set, d, k);
    let one = ring.with_sites(1);
    let order: Vec<usize> = (1..=k).rev().collect();
    let mut x = ordered_shifted_product(alg, &t_hat(alg, set, d), &order, k, d);
    let zt = one.lift(&z.tensor());
    for p in 1..=k {
        x = ring.mul(&x, &one.embed(&zt, &[p], k)?);
    }
    let h = ring.lift(&antisymmetrizer(k, set));
    Ok(ring.trace_mul(&h, &x))
}

fn first_nonzero(alg: &Algebra, s: &Series) -> Option<usize> {
    (0..=s.trunc()).find(|&r| !alg.is_zero(s.coeff(r)))
}

fn label_tuple(set: IndexSet, idx: &[usize]) -> String {
    idx.iter().map(|&p| set.label(p).to_string()).collect::<Vec<_>>().join(",")
}

/// Residual `R(u−v)T_1(u)T_2(v) − T_2(v)T_1(u)R(u−v)`, exact for total order `≤ d`.
pub fn rtt_residual(alg: &Algebra, set: IndexSet, d: usize) -> TensorElement<BiLaurent<AlgebraElement>> {
    let lr = LaurentRing::new(alg.clone(), d as i32 + 1);
    let ring = TensorRing::new(lr.clone(), set, 2);
    let one = ring.with_sites(1);
    let t = t_matrix(alg, set, d + 1);
    let src = series_tensors(alg, set, d + 1, 1);
    let tu = src.map(&t, &lr, |s| lr.from_series(s, true));
    let tv = src.map(&t, &lr, |s| lr.from_series(s, false));
    let t1 = one.embed(&tu, &[1], 2).expect("site 1");
    let t2 = one.embed(&tv, &[2], 2).expect("site 2");
    let r = ring.sub(
        &ring.scalar(lr.linear(&Rat::one(), &Rat::from(-1), &Rat::zero())),
        &ring.lift(&flip(set)),
    );
    let lhs = ring.product([&r, &t1, &t2]);
    let rhs = ring.product([&t2, &t1, &r]);
    let res = ring.sub(&lhs, &rhs);
    ring.map(&res, &lr, |x| lr.exact_part(x, d as i32))
}

/// The RTT relation, one detail per matrix entry.
pub fn verify_rtt(alg: &Algebra, set: IndexSet, d: usize) -> Vec<Detail> {
    let res = rtt_residual(alg, set, d);
    let n = set.dim();
    let mut out = Vec::new();
    for row in crate::tensor::all_indices(n, 2) {
        for col in crate::tensor::all_indices(n, 2) {
            let zero = res.at(&row, &col).is_none();
            out.push(Detail::new(
                format!("rtt {set} D={d} entry ({}|{})", label_tuple(set, &row), label_tuple(set, &col)),
                zero,
            ));
        }
    }
    out
}

/// Fusion, `F_k` membership, and for `k = N` the quantum-determinant factorization.
pub fn verify_fusion(alg: &Algebra, set: IndexSet, k: usize, d: usize) -> Result<Vec<Detail>> {
    require_plain(set, k)?;
    let ring = series_tensors(alg, set, d, k);
    let t = t_matrix(alg, set, d);
    let forward: Vec<usize> = (1..=k).collect();
    let backward: Vec<usize> = (1..=k).rev().collect();
    let x = ordered_shifted_product(alg, &t, &forward, k, d);
    let y = ordered_shifted_product(alg, &t, &backward, k, d);
    let h = ring.lift(&antisymmetrizer(k, set));
    let hx = ring.mul(&h, &x);
    let mut out = vec![
        Detail::new(format!("fusion {set} k={k} D={d}"), hx == ring.mul(&y, &h)),
        Detail::new(format!("membership {set} k={k} D={d}"), in_fk(&ring, &h, &x)),
    ];
    if k == set.dim() {
        let qdet = quantum_determinant(alg, set, d)?;
        let expect = ring.map(&h, &ring.base, |c| ring.base.mul(c, &qdet));
        out.push(Detail::new(format!("qdet-factorization {set} D={d}"), hx == expect));
        let z = ZMatrix::diag(set, &vec![Rat::one(); set.dim()])?;
        let viaz = bethe_series(alg, k, &z, d)?;
        out.push(Detail::new(format!("qdet-equals-B_N {set} D={d}"), viaz == qdet));
    }
    Ok(out)
}

/// `[coef_r B_N, T_ij^(s)] = 0` for `1 ≤ r ≤ d`, `1 ≤ s ≤ max_level`.
pub fn verify_centrality(alg: &Algebra, set: IndexSet, d: usize, max_level: u16) -> Result<Vec<Detail>> {
    let qdet = quantum_determinant(alg, set, d)?;
    let n = set.dim();
    let mut jobs = Vec::new();
    for r in 1..=d {
        for s in 1..=max_level {
            for i in 0..n {
                for j in 0..n {
                    jobs.push((r, s, i, j));
                }
            }
        }
    }
    jobs.par_iter()
        .map(|&(r, s, i, j)| {
            let c = alg.commutator(qdet.coeff(r), &alg.gen(i, j, s))?;
            Ok(Detail::new(
                format!("central {set} [B_N^({r}), T_{},{}^({s})]", set.label(i), set.label(j)),
                c.is_zero(),
            ))
        })
        .collect()
}

/// `B_k(u) = B_N(u) · B̂_{N−k}(u−k) / C(N,k)` together with the constant terms
/// `e_{N−k}(z)/C(N,k)` and `e_k(z)` for diagonal `Z`.
pub fn verify_hat_identity(alg: &Algebra, z: &ZMatrix, d: usize) -> Result<Vec<Detail>> {
    let set = z.set();
    let n = set.dim();
    let sr = SeriesRing::new(alg.clone(), d);
    let bn = bethe_series(alg, n, z, d)?;
    let mut out = Vec::new();
    for k in 1..=n {
        let bk = bethe_series(alg, k, z, d)?;
        let hat = hat_bethe_series(alg, n - k, z, d)?.substitute_affine(&Rat::one(), &Rat::from(-(k as i64)), alg)?;
        let rhs = sr.scale(&binomial(n as u64, k as u64).recip(), &sr.mul(&bn, &hat));
        out.push(Detail::new(format!("hat-identity {set} Z={} k={k} D={d}", z.describe()), bk == rhs));
        if z.is_diagonal() {
            let zs: Vec<Rat> = (0..n).map(|i| z.entry(i, i).clone()).collect();
            let c_b = &elementary(&zs, n - k) / &binomial(n as u64, k as u64);
            out.push(Detail::new(
                format!("constant B_{k} = e_{}(z)/C({n},{k})", n - k),
                bk.coeff(0) == &alg.from_rat(&c_b),
            ));
            let hk = hat_bethe_series(alg, k, z, d)?;
            out.push(Detail::new(format!("constant hat B_{k} = e_{k}(z)"), hk.coeff(0) == &alg.from_rat(&elementary(&zs, k))));
        }
    }
    Ok(out)
}

/// Elementary symmetric polynomial `e_k`.
pub fn elementary(z: &[Rat], k: usize) -> Rat {
    let mut e = vec![Rat::zero(); k + 1];
    e[0] = Rat::one();
    for x in z {
        for j in (1..=k).rev() {
            let t = &e[j - 1] * x;
            e[j] += &t;
        }
    }
    e[k].clone()
}

/// All series `B_1, …, B_N` (dual-path checked).
pub fn bethe_family(alg: &Algebra, z: &ZMatrix, d: usize) -> Result<Vec<Series>> {
    (1..=z.set().dim()).map(|k| bethe_series(alg, k, z, d)).collect()
}

/// Index pairs `((k,r),(l,s))` with `r,s ≥ 1`, `r+s ≤ budget`, first < second.
pub fn commutator_pairs(kmax: usize, kmin: usize, budget: usize) -> Vec<((usize, usize), (usize, usize))> {
    let mut out = Vec::new();
    for k in kmin..=kmax {
        for l in kmin..=kmax {
            for r in 1..budget {
                for s in 1..=budget - r {
                    if (k, r) < (l, s) {
                        out.push(((k, r), (l, s)));
                    }
                }
            }
        }
    }
    out
}

/// Pairwise commutators of the coefficients of `B_1, …, B_N` within `r+s ≤ budget`.
pub fn verify_bethe_commutativity(alg: &Algebra, z: &ZMatrix, budget: usize) -> Result<Vec<Detail>> {
    let set = z.set();
    let d = budget.saturating_sub(1).max(1);
    let fam = bethe_family(alg, z, d)?;
    let mut out = vec![Detail::new(format!("dual-path B_1..B_{} D={d}", set.dim()), true)];
    let checks: Result<Vec<Detail>> = commutator_pairs(set.dim(), 1, budget)
        .par_iter()
        .map(|&((k, r), (l, s))| {
            let c = alg.commutator(fam[k - 1].coeff(r), fam[l - 1].coeff(s))?;
            Ok(Detail::new(format!("[B_{k}^({r}), B_{l}^({s})] {set} Z={}", z.describe()), c.is_zero()))
        })
        .collect();
    out.extend(checks?);
    Ok(out)
}

/// Leading term of a nonzero series residual, for diagnostics.
pub fn describe_residual(alg: &Algebra, s: &Series) -> String {
    match first_nonzero(alg, s) {
        None => "0".into(),
        Some(r) => format!("u^-{r}: {:?}", s.coeff(r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from(n)
    }

    #[test]
    fn t_matrix_shape() {
        let alg = Algebra::yangian(2);
        let t = t_matrix(&alg, IndexSet::gl(2), 3);
        assert_eq!(t.len(), 4);
        assert_eq!(t.at(&[0], &[0]).unwrap().coeff(0), &alg.one());
        assert_eq!(t.at(&[0], &[1]).unwrap().coeff(0), &alg.zero());
        assert_eq!(t.at(&[1], &[0]).unwrap().coeff(2), &alg.gen(1, 0, 2));
    }

    #[test]
    fn n2_examples() {
        let alg = Algebra::yangian(2);
        let set = IndexSet::gl(2);
        let z = ZMatrix::diag(set, &[q(1), q(2)]).unwrap();
        let b1 = bethe_series(&alg, 1, &z, 3).unwrap();
        assert_eq!(b1.coeff(0), &alg.from_rat(&Rat::new(3, 2)));
        let b2 = bethe_series(&alg, 2, &z, 3).unwrap();
        let qd = quantum_determinant(&alg, set, 3).unwrap();
        assert_eq!(b2, qd);
        let tr = alg.add(&alg.gen(0, 0, 1), &alg.gen(1, 1, 1));
        assert_eq!(qd.coeff(1), &tr);
        let other = ZMatrix::diag(set, &[q(5), q(-7)]).unwrap();
        assert_eq!(bethe_series(&alg, 2, &other, 3).unwrap(), qd);
    }

    #[test]
    fn singular_hat_vanishes() {
        let alg = Algebra::yangian(2);
        let z = ZMatrix::diag(IndexSet::gl(2), &[q(0), q(3)]).unwrap();
        let h = hat_bethe_series(&alg, 2, &z, 3).unwrap();
        assert!(h.is_zero(&alg));
    }

    #[test]
    fn elementary_values() {
        let z = [q(1), q(2), q(3)];
        assert_eq!(elementary(&z, 0), q(1));
        assert_eq!(elementary(&z, 1), q(6));
        assert_eq!(elementary(&z, 2), q(11));
        assert_eq!(elementary(&z, 3), q(6));
    }

    #[test]
    fn pair_enumeration() {
        let p = commutator_pairs(2, 1, 3);
        assert!(p.iter().all(|((k, r), (l, s))| r + s <= 3 && (k, r) < (l, s)));
        assert_eq!(p.len(), 5);
    }
}
