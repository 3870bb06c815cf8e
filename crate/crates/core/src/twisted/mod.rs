//! Twisted Yangians `Y(gl_N, σ)`: the matrix `S(u) = T(u)T̃(−u)`, its
//! symmetry and reflection relations, the fused series `S(u,k)`, `Z(u,k)`,
//! the Bethe series `A_k(u)`, `Â_k(u)` and the Sklyanin determinant.
//!
//! Every fused construction is generic over the ring the entries of `S(u)`
//! live in: free `S`-words, `Y(gl_N)` after expansion, or `U(gl_N)` through `ρ`.

pub mod relations;
pub mod sfree;

use rayon::prelude::*;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{invalid, Result};
use crate::index::{FormType, IndexSet};
use crate::rational::{binomial, Rat};
use crate::report::Detail;
use crate::ring::{Rationals, Ring};
use crate::series::{expand_rational, RationalFactor, SeriesRing, TruncatedSeries};
use crate::tensor::{
    antisymmetrizer, in_fk, qmat, substitute_entries, Orientation, OrientationPair, TensorElement, TensorRing,
};
use crate::yangian::{commutator_pairs, quantum_determinant, Symmetry, ZMatrix};

pub use relations::*;
pub use sfree::{reduce_symmetry, symmetry_residuals, FreeS, SElement, SExpander, SWord};

pub type STensor<E> = TensorElement<TruncatedSeries<E>>;

/// The convention fixed by the membership and Sklyanin certificates.
pub const S_ORIENTATION: OrientationPair =
    OrientationPair { outer: Orientation::Increasing, inner: Orientation::Increasing };

/// `S(u)` with entries in a coefficient ring, truncated at `u^{-d}`.
#[derive(Clone, Debug)]
pub struct SMatrix<R: Ring> {
    ring: R,
    set: IndexSet,
    d: usize,
    entries: STensor<R::Elem>,
}

impl<R: Ring> SMatrix<R> {
    /// Entries `S_ij(u) = δ_ij + Σ_r f(i,j,r) u^{-r}`.
    pub fn from_fn<F>(ring: R, set: IndexSet, d: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize, u16) -> R::Elem,
    {
        set.require_signed()?;
        let sr = SeriesRing::new(ring.clone(), d);
        let tr = TensorRing::new(sr.clone(), set, 1);
        let mut entries = tr.empty();
        let n = set.dim();
        for i in 0..n {
            for j in 0..n {
                let mut c = vec![if i == j { ring.one() } else { ring.zero() }];
                c.extend((1..=d).map(|r| f(i, j, r as u16)));
                tr.add_entry(&mut entries, (i as u64, j as u64), TruncatedSeries::from_coeffs(c));
            }
        }
        Ok(SMatrix { ring, set, d, entries })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn set(&self) -> IndexSet {
        self.set
    }

    pub fn trunc(&self) -> usize {
        self.d
    }

    pub fn series(&self, i: usize, j: usize) -> TruncatedSeries<R::Elem> {
        self.entries
            .get(i as u64, j as u64)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(&self.ring, self.d))
    }

    /// `S(u)` as a one-site tensor.
    pub fn tensor(&self) -> &STensor<R::Elem> {
        &self.entries
    }

    pub fn series_ring(&self) -> SeriesRing<R> {
        SeriesRing::new(self.ring.clone(), self.d)
    }

    pub fn tensors(&self, sites: usize) -> TensorRing<SeriesRing<R>> {
        TensorRing::new(self.series_ring(), self.set, sites)
    }

    /// `S(u + shift)`.
    pub fn shifted(&self, shift: &Rat) -> STensor<R::Elem> {
        substitute_entries(&self.ring, &self.entries, &Rat::one(), shift).expect("a = 1")
    }
}

impl SMatrix<FreeS> {
    pub fn free(set: IndexSet, d: usize) -> Result<Self> {
        let fs = FreeS::new(set);
        Self::from_fn(fs, set, d, |i, j, r| fs.gen(i, j, r))
    }
}

impl SMatrix<Algebra> {
    /// `S(u)` inside `Y(gl_N)`.
    pub fn yangian(ex: &SExpander, d: usize) -> Result<Self> {
        Self::from_fn(ex.algebra().clone(), ex.set(), d, |i, j, r| ex.generator(i, j, r))
    }
}

/// `g_c(u) = −1/(c − 2u) = Σ_m c^m / 2^{m+1} · u^{-m-1}`.
fn inverse_linear(c: i64, d: usize) -> TruncatedSeries<Rat> {
    let mut v = vec![Rat::zero(); d + 1];
    let mut term = Rat::new(1, 2);
    for slot in v.iter_mut().skip(1) {
        *slot = term.clone();
        term = &term * &Rat::new(c, 2);
    }
    TruncatedSeries::from_coeffs(v)
}

/// `R̃(c − 2u) / (c − 2u) = id + Q·g_c(u)` on two sites.
pub fn normalized_rtilde<R: Ring>(ring: &TensorRing<SeriesRing<R>>, c: i64) -> Result<STensor<R::Elem>> {
    let two = ring.with_sites(2);
    let g = ring.base.lift(&inverse_linear(c, ring.base.trunc));
    let mut out = two.identity();
    for (k, q) in qmat(ring.set)?.entries() {
        two.add_entry(&mut out, *k, ring.base.scale(q, &g));
    }
    Ok(out)
}

/// Nested ordered product `∏_p (X_p · ∏_{q>p} N_pq)` over local indices
/// `1..=m` placed at global `sites`, with `N_pq` normalized at `c = p+q+offset`.
fn chain<R: Ring, F>(
    ring: &TensorRing<SeriesRing<R>>,
    sites: &[usize],
    mut single: F,
    offset: i64,
    orient: OrientationPair,
) -> Result<Vec<STensor<R::Elem>>>
where
    F: FnMut(usize) -> Result<STensor<R::Elem>>,
{
    let n = ring.sites;
    let m = sites.len();
    let one = ring.with_sites(1);
    let two = ring.with_sites(2);
    let mut out = Vec::new();
    for p in orient.outer.order(1..=m) {
        out.push(one.embed(&single(p)?, &[sites[p - 1]], n)?);
        for q in orient.inner.order(p + 1..=m) {
            let f = normalized_rtilde(ring, p as i64 + q as i64 + offset)?;
            out.push(two.embed(&f, &[sites[p - 1], sites[q - 1]], n)?);
        }
    }
    Ok(out)
}

fn check_k(set: IndexSet, k: usize, allow_zero: bool) -> Result<()> {
    if (k == 0 && !allow_zero) || k > set.dim() {
        return invalid(format!("k = {k} outside {}..={}", if allow_zero { 0 } else { 1 }, set.dim()));
    }
    Ok(())
}

fn s_factors<R: Ring>(
    sm: &SMatrix<R>,
    ring: &TensorRing<SeriesRing<R>>,
    sites: &[usize],
    orient: OrientationPair,
) -> Result<Vec<STensor<R::Elem>>> {
    chain(ring, sites, |p| Ok(sm.shifted(&Rat::from(-(p as i64)))), 0, orient)
}

fn z_factors<R: Ring>(
    z: &ZMatrix,
    ring: &TensorRing<SeriesRing<R>>,
    sites: &[usize],
    offset: i64,
    orient: OrientationPair,
) -> Result<Vec<STensor<R::Elem>>> {
    let zt = ring.with_sites(1).lift(&z.tensor());
    chain(ring, sites, |_| Ok(zt.clone()), offset, orient)
}

fn require_tagged(z: &ZMatrix) -> Result<()> {
    z.set().require_signed()?;
    if z.symmetry() == Symmetry::None {
        return invalid("Z must satisfy Z′ = Z or Z′ = −Z");
    }
    Ok(())
}

/// `S(u,k)` on `k` sites.
pub fn fused_s<R: Ring>(sm: &SMatrix<R>, k: usize, orient: OrientationPair) -> Result<STensor<R::Elem>> {
    check_k(sm.set, k, false)?;
    let ring = sm.tensors(k);
    let sites: Vec<usize> = (1..=k).collect();
    Ok(ring.product(&s_factors(sm, &ring, &sites, orient)?))
}

/// `Z(u + shift, k)` with rational entries; `shift` must be a half-integer.
pub fn fused_z(z: &ZMatrix, k: usize, shift: &Rat, d: usize, orient: OrientationPair) -> Result<STensor<Rat>> {
    require_tagged(z)?;
    check_k(z.set(), k, true)?;
    let twice = shift * &Rat::from(2);
    if !twice.is_integer() {
        return invalid("shift must be a half-integer");
    }
    let ring = TensorRing::new(SeriesRing::new(Rationals, d), z.set(), k);
    let sites: Vec<usize> = (1..=k).collect();
    Ok(ring.product(&z_factors(z, &ring, &sites, -twice.to_i64().expect("integer"), orient)?))
}

/// `A_k(u) = tr(H_N · S_{1..k}(u,k) · I(u) · Z_{k+1..N}(u + N/2 − k, N − k))`.
///
/// `H_N` is multiplied in first so only its rows are ever carried.
pub fn twisted_bethe<R: Ring>(
    sm: &SMatrix<R>,
    z: &ZMatrix,
    k: usize,
    orient: OrientationPair,
) -> Result<TruncatedSeries<R::Elem>> {
    require_tagged(z)?;
    let set = sm.set;
    check_k(set, k, true)?;
    let n = set.dim();
    let ring = sm.tensors(n);
    let mut factors = s_factors(sm, &ring, &(1..=k).collect::<Vec<_>>(), orient)?;
    let two = ring.with_sites(2);
    for p in orient.outer.order(1..=k) {
        for q in orient.inner.order(k + 1..=n) {
            let f = normalized_rtilde(&ring, (p + q) as i64)?;
            factors.push(two.embed(&f, &[p, q], n)?);
        }
    }
    let zsites: Vec<usize> = (k + 1..=n).collect();
    factors.extend(z_factors(z, &ring, &zsites, 2 * k as i64 - n as i64, orient)?);
    let mut acc = ring.lift(&antisymmetrizer(n, set));
    for f in &factors {
        acc = ring.mul_tensors(&acc, f);
    }
    Ok(ring.trace(&acc))
}

/// Inverse `Ŝ(u,k)` of the fused matrix.
pub fn fused_s_inverse<R: Ring>(sm: &SMatrix<R>, k: usize, orient: OrientationPair) -> Result<STensor<R::Elem>> {
    let x = fused_s(sm, k, orient)?;
    let flat = TensorRing::new(sm.ring.clone(), sm.set, k);
    let inv = flat.to_series(&x, sm.d).invert(&flat)?;
    Ok(flat.from_series(&inv))
}

/// `Â_k(u) = tr_k(H_k · Ŝ(u,k) · Z(u + N/2, k))`; `Â_0 = 1`.
pub fn hat_twisted_bethe<R: Ring>(
    sm: &SMatrix<R>,
    z: &ZMatrix,
    k: usize,
    orient: OrientationPair,
) -> Result<TruncatedSeries<R::Elem>> {
    require_tagged(z)?;
    check_k(sm.set, k, true)?;
    if k == 0 {
        return Ok(TruncatedSeries::one(&sm.ring, sm.d));
    }
    let ring = sm.tensors(k);
    let sites: Vec<usize> = (1..=k).collect();
    let mut acc = ring.mul_tensors(&ring.lift(&antisymmetrizer(k, sm.set)), &fused_s_inverse(sm, k, orient)?);
    for f in z_factors(z, &ring, &sites, -(sm.set.dim() as i64), orient)? {
        acc = ring.mul_tensors(&acc, &f);
    }
    Ok(ring.trace(&acc))
}

/// The simplified form `tr_k(H_k · Ŝ(u,k) · Z_1⋯Z_k)`.
pub fn hat_twisted_simple<R: Ring>(
    sm: &SMatrix<R>,
    z: &ZMatrix,
    k: usize,
    orient: OrientationPair,
) -> Result<TruncatedSeries<R::Elem>> {
    check_k(sm.set, k, false)?;
    let ring = sm.tensors(k);
    let one = ring.with_sites(1);
    let zt = one.lift(&z.tensor());
    let mut acc = ring.mul_tensors(&ring.lift(&antisymmetrizer(k, sm.set)), &fused_s_inverse(sm, k, orient)?);
    for p in 1..=k {
        acc = ring.mul_tensors(&acc, &one.embed(&zt, &[p], k)?);
    }
    Ok(ring.trace(&acc))
}

/// `θ(u)`: `1 + N/(1−2u)` for `sp_N`, `1` for `so_N`.
pub fn theta(set: IndexSet, d: usize) -> Result<TruncatedSeries<Rat>> {
    match set.require_signed()? {
        FormType::Symplectic => expand_rational(&RationalFactor::theta_sp(set.dim()), d),
        FormType::Orthogonal => Ok(TruncatedSeries::one(&Rationals, d)),
    }
}

fn tag(set: IndexSet, z: &ZMatrix) -> String {
    format!("{set} Z={}", z.describe())
}

/// Any tagged `Z`; the Sklyanin determinant does not depend on it.
fn neutral_z(set: IndexSet) -> Result<ZMatrix> {
    ZMatrix::signed_diag(set, &vec![Rat::zero(); set.half()], Symmetry::PrimeSymmetric)
}

/// `S(u,k) ∈ F_k` for `2 ≤ k ≤ N` and `H_N S(u,N) = H_N · A_N(u)`, in `Y(gl_N)`.
pub fn verify_fused_membership(ex: &SExpander, d: usize, orient: OrientationPair) -> Result<Vec<Detail>> {
    let set = ex.set();
    let n = set.dim();
    let sm = SMatrix::yangian(ex, d)?;
    let mut out = Vec::new();
    for k in 1..=n {
        let ring = sm.tensors(k);
        let x = fused_s(&sm, k, orient)?;
        let h = ring.lift(&antisymmetrizer(k, set));
        out.push(Detail::new(format!("membership S(u,{k}) {set} {orient} D={d}"), in_fk(&ring, &h, &x)));
        if k == n {
            let an = twisted_bethe(&sm, &neutral_z(set)?, n, orient)?;
            let hx = ring.mul(&h, &x);
            let expect = ring.map(&h, &ring.base, |c| ring.base.mul(c, &an));
            out.push(Detail::new(format!("H_N S(u,N) = H_N A_N {set} {orient} D={d}"), hx == expect));
        }
    }
    Ok(out)
}

/// `A_N(u) θ(u) = B_N(u) B_N(N − u + 1)` in `Y(gl_N)`.
pub fn sklyanin_residual(ex: &SExpander, d: usize, orient: OrientationPair) -> Result<TruncatedSeries<AlgebraElement>> {
    let set = ex.set();
    let n = set.dim();
    let alg = ex.algebra();
    let sr = SeriesRing::new(alg.clone(), d);
    let sm = SMatrix::yangian(ex, d)?;
    let an = twisted_bethe(&sm, &neutral_z(set)?, n, orient)?;
    let lhs = sr.mul(&an, &sr.lift(&theta(set, d)?));
    let qdet = quantum_determinant(alg, IndexSet::plain(n)?, d)?;
    let reflected = qdet.substitute_affine(&Rat::from(-1), &Rat::from(n as i64 + 1), alg)?;
    Ok(sr.sub(&lhs, &sr.mul(&qdet, &reflected)))
}

pub fn verify_sklyanin(ex: &SExpander, d: usize, orient: OrientationPair) -> Result<Vec<Detail>> {
    let set = ex.set();
    let res = sklyanin_residual(ex, d, orient)?;
    Ok((0..=d)
        .map(|r| Detail::new(format!("sklyanin {set} {orient} u^-{r}"), ex.algebra().is_zero(res.coeff(r))))
        .collect())
}

/// `[coef_r A_N, S_ij^(s)] = 0` for `1 ≤ r ≤ d`, `1 ≤ s ≤ max_level`.
pub fn verify_sklyanin_centrality(ex: &SExpander, d: usize, max_level: u16) -> Result<Vec<Detail>> {
    let set = ex.set();
    let n = set.dim();
    let alg = ex.algebra();
    let sm = SMatrix::yangian(ex, d)?;
    let an = twisted_bethe(&sm, &neutral_z(set)?, n, S_ORIENTATION)?;
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
            let c = alg.commutator(an.coeff(r), &ex.generator(i, j, s))?;
            Ok(Detail::new(
                format!("central {set} [A_N^({r}), S_{},{}^({s})]", set.label(i), set.label(j)),
                c.is_zero(),
            ))
        })
        .collect()
}

/// Orientation pairs passing both membership and the Sklyanin identity.
pub fn resolve_s_orientation(ex: &SExpander, d: usize) -> Result<Vec<OrientationPair>> {
    let mut ok = Vec::new();
    for o in OrientationPair::all() {
        let pass = |v: Vec<Detail>| !v.is_empty() && v.iter().all(|x| x.residual_zero);
        if pass(verify_fused_membership(ex, d, o)?) && pass(verify_sklyanin(ex, d, o)?) {
            ok.push(o);
        }
    }
    Ok(ok)
}

/// The family `A_1, …, A_N` in `Y(gl_N)`.
pub fn twisted_family(ex: &SExpander, z: &ZMatrix, d: usize) -> Result<Vec<TruncatedSeries<AlgebraElement>>> {
    let sm = SMatrix::yangian(ex, d)?;
    (1..=ex.set().dim()).map(|k| twisted_bethe(&sm, z, k, S_ORIENTATION)).collect()
}

/// `[coef_r A_k, coef_s A_l] = 0` within `r + s ≤ budget`.
pub fn verify_twisted_commutativity(ex: &SExpander, z: &ZMatrix, budget: usize) -> Result<Vec<Detail>> {
    let set = ex.set();
    let d = budget.saturating_sub(1).max(1);
    let fam = twisted_family(ex, z, d)?;
    let alg = ex.algebra();
    commutator_pairs(set.dim(), 1, budget)
        .par_iter()
        .map(|&((k, r), (l, s))| {
            let c = alg.commutator(fam[k - 1].coeff(r), fam[l - 1].coeff(s))?;
            Ok(Detail::new(format!("[A_{k}^({r}), A_{l}^({s})] {}", tag(set, z)), c.is_zero()))
        })
        .collect()
}

/// `A_k(u)` against `A_N(u) · Â_{N−k}(u−k)` scaled by `1/C(N,k)` and by `C(N,k)`.
/// Returns the details for the first normalization and which scalings held.
pub fn verify_twisted_hat_identity(ex: &SExpander, z: &ZMatrix, d: usize) -> Result<(Vec<Detail>, Vec<String>)> {
    let set = ex.set();
    let n = set.dim();
    let alg = ex.algebra();
    let sr = SeriesRing::new(alg.clone(), d);
    let sm = SMatrix::yangian(ex, d)?;
    let an = twisted_bethe(&sm, z, n, S_ORIENTATION)?;
    let mut details = Vec::new();
    let (mut div_ok, mut mul_ok) = (true, true);
    for k in 1..=n {
        let ak = twisted_bethe(&sm, z, k, S_ORIENTATION)?;
        let hat = hat_twisted_bethe(&sm, z, n - k, S_ORIENTATION)?.substitute_affine(
            &Rat::one(),
            &Rat::from(-(k as i64)),
            alg,
        )?;
        let prod = sr.mul(&an, &hat);
        let c = binomial(n as u64, k as u64);
        let div = ak == sr.scale(&c.recip(), &prod);
        let mul = ak == sr.scale(&c, &prod);
        div_ok &= div;
        mul_ok &= mul;
        details.push(Detail::new(format!("A_{k} = A_N hat A_{} (u-{k}) / C({n},{k}) {}", n - k, tag(set, z)), div));
    }
    let mut held = Vec::new();
    if div_ok {
        held.push("divide".to_string());
    }
    if mul_ok {
        held.push("multiply".to_string());
    }
    Ok((details, held))
}

/// `Â_k` from its definition against the simplified trace form, `1 ≤ k ≤ N`.
pub fn verify_simplified_hat(ex: &SExpander, z: &ZMatrix, d: usize) -> Result<Vec<Detail>> {
    require_tagged(z)?;
    let set = ex.set();
    let sm = SMatrix::yangian(ex, d)?;
    (1..=set.dim())
        .map(|k| {
            let a = hat_twisted_bethe(&sm, z, k, S_ORIENTATION)?;
            let b = hat_twisted_simple(&sm, z, k, S_ORIENTATION)?;
            Ok(Detail::new(format!("hat A_{k} simplified {} D={d}", tag(set, z)), a == b))
        })
        .collect()
}

/// `λ` with `Z_1 Q Z_2 H_2 = λ · Z_1 Z_2 H_2`, so that `Z_1 R̃(u) Z_2 H_2 = (u − λ) Z_1 Z_2 H_2`;
/// `None` when the two sides are not proportional.
pub fn hat_exchange_scalar(z: &ZMatrix) -> Result<Option<Rat>> {
    let set = z.set();
    let r = crate::tensor::rational_ring(set, 2);
    let one = r.with_sites(1);
    let z1 = one.embed(&z.tensor(), &[1], 2)?;
    let z2 = one.embed(&z.tensor(), &[2], 2)?;
    let h = antisymmetrizer(2, set);
    let lhs = r.product([&z1, &qmat(set)?, &z2, &h]);
    let base = r.product([&z1, &z2, &h]);
    if r.is_zero(&lhs) {
        return Ok(Some(Rat::zero()));
    }
    let Some((k, b)) = base.sorted_entries().first().map(|(k, b)| (*k, (*b).clone())) else {
        return Ok(None);
    };
    let Some(a) = lhs.get(k.0, k.1) else { return Ok(None) };
    let lambda = a / &b;
    Ok((r.scale(&lambda, &base) == lhs).then_some(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_linear_series() {
        let g = inverse_linear(3, 3);
        assert_eq!(g.coeffs(), &[Rat::zero(), Rat::new(1, 2), Rat::new(3, 4), Rat::new(9, 8)]);
    }

    #[test]
    fn fused_s_degenerate_cases() {
        let set = IndexSet::sp(2);
        let sm = SMatrix::free(set, 2).unwrap();
        let s1 = fused_s(&sm, 1, S_ORIENTATION).unwrap();
        assert_eq!(s1, sm.shifted(&Rat::from(-1)));
        let s2 = fused_s(&sm, 2, S_ORIENTATION).unwrap();
        let flat = TensorRing::new(*sm.ring(), set, 2);
        assert_eq!(flat.to_series(&s2, 2).coeff(0), &flat.identity());
    }

    #[test]
    fn fused_z_trivial() {
        let set = IndexSet::sp(2);
        let z = ZMatrix::signed_diag(set, &[Rat::one()], Symmetry::PrimeSkew).unwrap();
        let z0 = fused_z(&z, 0, &Rat::zero(), 2, S_ORIENTATION).unwrap();
        assert_eq!(z0.sites(), 0);
        let z1 = fused_z(&z, 1, &Rat::new(1, 2), 2, S_ORIENTATION).unwrap();
        let ring = TensorRing::new(SeriesRing::new(Rationals, 2), set, 1);
        assert_eq!(z1, ring.lift(&z.tensor()));
        let plain = ZMatrix::diag(set, &[Rat::one(), Rat::from(2)]).unwrap();
        assert!(fused_z(&plain, 1, &Rat::zero(), 2, S_ORIENTATION).is_err());
    }
}
