//! Relations among R-matrices and the defining relations of `S(u)`.

use rayon::prelude::*;

use super::sfree::{symmetry_residuals, SElement, SExpander};
use super::SMatrix;
use crate::algebra::{Algebra, AlgebraElement};
use crate::error::Result;
use crate::index::IndexSet;
use crate::poly::{MPoly, PolyRing};
use crate::rational::Rat;
use crate::report::Detail;
use crate::ring::Ring;
use crate::tensor::{r_tilde, yang_r, BiLaurent, LaurentRing, TensorElement, TensorRing, UPolyTensor};
use crate::yangian::{series_tensors, t_matrix, ZMatrix};

type P = MPoly<u8>;

fn u() -> P {
    P::var(0)
}

fn v() -> P {
    P::var(1)
}

fn c(x: i64) -> P {
    P::constant(Rat::from(x))
}

struct Poly3 {
    ring: TensorRing<PolyRing<u8>>,
}

impl Poly3 {
    fn new(set: IndexSet, sites: usize) -> Self {
        Poly3 { ring: TensorRing::new(PolyRing::default(), set, sites) }
    }

    fn at(&self, r: &UPolyTensor, x: &P, sites: [usize; 2]) -> TensorElement<P> {
        let two = self.ring.with_sites(2);
        two.embed(&r.at(&PolyRing::default(), x), &sites, self.ring.sites).expect("valid sites")
    }

    fn scalar(&self, x: P) -> TensorElement<P> {
        self.ring.scalar(x)
    }
}

/// `R(u)R(−u) = (1 − u²)`.
pub fn verify_unitarity(set: IndexSet) -> Vec<Detail> {
    let p = Poly3::new(set, 2);
    let r = yang_r(set);
    let lhs = p.ring.mul(&p.at(&r, &u(), [1, 2]), &p.at(&r, &u().neg(), [1, 2]));
    vec![Detail::new(format!("R(u)R(-u) = 1-u^2 {set}"), lhs == p.scalar(c(1).sub(&u().pow(2))))]
}

/// `R̃(u)R̃(N − u) = (Nu − u²)`.
pub fn verify_rtilde_inversion(set: IndexSet) -> Result<Vec<Detail>> {
    let p = Poly3::new(set, 2);
    let r = r_tilde(set)?;
    let n = set.dim() as i64;
    let lhs = p.ring.mul(&p.at(&r, &u(), [1, 2]), &p.at(&r, &c(n).sub(&u()), [1, 2]));
    let rhs = p.scalar(u().scale(&Rat::from(n)).sub(&u().pow(2)));
    Ok(vec![Detail::new(format!("Rt(u)Rt(N-u) = Nu-u^2 {set}"), lhs == rhs)])
}

/// `R_12(u) R_13(u+v) R_23(v) = R_23(v) R_13(u+v) R_12(u)`.
pub fn verify_ybe(set: IndexSet) -> Vec<Detail> {
    let p = Poly3::new(set, 3);
    let r = yang_r(set);
    let uv = u().add(&v());
    let (a, b, d) = (p.at(&r, &u(), [1, 2]), p.at(&r, &uv, [1, 3]), p.at(&r, &v(), [2, 3]));
    let lhs = p.ring.product([&a, &b, &d]);
    let rhs = p.ring.product([&d, &b, &a]);
    vec![Detail::new(format!("Yang-Baxter {set}"), lhs == rhs)]
}

/// The three mixed equations with one `R` and two `R̃` factors.
pub fn verify_mixed_ybe(set: IndexSet) -> Result<Vec<Detail>> {
    let p = Poly3::new(set, 3);
    let r = yang_r(set);
    let rt = r_tilde(set)?;
    let uv = u().add(&v());
    let cases: [([usize; 2], [usize; 2], [usize; 2]); 3] =
        [([1, 2], [1, 3], [2, 3]), ([1, 3], [1, 2], [2, 3]), ([2, 3], [1, 2], [1, 3])];
    Ok(cases
        .iter()
        .enumerate()
        .map(|(i, &(a, b, d))| {
            let x = p.at(&r, &u(), a);
            let y = p.at(&rt, &v(), b);
            let z = p.at(&rt, &uv, d);
            let lhs = p.ring.product([&x, &y, &z]);
            let rhs = p.ring.product([&z, &y, &x]);
            Detail::new(format!("mixed Yang-Baxter #{} {set}", i + 1), lhs == rhs)
        })
        .collect())
}

/// `R(u−v) Z_1 R̃(−u−v) Z_2 = Z_2 R̃(−u−v) Z_1 R(u−v)`.
pub fn verify_z_reflection(z: &ZMatrix) -> Result<Vec<Detail>> {
    let set = z.set();
    let p = Poly3::new(set, 2);
    let one = p.ring.with_sites(1);
    let zt = one.lift(&z.tensor());
    let z1 = one.embed(&zt, &[1], 2)?;
    let z2 = one.embed(&zt, &[2], 2)?;
    let rm = p.at(&yang_r(set), &u().sub(&v()), [1, 2]);
    let rt = p.at(&r_tilde(set)?, &u().add(&v()).neg(), [1, 2]);
    let lhs = p.ring.product([&rm, &z1, &rt, &z2]);
    let rhs = p.ring.product([&z2, &rt, &z1, &rm]);
    Ok(vec![Detail::new(format!("Z reflection {set} Z={}", z.describe()), lhs == rhs)])
}

fn laurent_inputs<R: Ring>(
    lr: &LaurentRing<R>,
    src: &TensorRing<crate::series::SeriesRing<R>>,
    x: &TensorElement<crate::series::TruncatedSeries<R::Elem>>,
) -> (TensorElement<BiLaurent<R::Elem>>, TensorElement<BiLaurent<R::Elem>>) {
    (src.map(x, lr, |s| lr.from_series(s, true)), src.map(x, lr, |s| lr.from_series(s, false)))
}

fn linear<R: Ring>(lr: &LaurentRing<R>, cu: i64, cv: i64) -> BiLaurent<R::Elem> {
    lr.linear(&Rat::from(cu), &Rat::from(cv), &Rat::zero())
}

/// `T̃_1(u) R̃(u−v) T_2(v) − T_2(v) R̃(u−v) T̃_1(u)`, exact for total order `≤ d`.
pub fn mixed_residual(alg: &Algebra, set: IndexSet, d: usize) -> Result<TensorElement<BiLaurent<AlgebraElement>>> {
    set.require_signed()?;
    let lr = LaurentRing::new(alg.clone(), d as i32 + 1);
    let ring = TensorRing::new(lr.clone(), set, 2);
    let one = ring.with_sites(1);
    let src = series_tensors(alg, set, d + 1, 1);
    let (tu, tv) = laurent_inputs(&lr, &src, &t_matrix(alg, set, d + 1));
    let tt1 = one.site_prime(&one.embed(&tu, &[1], 2)?, 1)?;
    let t2 = one.embed(&tv, &[2], 2)?;
    let rt = r_tilde(set)?.at(&lr, &linear(&lr, 1, -1));
    let res = ring.sub(&ring.product([&tt1, &rt, &t2]), &ring.product([&t2, &rt, &tt1]));
    Ok(ring.map(&res, &lr, |x| lr.exact_part(x, d as i32)))
}

pub fn verify_mixed(alg: &Algebra, set: IndexSet, d: usize) -> Result<Vec<Detail>> {
    let res = mixed_residual(alg, set, d)?;
    Ok(entry_details(&format!("mixed {set} D={d}"), set, 2, |row, col| res.at(row, col).is_none()))
}

fn entry_details<F: Fn(&[usize], &[usize]) -> bool>(prefix: &str, set: IndexSet, sites: usize, zero: F) -> Vec<Detail> {
    let idx = crate::tensor::all_indices(set.dim(), sites);
    let lab = |v: &[usize]| v.iter().map(|&p| set.label(p).to_string()).collect::<Vec<_>>().join(",");
    let mut out = Vec::new();
    for row in &idx {
        for col in &idx {
            out.push(Detail::new(format!("{prefix} entry ({}|{})", lab(row), lab(col)), zero(row, col)));
        }
    }
    out
}

/// Symmetry relation residuals after expansion into `Y(gl_N)`.
pub fn verify_symmetry(ex: &SExpander, d: usize) -> Result<Vec<Detail>> {
    let set = ex.set();
    let res = symmetry_residuals(set, d)?;
    Ok(res
        .par_iter()
        .map(|((i, j, r), e)| {
            Detail::new(format!("symmetry {set} ({},{}) u^-{r}", set.label(*i), set.label(*j)), ex.expand(e).is_zero())
        })
        .collect())
}

/// Matrix form `R(u−v)S_1(u)R̃(−u−v)S_2(v) − S_2(v)R̃(−u−v)S_1(u)R(u−v)` over
/// free words; coefficients with total order `≤ d − 2` are exact.
pub fn reflection_matrix_residual(set: IndexSet, d: usize) -> Result<TensorElement<BiLaurent<SElement>>> {
    let sm = SMatrix::free(set, d)?;
    let fs = *sm.ring();
    let lr = LaurentRing::new(fs, d as i32);
    let ring = TensorRing::new(lr.clone(), set, 2);
    let one = ring.with_sites(1);
    let (su, sv) = laurent_inputs(&lr, &sm.tensors(1), sm.tensor());
    let s1 = one.embed(&su, &[1], 2)?;
    let s2 = one.embed(&sv, &[2], 2)?;
    let rm = yang_r(set).at(&lr, &linear(&lr, 1, -1));
    let rt = r_tilde(set)?.at(&lr, &linear(&lr, -1, -1));
    let res = ring.sub(&ring.product([&rm, &s1, &rt, &s2]), &ring.product([&s2, &rt, &s1, &rm]));
    Ok(ring.map(&res, &lr, |x| lr.exact_part(x, d as i32 - 2)))
}

/// Index quadruple and coefficient key of one componentwise residual.
pub type ComponentKey = ([usize; 4], (i32, i32));

/// The componentwise family `(u²−v²)[S_ij(u),S_kl(v)] − (…)` over free words,
/// exact for total order `≤ d − 2`.
pub fn reflection_component_residuals(set: IndexSet, d: usize) -> Result<Vec<(ComponentKey, SElement)>> {
    let sm = SMatrix::free(set, d)?;
    let fs = *sm.ring();
    let lr = LaurentRing::new(fs, d as i32);
    let n = set.dim();
    let su = |i: usize, j: usize| lr.from_series(&sm.series(i, j), true);
    let sv = |i: usize, j: usize| lr.from_series(&sm.series(i, j), false);
    let eps = |a: usize, b: usize| Rat::from(set.eps(a, b));
    let neg = |a: usize| set.neg(a);
    let u2v2 = lr.sub(&lr.term(-2, 0, fs.one()), &lr.term(0, -2, fs.one()));
    let upv = linear(&lr, 1, 1);
    let umv = linear(&lr, 1, -1);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let comm = lr.sub(&lr.mul(&su(i, j), &sv(k, l)), &lr.mul(&sv(k, l), &su(i, j)));
                    let lhs = lr.mul(&u2v2, &comm);
                    let t1 = lr.sub(&lr.mul(&su(k, j), &sv(i, l)), &lr.mul(&sv(k, j), &su(i, l)));
                    let t2 = lr.sub(
                        &lr.scale(&eps(k, neg(j)), &lr.mul(&su(i, neg(k)), &sv(neg(j), l))),
                        &lr.scale(&eps(i, neg(l)), &lr.mul(&sv(k, neg(i)), &su(neg(l), j))),
                    );
                    let t3 = lr.sub(&lr.mul(&su(k, neg(i)), &sv(neg(j), l)), &lr.mul(&sv(k, neg(i)), &su(neg(j), l)));
                    let rhs = lr.add(
                        &lr.sub(&lr.mul(&upv, &t1), &lr.mul(&umv, &t2)),
                        &lr.scale(&eps(i, neg(j)), &t3),
                    );
                    let res = lr.exact_part(&lr.sub(&lhs, &rhs), d as i32 - 2);
                    for (key, e) in res {
                        out.push((([i, j, k, l], key), e));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Both forms of the reflection relation, expanded into `Y(gl_N)`.
pub fn verify_reflection(ex: &SExpander, d: usize) -> Result<Vec<Detail>> {
    let set = ex.set();
    let lab = |v: &[usize]| v.iter().map(|&p| set.label(p).to_string()).collect::<Vec<_>>().join(",");
    let comp = reflection_component_residuals(set, d)?;
    let mut out: Vec<Detail> = comp
        .par_iter()
        .map(|(([i, j, k, l], (a, b)), e)| {
            Detail::new(
                format!("reflection {set} ({}) u^{} v^{}", lab(&[*i, *j, *k, *l]), -a, -b),
                ex.expand(e).is_zero(),
            )
        })
        .collect();
    let mat = reflection_matrix_residual(set, d)?;
    let entries: Vec<_> = mat.sorted_entries().into_iter().map(|(k, e)| (k, e.clone())).collect();
    let nonzero: Vec<bool> = entries
        .par_iter()
        .map(|(_, bl)| bl.values().any(|e| !ex.expand(e).is_zero()))
        .collect();
    out.push(Detail::new(format!("reflection matrix form {set} D={d}"), !nonzero.iter().any(|&x| x)));
    Ok(out)
}

/// A free-word residual family as (label, element) pairs, for substitution checks.
pub fn relation_family(set: IndexSet, d: usize) -> Result<Vec<(String, SElement)>> {
    let lab = |v: &[usize]| v.iter().map(|&p| set.label(p).to_string()).collect::<Vec<_>>().join(",");
    let mut out: Vec<(String, SElement)> = symmetry_residuals(set, d)?
        .into_iter()
        .map(|((i, j, r), e)| (format!("symmetry ({}) u^-{r}", lab(&[i, j])), e))
        .collect();
    for ((idx, (a, b)), e) in reflection_component_residuals(set, d)? {
        out.push((format!("reflection ({}) u^{} v^{}", lab(&idx), -a, -b), e));
    }
    Ok(out)
}

