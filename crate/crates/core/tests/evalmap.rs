use bethe::algebra::Algebra;
use bethe::evalmap::*;
use bethe::report::Detail;
use bethe::series::{SeriesRing, TruncatedSeries};
use bethe::twisted::{relation_family, twisted_bethe, SMatrix, S_ORIENTATION};
use bethe::yangian::{bethe_series, rtt_residual, Symmetry, ZMatrix};
use bethe::{IndexSet, Rat, Ring};

fn q(n: i64) -> Rat {
    Rat::from(n)
}

fn all_pass(d: &[Detail]) -> bool {
    !d.is_empty() && d.iter().all(|x| x.residual_zero)
}

#[test]
fn pi_on_generators() {
    let (y, env) = (Algebra::yangian(2), Algebra::gl(2));
    assert_eq!(pi_apply(&y, &env, &y.gen(0, 1, 1)), env.gen(0, 1, 1));
    assert!(pi_apply(&y, &env, &y.gen(0, 1, 2)).is_zero());
    let c = y.commutator(&y.gen(0, 1, 1), &y.gen(1, 0, 1)).unwrap();
    let lhs = pi_apply(&y, &env, &c);
    assert_eq!(lhs, env.commutator(&env.gen(0, 1, 1), &env.gen(1, 0, 1)).unwrap());
}

#[test]
fn pi_kills_rtt_residual() {
    let (y, env) = (Algebra::yangian(2), Algebra::gl(2));
    let res = rtt_residual(&y, IndexSet::gl(2), 3);
    for (_, bl) in res.entries() {
        for e in bl.values() {
            assert!(pi_apply(&y, &env, e).is_zero());
        }
    }
}

#[test]
fn pi_of_b2_matches_direct_formula() {
    let (y, env) = (Algebra::yangian(2), Algebra::gl(2));
    let z = ZMatrix::diag(IndexSet::gl(2), &[q(1), q(2)]).unwrap();
    let d = 3;
    let b2 = bethe_series(&y, 2, &z, d).unwrap();
    let sr = SeriesRing::new(env.clone(), d);
    let t = |i: usize, j: usize, p: i64| {
        let mut c = vec![if i == j { env.one() } else { env.zero() }, env.gen(i, j, 1)];
        c.resize(d + 1, env.zero());
        TruncatedSeries::from_coeffs(c).substitute_affine(&q(1), &q(-p), &env).unwrap()
    };
    let qdet = sr.sub(&sr.mul(&t(0, 0, 1), &t(1, 1, 2)), &sr.mul(&t(1, 0, 1), &t(0, 1, 2)));
    for r in 0..=d {
        // B_N carries no Z factors: it is the quantum determinant itself.
        assert_eq!(pi_apply(&y, &env, b2.coeff(r)), *qdet.coeff(r), "u^-{r}");
    }
}

#[test]
fn pi_images_commute() {
    let n = 3;
    let (y, env) = (Algebra::yangian(n), Algebra::gl(n));
    let z = ZMatrix::diag(IndexSet::gl(n), &[q(1), q(2), q(3)]).unwrap();
    let mut elems = Vec::new();
    for k in 1..=n {
        let b = bethe_series(&y, k, &z, 3).unwrap();
        for r in 1..=3 {
            elems.push((format!("pi B_{k}^({r})"), pi_apply(&y, &env, b.coeff(r))));
        }
    }
    assert!(all_pass(&verify_image_commutativity(&env, &elems).unwrap()));
}

#[test]
fn image_commutativity_negative_control() {
    let env = Algebra::gl(2);
    let elems = vec![("E12".to_string(), env.gen(0, 1, 1)), ("E21".to_string(), env.gen(1, 0, 1))];
    assert!(!all_pass(&verify_image_commutativity(&env, &elems).unwrap()));
}

#[test]
fn rho_kills_relations() {
    for set in [IndexSet::sp(2), IndexSet::so(3)] {
        let rho = Rho::new(Algebra::gl(set.dim()), set).unwrap();
        let fam = relation_family(set, 3).unwrap();
        assert!(fam.len() > 20);
        for (label, e) in &fam {
            assert!(rho.apply(e).is_zero(), "{set} {label}");
        }
    }
}

#[test]
fn rho_images_commute() {
    for (set, half) in [(IndexSet::sp(2), vec![q(1)]), (IndexSet::so(3), vec![q(1)])] {
        let rho = Rho::new(Algebra::gl(set.dim()), set).unwrap();
        let z = ZMatrix::signed_diag(set, &half, Symmetry::PrimeSkew).unwrap();
        let d = 3;
        let direct = rho.s_matrix(d).unwrap();
        let free = SMatrix::free(set, d).unwrap();
        let mut elems = Vec::new();
        for k in 1..=set.dim() {
            let a = twisted_bethe(&direct, &z, k, S_ORIENTATION).unwrap();
            let w = twisted_bethe(&free, &z, k, S_ORIENTATION).unwrap();
            for r in 1..=d {
                assert_eq!(rho.apply(w.coeff(r)), *a.coeff(r), "{set} k={k} r={r}");
                elems.push((format!("rho A_{k}^({r})"), a.coeff(r).clone()));
            }
        }
        assert!(all_pass(&verify_image_commutativity(rho.env(), &elems).unwrap()), "{set}");
    }
}
