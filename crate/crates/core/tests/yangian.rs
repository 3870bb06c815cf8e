use bethe::algebra::{Algebra, CommutationRule, GenIndex, RuleTag, Word, YangianRule};
use bethe::tensor::{antisymmetrizer, ordered_antisymmetrizer, rational_ring, resolve_h_orientation};
use bethe::yangian::*;
use bethe::{IndexSet, Rat, Ring};

fn q(n: i64) -> Rat {
    Rat::from(n)
}

fn all_pass(d: &[bethe::report::Detail]) -> bool {
    !d.is_empty() && d.iter().all(|x| x.residual_zero)
}

#[test]
fn rtt_holds() {
    for (n, d) in [(1, 3), (2, 4), (3, 3)] {
        let alg = Algebra::yangian(n);
        assert!(all_pass(&verify_rtt(&alg, IndexSet::gl(n), d)), "N={n}");
    }
}

/// The Yangian rule with the sign of the second correction flipped.
#[derive(Debug)]
struct Corrupted;

impl CommutationRule for Corrupted {
    fn tag(&self) -> RuleTag {
        RuleTag::Custom("corrupted")
    }
    fn bracket(&self, a: GenIndex, b: GenIndex) -> Vec<(Word, Rat)> {
        YangianRule
            .bracket(a, b)
            .into_iter()
            .map(|(w, c)| if w.len() == 1 && c.is_negative() { (w, -c) } else { (w, c) })
            .collect()
    }
}

#[test]
fn rtt_detects_corrupted_rule() {
    let alg = Algebra::new(Box::new(Corrupted), 2);
    let d = verify_rtt(&alg, IndexSet::gl(2), 2);
    assert!(d.iter().any(|x| !x.residual_zero));
}

#[test]
fn antisymmetrizer_orientation() {
    for n in 1..=4 {
        let set = IndexSet::gl(n);
        for k in 1..=n {
            let found = resolve_h_orientation(k, set);
            assert!(!found.is_empty(), "N={n} k={k}");
            assert_eq!(ordered_antisymmetrizer(k, set, found[0]), antisymmetrizer(k, set));
        }
    }
    let set = IndexSet::gl(3);
    let r = rational_ring(set, 2);
    assert_eq!(r.trace(&antisymmetrizer(2, set)), q(3));
}

#[test]
fn fusion_and_membership() {
    for n in 2..=3 {
        let set = IndexSet::gl(n);
        let alg = Algebra::yangian(n);
        for k in 1..=n {
            assert!(all_pass(&verify_fusion(&alg, set, k, 3).unwrap()), "N={n} k={k}");
        }
    }
}

#[test]
fn centrality_of_qdet() {
    for n in 2..=3 {
        let alg = Algebra::yangian(n);
        assert!(all_pass(&verify_centrality(&alg, IndexSet::gl(n), 3, 3).unwrap()));
    }
}

#[test]
fn non_central_control() {
    let alg = Algebra::yangian(2);
    let z = ZMatrix::diag(IndexSet::gl(2), &[q(1), q(2)]).unwrap();
    let b1 = bethe_series(&alg, 1, &z, 2).unwrap();
    let c = alg.commutator(b1.coeff(1), &alg.gen(0, 1, 1)).unwrap();
    assert!(!c.is_zero());
}

#[test]
fn hat_identity() {
    let alg = Algebra::yangian(2);
    let z = ZMatrix::diag(IndexSet::gl(2), &[q(1), q(2)]).unwrap();
    assert!(all_pass(&verify_hat_identity(&alg, &z, 4).unwrap()));
    let alg = Algebra::yangian(3);
    let z = ZMatrix::diag(IndexSet::gl(3), &[q(1), q(2), q(3)]).unwrap();
    assert!(all_pass(&verify_hat_identity(&alg, &z, 2).unwrap()));
}

#[test]
fn non_diagonal_z_dual_path() {
    let alg = Algebra::yangian(2);
    let set = IndexSet::gl(2);
    let z = ZMatrix::new(set, vec![vec![q(1), q(3)], vec![q(-2), q(5)]], None).unwrap();
    for k in 1..=2 {
        bethe_series(&alg, k, &z, 3).unwrap();
    }
}

#[test]
fn bethe_commutativity_n2() {
    let alg = Algebra::yangian(2);
    let z = ZMatrix::diag(IndexSet::gl(2), &[q(1), q(2)]).unwrap();
    assert!(all_pass(&verify_bethe_commutativity(&alg, &z, 5).unwrap()));
}

#[test]
fn bethe_commutativity_n3() {
    let alg = Algebra::yangian(3);
    let z = ZMatrix::diag(IndexSet::gl(3), &[q(1), q(2), q(3)]).unwrap();
    assert!(all_pass(&verify_bethe_commutativity(&alg, &z, 4).unwrap()));
}

#[test]
fn constant_term_formula() {
    let alg = Algebra::yangian(3);
    let z = ZMatrix::diag(IndexSet::gl(3), &[q(1), q(2), q(3)]).unwrap();
    let b2 = bethe_series(&alg, 2, &z, 2).unwrap();
    assert_eq!(b2.coeff(0), &alg.from_rat(&q(2)));
}

#[test]
fn two_by_two_qdet_formula() {
    let alg = Algebra::yangian(2);
    let set = IndexSet::gl(2);
    let d = 3;
    let sh = |i, j, p: i64| t_series(&alg, i, j, d).substitute_affine(&q(1), &q(-p), &alg).unwrap();
    let sr = bethe::series::SeriesRing::new(alg.clone(), d);
    let expect = sr.sub(&sr.mul(&sh(0, 0, 1), &sh(1, 1, 2)), &sr.mul(&sh(1, 0, 1), &sh(0, 1, 2)));
    assert_eq!(quantum_determinant(&alg, set, d).unwrap(), expect);
}
