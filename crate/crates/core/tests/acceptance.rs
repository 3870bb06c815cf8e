//! One pass/fail line per acceptance criterion, each with its time budget.

use std::process::Command;
use std::time::{Duration, Instant};

use bethe::algebra::Algebra;
use bethe::checks::{run_check, CheckParams};
use bethe::poisson::*;
use bethe::rational::binomial;
use bethe::report::{Detail, Report};
use bethe::tensor::{antisymmetrizer, ordered_antisymmetrizer, rational_ring, H_ORIENTATION};
use bethe::twisted::*;
use bethe::yangian::{bethe_series_sum, bethe_series_trace, Symmetry, ZMatrix};
use bethe::{IndexSet, Rat, Result, Ring};

type Outcome = Result<(bool, String)>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn q(n: i64) -> Rat {
    Rat::from(n)
}

fn ok(d: &[Detail]) -> bool {
    !d.is_empty() && d.iter().all(|x| x.residual_zero)
}

fn summary(parts: &[(String, &[Detail])]) -> (bool, String) {
    let pass = parts.iter().all(|(_, d)| ok(d));
    let text: Vec<String> = parts
        .iter()
        .map(|(l, d)| format!("{l} {}/{}", d.iter().filter(|x| x.residual_zero).count(), d.len()))
        .collect();
    (pass, text.join("; "))
}

fn check(name: &str, p: CheckParams) -> Result<(String, Report)> {
    let label = format!("{name}[{}]", p.set);
    Ok((label, run_check(name, &p)?))
}

fn checks(list: Vec<(&str, CheckParams)>) -> Outcome {
    let mut reports = Vec::new();
    for (name, p) in list {
        reports.push(check(name, p)?);
    }
    let parts: Vec<(String, &[Detail])> = reports.iter().map(|(l, r)| (l.clone(), r.details.as_slice())).collect();
    Ok(summary(&parts))
}

fn gl(n: usize) -> IndexSet {
    IndexSet::gl(n)
}

fn zdiag(vals: &[i64]) -> ZMatrix {
    ZMatrix::diag(gl(vals.len()), &vals.iter().map(|&v| q(v)).collect::<Vec<_>>()).unwrap()
}

fn skew(set: IndexSet) -> ZMatrix {
    ZMatrix::signed_diag(set, &(1..=set.half() as i64).map(q).collect::<Vec<_>>(), Symmetry::PrimeSkew).unwrap()
}

fn c1() -> Outcome {
    let mut parts = Vec::new();
    for n in 2..=4 {
        parts.push((format!("unitarity gl_{n}"), verify_unitarity(gl(n))));
    }
    for set in [IndexSet::so(3), IndexSet::so(4), IndexSet::sp(2), IndexSet::sp(4)] {
        parts.push((format!("R-tilde inversion {set}"), verify_rtilde_inversion(set)?));
    }
    let refs: Vec<(String, &[Detail])> = parts.iter().map(|(l, d)| (l.clone(), d.as_slice())).collect();
    Ok(summary(&refs))
}

fn c2() -> Outcome {
    let mut parts = Vec::new();
    for n in 2..=3 {
        parts.push((format!("YBE gl_{n}"), verify_ybe(gl(n))));
    }
    for set in [IndexSet::so(3), IndexSet::sp(2)] {
        parts.push((format!("mixed {set}"), verify_mixed_ybe(set)?));
    }
    let refs: Vec<(String, &[Detail])> = parts.iter().map(|(l, d)| (l.clone(), d.as_slice())).collect();
    Ok(summary(&refs))
}

fn c3() -> Outcome {
    let mut d = Vec::new();
    for n in 1..=4 {
        let set = gl(n);
        for k in 1..=n {
            let h = antisymmetrizer(k, set);
            let ring = rational_ring(set, k);
            d.push(Detail::new(format!("ordered = sum N={n} k={k}"), ordered_antisymmetrizer(k, set, H_ORIENTATION) == h));
            d.push(Detail::new(format!("H² = H N={n} k={k}"), ring.mul(&h, &h) == h));
            d.push(Detail::new(format!("tr H N={n} k={k}"), ring.trace(&h) == binomial(n as u64, k as u64)));
        }
    }
    let (pass, s) = summary(&[("antisymmetrizers".into(), &d)]);
    Ok((pass, format!("{s}; orientation {H_ORIENTATION}")))
}

fn c4() -> Outcome {
    checks(vec![("rtt", CheckParams::new(gl(2)).with_d(4)), ("rtt", CheckParams::new(gl(3)).with_d(3))])
}

fn c5() -> Outcome {
    checks(vec![("fusion", CheckParams::new(gl(2)).with_d(3)), ("fusion", CheckParams::new(gl(3)).with_d(3))])
}

fn c6() -> Outcome {
    checks(vec![
        ("bethe-commute", CheckParams::new(gl(2)).with_z(zdiag(&[1, 2])).with_budget(5)),
        ("bethe-commute", CheckParams::new(gl(3)).with_z(zdiag(&[1, 2, 3])).with_budget(4)),
    ])
}

fn c7() -> Outcome {
    checks(vec![("centrality", CheckParams::new(gl(2)).with_d(3)), ("centrality", CheckParams::new(gl(3)).with_d(3))])
}

fn c8() -> Outcome {
    checks(vec![("hat-identity", CheckParams::new(gl(2)).with_z(zdiag(&[1, 2])).with_d(4))])
}

fn c9() -> Outcome {
    let mut d = Vec::new();
    for (z, deg) in [(zdiag(&[1, 2]), 4), (zdiag(&[1, 2, 3]), 3)] {
        let alg = Algebra::yangian(z.set().dim());
        for k in 1..=z.set().dim() {
            let a = bethe_series_sum(&alg, k, &z, deg)?;
            let b = bethe_series_trace(&alg, k, &z, deg)?;
            d.push(Detail::new(format!("B_{k} {} D={deg}", z.describe()), a == b));
        }
    }
    Ok(summary(&[("dual path".into(), &d)]))
}

fn c10() -> Outcome {
    checks(vec![
        ("twisted-symmetry", CheckParams::new(IndexSet::sp(2)).with_d(4)),
        ("twisted-symmetry", CheckParams::new(IndexSet::so(3)).with_d(4)),
    ])
}

fn c11() -> Outcome {
    checks(vec![
        ("twisted-reflection", CheckParams::new(IndexSet::sp(2)).with_d(4)),
        ("twisted-reflection", CheckParams::new(IndexSet::so(3)).with_d(3)),
    ])
}

fn c12() -> Outcome {
    let sp2 = ZMatrix::diag(IndexSet::sp(2), &[q(1), q(-1)])?;
    checks(vec![
        ("twisted-commute", CheckParams::new(IndexSet::sp(2)).with_z(sp2).with_budget(4)),
        ("twisted-commute", CheckParams::new(IndexSet::so(3)).with_z(skew(IndexSet::so(3))).with_budget(3)),
    ])
}

fn c13() -> Outcome {
    checks(vec![
        ("sklyanin", CheckParams::new(IndexSet::sp(2)).with_d(4)),
        ("sklyanin", CheckParams::new(IndexSet::so(3)).with_d(4)),
    ])
}

fn c14() -> Outcome {
    let so3 = ZMatrix::signed_diag(IndexSet::so(3), &[q(2)], Symmetry::PrimeSymmetric)?;
    let (a, ra) = check("prop36", CheckParams::new(IndexSet::sp(2)).with_z(skew(IndexSet::sp(2))).with_d(3))?;
    let (b, rb) = check("prop36", CheckParams::new(IndexSet::so(3)).with_z(so3).with_d(3))?;
    let (pass, s) = summary(&[(a, &ra.details), (b, &rb.details)]);
    let scalars = format!("exchange scalars {} / {}", ra.notes["exchange_scalar"], rb.notes["exchange_scalar"]);
    Ok((pass, format!("{s}; {scalars}")))
}

fn c15() -> Outcome {
    checks(vec![
        ("rho-hom", CheckParams::new(IndexSet::sp(2)).with_d(3)),
        ("rho-hom", CheckParams::new(IndexSet::so(3)).with_d(3)),
    ])
}

fn c16() -> Outcome {
    checks(vec![
        ("image-commute", CheckParams::new(gl(3)).with_z(zdiag(&[1, 2, 3])).with_d(3)),
        ("image-commute", CheckParams::new(IndexSet::sp(2)).with_z(skew(IndexSet::sp(2))).with_d(3)),
        ("image-commute", CheckParams::new(IndexSet::so(3)).with_z(skew(IndexSet::so(3))).with_d(3)),
    ])
}

fn c17() -> Outcome {
    let a = verify_symbol_hom(2, 2, 17, 50)?;
    let b = verify_symbol_hom(2, 3, 17, 50)?;
    Ok(summary(&[("M=2".into(), &a), ("M=3".into(), &b)]))
}

fn c18() -> Outcome {
    let mut plain = Vec::new();
    for (n, m) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        plain.extend(verify_laplace_plain(&generic_z(gl(n))?, m)?);
    }
    let mut tw = Vec::new();
    for set in [IndexSet::sp(2), IndexSet::so(3)] {
        for m in 1..=3 {
            tw.extend(verify_laplace_twisted(&generic_z(set)?, m)?);
        }
    }
    Ok(summary(&[("plain".into(), &plain), ("twisted".into(), &tw)]))
}

fn c19() -> Outcome {
    let mut d = Vec::new();
    for (n, m) in [(2usize, 1u16), (2, 2), (3, 1), (3, 2)] {
        let space = PoissonSpace::plain(n, m)?;
        let z = generic_z(space.set())?;
        let expected = m as usize * n * (n + 1) / 2;
        let c = certify_independence(&space, &z, 0)?;
        d.push(Detail::new(format!("N={n} M={m} rank {}/{expected}", c.achieved), c.achieved == expected));
    }
    let text: Vec<&str> = d.iter().map(|x| x.item.as_str()).collect();
    Ok((ok(&d), text.join("; ")))
}

fn c20() -> Outcome {
    let mut d = Vec::new();
    for (n, m) in [(2usize, 1u16), (2, 2), (3, 1), (3, 2)] {
        let s = Slice::t(n, m)?;
        let r = poisson_rank_at(s.space(), s.base_point());
        let expected = m as usize * (n * n - n);
        d.push(Detail::new(format!("N={n} M={m} rank {r}/{expected}"), r == expected));
    }
    let text: Vec<&str> = d.iter().map(|x| x.item.as_str()).collect();
    Ok((ok(&d), text.join("; ")))
}

const TWISTED_CASES: [(&str, usize, u16); 5] = [("so", 3, 1), ("so", 3, 3), ("sp", 2, 1), ("sp", 2, 3), ("so", 4, 2)];

fn twisted_set(kind: &str, n: usize) -> IndexSet {
    if kind == "so" {
        IndexSet::so(n)
    } else {
        IndexSet::sp(n)
    }
}

/// `(dim s_{M,N}, D)` from the tables, with `M = 2m+1` or `2m`.
fn table(kind: &str, big_n: usize, big_m: u16) -> (usize, usize) {
    let n = big_n / 2;
    let m = big_m as usize / 2;
    match (kind, big_n % 2) {
        ("so", 1) => ((2 * m * n + m + n) * (n + 1), (2 * m * n + m + n) * n),
        ("sp", _) => ((2 * m * n + m + n + 1) * n, (2 * m * n + n - m) * n),
        _ => ((2 * n + 1) * m * n, (2 * n - 1) * m * n),
    }
}

fn c21() -> Outcome {
    let mut d = Vec::new();
    for (kind, n, m) in TWISTED_CASES {
        let set = twisted_set(kind, n);
        let expected = table(kind, n, m).0;
        let c = certify_slice(&Slice::s(set, m)?, &generic_z(set)?, expected, 0)?;
        d.push(Detail::new(format!("{set} M={m} rank {}/{expected}", c.achieved), c.achieved == expected));
    }
    let text: Vec<&str> = d.iter().map(|x| x.item.as_str()).collect();
    Ok((ok(&d), text.join("; ")))
}

fn c22() -> Outcome {
    let mut d = Vec::new();
    for (kind, n, m) in TWISTED_CASES {
        let set = twisted_set(kind, n);
        let expected = 2 * table(kind, n, m).1;
        let s = Slice::s(set, m)?;
        let r = poisson_rank_at(s.space(), s.base_point());
        d.push(Detail::new(format!("{set} M={m} rank {r}/{expected}"), r == expected));
    }
    let text: Vec<&str> = d.iter().map(|x| x.item.as_str()).collect();
    Ok((ok(&d), text.join("; ")))
}

fn c23() -> Outcome {
    let mut d = Vec::new();
    for (kind, n, m) in TWISTED_CASES {
        let set = twisted_set(kind, n);
        d.extend(verify_parity(&PoissonSpace::new(set, m)?, &generic_z(set)?)?);
    }
    Ok(summary(&[("parity".into(), &d)]))
}

fn c24() -> Outcome {
    let n = 2;
    let c = certify_classical_so2n(&generic_z(IndexSet::so(2 * n))?, 0)?;
    // dim of the Borel subalgebra of so_{2n}: n + n(n−1).
    let expected = n * n;
    Ok((c.achieved == expected && c.expected == expected, format!("so_4 rank {}/{expected}", c.achieved)))
}

fn c25(suite: Duration) -> Outcome {
    let runs: [&[&str]; 3] = [
        &["verify", "jacobian", "--kind", "so", "--N", "4", "--M", "2", "--seed", "11", "--no-timing"],
        &["verify", "symbol-hom", "--N", "2", "--M", "3", "--seed", "5", "--no-timing"],
        &["compute", "bethe", "--N", "3", "--Z", "diag:1,2,3", "--D", "3"],
    ];
    let mut identical = true;
    for args in runs {
        let out = |threads: &str| {
            Command::new(env!("CARGO_BIN_EXE_bethe"))
                .args(args)
                .args(["--threads", threads])
                .env_remove("BETHE_OUT_DIR")
                .output()
                .map(|o| (o.status.success(), o.stdout))
        };
        let (a, b, c) = (out("1")?, out("4")?, out("4")?);
        identical &= a.0 && a == b && b == c;
    }
    let within = suite < Duration::from_secs(3600);
    Ok((identical && within, format!("byte-identical across runs and thread counts: {identical}; items 1–24 took {suite:.1?}")))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "R-matrix identities", Duration::from_secs(1), c1),
        (2, "Yang–Baxter and mixed Yang–Baxter", Duration::from_secs(10), c2),
        (3, "antisymmetrizers", Duration::from_secs(10), c3),
        (4, "RTT relation", Duration::from_secs(60), c4),
        (5, "fusion", Duration::from_secs(60), c5),
        (6, "Bethe commutativity", Duration::from_secs(600), c6),
        (7, "centrality of the quantum determinant", Duration::from_secs(120), c7),
        (8, "hat identity", Duration::from_secs(60), c8),
        (9, "dual-path equality", Duration::from_secs(60), c9),
        (10, "twisted symmetry relation", Duration::from_secs(120), c10),
        (11, "reflection relation", Duration::from_secs(900), c11),
        (12, "twisted commutativity", Duration::from_secs(1800), c12),
        (13, "Sklyanin determinant and its centrality", Duration::from_secs(300), c13),
        (14, "simplified trace form", Duration::from_secs(300), c14),
        (15, "rho is a homomorphism", Duration::from_secs(300), c15),
        (16, "image commutativity", Duration::from_secs(300), c16),
        (17, "symbol homomorphism", Duration::from_secs(300), c17),
        (18, "Laplace-expansion consistency", Duration::from_secs(300), c18),
        (19, "Jacobian rank, gl_N", Duration::from_secs(120), c19),
        (20, "Poisson rank at E^(M), gl_N", Duration::from_secs(60), c20),
        (21, "Jacobian rank, twisted slices", Duration::from_secs(600), c21),
        (22, "Poisson rank at E^(M), twisted", Duration::from_secs(60), c22),
        (23, "twisted parity", Duration::from_secs(60), c23),
        (24, "classical so_2n family", Duration::from_secs(60), c24),
    ];
    let mut failures = 0;
    let mut print = |id: u32, name: &str, budget: Duration, elapsed: Duration, res: Outcome| {
        let (pass, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
        let pass = pass && elapsed <= budget;
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {id:>2} {} {name} ({:.3}s of {}s): {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    };
    let total = Instant::now();
    for (id, name, budget, f) in criteria {
        let t = Instant::now();
        let res = f();
        print(id, name, budget, t.elapsed(), res);
    }
    let suite = total.elapsed();
    let t = Instant::now();
    let res = c25(suite);
    print(25, "CLI determinism and suite wall-clock", Duration::from_secs(3600), t.elapsed(), res);
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 25 criteria passed");
}
