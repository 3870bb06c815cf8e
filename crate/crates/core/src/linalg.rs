//! Exact linear algebra over ℚ: fraction-free rank and Gauss–Jordan inverse.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::rational::Rat;

pub type Matrix = Vec<Vec<Rat>>;

/// Rank via Bareiss elimination after clearing denominators row by row.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
}

pub fn mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Matrix {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![Rat::zero(); p]; n];
    for i in 0..n {
        for k in 0..m {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..p {
                if !b[k][j].is_zero() {
                    out[i][j] += &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn inverse(m: &[Vec<Rat>]) -> Result<Matrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return invalid("inverse of a non-square matrix");
    }
    let mut a: Matrix = m.to_vec();
    let mut inv = identity(n);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return invalid("singular matrix");
        };
        a.swap(c, p);
        inv.swap(c, p);
        let piv = a[c][c].recip();
        for j in 0..n {
            a[c][j] = &a[c][j] * &piv;
            inv[c][j] = &inv[c][j] * &piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let (x, y) = (&f * &a[c][j], &f * &inv[c][j]);
                    a[i][j] -= &x;
                    inv[i][j] -= &y;
                }
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rat {
        Rat::from(n)
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![q(0), q(0)]]), 0);
        assert_eq!(rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(&[vec![Rat::new(1, 2), q(1)], vec![q(1), q(3)]]), 2);
        assert_eq!(rank(&[vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)], vec![q(0), q(1), q(1)]]), 2);
    }

    fn gauss_rank(m: &[Vec<Rat>]) -> usize {
        let mut a = m.to_vec();
        let (rows, cols) = (a.len(), a.first().map_or(0, |r| r.len()));
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in r + 1..rows {
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= &t;
                }
            }
            r += 1;
        }
        r
    }

    proptest! {
        #[test]
        fn rank_matches_gauss(v in proptest::collection::vec(-3i64..=3, 20), den in 1i64..=3) {
            let m: Matrix = v.chunks(5).map(|r| r.iter().map(|&x| Rat::new(x, den)).collect()).collect();
            prop_assert_eq!(rank(&m), gauss_rank(&m));
            let t: Matrix = (0..5).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect();
            prop_assert_eq!(rank(&t), rank(&m));
        }

        #[test]
        fn inverse_is_two_sided(v in proptest::collection::vec(-4i64..=4, 9)) {
            let m: Matrix = v.chunks(3).map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            if let Ok(inv) = inverse(&m) {
                prop_assert_eq!(mul(&m, &inv), identity(3));
                prop_assert_eq!(mul(&inv, &m), identity(3));
            } else {
                prop_assert!(rank(&m) < 3);
            }
        }
    }
}
