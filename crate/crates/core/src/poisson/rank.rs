//! Exact Jacobian and Poisson ranks, dimension tables and seeded certificates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::index::{FormType, IndexSet};
use crate::linalg::{self, Matrix};
use crate::rational::Rat;

use super::{CurrentPoint, PoissonPoly, PoissonSpace, Var};

/// Rank of `[∂f/∂c (p)]` over `fs × coords`.
pub fn jacobian_rank(fs: &[PoissonPoly], coords: &[Var], p: &CurrentPoint) -> usize {
    let m: Matrix = fs.iter().map(|f| coords.iter().map(|&c| p.eval(&f.derivative(c))).collect()).collect();
    linalg::rank(&m)
}

/// `[{v_a, v_b}(p)]` over all coordinates of the space.
pub fn poisson_matrix(space: &PoissonSpace, p: &CurrentPoint) -> Matrix {
    let vars = space.variables();
    let n = vars.len();
    let mut m = vec![vec![Rat::zero(); n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let x = p.eval(&space.gen_bracket(vars[a], vars[b]));
            m[b][a] = -&x;
            m[a][b] = x;
        }
    }
    m
}

pub fn poisson_rank_at(space: &PoissonSpace, p: &CurrentPoint) -> usize {
    linalg::rank(&poisson_matrix(space, p))
}

/// `m` with `M = 2m+1` (`so_{2n+1}`, `sp_{2n}`) or `M = 2m` (`so_{2n}`).
pub fn m_index(set: IndexSet, big_m: u16) -> Result<usize> {
    let form = set.require_signed()?;
    let even_so = form == FormType::Orthogonal && set.dim() % 2 == 0;
    match (even_so, big_m % 2) {
        (true, 0) => Ok(big_m as usize / 2),
        (false, 1) => Ok(big_m as usize / 2),
        _ => invalid(format!("M = {big_m} has the wrong parity for {set}")),
    }
}

/// Tabulated dimensions of the current space, the slice and the half rank `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub ambient: usize,
    pub slice: usize,
    pub d: usize,
}

impl Dims {
    /// `dim g_{M,N} = MN²`, `dim t_{M,N} = MN(N+1)/2`, `D = MN(N−1)/2`.
    pub fn plain(n: usize, m: usize) -> Self {
        Dims { ambient: m * n * n, slice: m * n * (n + 1) / 2, d: m * n * (n - 1) / 2 }
    }

    /// The tables for `s_{M,N}` and `D`; `ambient` is their sum.
    pub fn twisted(set: IndexSet, big_m: u16) -> Result<Self> {
        let m = m_index(set, big_m)?;
        let n = set.half();
        let (slice, d) = match (set.require_signed()?, set.dim() % 2) {
            (FormType::Orthogonal, 1) => ((2 * m * n + m + n) * (n + 1), (2 * m * n + m + n) * n),
            (FormType::Symplectic, _) => ((2 * m * n + m + n + 1) * n, (2 * m * n + n - m) * n),
            _ => ((2 * n + 1) * m * n, (2 * n - 1) * m * n),
        };
        Ok(Dims { ambient: slice + d, slice, d })
    }
}

/// `dim f_{M,N}` from the fixed spaces of `σ`: odd levels contribute
/// `{X : X′ = −X}`, even levels `{X : X′ = X}`.
pub fn fixed_space_dim(set: IndexSet, big_m: u16) -> Result<usize> {
    set.require_signed()?;
    let n = set.dim();
    // Matrix of X ↦ X + s·X′ on the basis E_ij.
    let op = |s: i64| -> usize {
        let mut rows: Matrix = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![Rat::zero(); n * n];
                row[i * n + j] += &Rat::one();
                let (eps, a, b) = set.prime(i, j);
                row[a * n + b] += &Rat::from(s * eps);
                rows.push(row);
            }
        }
        n * n - linalg::rank(&rows)
    };
    let (odd, even) = (op(1), op(-1));
    Ok((1..=big_m as usize).map(|r| if r % 2 == 1 { odd } else { even }).sum())
}

/// A seeded rank certificate.
#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub label: String,
    pub seed: u64,
    pub attempts: usize,
    pub point: serde_json::Value,
    pub functions: Vec<String>,
    pub achieved: usize,
    pub expected: usize,
}

impl RankCertificate {
    pub fn passed(&self) -> bool {
        self.achieved == self.expected
    }
}

pub const RANK_RETRIES: usize = 5;
pub const POINT_BOUND: i64 = 3;

/// Jacobian rank of `fs` in `coords` at seeded random points. Attempts
/// `seed, seed+1, …` run in parallel; the first one reaching `expected` is
/// reported, otherwise the best.
pub fn certify_jacobian(
    label: &str,
    space: &PoissonSpace,
    fs: &[(String, PoissonPoly)],
    coords: &[Var],
    expected: usize,
    seed: u64,
) -> RankCertificate {
    let polys: Vec<PoissonPoly> = fs.iter().map(|(_, f)| f.clone()).collect();
    let derivs: Vec<Vec<PoissonPoly>> =
        polys.par_iter().map(|f| coords.iter().map(|&c| f.derivative(c)).collect()).collect();
    let runs: Vec<(u64, CurrentPoint, usize)> = (0..RANK_RETRIES as u64)
        .into_par_iter()
        .map(|a| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed + a);
            let p = CurrentPoint::random(coords, POINT_BOUND, &mut rng);
            let m: Matrix = derivs.iter().map(|row| row.iter().map(|d| p.eval(d)).collect()).collect();
            (seed + a, p, linalg::rank(&m))
        })
        .collect();
    let pick = runs.iter().position(|r| r.2 == expected).unwrap_or_else(|| {
        let best = runs.iter().map(|r| r.2).max().unwrap_or(0);
        runs.iter().position(|r| r.2 == best).unwrap_or(0)
    });
    let (s, p, achieved) = &runs[pick];
    RankCertificate {
        label: label.to_string(),
        seed: *s,
        attempts: if *achieved == expected { pick + 1 } else { RANK_RETRIES },
        point: p.to_json(space),
        functions: fs.iter().map(|(l, _)| l.clone()).collect(),
        achieved: *achieved,
        expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_agree_with_fixed_spaces() {
        for (set, ms) in [(IndexSet::so(3), [1, 3, 5]), (IndexSet::sp(2), [1, 3, 5]), (IndexSet::sp(4), [1, 3, 5])] {
            for m in ms {
                assert_eq!(Dims::twisted(set, m).unwrap().ambient, fixed_space_dim(set, m).unwrap(), "{set} M={m}");
            }
        }
        for m in [2, 4] {
            let set = IndexSet::so(4);
            assert_eq!(Dims::twisted(set, m).unwrap().ambient, fixed_space_dim(set, m).unwrap());
        }
        assert!(Dims::twisted(IndexSet::so(4), 3).is_err());
        assert_eq!(Dims::twisted(IndexSet::sp(2), 1).unwrap().slice, 2);
    }

    #[test]
    fn zero_point_has_rank_zero() {
        let s = PoissonSpace::plain(2, 2).unwrap();
        assert_eq!(poisson_rank_at(&s, &CurrentPoint::zero()), 0);
        assert_eq!(jacobian_rank(&[PoissonPoly::one()], &s.variables(), &CurrentPoint::zero()), 0);
    }
}
