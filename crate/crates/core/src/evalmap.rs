//! Evaluation homomorphisms into `U(gl_N)` and the defining representation.
//!
//! `U(a_N)` is realized inside `U(gl_N)` through `F_ij = E_ij − ε_ij E_{-j,-i}`.

use rayon::prelude::*;

use crate::algebra::{Algebra, AlgebraElement, RuleTag};
use crate::error::{invalid, Result};
use crate::index::{FormType, IndexSet};
use crate::linalg::{self, Matrix};
use crate::rational::Rat;
use crate::report::Detail;
use crate::ring::Ring;
use crate::twisted::{FreeS, SElement, SMatrix};

/// `π: T_ij(u) ↦ δ_ij + E_ij u^{-1}`.
pub fn pi_apply(yangian: &Algebra, env: &Algebra, a: &AlgebraElement) -> AlgebraElement {
    yangian.substitute(a, env, |g| if g.level == 1 { env.gen(g.row as usize, g.col as usize, 1) } else { env.zero() })
}

/// `F_ij = E_ij − ε_ij E_{-j,-i}`.
pub fn f_gen(env: &Algebra, set: IndexSet, i: usize, j: usize) -> AlgebraElement {
    let (s, a, b) = set.prime(i, j);
    env.sub(&env.gen(i, j, 1), &env.scale(&Rat::from(s), &env.gen(a, b, 1)))
}

/// `ρ: S_ij(u) ↦ δ_ij + F_ij (u ± 1/2)^{-1}`, the sign fixed by the form.
#[derive(Clone, Debug)]
pub struct Rho {
    env: Algebra,
    set: IndexSet,
    form: FormType,
}

impl Rho {
    pub fn new(env: Algebra, set: IndexSet) -> Result<Self> {
        let form = set.require_signed()?;
        if env.tag() != RuleTag::Gl || env.dim() != set.dim() {
            return invalid("ρ needs U(gl_N) of matching size");
        }
        Ok(Rho { env, set, form })
    }

    pub fn env(&self) -> &Algebra {
        &self.env
    }

    pub fn set(&self) -> IndexSet {
        self.set
    }

    /// `(∓1/2)^{r−1} F_ij`.
    pub fn generator(&self, i: usize, j: usize, r: u16) -> AlgebraElement {
        let step = Rat::new(-self.form.upper_sign(), 2);
        self.env.scale(&step.pow(r as u32 - 1), &f_gen(&self.env, self.set, i, j))
    }

    pub fn apply(&self, w: &SElement) -> AlgebraElement {
        FreeS::new(self.set).substitute(w, &self.env, |g| self.generator(g.row as usize, g.col as usize, g.level))
    }

    /// `ρ(S(u))` for the generic fused constructions.
    pub fn s_matrix(&self, d: usize) -> Result<SMatrix<Algebra>> {
        SMatrix::from_fn(self.env.clone(), self.set, d, |i, j, r| self.generator(i, j, r))
    }
}

/// The defining representation `E_ij ↦ e_ij`.
pub fn defining_rep(env: &Algebra, a: &AlgebraElement) -> Result<Matrix> {
    if env.tag() != RuleTag::Gl {
        return invalid("defining representation is for U(gl_N)");
    }
    let n = env.dim();
    let mut out = vec![vec![Rat::zero(); n]; n];
    for (m, c) in a.sorted_terms() {
        let mut x = linalg::identity(n);
        for g in m.iter() {
            let mut unit = vec![vec![Rat::zero(); n]; n];
            unit[g.row as usize][g.col as usize] = Rat::one();
            x = linalg::mul(&x, &unit);
        }
        for i in 0..n {
            for j in 0..n {
                let t = &x[i][j] * &c;
                out[i][j] += &t;
            }
        }
    }
    Ok(out)
}

/// Pairwise commutators vanish in `U(gl_N)` and their representing matrices commute.
pub fn verify_image_commutativity(env: &Algebra, elements: &[(String, AlgebraElement)]) -> Result<Vec<Detail>> {
    let reps: Vec<Matrix> = elements.iter().map(|(_, e)| defining_rep(env, e)).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for a in 0..elements.len() {
        for b in a + 1..elements.len() {
            pairs.push((a, b));
        }
    }
    pairs
        .par_iter()
        .map(|&(a, b)| {
            let c = env.commutator(&elements[a].1, &elements[b].1)?;
            let (x, y) = (&reps[a], &reps[b]);
            let mats = linalg::mul(x, y) == linalg::mul(y, x);
            Ok(Detail::new(format!("[{}, {}]", elements[a].0, elements[b].0), c.is_zero() && mats))
        })
        .collect()
}
