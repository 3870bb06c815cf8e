//! Named verification suites with their default sizes.

use serde_json::{json, Map, Value};

use crate::algebra::Algebra;
use crate::error::{invalid, Result};
use crate::evalmap::{pi_apply, verify_image_commutativity, Rho};
use crate::index::{FormType, IndexSet};
use crate::poisson::{self, Dims, PoissonSpace, Slice};
use crate::rational::Rat;
use crate::report::{Conventions, Detail, Report};
use crate::tensor::H_ORIENTATION;
use crate::twisted::{self, relation_family, twisted_bethe, SExpander, S_ORIENTATION};
use crate::yangian::{self, bethe_series, Symmetry, ZMatrix};

pub const CHECK_NAMES: [&str; 17] = [
    "rtt",
    "fusion",
    "bethe-commute",
    "centrality",
    "hat-identity",
    "twisted-symmetry",
    "twisted-reflection",
    "twisted-commute",
    "sklyanin",
    "prop36",
    "rho-hom",
    "image-commute",
    "poisson-jacobi",
    "symbol-hom",
    "jacobian",
    "poisson-rank",
    "classical-so2n",
];

/// Inputs shared by all suites; `None` picks the suite's default.
#[derive(Clone, Debug)]
pub struct CheckParams {
    pub set: IndexSet,
    pub z: Option<ZMatrix>,
    pub d: Option<usize>,
    pub budget: Option<usize>,
    pub m: Option<u16>,
    pub k: Option<usize>,
    pub seed: u64,
}

impl CheckParams {
    pub fn new(set: IndexSet) -> Self {
        CheckParams { set, z: None, d: None, budget: None, m: None, k: None, seed: 0 }
    }

    pub fn with_z(mut self, z: ZMatrix) -> Self {
        self.z = Some(z);
        self
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    pub fn with_budget(mut self, b: usize) -> Self {
        self.budget = Some(b);
        self
    }

    pub fn with_m(mut self, m: u16) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn z_or_generic(&self) -> Result<ZMatrix> {
        match &self.z {
            Some(z) if z.set() != self.set => invalid(format!("Z is given on {}, expected {}", z.set(), self.set)),
            Some(z) => Ok(z.clone()),
            None => poisson::generic_z(self.set),
        }
    }
}

/// Orientation conventions stamped on every report.
pub fn conventions() -> Conventions {
    Conventions {
        h_k_orientation: H_ORIENTATION.to_string(),
        s_uk_orientation: S_ORIENTATION.to_string(),
    }
}

struct Ctx<'a> {
    p: &'a CheckParams,
    params: Map<String, Value>,
    notes: Map<String, Value>,
}

impl Ctx<'_> {
    fn set(&self) -> IndexSet {
        self.p.set
    }

    fn d(&mut self, default: usize) -> usize {
        let d = self.p.d.unwrap_or(default);
        self.params.insert("D".into(), json!(d));
        d
    }

    fn budget(&mut self, default: usize) -> usize {
        let b = self.p.budget.unwrap_or(default);
        self.params.insert("budget".into(), json!(b));
        b
    }

    fn m(&mut self, default: u16) -> u16 {
        let m = self.p.m.unwrap_or(default);
        self.params.insert("M".into(), json!(m));
        m
    }

    fn seed(&mut self) -> u64 {
        self.params.insert("seed".into(), json!(self.p.seed));
        self.p.seed
    }

    fn z(&mut self) -> Result<ZMatrix> {
        let z = self.p.z_or_generic()?;
        self.params.insert("Z".into(), json!(z.describe()));
        Ok(z)
    }

    fn plain(&self) -> Result<()> {
        if self.set().is_signed() {
            return invalid(format!("this check needs --kind gl, got {}", self.set()));
        }
        Ok(())
    }

    fn expander(&self) -> Result<SExpander> {
        SExpander::new(Algebra::yangian(self.set().dim()), self.set())
    }
}

/// Run one named suite.
pub fn run_check(name: &str, p: &CheckParams) -> Result<Report> {
    let mut cx = Ctx { p, params: Map::new(), notes: Map::new() };
    cx.params.insert("set".into(), json!(p.set.to_string()));
    let set = p.set;
    let n = set.dim();
    let details: Vec<Detail> = match name {
        "rtt" => {
            cx.plain()?;
            let d = cx.d(3);
            yangian::verify_rtt(&Algebra::yangian(n), set, d)
        }
        "fusion" => {
            cx.plain()?;
            let d = cx.d(3);
            let alg = Algebra::yangian(n);
            let ks: Vec<usize> = match p.k {
                Some(k) => vec![k],
                None => (1..=n.min(3)).collect(),
            };
            let mut out = Vec::new();
            for k in ks {
                out.extend(yangian::verify_fusion(&alg, set, k, d)?);
            }
            out
        }
        "bethe-commute" => {
            cx.plain()?;
            let z = cx.z()?;
            let b = cx.budget(4);
            yangian::verify_bethe_commutativity(&Algebra::yangian(n), &z, b)?
        }
        "centrality" => {
            cx.plain()?;
            let d = cx.d(3);
            yangian::verify_centrality(&Algebra::yangian(n), set, d, 3)?
        }
        "hat-identity" => {
            let z = cx.z()?;
            if set.is_signed() {
                let d = cx.d(3);
                let (det, held) = twisted::verify_twisted_hat_identity(&cx.expander()?, &z, d)?;
                cx.notes.insert("scaling".into(), json!(held));
                det
            } else {
                let d = cx.d(4);
                yangian::verify_hat_identity(&Algebra::yangian(n), &z, d)?
            }
        }
        "twisted-symmetry" => {
            let d = cx.d(4);
            twisted::verify_symmetry(&cx.expander()?, d)?
        }
        "twisted-reflection" => {
            let d = cx.d(if set.dim() % 2 == 1 { 3 } else { 4 });
            twisted::verify_reflection(&cx.expander()?, d)?
        }
        "twisted-commute" => {
            let z = cx.z()?;
            let b = cx.budget(if set.dim() % 2 == 1 { 3 } else { 4 });
            twisted::verify_twisted_commutativity(&cx.expander()?, &z, b)?
        }
        "sklyanin" => {
            let d = cx.d(4);
            let ex = cx.expander()?;
            let mut out = twisted::verify_sklyanin(&ex, d, S_ORIENTATION)?;
            out.extend(twisted::verify_sklyanin_centrality(&ex, d, 2)?);
            out
        }
        "prop36" => {
            let z = match &p.z {
                Some(_) => cx.z()?,
                None => {
                    // The sign-matched symmetry: Z′ = −Z for sp, Z′ = Z for so.
                    let sym = match set.require_signed()? {
                        FormType::Symplectic => Symmetry::PrimeSkew,
                        FormType::Orthogonal => Symmetry::PrimeSymmetric,
                    };
                    let half: Vec<Rat> = (1..=set.half() as i64).map(|i| Rat::from(i + 1)).collect();
                    let z = ZMatrix::signed_diag(set, &half, sym)?;
                    cx.params.insert("Z".into(), json!(z.describe()));
                    z
                }
            };
            let d = cx.d(3);
            if let Some(l) = twisted::hat_exchange_scalar(&z)? {
                cx.notes.insert("exchange_scalar".into(), json!(l.to_string()));
            }
            twisted::verify_simplified_hat(&cx.expander()?, &z, d)?
        }
        "rho-hom" => {
            let d = cx.d(3);
            let rho = Rho::new(Algebra::gl(n), set)?;
            relation_family(set, d)?
                .iter()
                .map(|(label, e)| Detail::new(format!("rho({label})"), rho.apply(e).is_zero()))
                .collect()
        }
        "image-commute" => {
            let z = cx.z()?;
            let d = cx.d(3);
            let env = Algebra::gl(n);
            let mut elems = Vec::new();
            if set.is_signed() {
                let sm = Rho::new(env.clone(), set)?.s_matrix(d)?;
                for k in 1..=n {
                    let a = twisted_bethe(&sm, &z, k, S_ORIENTATION)?;
                    for r in 1..=d {
                        elems.push((format!("rho A_{k}^({r})"), a.coeff(r).clone()));
                    }
                }
            } else {
                let y = Algebra::yangian(n);
                for k in 1..=n {
                    let b = bethe_series(&y, k, &z, d)?;
                    for r in 1..=d {
                        elems.push((format!("pi B_{k}^({r})"), pi_apply(&y, &env, b.coeff(r))));
                    }
                }
            }
            verify_image_commutativity(&env, &elems)?
        }
        "poisson-jacobi" => {
            let m = cx.m(2);
            let seed = cx.seed();
            poisson::verify_jacobi(&PoissonSpace::new(set, m)?, seed, 50)?
        }
        "symbol-hom" => {
            let z = cx.z()?;
            if set.is_signed() {
                let m = cx.m(3);
                poisson::verify_laplace_twisted(&z, m)?
            } else {
                let m = cx.m(2);
                let seed = cx.seed();
                let mut out = poisson::verify_symbol_hom(n, m, seed, 50)?;
                out.extend(poisson::verify_laplace_plain(&z, m)?);
                out
            }
        }
        "jacobian" => {
            let z = cx.z()?;
            let m = cx.m(if set.is_signed() && n % 2 == 0 && set.form() == Some(FormType::Orthogonal) { 2 } else { 1 });
            let seed = cx.seed();
            let space = PoissonSpace::new(set, m)?;
            let (slice, expected) = if set.is_signed() {
                (Slice::s(set, m)?, Dims::twisted(set, m)?.slice)
            } else {
                (Slice::t(n, m)?, Dims::plain(n, m as usize).slice)
            };
            let full = poisson::certify_independence(&space, &z, seed)?;
            let sl = poisson::certify_slice(&slice, &z, expected, seed)?;
            let mut out = vec![
                Detail::new(format!("jacobian rank {} = {} on {space}", full.achieved, full.expected), full.passed()),
                Detail::new(format!("slice jacobian rank {} = {expected} on {space}", sl.achieved), sl.passed()),
            ];
            out.extend(poisson::verify_involution(&space, &z)?);
            if set.is_signed() {
                out.extend(poisson::verify_parity(&space, &z)?);
            }
            cx.notes.insert("certificate".into(), serde_json::to_value(&full)?);
            cx.notes.insert("slice_certificate".into(), serde_json::to_value(&sl)?);
            out
        }
        "poisson-rank" => {
            let m = cx.m(if set.is_signed() && n % 2 == 0 && set.form() == Some(FormType::Orthogonal) { 2 } else { 1 });
            let seed = cx.seed();
            let (slice, expected) = if set.is_signed() {
                (Slice::s(set, m)?, 2 * Dims::twisted(set, m)?.d)
            } else {
                (Slice::t(n, m)?, m as usize * (n * n - n))
            };
            let rep = poisson::poisson_rank_report(&slice, expected, seed, 4);
            cx.notes.insert("ranks".into(), serde_json::to_value(&rep)?);
            rep.details()
        }
        "classical-so2n" => {
            if set.form() != Some(FormType::Orthogonal) || n % 2 == 1 {
                return invalid("classical-so2n needs --kind so with even N");
            }
            let z = cx.z()?;
            let seed = cx.seed();
            let c = poisson::certify_classical_so2n(&z, seed)?;
            let d = Detail::new(format!("jacobian rank {} = {} on s_{n}", c.achieved, c.expected), c.passed());
            cx.notes.insert("certificate".into(), serde_json::to_value(&c)?);
            vec![d]
        }
        other => return invalid(format!("unknown check {other:?}; expected one of {}", CHECK_NAMES.join(", "))),
    };
    let mut report = Report::new(name, cx.params, details);
    report.notes = cx.notes;
    report.conventions = conventions();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_and_mismatched() {
        assert!(run_check("nope", &CheckParams::new(IndexSet::gl(2))).is_err());
        assert!(run_check("rtt", &CheckParams::new(IndexSet::sp(2))).is_err());
        let z = poisson::generic_z(IndexSet::gl(3)).unwrap();
        assert!(run_check("bethe-commute", &CheckParams::new(IndexSet::gl(2)).with_z(z)).is_err());
    }

    #[test]
    fn conventions_are_resolved() {
        let c = conventions();
        assert_eq!(c.h_k_orientation, "outer=left,inner=left");
        assert_eq!(c.s_uk_orientation, "outer=right,inner=right");
        assert!(crate::tensor::resolve_h_orientation(3, IndexSet::gl(3)).contains(&H_ORIENTATION));
    }
}
