use std::fmt::Debug;

use smallvec::{smallvec, SmallVec};

use super::GenIndex;
use crate::rational::Rat;

/// A short product of generators, not necessarily ordered.
pub type Word = SmallVec<[GenIndex; 4]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleTag {
    Yangian,
    Gl,
    Custom(&'static str),
}

/// The commutator of two generators as a combination of words.
///
/// Level-0 generators never appear in the output: `T^(0)_ij = δ_ij` is folded
/// into the coefficients.
pub trait CommutationRule: Send + Sync + Debug {
    fn tag(&self) -> RuleTag;
    fn bracket(&self, a: GenIndex, b: GenIndex) -> Vec<(Word, Rat)>;
    /// Largest admissible generator level, if bounded.
    fn max_level(&self) -> Option<u16> {
        None
    }
}

/// `[T_ij^(p), T_kl^(q)] = Σ_{r=1}^{min(p,q)} (T_kj^(r-1) T_il^(p+q-r) − T_kj^(p+q-r) T_il^(r-1))`.
#[derive(Debug, Clone, Copy, Default)]
pub struct YangianRule;

impl CommutationRule for YangianRule {
    fn tag(&self) -> RuleTag {
        RuleTag::Yangian
    }

    fn bracket(&self, a: GenIndex, b: GenIndex) -> Vec<(Word, Rat)> {
        let (i, j, p) = (a.row, a.col, a.level);
        let (k, l, q) = (b.row, b.col, b.level);
        let mut out = Vec::new();
        for r in 1..=p.min(q) {
            let hi = p + q - r;
            if r == 1 {
                if k == j {
                    out.push((smallvec![GenIndex::new(i, l, hi)], Rat::one()));
                }
                if i == l {
                    out.push((smallvec![GenIndex::new(k, j, hi)], -Rat::one()));
                }
            } else {
                out.push((
                    smallvec![GenIndex::new(k, j, r - 1), GenIndex::new(i, l, hi)],
                    Rat::one(),
                ));
                out.push((
                    smallvec![GenIndex::new(k, j, hi), GenIndex::new(i, l, r - 1)],
                    -Rat::one(),
                ));
            }
        }
        out
    }
}

/// `[E_ij, E_kl] = δ_kj E_il − δ_il E_kj`; every generator has level 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct GlRule;

impl CommutationRule for GlRule {
    fn tag(&self) -> RuleTag {
        RuleTag::Gl
    }

    fn bracket(&self, a: GenIndex, b: GenIndex) -> Vec<(Word, Rat)> {
        let mut out = Vec::new();
        if b.row == a.col {
            out.push((smallvec![GenIndex::new(a.row, b.col, 1)], Rat::one()));
        }
        if a.row == b.col {
            out.push((smallvec![GenIndex::new(b.row, a.col, 1)], -Rat::one()));
        }
        out
    }

    fn max_level(&self) -> Option<u16> {
        Some(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_matches_yangian_at_level_one() {
        for idx in 0..16u8 {
            let a = GenIndex::new(idx / 8, (idx / 4) % 2, 1);
            let b = GenIndex::new((idx / 2) % 2, idx % 2, 1);
            let mut y = YangianRule.bracket(a, b);
            let mut g = GlRule.bracket(a, b);
            y.sort_by(|x, z| x.0.cmp(&z.0));
            g.sort_by(|x, z| x.0.cmp(&z.0));
            assert_eq!(y, g);
        }
    }
}
