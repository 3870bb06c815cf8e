//! Step-by-step rewriting with an explicit choice of inversion, used to
//! certify that the normal form does not depend on the reduction order.

use rustc_hash::FxHashMap;

use super::{monomial_degree, AlgebraElement, GenIndex, Monomial};
use crate::error::{invalid, Result};
use crate::rational::Rat;

use super::rules::CommutationRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Resolve the leftmost adjacent inversion first.
    Leftmost,
    /// Resolve the rightmost adjacent inversion first.
    Rightmost,
}

fn inversions(w: &[GenIndex]) -> usize {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                n += 1;
            }
        }
    }
    n
}

fn measure(w: &[GenIndex]) -> (u32, usize) {
    (monomial_degree(w), inversions(w))
}

/// Rewrite `coeff · word` to normal form one adjacent swap at a time.
///
/// Each step replaces `x·a·b·y` (with `a > b`) by `x·b·a·y + x·[a,b]·y`. When
/// `trace` is set, every produced word is checked to be strictly smaller than
/// its parent in `(degree, inversions)`; a violation is reported as an error.
pub fn normal_order_traced(
    rule: &dyn CommutationRule,
    word: &[GenIndex],
    coeff: &Rat,
    strategy: Strategy,
    trace: bool,
) -> Result<AlgebraElement> {
    let mut pending: FxHashMap<Monomial, Rat> = FxHashMap::default();
    pending.insert(Monomial::from_slice(word), coeff.clone());
    let mut done: FxHashMap<Monomial, Rat> = FxHashMap::default();
    let mut steps = 0usize;
    while let Some(w) = pending.keys().max_by_key(|w| (measure(w), (*w).clone())).cloned() {
        let c = pending.remove(&w).expect("present");
        if c.is_zero() {
            continue;
        }
        let inv: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]).collect();
        let pick = match strategy {
            Strategy::Leftmost => inv.first(),
            Strategy::Rightmost => inv.last(),
        };
        let Some(&i) = pick else {
            *done.entry(w).or_default() += &c;
            continue;
        };
        steps += 1;
        let parent = measure(&w);
        let mut children: Vec<(Monomial, Rat)> = Vec::new();
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        children.push((swapped, c.clone()));
        for (corr, k) in rule.bracket(w[i], w[i + 1]) {
            let mut child = Monomial::from_slice(&w[..i]);
            child.extend_from_slice(&corr);
            child.extend_from_slice(&w[i + 2..]);
            children.push((child, &c * &k));
        }
        for (child, k) in children {
            if trace && measure(&child) >= parent {
                return invalid(format!(
                    "rewrite step {steps} did not decrease (degree, inversions): {w:?} -> {child:?}"
                ));
            }
            *pending.entry(child).or_default() += &k;
        }
    }
    done.retain(|_, c| !c.is_zero());
    Ok(AlgebraElement { tag: rule.tag(), terms: done })
}
