//! Index conventions for `C^N`.
//!
//! Internally every index is a *position* `0..N`. A plain set labels the
//! positions `1..N`; a signed set labels them `-n..-1,(0),1..n` in increasing
//! order, so negation of labels is the reflection `p ↦ N-1-p` of positions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormType {
    Orthogonal,
    Symplectic,
}

impl FormType {
    /// `+1` for orthogonal, `-1` for symplectic: the upper/lower choice in `±`.
    pub fn upper_sign(self) -> i64 {
        match self {
            FormType::Orthogonal => 1,
            FormType::Symplectic => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet {
    dim: usize,
    form: Option<FormType>,
}

impl IndexSet {
    pub fn plain(n: usize) -> Result<Self> {
        if n == 0 || n > 8 {
            return invalid(format!("dimension {n} outside 1..=8"));
        }
        Ok(IndexSet { dim: n, form: None })
    }

    pub fn signed(n: usize, form: FormType) -> Result<Self> {
        if n == 0 || n > 8 {
            return invalid(format!("dimension {n} outside 1..=8"));
        }
        if form == FormType::Symplectic && n % 2 == 1 {
            return invalid("symplectic form requires even N");
        }
        Ok(IndexSet { dim: n, form: Some(form) })
    }

    /// `so_N`, `N = 2n` or `2n+1` chosen by the caller.
    pub fn so(n: usize) -> Self {
        Self::signed(n, FormType::Orthogonal).expect("valid so_N")
    }

    pub fn sp(n: usize) -> Self {
        Self::signed(n, FormType::Symplectic).expect("valid sp_N")
    }

    pub fn gl(n: usize) -> Self {
        Self::plain(n).expect("valid gl_N")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> Option<FormType> {
        self.form
    }

    pub fn is_signed(&self) -> bool {
        self.form.is_some()
    }

    pub fn require_signed(&self) -> Result<FormType> {
        match self.form {
            Some(f) => Ok(f),
            None => invalid("operation needs a signed index set"),
        }
    }

    /// `n` with `N = 2n` or `2n+1`.
    pub fn half(&self) -> usize {
        self.dim / 2
    }

    pub fn label(&self, pos: usize) -> i32 {
        debug_assert!(pos < self.dim);
        match self.form {
            None => pos as i32 + 1,
            Some(_) => {
                let n = self.half() as i32;
                let p = pos as i32;
                if self.dim % 2 == 1 || p < n {
                    p - n
                } else {
                    p - n + 1
                }
            }
        }
    }

    pub fn pos(&self, label: i32) -> Result<usize> {
        let found = (0..self.dim).find(|&p| self.label(p) == label);
        match found {
            Some(p) => Ok(p),
            None => invalid(format!("index {label} not in {self}")),
        }
    }

    pub fn labels(&self) -> Vec<i32> {
        (0..self.dim).map(|p| self.label(p)).collect()
    }

    /// Position of `-label(pos)`.
    pub fn neg(&self, pos: usize) -> usize {
        self.dim - 1 - pos
    }

    /// `ε_ij` on positions; `1` for plain sets.
    pub fn eps(&self, i: usize, j: usize) -> i64 {
        match self.form {
            Some(FormType::Symplectic) => {
                let s = |p: usize| if self.label(p) < 0 { -1 } else { 1 };
                s(i) * s(j)
            }
            _ => 1,
        }
    }

    /// `E_ij′ = ε_ij E_{-j,-i}` as `(sign, row, col)`.
    pub fn prime(&self, i: usize, j: usize) -> (i64, usize, usize) {
        (self.eps(i, j), self.neg(j), self.neg(i))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            None => write!(f, "gl_{}", self.dim),
            Some(FormType::Orthogonal) => write!(f, "so_{}", self.dim),
            Some(FormType::Symplectic) => write!(f, "sp_{}", self.dim),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_labels() {
        assert_eq!(IndexSet::so(3).labels(), vec![-1, 0, 1]);
        assert_eq!(IndexSet::sp(4).labels(), vec![-2, -1, 1, 2]);
        assert_eq!(IndexSet::gl(3).labels(), vec![1, 2, 3]);
        let s = IndexSet::so(5);
        for p in 0..5 {
            assert_eq!(s.label(s.neg(p)), -s.label(p));
            assert_eq!(s.pos(s.label(p)).unwrap(), p);
        }
    }

    #[test]
    fn eps_and_prime() {
        let sp = IndexSet::sp(2);
        let (m1, p1) = (sp.pos(-1).unwrap(), sp.pos(1).unwrap());
        assert_eq!(sp.eps(p1, m1), -1);
        assert_eq!(sp.prime(p1, m1), (-1, p1, m1));
        let so = IndexSet::so(4);
        let (a, b) = (so.pos(1).unwrap(), so.pos(2).unwrap());
        assert_eq!(so.prime(a, b), (1, so.pos(-2).unwrap(), so.pos(-1).unwrap()));
    }

    #[test]
    fn symplectic_needs_even() {
        assert!(IndexSet::signed(3, FormType::Symplectic).is_err());
    }
}
