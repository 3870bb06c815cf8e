//! The parameter matrix `Z` and its transposition-symmetry tag.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::index::IndexSet;
use crate::linalg::{self, Matrix};
use crate::rational::Rat;
use crate::tensor::{rational_ring, TensorElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    None,
    PrimeSymmetric,
    PrimeSkew,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZMatrix {
    set: IndexSet,
    rows: Matrix,
    symmetry: Symmetry,
    simple_spectrum: Option<bool>,
}

impl ZMatrix {
    /// Build from a full matrix in position order. With `requested = None`
    /// the tag is detected (symmetric wins for `Z = 0`).
    pub fn new(set: IndexSet, rows: Matrix, requested: Option<Symmetry>) -> Result<Self> {
        let n = set.dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return invalid(format!("Z must be {n}×{n}"));
        }
        let detected = if set.is_signed() {
            let p = prime_matrix(set, &rows);
            if p == rows {
                Symmetry::PrimeSymmetric
            } else if p == negate(&rows) {
                Symmetry::PrimeSkew
            } else {
                Symmetry::None
            }
        } else {
            Symmetry::None
        };
        let symmetry = match requested {
            None => detected,
            Some(Symmetry::None) => Symmetry::None,
            Some(s) => {
                set.require_signed()?;
                let p = prime_matrix(set, &rows);
                let ok = match s {
                    Symmetry::PrimeSymmetric => p == rows,
                    _ => p == negate(&rows),
                };
                if !ok {
                    return invalid(format!("Z does not satisfy the requested {s:?} condition"));
                }
                s
            }
        };
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || rows[i][j].is_zero()));
        let simple_spectrum = diagonal.then(|| {
            let mut d: Vec<&Rat> = (0..n).map(|i| &rows[i][i]).collect();
            d.sort();
            d.windows(2).all(|w| w[0] != w[1])
        });
        Ok(ZMatrix { set, rows, symmetry, simple_spectrum })
    }

    /// Diagonal matrix with entries in position order.
    pub fn diag(set: IndexSet, values: &[Rat]) -> Result<Self> {
        let n = set.dim();
        if values.len() != n {
            return invalid(format!("expected {n} diagonal values"));
        }
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { values[i].clone() } else { Rat::zero() }).collect())
            .collect();
        Self::new(set, rows, None)
    }

    /// Signed diagonal from values at labels `1..n`; the negative labels are
    /// filled according to the symmetry, and `z_0 = 0` for odd skew.
    pub fn signed_diag(set: IndexSet, half: &[Rat], symmetry: Symmetry) -> Result<Self> {
        set.require_signed()?;
        let n = set.half();
        if half.len() != n {
            return invalid(format!("expected {n} values for labels 1..{n}"));
        }
        let mut values = vec![Rat::zero(); set.dim()];
        for (i, v) in half.iter().enumerate() {
            let l = i as i32 + 1;
            values[set.pos(l)?] = v.clone();
            values[set.pos(-l)?] = match symmetry {
                Symmetry::PrimeSkew => -v,
                Symmetry::PrimeSymmetric => v.clone(),
                Symmetry::None => return invalid("signed diagonal input needs a symmetry"),
            };
        }
        let n_full = set.dim();
        let rows = (0..n_full)
            .map(|i| (0..n_full).map(|j| if i == j { values[i].clone() } else { Rat::zero() }).collect())
            .collect();
        Self::new(set, rows, Some(symmetry))
    }

    pub fn set(&self) -> IndexSet {
        self.set
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn simple_spectrum(&self) -> Option<bool> {
        self.simple_spectrum
    }

    pub fn is_diagonal(&self) -> bool {
        self.simple_spectrum.is_some()
    }

    pub fn is_singular(&self) -> bool {
        linalg::rank(&self.rows) < self.set.dim()
    }

    /// `Z` as a one-site rational tensor.
    pub fn tensor(&self) -> TensorElement<Rat> {
        let r = rational_ring(self.set, 1);
        let mut t = r.empty();
        let n = self.set.dim();
        for i in 0..n {
            for j in 0..n {
                r.add_entry(&mut t, (i as u64, j as u64), self.rows[i][j].clone());
            }
        }
        t
    }

    /// `G⁻¹ Z G`.
    pub fn conjugate(&self, g: &[Vec<Rat>]) -> Result<Self> {
        let gi = linalg::inverse(g)?;
        Self::new(self.set, linalg::mul(&linalg::mul(&gi, &self.rows), g), None)
    }

    /// Labelled description for reports.
    pub fn describe(&self) -> String {
        let n = self.set.dim();
        if self.is_diagonal() {
            let d: Vec<String> = (0..n).map(|i| format!("{:?}", self.rows[i][i])).collect();
            format!("diag({})", d.join(","))
        } else {
            let rows: Vec<String> =
                self.rows.iter().map(|r| r.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")).collect();
            format!("[{}]", rows.join(";"))
        }
    }
}

/// `Z′ = Σ z_ij ε_ij E_{-j,-i}`.
pub fn prime_matrix(set: IndexSet, rows: &[Vec<Rat>]) -> Matrix {
    let n = set.dim();
    let mut out = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let (s, a, b) = set.prime(i, j);
            out[a][b] = &rows[i][j] * &Rat::from(s);
        }
    }
    out
}

fn negate(m: &[Vec<Rat>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}
