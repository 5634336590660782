//! The step matrix `L(pi)` and the matrix form of pattern equivalence.
//!
//! Row `i` of `L(pi)` writes the edge from `pi(i)` to `pi(i+1)` as a signed sum
//! of the levels it crosses: `L[i][j] = sgn(pi(i+1) - pi(i))` for
//! `min <= j < max`, zero elsewhere. `L` is an anti-homomorphism,
//! `L(tau ∘ pi) = L(pi) L(tau)`, so every step matrix is unimodular.
//!
//! `L` is isomorphic to the standard representation of `S_n`; that fact is not
//! used or checked here.

use std::collections::HashMap;
use std::fmt;

use crate::limits::{self, MAX_EXHAUSTIVE_N};
use crate::perm::{all_permutations, Permutation};
use crate::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                left: (rows.len(), cols),
                right: (1, bad.len()),
            });
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at zero-based `(row, col)`.
    pub fn at(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[i64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn multiply(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.at(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every division in the recurrence is exact, so no rationals appear.
    pub fn determinant(&self) -> Result<i128> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (self.cols, self.rows),
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut m: Vec<Vec<i128>> = (0..n)
            .map(|r| self.row(r).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev_pivot = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&r| m[r][k] != 0) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev_pivot;
                }
                m[i][k] = 0;
            }
            prev_pivot = m[k][k];
        }
        Ok(sign * m[n - 1][n - 1])
    }
}

impl fmt::Display for IntMatrix {
    /// One row per line, entries right-aligned in width 2.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| format!("{x:>2}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `P_rho` with `(P_rho)[i][j] = 1` iff `rho(i) = j`.
pub fn permutation_matrix(rho: &Permutation) -> IntMatrix {
    let n = rho.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, v) in rho.iter().enumerate() {
        m.data[i * n + v - 1] = 1;
    }
    m
}

/// The `(n-1) x (n-1)` step matrix of a permutation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StepMatrix(IntMatrix);

impl StepMatrix {
    pub fn as_matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }
}

impl fmt::Display for StepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn step_matrix(pi: &Permutation) -> StepMatrix {
    let d = pi.len() - 1;
    let mut m = IntMatrix::zeros(d, d);
    for i in 0..d {
        let (a, b) = (pi.get(i + 1), pi.get(i + 2));
        let sign = if b > a { 1 } else { -1 };
        for level in a.min(b)..a.max(b) {
            m.data[i * d + level - 1] = sign;
        }
    }
    StepMatrix(m)
}

pub fn matrix_multiply(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    a.multiply(b)
}

/// `det L(pi)`, which must be `+1` or `-1`.
pub fn determinant_sign(m: &StepMatrix) -> Result<i8> {
    match m.0.determinant()? {
        1 => Ok(1),
        -1 => Ok(-1),
        d => Err(Error::SingularMatrix(d)),
    }
}

/// Searches for `(rho, sigma)` in `S_{n-1} x S_{n-1}` with
/// `P_{rho^{-1}} L(pi) P_sigma = L(tau)`.
///
/// For each column permutation `sigma` the row permutation is forced: the rows
/// of `L(pi) P_sigma` are distinct, so each row of `L(tau)` matches at most one.
/// A returned pair has been re-checked by explicit multiplication.
pub fn matrix_equivalence_witness(
    pi: &Permutation,
    tau: &Permutation,
) -> Result<Option<(Permutation, Permutation)>> {
    if pi.len() != tau.len() {
        return Err(Error::LengthMismatch {
            expected: pi.len(),
            actual: tau.len(),
        });
    }
    limits::check("permutation", pi.len(), MAX_EXHAUSTIVE_N)?;
    let n = pi.len();
    if n == 1 {
        return Ok(Some((Permutation::identity(1), Permutation::identity(1))));
    }
    let d = n - 1;
    let lpi = step_matrix(pi).0;
    let ltau = step_matrix(tau).0;
    let target_rows: HashMap<&[i64], usize> = (0..d).map(|r| (ltau.row(r), r)).collect();

    let mut moved = vec![0i64; d];
    for sigma in all_permutations(d) {
        // row k of L(pi) P_sigma has column sigma(j) = L(pi)[k][j]
        let mut rho = vec![0u16; d];
        let mut ok = true;
        for (k, slot) in rho.iter_mut().enumerate() {
            for (j, v) in sigma.iter().enumerate() {
                moved[v - 1] = lpi.at(k, j);
            }
            match target_rows.get(moved.as_slice()) {
                Some(&i) => *slot = i as u16,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let rho = Permutation::from_zero_based(rho);
        let lhs = permutation_matrix(&rho.inverse())
            .multiply(&lpi)?
            .multiply(&permutation_matrix(&sigma))?;
        if lhs != ltau {
            return Err(Error::Internal(format!(
                "row matching for {pi} -> {tau} produced a non-witness"
            )));
        }
        return Ok(Some((rho, sigma)));
    }
    Ok(None)
}
