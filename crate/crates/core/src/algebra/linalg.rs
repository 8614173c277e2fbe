//! Gaussian elimination over F_q and over F_q(X).

use super::{CoordRing, Field, FieldElement, FnFieldElement};
use crate::error::{Error, Result};

/// Outcome of reducing an augmented system `A x = b` over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolve {
    pub rank: usize,
    /// One solution, if the system is consistent.
    pub solution: Option<Vec<FieldElement>>,
}

impl LinearSolve {
    /// `log_q` of the number of solutions, `None` when inconsistent.
    pub fn nullity(&self, nvars: usize) -> Option<usize> {
        self.solution.as_ref().map(|_| nvars - self.rank)
    }
}

/// Solves `A x = b` where `a` is given row-major with `nvars` columns.
pub fn solve(field: Field, a: &[Vec<FieldElement>], b: &[FieldElement], nvars: usize) -> LinearSolve {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let mut rows: Vec<Vec<FieldElement>> = a
        .iter()
        .zip(b)
        .map(|(r, &c)| {
            assert_eq!(r.len(), nvars, "column count mismatch");
            let mut row = r.clone();
            row.push(c);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..nvars {
        let Some(pr) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for x in rows[rank].iter_mut() {
            *x = *x * inv;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = *x - factor * p;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let consistent = rows[rank..].iter().all(|r| r[nvars].is_zero());
    let solution = consistent.then(|| {
        let mut x = vec![field.zero(); nvars];
        for (i, &col) in pivots.iter().enumerate() {
            x[col] = rows[i][nvars];
        }
        x
    });
    LinearSolve { rank, solution }
}

/// Rank of a row-major matrix over F_q.
pub fn rank(field: Field, a: &[Vec<FieldElement>], ncols: usize) -> usize {
    let b = vec![field.zero(); a.len()];
    solve(field, a, &b, ncols).rank
}

/// Inverse of a square matrix over F_q(X).
pub fn invert<R: CoordRing>(m: &[Vec<FnFieldElement<R>>]) -> Result<Vec<Vec<FnFieldElement<R>>>> {
    let n = m.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::invalid("matrix must be square"));
    }
    let field = m[0][0].field();
    let mut a: Vec<Vec<FnFieldElement<R>>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    FnFieldElement::one(field)
                } else {
                    FnFieldElement::zero(field)
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let pr = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap(col, pr);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = x.sub(&factor.mul(p));
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Matrix-vector product over F_q(X).
pub fn apply<R: CoordRing>(m: &[Vec<FnFieldElement<R>>], v: &[FnFieldElement<R>]) -> Vec<FnFieldElement<R>> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(FnFieldElement::zero(v[0].field()), |acc, (a, x)| acc.add(&a.mul(x)))
        })
        .collect()
}
