use crate::algebra::{linalg, parse_fn, CoordRing, Field, FnFieldElement};
use crate::error::{Error, Result};

/// An invertible matrix `A` over F_q(X) together with a permutation `sigma` of
/// the coordinate indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistData<R: CoordRing> {
    a: Vec<Vec<FnFieldElement<R>>>,
    a_inv: Vec<Vec<FnFieldElement<R>>>,
    sigma: Vec<usize>,
}

impl<R: CoordRing> TwistData<R> {
    pub fn new(a: Vec<Vec<FnFieldElement<R>>>, sigma: Vec<usize>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::invalid("twist matrix is empty"));
        }
        if sigma.len() != n {
            return Err(Error::invalid(format!("sigma has {} entries, expected {n}", sigma.len())));
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::invalid(format!("sigma {sigma:?} is not a permutation of 0..{n}")));
            }
        }
        let a_inv = linalg::invert(&a)?;
        Ok(TwistData { a, a_inv, sigma })
    }

    /// The identity twist on projective space of dimension `n`.
    pub fn identity(field: Field, n: usize) -> Self {
        let a: Vec<Vec<FnFieldElement<R>>> = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| if i == j { FnFieldElement::one(field) } else { FnFieldElement::zero(field) })
                    .collect()
            })
            .collect();
        TwistData {
            a_inv: a.clone(),
            a,
            sigma: (0..=n).collect(),
        }
    }

    /// Builds the twist from row-major expression strings.
    pub fn parse(rows: &[Vec<String>], sigma: Option<Vec<usize>>, field: Field) -> Result<Self> {
        let a = rows
            .iter()
            .map(|row| row.iter().map(|e| parse_fn::<R>(e, field)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let sigma = sigma.unwrap_or_else(|| (0..a.len()).collect());
        Self::new(a, sigma)
    }

    /// Number of coordinates, `n + 1`.
    pub fn size(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &[Vec<FnFieldElement<R>>] {
        &self.a
    }

    pub fn inverse(&self) -> &[Vec<FnFieldElement<R>>] {
        &self.a_inv
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn is_identity(&self) -> bool {
        self.a.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    /// `A y`.
    pub fn apply(&self, y: &[FnFieldElement<R>]) -> Vec<FnFieldElement<R>> {
        assert_eq!(y.len(), self.size(), "arity mismatch");
        linalg::apply(&self.a, y)
    }

    /// `A^-1 z`.
    pub fn apply_inverse(&self, z: &[FnFieldElement<R>]) -> Vec<FnFieldElement<R>> {
        assert_eq!(z.len(), self.size(), "arity mismatch");
        linalg::apply(&self.a_inv, z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn rows(s: &[&[&str]]) -> Vec<Vec<String>> {
        s.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
    }

    #[test]
    fn validates_matrix_and_permutation() {
        let f = Field::new(2, 1).unwrap();
        let tw = TwistData::<Poly>::parse(&rows(&[&["1", "1"], &["0", "1"]]), Some(vec![1, 0]), f).unwrap();
        assert_eq!(tw.sigma(), &[1, 0]);
        let y = vec![FnFieldElement::one(f), FnFieldElement::zero(f)];
        assert_eq!(tw.apply_inverse(&tw.apply(&y)), y);
        assert!(matches!(
            TwistData::<Poly>::parse(&rows(&[&["t", "t"], &["1", "1"]]), None, f),
            Err(Error::SingularMatrix)
        ));
        assert!(TwistData::<Poly>::parse(&rows(&[&["1", "0"], &["0", "1"]]), Some(vec![0, 0]), f).is_err());
        assert!(TwistData::<Poly>::identity(f, 2).is_identity());
    }
}
