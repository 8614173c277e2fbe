use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A power series with integer coefficients modulo `T^(k_max + 1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    /// Pads with zeros or truncates to `k_max + 1` coefficients.
    pub fn new(mut coeffs: Vec<BigInt>, k_max: usize) -> Self {
        coeffs.resize(k_max + 1, BigInt::zero());
        TruncSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], k_max: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), k_max)
    }

    pub fn zero(k_max: usize) -> Self {
        Self::new(Vec::new(), k_max)
    }

    pub fn one(k_max: usize) -> Self {
        Self::from_ints(&[1], k_max)
    }

    /// `1 / (1 - T^j)`.
    pub fn geometric(j: usize, k_max: usize) -> Self {
        assert!(j > 0, "geometric series needs a positive step");
        let coeffs = (0..=k_max)
            .map(|i| if i % j == 0 { BigInt::one() } else { BigInt::zero() })
            .collect();
        TruncSeries { coeffs }
    }

    pub fn k_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.k_max(), rhs.k_max(), "truncation orders differ");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let n = self.coeffs.len();
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.k_max());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be 1 or -1.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(Error::invalid(format!(
                "series with constant term {c0} is not invertible over the integers"
            )));
        }
        let n = self.coeffs.len();
        let mut inv: Vec<BigInt> = Vec::with_capacity(n);
        inv.push(c0.clone());
        for k in 1..n {
            let s: BigInt = (1..=k).map(|i| &self.coeffs[i] * &inv[k - i]).sum();
            // c0 is its own inverse
            inv.push(-(s * c0));
        }
        Ok(TruncSeries { coeffs: inv })
    }

    /// Running sums, i.e. the product with `1 / (1 - T)`.
    pub fn cumulative(&self) -> Self {
        let mut acc = BigInt::zero();
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    acc += c;
                    acc.clone()
                })
                .collect(),
        }
    }

    /// Coefficient-wise decimal strings.
    pub fn decimal_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.decimal_coeffs().join(", "))
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries{self}")
    }
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.decimal_coeffs().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], k: usize) -> TruncSeries {
        TruncSeries::from_ints(c, k)
    }

    #[test]
    fn geometric_inverse() {
        assert_eq!(s(&[1, -1], 3).invert().unwrap(), s(&[1, 1, 1, 1], 3));
        assert_eq!(TruncSeries::geometric(1, 3), s(&[1, 1, 1, 1], 3));
        assert_eq!(TruncSeries::geometric(2, 4), s(&[1, 0, 1, 0, 1], 4));
    }

    #[test]
    fn inverse_contract() {
        let a = s(&[1, -1], 5).mul(&s(&[1, -2], 5));
        assert_eq!(a.mul(&a.invert().unwrap()), TruncSeries::one(5));
        let neg = s(&[-1, 3, 4], 4);
        assert_eq!(neg.mul(&neg.invert().unwrap()), TruncSeries::one(4));
        assert!(s(&[2, 1], 2).invert().is_err());
    }

    #[test]
    fn divisor_zeta_times_its_inverse() {
        assert_eq!(s(&[1, 3, 7], 2).mul(&s(&[1, -3, 2], 2)), TruncSeries::one(2));
    }

    #[test]
    fn running_sums() {
        let strict = s(&[3, 6, 24], 2);
        assert_eq!(strict.cumulative(), s(&[3, 9, 33], 2));
        assert_eq!(strict.cumulative(), strict.mul(&TruncSeries::geometric(1, 2)));
    }

    #[test]
    fn truncation_and_power() {
        assert_eq!(s(&[1, 2, 3, 4], 1), s(&[1, 2], 1));
        assert_eq!(s(&[1, 1], 4).pow(3), s(&[1, 3, 3, 1, 0], 4));
        assert_eq!(s(&[1, 1], 2).pow(0), TruncSeries::one(2));
    }
}
