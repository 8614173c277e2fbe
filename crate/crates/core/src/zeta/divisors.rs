use num_bigint::BigInt;
use serde::Serialize;

use super::TruncSeries;
use crate::error::Result;
use crate::geometry::{Ambient, AmbientSpace};

/// `Z(X, T)`: effective divisors counted by degree, through `T^k_max`.
pub fn zeta_divisors<R: Ambient>(space: &AmbientSpace<R>, k_max: usize) -> Result<TruncSeries> {
    let coeffs = (0..=k_max)
        .map(|k| Ok(BigInt::from(space.enumerate_effective(k as u32)?.len())))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncSeries::new(coeffs, k_max))
}

/// The Euler product over prime divisors next to the divisor sum.
#[derive(Clone, Debug, Serialize)]
pub struct EulerReport {
    pub k_max: usize,
    /// Number of prime divisors of each degree `1..=k_max`.
    pub primes_per_degree: Vec<usize>,
    pub product: TruncSeries,
    pub divisor_sum: TruncSeries,
    pub diff: TruncSeries,
}

impl EulerReport {
    pub fn holds(&self) -> bool {
        self.product == self.divisor_sum
    }
}

/// Expands `prod_P 1 / (1 - T^deg P)` over primes of degree at most `k_max`
/// and compares with `Z(X, T)`.
pub fn euler_product_check<R: Ambient>(space: &AmbientSpace<R>, k_max: usize) -> Result<EulerReport> {
    let mut product = TruncSeries::one(k_max);
    let mut primes_per_degree = Vec::with_capacity(k_max);
    for j in 1..=k_max {
        let count = space.prime_divisors(j as u32)?.len();
        primes_per_degree.push(count);
        product = product.mul(&TruncSeries::geometric(j, k_max).pow(count as u64));
    }
    let divisor_sum = zeta_divisors(space, k_max)?;
    Ok(EulerReport {
        k_max,
        primes_per_degree,
        diff: product.sub(&divisor_sum),
        product,
        divisor_sum,
    })
}

/// Exact expansion of `1 / ((1 - T)(1 - qT))`.
pub fn weil_zeta_p1(q: u32, k_max: usize) -> TruncSeries {
    TruncSeries::from_ints(&[1, -1], k_max)
        .mul(&TruncSeries::from_ints(&[1, -(q as i64)], k_max))
        .invert()
        .expect("unit constant term")
}
