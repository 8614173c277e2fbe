//! Truncated integer power series and the three zeta functions: of divisors,
//! Riemann-Roch and height.

mod divisors;
mod height;
mod rr;
mod series;
mod solutions;
mod wan;

pub use divisors::{euler_product_check, weil_zeta_p1, zeta_divisors, EulerReport};
pub use height::{height_counts, verify_reduction, zeta_height, Convention, HeightCounts, ReductionReport};
pub use rr::{h_exact_count, h_exact_counts, interval_identity, zeta_rr, DivisorCount, IntervalRow, RrCounts};
pub use series::TruncSeries;
pub use solutions::{
    coefficient_system, count_solutions, count_solutions_naive, count_zeros, enumerate_zeros, CountMethod, SolutionCount,
};
pub(crate) use solutions::cleared_substitution;
pub use wan::{to_decimal, wan_asymptotic, zeta_p1_at, ExactRational, WanCheck, WanReport, WanRow};

pub(crate) fn ser_decimal<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
