use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::height_counts;
use crate::algebra::{Field, Poly};
use crate::error::{Error, Result};
use crate::geometry::{AmbientSpace, Caps};
use crate::varieties::{TwistData, VarietySpec};

/// An exact rational with a decimal rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactRational {
    pub num: String,
    pub den: String,
    pub decimal: String,
}

impl From<&BigRational> for ExactRational {
    fn from(r: &BigRational) -> Self {
        ExactRational {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            decimal: to_decimal(r, 6),
        }
    }
}

/// Rounds to `digits` decimal places.
pub fn to_decimal(r: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (r * BigRational::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let int = &abs / &scale;
    let frac = &abs % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

fn q_pow(q: u32, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base, (-e) as usize).recip()
    }
}

/// `zeta_X(s) = Z(X, q^-s)` for the projective line: `1 / ((1 - q^-s)(1 - q^(1-s)))`.
pub fn zeta_p1_at(q: u32, s: i64) -> Result<BigRational> {
    let one = BigRational::one();
    let a = &one - q_pow(q, -s);
    let b = &one - q_pow(q, 1 - s);
    let den = a * b;
    if num_traits::Zero::is_zero(&den) {
        return Err(Error::invalid(format!("zeta of the line has a pole at s = {s}")));
    }
    Ok(den.recip())
}

#[derive(Clone, Debug, Serialize)]
pub struct WanRow {
    pub d: usize,
    #[serde(serialize_with = "crate::zeta::ser_decimal")]
    pub exact: BigUint,
    #[serde(serialize_with = "crate::zeta::ser_decimal")]
    pub cumulative: BigUint,
    pub leading_term: ExactRational,
    /// `N_d` over the leading term.
    pub ratio: ExactRational,
    /// `|ratio - 1|`.
    pub deviation: ExactRational,
    /// `n_d` over the leading term.
    pub exact_ratio: ExactRational,
    #[serde(skip)]
    pub deviation_value: BigRational,
}

/// Point counts on `P^n` over F_q(t) against the leading term of the
/// asymptotic count of points of bounded height.
#[derive(Clone, Debug, Serialize)]
pub struct WanReport {
    pub q: u32,
    pub n: usize,
    pub zeta_value: ExactRational,
    /// Leading coefficient `a` of `a q^((n+1) d)`.
    pub leading_coefficient: ExactRational,
    pub rows: Vec<WanRow>,
}

/// Result of the tolerance check on a Wan report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WanCheck {
    pub final_deviation_within_tolerance: bool,
    pub deviation_decreasing: bool,
}

impl WanCheck {
    pub fn passed(&self) -> bool {
        self.final_deviation_within_tolerance && self.deviation_decreasing
    }
}

impl WanReport {
    /// Final-row deviation at most `tolerance`, and deviations strictly
    /// decreasing from `from_d` on.
    pub fn check(&self, tolerance: &BigRational, from_d: usize) -> WanCheck {
        let last = self.rows.last().expect("at least one row");
        let tail: Vec<&BigRational> = self.rows.iter().filter(|r| r.d >= from_d).map(|r| &r.deviation_value).collect();
        WanCheck {
            final_deviation_within_tolerance: &last.deviation_value <= tolerance,
            deviation_decreasing: tail.windows(2).all(|w| w[1] < w[0]),
        }
    }
}

/// Builds the report for `P^n` over F_q(t), `d = 0..=d_max`.
pub fn wan_asymptotic(q: u32, n: usize, d_max: usize, caps: Caps) -> Result<WanReport> {
    if n == 0 {
        return Err(Error::invalid("the asymptotic needs n >= 1"));
    }
    let field = Field::with_order(q)?;
    let space = AmbientSpace::<Poly>::with_caps(field, caps);
    // genus 0, class number 1
    let zeta = zeta_p1_at(q, n as i64 + 1)?;
    let a = q_pow(q, n as i64 + 1) / (&zeta * BigRational::from_integer(BigInt::from(q - 1)));
    let counts = height_counts(
        &VarietySpec::projective_space(n),
        &TwistData::identity(field, n),
        &space,
        d_max,
    )?;
    let rows = (0..=d_max)
        .map(|d| {
            let leading = &a * q_pow(q, ((n + 1) * d) as i64);
            let big = |c: &BigUint| BigRational::from_integer(BigInt::from(c.clone()));
            let ratio = big(&counts.cumulative[d]) / &leading;
            let exact_ratio = big(&counts.exact[d]) / &leading;
            let deviation = (&ratio - BigRational::one()).abs();
            WanRow {
                d,
                exact: counts.exact[d].clone(),
                cumulative: counts.cumulative[d].clone(),
                leading_term: (&leading).into(),
                ratio: (&ratio).into(),
                deviation: (&deviation).into(),
                exact_ratio: (&exact_ratio).into(),
                deviation_value: deviation,
            }
        })
        .collect();
    Ok(WanReport {
        q,
        n,
        zeta_value: (&zeta).into(),
        leading_coefficient: (&a).into(),
        rows,
    })
}
