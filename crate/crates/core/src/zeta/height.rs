use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{zeta_divisors, zeta_rr, TruncSeries};
use crate::error::{Error, Result};
use crate::geometry::{Ambient, AmbientSpace};
use crate::varieties::{decompose, enumerate_points, TwistData, VarietyKind, VarietySpec};

/// Which height series: `sum n_d T^d` over exact heights or `sum N_d T^d` over
/// heights at most `d`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Strict,
    Cumulative,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Strict => "strict",
            Convention::Cumulative => "cumulative",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Convention::Strict),
            "cumulative" => Ok(Convention::Cumulative),
            other => Err(Error::invalid(format!("unknown convention `{other}`"))),
        }
    }
}

/// Point counts of `Y` by twisted height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightCounts {
    /// `n_d`: points of height exactly `d`.
    pub exact: Vec<BigUint>,
    /// `N_d`: points of height at most `d`.
    pub cumulative: Vec<BigUint>,
}

impl HeightCounts {
    pub fn series(&self, convention: Convention) -> TruncSeries {
        let v = match convention {
            Convention::Strict => &self.exact,
            Convention::Cumulative => &self.cumulative,
        };
        TruncSeries::new(v.iter().map(|c| BigInt::from(c.clone())).collect(), v.len() - 1)
    }
}

/// Counts points `y` of `Y` by `h_{X,A}(y)` through `d_max`, enumerating
/// `z = A y` by untwisted height.
pub fn height_counts<R: Ambient>(
    y: &VarietySpec<R>,
    tw: &TwistData<R>,
    space: &AmbientSpace<R>,
    d_max: usize,
) -> Result<HeightCounts> {
    let VarietyKind::Projective(n) = y.kind() else {
        return Err(Error::invalid("height zeta needs a projective variety"));
    };
    if tw.size() != n + 1 {
        return Err(Error::invalid(format!("twist has size {}, expected {}", tw.size(), n + 1)));
    }
    let points = enumerate_points(space, n, d_max as u32)?;
    let identity = tw.is_identity();
    let per_point: Vec<Option<usize>> = points
        .par_iter()
        .map(|z| {
            let on_y = if y.equations().is_empty() {
                true
            } else if identity {
                y.contains(&z.functions()).expect("arity matches")
            } else {
                y.contains(&tw.apply_inverse(&z.functions())).expect("arity matches")
            };
            on_y.then(|| z.height() as usize)
        })
        .collect();
    let mut exact = vec![BigUint::zero(); d_max + 1];
    for h in per_point.into_iter().flatten() {
        exact[h] += 1u32;
    }
    let mut acc = BigUint::zero();
    let cumulative = exact
        .iter()
        .map(|c| {
            acc += c;
            acc.clone()
        })
        .collect();
    Ok(HeightCounts { exact, cumulative })
}

/// `Z_ht(Y, A, T)` under the chosen convention.
pub fn zeta_height<R: Ambient>(
    y: &VarietySpec<R>,
    tw: &TwistData<R>,
    space: &AmbientSpace<R>,
    d_max: usize,
    convention: Convention,
) -> Result<(TruncSeries, HeightCounts)> {
    let counts = height_counts(y, tw, space, d_max)?;
    Ok((counts.series(convention), counts))
}

/// Both sides of `Z_ht = Z(X,T)^-1 sum_i Z_RR(Y_i)` under the strict convention.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub k_max: usize,
    pub convention: Convention,
    pub lhs: TruncSeries,
    pub rhs: TruncSeries,
    pub zeta_divisors: TruncSeries,
    pub pieces: Vec<TruncSeries>,
    pub diff: TruncSeries,
    #[serde(serialize_with = "crate::zeta::ser_decimal")]
    pub max_abs_diff: BigInt,
}

impl ReductionReport {
    pub fn holds(&self) -> bool {
        self.max_abs_diff.is_zero()
    }
}

pub fn verify_reduction<R: Ambient>(
    y: &VarietySpec<R>,
    tw: &TwistData<R>,
    space: &AmbientSpace<R>,
    k_max: usize,
) -> Result<ReductionReport> {
    let (lhs, _) = zeta_height(y, tw, space, k_max, Convention::Strict)?;
    let z = zeta_divisors(space, k_max)?;
    let pieces = decompose(y, tw)?
        .iter()
        .map(|w| Ok(zeta_rr(w, space, k_max)?.0))
        .collect::<Result<Vec<_>>>()?;
    let sum = pieces.iter().fold(TruncSeries::zero(k_max), |acc, p| acc.add(p));
    let rhs = z.invert()?.mul(&sum);
    let diff = lhs.sub(&rhs);
    let max_abs_diff = diff.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    Ok(ReductionReport {
        k_max,
        convention: Convention::Strict,
        lhs,
        rhs,
        zeta_divisors: z,
        pieces,
        diff,
        max_abs_diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Poly};

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    #[test]
    fn projective_line_strict_and_cumulative() {
        let x = AmbientSpace::<Poly>::new(f2());
        let y = VarietySpec::projective_space(1);
        let tw = TwistData::identity(f2(), 1);
        let (s, counts) = zeta_height(&y, &tw, &x, 2, Convention::Strict).unwrap();
        assert_eq!(s, TruncSeries::from_ints(&[3, 6, 24], 2));
        assert_eq!(counts.series(Convention::Cumulative), TruncSeries::from_ints(&[3, 9, 33], 2));
        assert_eq!(counts.series(Convention::Cumulative), s.cumulative());
    }

    #[test]
    fn a_single_point() {
        let x = AmbientSpace::<Poly>::new(f2());
        let y = VarietySpec::projective_space(0);
        let tw = TwistData::identity(f2(), 0);
        let (s, _) = zeta_height(&y, &tw, &x, 3, Convention::Strict).unwrap();
        assert_eq!(s, TruncSeries::one(3));
        assert!(verify_reduction(&y, &tw, &x, 3).unwrap().holds());
    }

    #[test]
    fn reduction_on_the_line_and_two_points() {
        let x = AmbientSpace::<Poly>::new(f2());
        let tw = TwistData::identity(f2(), 1);
        let r = verify_reduction(&VarietySpec::projective_space(1), &tw, &x, 2).unwrap();
        assert!(r.holds(), "{r:?}");
        let two = VarietySpec::parse("projective:1:y0*y1", f2()).unwrap();
        let r = verify_reduction(&two, &tw, &x, 2).unwrap();
        assert_eq!(r.lhs, TruncSeries::from_ints(&[2, 0, 0], 2));
        assert!(r.holds(), "{r:?}");
    }
}
