use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{ord, Base, Valuation};
use crate::error::Result;
use crate::geometry::{Ambient, AmbientSpace};
use crate::varieties::VarietySpec;
use crate::zeta::{zeta_rr, ExactRational};

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub k: usize,
    pub divisors: usize,
    /// Minimum of `ord_q(S_D)` over effective `D` of degree `k`.
    pub min_ord_s: Valuation,
    pub ord_m: Valuation,
    pub reference: ExactRational,
    /// `ord_q(M_k)` minus the reference, when finite.
    pub residual: Option<ExactRational>,
}

/// Valuations of the Riemann-Roch zeta coefficients next to the reference
/// curve `(c / d)(n - sum d_i^(dim + 1)) k^dim`.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub dim: u32,
    pub n: usize,
    pub degree: u32,
    pub c: ExactRational,
    pub rows: Vec<GrowthRow>,
    /// `ord_q(M_k)` has strictly increasing first differences over the range.
    pub superlinear_evidence: bool,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn growth_report<R: Ambient>(w: &VarietySpec<R>, space: &AmbientSpace<R>, k_max: usize) -> Result<GrowthReport> {
    let field = space.field();
    let (p, r) = (field.p(), field.r());
    let dim = space.dim();
    let n = w.nvars();
    let c = BigRational::new(1.into(), BigInt::from((1..=dim as i64).product::<i64>()));
    let degrees: Vec<u32> = w.equations().iter().filter_map(|e| e.degree()).collect();
    let d = degrees.iter().copied().max().unwrap_or(0);
    // coefficient of k^dim
    let lead = if d == 0 {
        &c * rat(n as i64)
    } else {
        let excess: i64 = degrees.iter().map(|&di| (di as i64).pow(dim + 1)).sum();
        &c / rat(d as i64) * rat(n as i64 - excess)
    };
    let (_, counts) = zeta_rr(w, space, k_max)?;
    let rows: Vec<GrowthRow> = (0..=k_max)
        .map(|k| {
            let per = &counts.per_degree[k];
            let min_ord_s = per
                .iter()
                .map(|dc| ord(&BigInt::from(dc.count.clone()), p, r, Base::Q))
                .min()
                .unwrap_or_else(Valuation::infinite);
            let ord_m = ord(&BigInt::from(counts.m(k)), p, r, Base::Q);
            let reference = &lead * rat((k as i64).pow(dim));
            let residual = ord_m.value().map(|v| ExactRational::from(&(v - &reference)));
            GrowthRow {
                k,
                divisors: per.len(),
                min_ord_s,
                ord_m,
                reference: (&reference).into(),
                residual,
            }
        })
        .collect();
    let finite: Option<Vec<&BigRational>> = rows.iter().map(|r| r.ord_m.value()).collect();
    let superlinear_evidence = match finite {
        Some(v) if v.len() >= 3 => {
            let diffs: Vec<BigRational> = v.windows(2).map(|w| w[1] - w[0]).collect();
            diffs.windows(2).all(|w| w[1] > w[0]) && !diffs.iter().all(Zero::is_zero)
        }
        _ => false,
    };
    Ok(GrowthReport {
        dim,
        n,
        degree: d,
        c: (&c).into(),
        rows,
        superlinear_evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Form, Poly};

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn ords(r: &GrowthReport) -> Vec<String> {
        r.rows.iter().map(|row| row.ord_m.to_string()).collect()
    }

    #[test]
    fn affine_line_over_the_plane_grows_quadratically() {
        let x = AmbientSpace::<Form>::new(f2());
        let r = growth_report(&VarietySpec::affine_space(1), &x, 3).unwrap();
        assert_eq!(ords(&r), ["1", "3", "6", "10"]);
        assert!(r.superlinear_evidence);
        assert_eq!(r.c.decimal, "0.500000");
    }

    #[test]
    fn affine_line_over_the_line_grows_linearly() {
        let x = AmbientSpace::<Poly>::new(f2());
        let r = growth_report(&VarietySpec::affine_space(1), &x, 4).unwrap();
        assert_eq!(ords(&r), ["1", "2", "3", "4", "5"]);
        assert!(!r.superlinear_evidence);
    }
}
