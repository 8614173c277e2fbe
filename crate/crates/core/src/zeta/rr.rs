use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::solutions::{count_solutions, for_each_tuple, CountMethod};
use super::TruncSeries;
use crate::error::{Error, Result};
use crate::geometry::{Ambient, AmbientSpace, Divisor};
use crate::varieties::{sup_of_polar, VarietyKind, VarietySpec};

/// `S_D` for one divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorCount {
    pub divisor: Divisor,
    #[serde(serialize_with = "crate::zeta::ser_decimal")]
    pub count: BigUint,
    pub method: CountMethod,
}

/// Per-degree tallies behind `Z_RR`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrCounts {
    /// `per_degree[k]` lists `S_D` for every effective `D` of degree `k`.
    pub per_degree: Vec<Vec<DivisorCount>>,
}

impl RrCounts {
    /// `M_k = sum_{deg D = k} S_D`.
    pub fn m(&self, k: usize) -> BigUint {
        self.per_degree[k].iter().map(|c| &c.count).sum()
    }
}

/// `Z_RR(W, T) = sum_D S_D T^deg D` through `T^k_max`.
pub fn zeta_rr<R: Ambient>(w: &VarietySpec<R>, space: &AmbientSpace<R>, k_max: usize) -> Result<(TruncSeries, RrCounts)> {
    let caps = space.caps();
    let mut per_degree = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let divisors = space.enumerate_effective(k as u32)?;
        let counts = divisors
            .into_par_iter()
            .map(|d| {
                let basis = space.rr_basis(&d)?;
                let c = count_solutions(w, &basis, &caps)?;
                Ok(DivisorCount {
                    divisor: d,
                    count: c.count,
                    method: c.method,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        per_degree.push(counts);
    }
    let counts = RrCounts { per_degree };
    let coeffs = (0..=k_max).map(|k| BigInt::from(counts.m(k))).collect();
    Ok((TruncSeries::new(coeffs, k_max), counts))
}

/// `H_D = #{ y in L(D)^n ∩ W : sup_j (y_j)_inf = D }` for effective `D`.
pub fn h_exact_count<R: Ambient>(w: &VarietySpec<R>, space: &AmbientSpace<R>, d: &Divisor) -> Result<BigUint> {
    if !d.is_effective() {
        return Err(Error::invalid(format!("H_D needs an effective divisor, got {d}")));
    }
    let VarietyKind::Affine(n) = w.kind() else {
        return Err(Error::invalid("H_D is defined on affine pieces"));
    };
    let basis = space.rr_basis(d)?;
    let mut count = BigUint::zero();
    for_each_tuple(&basis, n, &space.caps(), |y| {
        if w.contains(y).expect("arity matches") && &sup_of_polar(y) == d {
            count += BigUint::one();
        }
    })?;
    Ok(count)
}

/// `H_D` for every effective divisor of degree at most `k`.
pub fn h_exact_counts<R: Ambient>(
    w: &VarietySpec<R>,
    space: &AmbientSpace<R>,
    k: usize,
) -> Result<BTreeMap<Divisor, BigUint>> {
    let mut out = BTreeMap::new();
    for j in 0..=k {
        for d in space.enumerate_effective(j as u32)? {
            let h = h_exact_count(w, space, &d)?;
            out.insert(d, h);
        }
    }
    Ok(out)
}

/// One row of the interval identity `S_E = sum_{0 <= D <= E} H_D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalRow {
    pub divisor: Divisor,
    #[serde(serialize_with = "crate::zeta::ser_decimal")]
    pub s: BigUint,
    #[serde(serialize_with = "crate::zeta::ser_decimal")]
    pub h_sum: BigUint,
}

impl IntervalRow {
    pub fn holds(&self) -> bool {
        self.s == self.h_sum
    }
}

/// Checks the interval identity for every effective `E` of degree at most `k`.
pub fn interval_identity<R: Ambient>(w: &VarietySpec<R>, space: &AmbientSpace<R>, k: usize) -> Result<Vec<IntervalRow>> {
    let h = h_exact_counts(w, space, k)?;
    let mut rows = Vec::new();
    for e in h.keys() {
        let s = count_solutions(w, &space.rr_basis(e)?, &space.caps())?.count;
        let h_sum = e.effective_below().iter().map(|d| &h[d]).sum();
        rows.push(IntervalRow {
            divisor: e.clone(),
            s,
            h_sum,
        });
    }
    Ok(rows)
}
