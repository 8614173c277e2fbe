use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{ord, Base, Valuation};
use crate::algebra::{linalg, FieldElement, MvPoly};
use crate::error::{Error, Result};
use crate::geometry::{polar_divisor, Ambient, AmbientSpace, Divisor, RRBasis};
use crate::zeta::{cleared_substitution, count_solutions, count_solutions_naive, enumerate_zeros, CountMethod};
use crate::varieties::{VarietyKind, VarietySpec};

/// The polynomial system over F_q obtained by writing each coordinate in a
/// basis `u_1..u_s` of L(E) and each equation in a basis `w_1..w_r` of
/// L(d_i E + W).
#[derive(Clone, Debug)]
pub struct AxKatzSystem {
    /// `s = l(E)`.
    pub s: usize,
    /// Number of affine coordinates.
    pub n: usize,
    /// Equation degrees `d_i`.
    pub degrees: Vec<u32>,
    /// `W = sup` of the polar divisors of all coefficients.
    pub w: Divisor,
    /// `r_i = l(d_i E + W)`, one per equation.
    pub r_dims: Vec<usize>,
    /// All `g` polynomials, equation by equation, in variables
    /// `x_(j,i)` (index `j * s + i`).
    pub g_polys: Vec<MvPoly>,
}

impl AxKatzSystem {
    /// Total of `l(d_i E + W)` over the equations.
    pub fn r_dim(&self) -> usize {
        self.r_dims.iter().sum()
    }

    fn nonzero_degrees(&self) -> Vec<u32> {
        self.g_polys.iter().filter_map(MvPoly::degree).collect()
    }

    /// `(s n - sum deg g) / max deg g` over the nonzero `g`; `None` when no `g`
    /// has positive degree.
    pub fn bound(&self) -> Option<BigRational> {
        let degs = self.nonzero_degrees();
        let max = *degs.iter().max()?;
        if max == 0 {
            return None;
        }
        let sum: i64 = degs.iter().map(|&d| d as i64).sum();
        Some(BigRational::new(
            BigInt::from((self.s * self.n) as i64 - sum),
            BigInt::from(max),
        ))
    }

    pub fn max_degree(&self) -> u32 {
        self.nonzero_degrees().into_iter().max().unwrap_or(0)
    }
}

/// Coordinates of `target` in the span of `basis`, matched monomial by monomial.
fn coordinates<R: Ambient>(basis: &[R], target: &R) -> Option<Vec<FieldElement>> {
    let field = target.field();
    let mut rows: BTreeMap<R::Mono, usize> = BTreeMap::new();
    for b in basis.iter().chain(std::iter::once(target)) {
        for (m, _) in b.terms() {
            let next = rows.len();
            rows.entry(m).or_insert(next);
        }
    }
    let mut a = vec![vec![field.zero(); basis.len()]; rows.len()];
    for (k, b) in basis.iter().enumerate() {
        for (m, c) in b.terms() {
            a[rows[&m]][k] = c;
        }
    }
    let mut rhs = vec![field.zero(); rows.len()];
    for (m, c) in target.terms() {
        rhs[rows[&m]] = c;
    }
    linalg::solve(field, &a, &rhs, basis.len()).solution
}

/// Builds the system for the equations of an affine `W` over L(E).
pub fn axkatz_system<R: Ambient>(w: &VarietySpec<R>, space: &AmbientSpace<R>, e: &Divisor) -> Result<AxKatzSystem> {
    let VarietyKind::Affine(n) = w.kind() else {
        return Err(Error::invalid("the Ax-Katz system needs an affine variety"));
    };
    if w.equations().is_empty() {
        return Err(Error::invalid("no equations: the count is q^(n l(E)) and there is no g-system"));
    }
    if !e.is_effective() {
        return Err(Error::invalid(format!("E must be effective, got {e}")));
    }
    let field = space.field();
    let polars = w
        .equations()
        .iter()
        .flat_map(|eq| eq.terms().map(|(_, c)| polar_divisor(c)))
        .chain(std::iter::once(Ok(Divisor::zero())))
        .collect::<Result<Vec<_>>>()?;
    let wdiv = Divisor::sup(&polars)?;
    let u: RRBasis<R> = space.rr_basis(e)?;
    let s = u.dim();
    let nv = s * n;
    let mut degrees = Vec::new();
    let mut r_dims = Vec::new();
    let mut g_polys = Vec::new();
    for eq in w.equations() {
        let d = eq.degree().unwrap_or(0);
        let target_div = e.scale(d as i64).add(&wdiv);
        let wb = space.rr_basis(&target_div)?;
        let common = eq.terms().fold(R::one(field), |acc, (_, c)| acc.lcm(c.den()));
        let scale_den = common.mul(&u.denominator.pow(d));
        let mut g = vec![MvPoly::zero(field, nv); wb.dim()];
        for (mono, coeff) in cleared_substitution(eq, &u) {
            let target = coeff
                .mul(&wb.denominator)
                .exact_div(&scale_den)
                .ok_or_else(|| Error::internal(format!("coefficient of x^{mono:?} is not in L({target_div})")))?;
            let gamma = coordinates(&wb.numerators, &target)
                .ok_or_else(|| Error::internal(format!("w-basis of L({target_div}) does not span x^{mono:?}")))?;
            for (k, c) in gamma.into_iter().enumerate() {
                g[k].add_term(mono.clone(), c);
            }
        }
        degrees.push(d);
        r_dims.push(wb.dim());
        g_polys.extend(g);
    }
    Ok(AxKatzSystem {
        s,
        n,
        degrees,
        w: wdiv,
        r_dims,
        g_polys,
    })
}

/// Both counts of `L(E)^n ∩ W`, the bound and the valuation.
#[derive(Clone, Debug, Serialize)]
pub struct AxKatzReport {
    pub divisor: Divisor,
    /// `deg W`.
    pub rho: i64,
    pub s: usize,
    pub r_dim: usize,
    pub g_count: usize,
    pub max_g_degree: u32,
    #[serde(serialize_with = "crate::zeta::ser_decimal")]
    pub count_direct: BigUint,
    pub direct_method: CountMethod,
    #[serde(serialize_with = "crate::zeta::ser_decimal")]
    pub count_system: BigUint,
    /// Membership test over every tuple of `L(E)^n`.
    #[serde(serialize_with = "crate::zeta::ser_decimal")]
    pub count_naive: BigUint,
    /// `None` when no `g` has positive degree.
    pub bound: Option<Valuation>,
    pub ord_q: Valuation,
    pub counts_agree: bool,
    pub bound_holds: bool,
}

impl AxKatzReport {
    pub fn passed(&self) -> bool {
        self.counts_agree && self.bound_holds
    }
}

pub fn axkatz_verify<R: Ambient>(w: &VarietySpec<R>, space: &AmbientSpace<R>, e: &Divisor) -> Result<AxKatzReport> {
    let field = space.field();
    let sys = axkatz_system(w, space, e)?;
    let basis = space.rr_basis(e)?;
    let direct = count_solutions(w, &basis, &space.caps())?;
    let count_naive = count_solutions_naive(w, &basis, &space.caps())?;
    let count_system = enumerate_zeros(field, &sys.g_polys, sys.s * sys.n, &space.caps())?;
    let ord_q = ord(&BigInt::from(direct.count.clone()), field.p(), field.r(), Base::Q);
    let bound = sys.bound().map(Valuation::finite);
    let bound_holds = match &bound {
        None => true,
        Some(b) => direct.count.is_zero() || &ord_q >= b,
    };
    Ok(AxKatzReport {
        divisor: e.clone(),
        rho: sys.w.degree(),
        s: sys.s,
        r_dim: sys.r_dim(),
        g_count: sys.g_polys.len(),
        max_g_degree: sys.max_degree(),
        counts_agree: direct.count == count_system && count_naive == count_system,
        count_direct: direct.count,
        direct_method: direct.method,
        count_system,
        count_naive,
        bound,
        ord_q,
        bound_holds,
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
    fn single_coordinate_over_infinity() {
        let x = AmbientSpace::<Poly>::new(f2());
        let w = VarietySpec::parse("affine:1:y1", f2()).unwrap();
        let e = x.parse_divisor("[(inf, 1)]").unwrap();
        let sys = axkatz_system(&w, &x, &e).unwrap();
        assert_eq!(sys.s, 2);
        assert_eq!(sys.r_dim(), 2);
        let gs: Vec<String> = sys.g_polys.iter().map(|g| g.to_string()).collect();
        assert_eq!(gs, ["x1", "x2"]);
        assert_eq!(sys.bound(), Some(BigRational::from_integer(0.into())));
        let rep = axkatz_verify(&w, &x, &e).unwrap();
        assert_eq!(rep.count_direct, BigUint::from(1u32));
        assert!(rep.passed());
    }

    #[test]
    fn hyperbola_at_zero() {
        let x = AmbientSpace::<Poly>::new(f2());
        let w = VarietySpec::parse("affine:2:y1*y2 - 1", f2()).unwrap();
        let sys = axkatz_system(&w, &x, &Divisor::zero()).unwrap();
        assert_eq!(sys.s, 1);
        let gs: Vec<String> = sys.g_polys.iter().map(|g| g.to_string()).collect();
        assert_eq!(gs, ["x1*x2 + 1"]);
        assert_eq!(sys.bound(), Some(BigRational::from_integer(0.into())));
        let rep = axkatz_verify(&w, &x, &Divisor::zero()).unwrap();
        assert_eq!(rep.count_system, BigUint::from(1u32));
        assert_eq!(rep.ord_q, Valuation::from_int(0));
        assert!(rep.passed());
    }

    #[test]
    fn no_equations_is_rejected() {
        let x = AmbientSpace::<Poly>::new(f2());
        assert!(axkatz_system(&VarietySpec::affine_space(1), &x, &Divisor::zero()).is_err());
    }

    #[test]
    fn coefficients_with_poles_enlarge_w() {
        let x = AmbientSpace::<Poly>::new(f2());
        let w = VarietySpec::parse("affine:1:y1^2 + 1/(t+1)*y1 + t", f2()).unwrap();
        let e = x.parse_divisor("[(inf, 1)]").unwrap();
        let sys = axkatz_system(&w, &x, &e).unwrap();
        assert_eq!(sys.w, x.parse_divisor("[(inf, 1), (t + 1, 1)]").unwrap());
        assert!(sys.g_polys.iter().all(|g| g.degree().unwrap_or(0) <= 2));
        let rep = axkatz_verify(&w, &x, &e).unwrap();
        assert!(rep.counts_agree, "{rep:?}");
    }
}
