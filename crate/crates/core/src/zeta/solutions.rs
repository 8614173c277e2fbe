use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{linalg, Field, FieldElement, FnFieldElement, MvPoly, YPoly};
use crate::error::{Error, Result};
use crate::geometry::{checked_pow, Ambient, Caps, RRBasis};
use crate::varieties::{VarietyKind, VarietySpec};

/// How `count_solutions` reached its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    /// No equations: `q^(n l)`.
    ClosedForm,
    /// Affine-linear system over F_q, counted by rank.
    Linear,
    /// Every coordinate tuple checked.
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCount {
    pub count: BigUint,
    pub method: CountMethod,
}

/// A polynomial in the coordinate variables `x_(j,i)` with ring coefficients.
type RingPoly<R> = BTreeMap<Vec<u32>, R>;

fn ring_poly_add<R: Ambient>(acc: &mut RingPoly<R>, e: Vec<u32>, c: R) {
    if c.is_zero() {
        return;
    }
    match acc.remove(&e) {
        Some(old) => {
            let s = old.add(&c);
            if !s.is_zero() {
                acc.insert(e, s);
            }
        }
        None => {
            acc.insert(e, c);
        }
    }
}

fn ring_poly_mul<R: Ambient>(a: &RingPoly<R>, b: &RingPoly<R>) -> RingPoly<R> {
    let mut out = RingPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            ring_poly_add(&mut out, e, ca.mul(cb));
        }
    }
    out
}

/// Substitutes `y_j = sum_i x_(j,i) b_i` for a basis `b` of L(D) into an
/// equation and clears denominators. The result vanishes exactly where the
/// equation does.
///
/// Variable `x_(j,i)` has index `j * s + i` with `s = dim L(D)`.
pub(crate) fn cleared_substitution<R: Ambient>(eq: &YPoly<R>, basis: &RRBasis<R>) -> RingPoly<R> {
    let field = basis.denominator.field();
    let s = basis.dim();
    let n = eq.nvars();
    let nv = n * s;
    let d = eq.degree().unwrap_or(0);
    let common = eq
        .terms()
        .fold(R::one(field), |acc, (_, c)| acc.lcm(c.den()));
    let linear: Vec<RingPoly<R>> = (0..n)
        .map(|j| {
            let mut p = RingPoly::new();
            for (i, num) in basis.numerators.iter().enumerate() {
                let mut e = vec![0u32; nv];
                e[j * s + i] = 1;
                ring_poly_add(&mut p, e, num.clone());
            }
            p
        })
        .collect();
    let unit = |r: R| -> RingPoly<R> {
        let mut p = RingPoly::new();
        ring_poly_add(&mut p, vec![0; nv], r);
        p
    };
    let mut powers: Vec<Vec<RingPoly<R>>> = linear
        .iter()
        .map(|l| vec![unit(R::one(field)), l.clone()])
        .collect();
    let mut out = RingPoly::new();
    for (e, c) in eq.terms() {
        let deg: u32 = e.iter().sum();
        let coeff = c
            .num()
            .mul(&common.exact_div(c.den()).expect("lcm is a multiple"))
            .mul(&basis.denominator.pow(d - deg));
        let mut term = unit(coeff);
        for (j, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[j].len() <= k as usize {
                let next = ring_poly_mul(powers[j].last().unwrap(), &linear[j]);
                powers[j].push(next);
            }
            term = ring_poly_mul(&term, &powers[j][k as usize]);
        }
        for (e, c) in term {
            ring_poly_add(&mut out, e, c);
        }
    }
    out
}

/// The polynomial system over F_q whose common zeros are the coordinate
/// vectors of `L(D)^n ∩ W`: one polynomial per equation and ring monomial.
pub fn coefficient_system<R: Ambient>(w: &VarietySpec<R>, basis: &RRBasis<R>) -> Vec<MvPoly> {
    let field = basis.denominator.field();
    let nv = w.nvars() * basis.dim();
    let mut out = Vec::new();
    for eq in w.equations() {
        let cleared = cleared_substitution(eq, basis);
        let mut by_mono: BTreeMap<R::Mono, MvPoly> = BTreeMap::new();
        for (e, r) in &cleared {
            for (mono, c) in r.terms() {
                by_mono
                    .entry(mono)
                    .or_insert_with(|| MvPoly::zero(field, nv))
                    .add_term(e.clone(), c);
            }
        }
        out.extend(by_mono.into_values().filter(|g| !g.is_zero()));
    }
    out
}

/// Number of common zeros in F_q^nvars, by rank when every polynomial has
/// degree at most one and by enumeration otherwise.
pub fn count_zeros(field: Field, polys: &[MvPoly], nvars: usize, caps: &Caps) -> Result<SolutionCount> {
    let q = BigUint::from(field.q());
    let affine: Option<Vec<(Vec<FieldElement>, FieldElement)>> = polys.iter().map(MvPoly::as_affine).collect();
    if let Some(rows) = affine {
        let a: Vec<Vec<FieldElement>> = rows.iter().map(|(l, _)| l.clone()).collect();
        let b: Vec<FieldElement> = rows.iter().map(|(_, c)| -*c).collect();
        let sol = linalg::solve(field, &a, &b, nvars);
        let count = match sol.nullity(nvars) {
            Some(k) => q.pow(k as u32),
            None => BigUint::zero(),
        };
        return Ok(SolutionCount {
            count,
            method: CountMethod::Linear,
        });
    }
    Ok(SolutionCount {
        count: enumerate_zeros(field, polys, nvars, caps)?,
        method: CountMethod::Enumeration,
    })
}

/// Number of common zeros in F_q^nvars by checking every vector.
pub fn enumerate_zeros(field: Field, polys: &[MvPoly], nvars: usize, caps: &Caps) -> Result<BigUint> {
    let total = checked_pow(field.q(), nvars as u64);
    caps.check_tuples("coordinate tuples", total)?;
    let elems: Vec<FieldElement> = field.elements().collect();
    let qn = field.q() as u64;
    let count = (0..total as u64)
        .into_par_iter()
        .filter(|&idx| {
            let mut rest = idx;
            let x: Vec<FieldElement> = (0..nvars)
                .map(|_| {
                    let c = elems[(rest % qn) as usize];
                    rest /= qn;
                    c
                })
                .collect();
            polys.iter().all(|g| g.eval(&x).is_zero())
        })
        .count();
    Ok(BigUint::from(count))
}

/// `S_D = #(L(D)^n ∩ W)` for an affine variety `W` in `n` variables.
pub fn count_solutions<R: Ambient>(w: &VarietySpec<R>, basis: &RRBasis<R>, caps: &Caps) -> Result<SolutionCount> {
    let VarietyKind::Affine(n) = w.kind() else {
        return Err(Error::invalid("count_solutions needs an affine variety"));
    };
    let field = basis.denominator.field();
    if w.equations().is_empty() {
        return Ok(SolutionCount {
            count: BigUint::from(field.q()).pow((n * basis.dim()) as u32),
            method: CountMethod::ClosedForm,
        });
    }
    let system = coefficient_system(w, basis);
    count_zeros(field, &system, n * basis.dim(), caps)
}

/// Iterates over all coordinate vectors in F_q^len, calling `f` on each.
pub(crate) fn for_each_vector(field: Field, len: usize, mut f: impl FnMut(&[FieldElement])) {
    let elems: Vec<FieldElement> = field.elements().collect();
    let mut idx = vec![0usize; len];
    let mut x: Vec<FieldElement> = vec![field.zero(); len];
    loop {
        f(&x);
        let mut pos = 0;
        loop {
            if pos == len {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                x[pos] = elems[idx[pos]];
                break;
            }
            idx[pos] = 0;
            x[pos] = elems[0];
            pos += 1;
        }
    }
}

/// Tuples of `L(D)^n` as function-field elements, in coordinate order.
pub(crate) fn for_each_tuple<R: Ambient>(
    basis: &RRBasis<R>,
    n: usize,
    caps: &Caps,
    mut f: impl FnMut(&[FnFieldElement<R>]),
) -> Result<()> {
    let field = basis.denominator.field();
    let s = basis.dim();
    caps.check_tuples("coordinate tuples", checked_pow(field.q(), (n * s) as u64))?;
    for_each_vector(field, n * s, |x| {
        let y: Vec<FnFieldElement<R>> = (0..n).map(|j| basis.element(&x[j * s..(j + 1) * s])).collect();
        f(&y)
    });
    Ok(())
}

/// Reference count of `L(D)^n ∩ W` that evaluates the equations on every
/// tuple of function-field elements.
pub fn count_solutions_naive<R: Ambient>(w: &VarietySpec<R>, basis: &RRBasis<R>, caps: &Caps) -> Result<BigUint> {
    let VarietyKind::Affine(n) = w.kind() else {
        return Err(Error::invalid("count_solutions needs an affine variety"));
    };
    let mut count = BigUint::zero();
    for_each_tuple(basis, n, caps, |y| {
        if w.contains(y).expect("arity matches") {
            count += BigUint::one();
        }
    })?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Form, Poly};
    use crate::geometry::{AmbientSpace, Divisor};

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    #[test]
    fn hyperbola_over_constants() {
        let x = AmbientSpace::<Poly>::new(f2());
        let w = VarietySpec::parse("affine:2:y1*y2 = 1", f2()).unwrap();
        let b = x.rr_basis(&Divisor::zero()).unwrap();
        let c = count_solutions(&w, &b, &x.caps()).unwrap();
        assert_eq!(c.count, BigUint::from(1u32));
        assert_eq!(c.method, CountMethod::Enumeration);
        assert_eq!(count_solutions_naive(&w, &b, &x.caps()).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn affine_space_closed_form() {
        let x = AmbientSpace::<Form>::new(f2());
        let d = x.parse_divisor("[(x, 2)]").unwrap();
        let b = x.rr_basis(&d).unwrap();
        let c = count_solutions(&VarietySpec::affine_space(2), &b, &x.caps()).unwrap();
        assert_eq!(c.count, BigUint::from(1u32 << 12));
        assert_eq!(c.method, CountMethod::ClosedForm);
    }

    #[test]
    fn empty_tuple_counts_once() {
        let x = AmbientSpace::<Poly>::new(f2());
        let b = x.rr_basis(&x.parse_divisor("[(inf, 2)]").unwrap()).unwrap();
        let w = VarietySpec::<Poly>::affine_space(0);
        assert_eq!(count_solutions(&w, &b, &x.caps()).unwrap().count, BigUint::one());
        let contradiction = VarietySpec::parse("affine:0:1", f2()).unwrap();
        assert!(count_solutions(&contradiction, &b, &x.caps()).unwrap().count.is_zero());
    }

    #[test]
    fn linear_path_matches_naive() {
        let x = AmbientSpace::<Poly>::new(f2());
        let w = VarietySpec::parse("affine:2:y1 + t*y2 + 1/(t+1)", f2()).unwrap();
        for d in ["[(inf, 1)]", "[(inf, 2), (t + 1, 1)]", "[(t + 1, 2)]"] {
            let b = x.rr_basis(&x.parse_divisor(d).unwrap()).unwrap();
            let fast = count_solutions(&w, &b, &x.caps()).unwrap();
            assert_eq!(fast.method, CountMethod::Linear);
            assert_eq!(fast.count, count_solutions_naive(&w, &b, &x.caps()).unwrap(), "{d}");
        }
    }

    #[test]
    fn enumeration_respects_the_cap() {
        let x = AmbientSpace::<Poly>::with_caps(
            f2(),
            Caps {
                max_tuples: 16,
                ..Caps::default()
            },
        );
        let w = VarietySpec::parse("affine:2:y1*y2 = 1", f2()).unwrap();
        let b = x.rr_basis(&x.parse_divisor("[(inf, 2)]").unwrap()).unwrap();
        assert!(matches!(count_solutions(&w, &b, &x.caps()), Err(Error::CapExceeded { .. })));
    }
}
