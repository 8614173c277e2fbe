use std::fmt;

use rayon::prelude::*;

use super::TwistData;
use crate::algebra::FnFieldElement;
use crate::error::{Error, Result};
use crate::geometry::{polar_divisor, principal_divisor, Ambient, AmbientSpace, Divisor};

/// A point of projective space over F_q(X) in canonical form: coprime ring
/// coordinates (equal-degree forms on the plane) whose first nonzero entry is
/// normalized.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint<R> {
    coords: Vec<R>,
}

impl<R: Ambient> ProjPoint<R> {
    /// Canonicalizes ring coordinates. On the plane they must be forms of one
    /// degree (zero allowed).
    pub fn from_ring(coords: Vec<R>) -> Result<Self> {
        let Some(first) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::invalid("projective point with all coordinates zero"));
        };
        if R::GRADED {
            let d = coords[first].degree();
            if coords.iter().any(|c| !c.is_zero() && c.degree() != d) {
                return Err(Error::Inhomogeneous("point coordinates must share one degree".into()));
            }
        }
        let mut g = coords[first].clone();
        for c in &coords[first + 1..] {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        g = g.normalize();
        let scale = coords[first].exact_div(&g).expect("gcd divides").leading_coeff().inv()?;
        let coords = coords
            .iter()
            .map(|c| {
                if c.is_zero() {
                    c.clone()
                } else {
                    c.exact_div(&g).expect("gcd divides").scale(scale)
                }
            })
            .collect();
        Ok(ProjPoint { coords })
    }

    /// Canonical representative of `[y0 : ... : yn]` with function-field entries.
    pub fn from_functions(y: &[FnFieldElement<R>]) -> Result<Self> {
        let Some(first) = y.iter().find(|c| !c.is_zero()) else {
            return Err(Error::invalid("projective point with all coordinates zero"));
        };
        let field = first.field();
        let l = y
            .iter()
            .filter(|c| !c.is_zero())
            .fold(R::one(field), |acc, c| acc.lcm(c.den()));
        let coords = y
            .iter()
            .map(|c| {
                if c.is_zero() {
                    R::zero(field)
                } else {
                    c.num().mul(&l.exact_div(c.den()).expect("lcm is a multiple"))
                }
            })
            .collect();
        Self::from_ring(coords)
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// The coordinates as functions `c_i / c_j`, `j` the first nonzero index.
    pub fn functions(&self) -> Vec<FnFieldElement<R>> {
        let j = self.coords.iter().find(|c| !c.is_zero()).expect("nonzero point");
        self.coords
            .iter()
            .map(|c| FnFieldElement::new(c.clone(), j.clone()).expect("nonzero denominator"))
            .collect()
    }

    /// Height read off the canonical coordinates: the largest polynomial degree
    /// on the line, the common form degree on the plane.
    pub fn height(&self) -> u32 {
        R::tuple_height(&self.coords)
    }

    /// Height from its definition, `-deg inf_i (y_i)` over nonzero coordinates.
    pub fn height_by_divisors(&self) -> i64 {
        -inf_of_coordinates(&self.functions()).degree()
    }
}

/// `inf_i (y_i)` over the nonzero entries.
pub fn inf_of_coordinates<R: Ambient>(y: &[FnFieldElement<R>]) -> Divisor {
    let divs: Vec<Divisor> = y
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| principal_divisor(c).expect("nonzero"))
        .collect();
    Divisor::inf(&divs).expect("some coordinate is nonzero")
}

/// `sup_i (y_i)_inf`, with zero entries contributing nothing.
pub fn sup_of_polar<R: Ambient>(y: &[FnFieldElement<R>]) -> Divisor {
    let mut divs: Vec<Divisor> = y
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| polar_divisor(c).expect("nonzero"))
        .collect();
    divs.push(Divisor::zero());
    Divisor::sup(&divs).expect("nonempty")
}

/// `h_{X,A}(y)`, the height of `A y`.
pub fn twisted_height<R: Ambient>(point: &ProjPoint<R>, tw: &TwistData<R>) -> u32 {
    let z = tw.apply(&point.functions());
    ProjPoint::from_functions(&z).expect("A is invertible").height()
}

impl<R: Ambient> fmt::Display for ProjPoint<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

impl<R: Ambient> fmt::Debug for ProjPoint<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjPoint{self}")
    }
}

fn layer_tuples(leads: usize, all: usize, n: usize) -> u128 {
    (0..=n)
        .map(|j| leads as u128 * (all as u128).saturating_pow((n - j) as u32))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Number of coordinate tuples `enumerate_points` inspects.
pub fn point_tuple_count<R: Ambient>(space: &AmbientSpace<R>, n: usize, d: u32) -> u128 {
    R::point_layers(space.field(), d)
        .iter()
        .map(|(leads, all)| layer_tuples(leads.len(), all.len(), n))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Every point of `P^n(F_q(X))` of height at most `d`, once each, in canonical
/// form and deterministic order.
pub fn enumerate_points<R: Ambient>(space: &AmbientSpace<R>, n: usize, d: u32) -> Result<Vec<ProjPoint<R>>> {
    let layers = R::point_layers(space.field(), d);
    let needed = layers
        .iter()
        .map(|(leads, all)| layer_tuples(leads.len(), all.len(), n))
        .fold(0u128, |a, b| a.saturating_add(b));
    space.caps().check_tuples("point tuples", needed)?;
    let mut out = Vec::new();
    for (leads, all) in &layers {
        for j in 0..=n {
            let tail = n - j;
            let chunk: Vec<ProjPoint<R>> = leads
                .par_iter()
                .flat_map_iter(|lead| {
                    let primes: Vec<R> = lead
                        .factor()
                        .expect("nonzero lead")
                        .factors
                        .into_iter()
                        .map(|(p, _)| p)
                        .collect();
                    let field = lead.field();
                    let total = all.len().pow(tail as u32);
                    (0..total).filter_map(move |mut idx| {
                        let mut rest = Vec::with_capacity(tail);
                        for _ in 0..tail {
                            rest.push(&all[idx % all.len()]);
                            idx /= all.len();
                        }
                        let shared = primes
                            .iter()
                            .any(|p| rest.iter().all(|r| r.is_zero() || r.exact_div(p).is_some()));
                        if shared {
                            return None;
                        }
                        let mut coords = vec![R::zero(field); j];
                        coords.push(lead.clone());
                        coords.extend(rest.into_iter().cloned());
                        Some(ProjPoint { coords })
                    })
                })
                .collect();
            out.extend(chunk);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_fn, Field, Form, Poly};

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn fe<R: Ambient>(s: &str) -> FnFieldElement<R> {
        parse_fn(s, f2()).unwrap()
    }

    fn pt(s: &[&str]) -> ProjPoint<Poly> {
        let y: Vec<_> = s.iter().map(|e| fe::<Poly>(e)).collect();
        ProjPoint::from_functions(&y).unwrap()
    }

    #[test]
    fn canonical_form_clears_denominators() {
        let p = pt(&["t/(t+1)", "1/(t+1)"]);
        assert_eq!(p.to_string(), "[t : 1]");
        let f3 = Field::new(3, 1).unwrap();
        let y: Vec<FnFieldElement<Poly>> = ["2*t", "2"].iter().map(|e| parse_fn(e, f3).unwrap()).collect();
        assert_eq!(ProjPoint::from_functions(&y).unwrap().to_string(), "[t : 1]");
        assert!(ProjPoint::<Poly>::from_functions(&[fe("0"), fe("0")]).is_err());
    }

    #[test]
    fn heights_of_simple_points() {
        assert_eq!(pt(&["1", "1"]).height(), 0);
        assert_eq!(pt(&["t", "1"]).height(), 1);
        assert_eq!(pt(&["t", "1"]).height_by_divisors(), 1);
        let p = ProjPoint::<Form>::from_functions(&[fe("x/y"), fe("1")]).unwrap();
        assert_eq!(p.to_string(), "[x : y]");
        assert_eq!(p.height(), 1);
        assert_eq!(p.height_by_divisors(), 1);
    }

    #[test]
    fn twisted_heights() {
        let f = f2();
        let rows = |r: &[&[&str]]| -> Vec<Vec<String>> {
            r.iter().map(|x| x.iter().map(|s| s.to_string()).collect()).collect()
        };
        let tw = TwistData::<Poly>::parse(&rows(&[&["t", "0"], &["0", "1"]]), None, f).unwrap();
        assert_eq!(twisted_height(&pt(&["1", "1"]), &tw), 1);
        let swap = TwistData::<Poly>::parse(&rows(&[&["0", "1"], &["1", "0"]]), None, f).unwrap();
        assert_eq!(twisted_height(&pt(&["t", "1"]), &swap), 1);
        let id = TwistData::<Poly>::identity(f, 1);
        assert_eq!(twisted_height(&pt(&["t^2 + 1", "t"]), &id), 2);
    }

    #[test]
    fn enumerates_points_of_small_height() {
        let x = AmbientSpace::<Poly>::new(f2());
        let p0 = enumerate_points(&x, 1, 0).unwrap();
        let s: Vec<String> = p0.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["[1 : 0]", "[1 : 1]", "[0 : 1]"]);
        let p1 = enumerate_points(&x, 1, 1).unwrap();
        assert_eq!(p1.len(), 9);
        for want in ["[1 : t]", "[1 : t + 1]", "[t : 1]", "[t + 1 : 1]", "[t : t + 1]", "[t + 1 : t]"] {
            assert!(p1.iter().any(|p| p.to_string() == want), "{want}");
        }
        for d in 0..4 {
            assert_eq!(enumerate_points(&x, 0, d).unwrap().len(), 1);
        }
    }
}
