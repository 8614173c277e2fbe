use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::algebra::{Degree, Form, Poly};
use crate::error::{Error, Result};

/// A prime divisor of the ambient variety.
///
/// On the line: the point at infinity or a monic irreducible polynomial in `t`.
/// On the plane: a normalized irreducible form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Line(Poly),
    Plane(Form),
}

impl Place {
    /// The place cut out by a monic irreducible polynomial.
    pub fn line(p: Poly) -> Result<Place> {
        if !p.is_monic() || !p.is_irreducible() {
            return Err(Error::invalid(format!("`{p}` is not a monic irreducible polynomial")));
        }
        Ok(Place::Line(p))
    }

    /// The place cut out by a normalized irreducible form.
    pub fn plane(f: Form) -> Result<Place> {
        if !f.is_normalized() || !f.is_irreducible() {
            return Err(Error::invalid(format!("`{f}` is not a normalized irreducible form")));
        }
        Ok(Place::Plane(f))
    }

    pub fn degree(&self) -> u32 {
        let d = match self {
            Place::Infinity => return 1,
            Place::Line(p) => p.degree(),
            Place::Plane(f) => f.degree(),
        };
        match d {
            Degree::Finite(d) => d,
            Degree::NegInfinity => unreachable!("places are nonzero"),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Line(p) => write!(f, "{p}"),
            Place::Plane(g) => write!(f, "{g}"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P[{self}]")
    }
}

/// A finite integer combination of places. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_place(place: Place, n: i64) -> Self {
        let mut d = Self::zero();
        d.add_place(place, n);
        d
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Place, i64)>) -> Self {
        let mut d = Self::zero();
        for (p, n) in terms {
            d.add_place(p, n);
        }
        d
    }

    pub fn add_place(&mut self, place: Place, n: i64) {
        if n == 0 {
            return;
        }
        let c = self.coeffs.entry(place.clone()).or_insert(0);
        *c += n;
        if *c == 0 {
            self.coeffs.remove(&place);
        }
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    /// `(place, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &n)| (p, n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms().map(|(p, n)| n * p.degree() as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&n| n > 0)
    }

    /// `self >= other` in the effectiveness order.
    pub fn ge(&self, other: &Divisor) -> bool {
        self.sub(other).is_effective()
    }

    pub fn add(&self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, n) in rhs.terms() {
            out.add_place(p.clone(), n);
        }
        out
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            coeffs: self.coeffs.iter().map(|(p, &n)| (p.clone(), -n)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Divisor) -> Divisor {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.terms().map(|(p, n)| (p.clone(), n * k)))
    }

    /// The part with positive coefficients.
    pub fn positive_part(&self) -> Divisor {
        Divisor::from_terms(self.terms().filter(|&(_, n)| n > 0).map(|(p, n)| (p.clone(), n)))
    }

    /// Minus the part with negative coefficients; effective.
    pub fn negative_part(&self) -> Divisor {
        Divisor::from_terms(self.terms().filter(|&(_, n)| n < 0).map(|(p, n)| (p.clone(), -n)))
    }

    fn combine(divisors: &[Divisor], pick: fn(i64, i64) -> i64) -> Result<Divisor> {
        let Some(first) = divisors.first() else {
            return Err(Error::invalid("inf/sup of an empty list of divisors"));
        };
        let places: std::collections::BTreeSet<&Place> =
            divisors.iter().flat_map(|d| d.coeffs.keys()).collect();
        let mut out = Divisor::zero();
        for p in places {
            let n = divisors[1..]
                .iter()
                .fold(first.coeff(p), |acc, d| pick(acc, d.coeff(p)));
            out.add_place(p.clone(), n);
        }
        Ok(out)
    }

    /// Place-wise minimum: the greatest lower bound.
    pub fn inf(divisors: &[Divisor]) -> Result<Divisor> {
        Self::combine(divisors, i64::min)
    }

    /// Place-wise maximum: the least upper bound.
    pub fn sup(divisors: &[Divisor]) -> Result<Divisor> {
        Self::combine(divisors, i64::max)
    }

    /// All effective divisors `D` with `0 <= D <= self`.
    pub fn effective_below(&self) -> Vec<Divisor> {
        let mut out = vec![Divisor::zero()];
        for (p, n) in self.terms() {
            if n <= 0 {
                continue;
            }
            out = out
                .into_iter()
                .flat_map(|d| {
                    (0..=n).map(move |k| {
                        let mut e = d.clone();
                        e.add_place(p.clone(), k);
                        e
                    })
                })
                .collect();
        }
        out.sort();
        out
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (p, n)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({p}, {n})")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor{self}")
    }
}

#[derive(Serialize)]
struct PlaceEntry {
    place: String,
    coeff: i64,
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let places: Vec<PlaceEntry> = self
            .terms()
            .map(|(p, n)| PlaceEntry {
                place: p.to_string(),
                coeff: n,
            })
            .collect();
        let mut st = s.serialize_struct("Divisor", 2)?;
        st.serialize_field("places", &places)?;
        st.serialize_field("degree", &self.degree())?;
        st.end()
    }
}

/// Splits `[(a, 1), (b, -2)]` into `("a", 1), ("b", -2)`.
pub(crate) fn split_divisor_text(text: &str) -> Result<Vec<(String, i64)>> {
    let s = text.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::invalid(format!("divisor `{text}` must be enclosed in [ ]")))?;
    let mut out = Vec::new();
    let chars: Vec<char> = inner.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            c if c.is_whitespace() || c == ',' => i += 1,
            '(' => {
                let mut depth = 0;
                let mut comma = None;
                let mut j = i;
                loop {
                    let Some(&c) = chars.get(j) else {
                        return Err(Error::invalid(format!("unbalanced parentheses in `{text}`")));
                    };
                    match c {
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        ',' if depth == 1 => comma = Some(j),
                        _ => {}
                    }
                    j += 1;
                }
                let comma = comma.ok_or_else(|| Error::invalid(format!("missing coefficient in `{text}`")))?;
                let place: String = chars[i + 1..comma].iter().collect();
                let coeff: String = chars[comma + 1..j].iter().collect();
                let coeff = coeff
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| Error::invalid(format!("bad coefficient `{}`", coeff.trim())))?;
                out.push((place.trim().trim_matches('"').to_string(), coeff));
                i = j + 1;
            }
            c => return Err(Error::invalid(format!("unexpected `{c}` in divisor `{text}`"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn pt() -> Place {
        Place::line(Poly::t(f2())).unwrap()
    }

    fn pt1() -> Place {
        Place::line(Poly::from_ints(f2(), &[1, 1])).unwrap()
    }

    #[test]
    fn inf_keeps_pole_at_infinity() {
        let d = Divisor::from_terms([(pt(), 1), (Place::Infinity, -1)]);
        let m = Divisor::inf(&[d, Divisor::zero()]).unwrap();
        assert_eq!(m, Divisor::from_place(Place::Infinity, -1));
    }

    #[test]
    fn sup_of_disjoint_places() {
        let s = Divisor::sup(&[Divisor::from_place(pt(), 1), Divisor::from_place(pt1(), 1)]).unwrap();
        assert_eq!(s, Divisor::from_terms([(pt(), 1), (pt1(), 1)]));
        assert!(Divisor::sup(&[]).is_err());
    }

    #[test]
    fn order_and_degree() {
        let e = Divisor::from_place(pt(), 2);
        let d = Divisor::from_place(pt(), 1);
        assert!(e.ge(&d));
        assert!(!d.ge(&e));
        let q = Place::line(Poly::from_ints(f2(), &[1, 1, 1])).unwrap();
        let x = Divisor::from_terms([(q, 1), (Place::Infinity, -3)]);
        assert_eq!(x.degree(), -1);
        assert_eq!(x.add(&e).degree(), x.degree() + e.degree());
    }

    #[test]
    fn rejects_reducible_places() {
        assert!(Place::line(Poly::from_ints(f2(), &[0, 1, 1])).is_err());
        assert!(Place::line(Poly::from_ints(Field::new(3, 1).unwrap(), &[0, 2])).is_err());
    }

    #[test]
    fn effective_below_counts() {
        let e = Divisor::from_terms([(pt(), 2), (Place::Infinity, 1)]);
        let below = e.effective_below();
        assert_eq!(below.len(), 6);
        assert!(below.iter().all(|d| e.ge(d) && d.is_effective()));
    }

    #[test]
    fn display_and_split() {
        let d = Divisor::from_terms([(pt1(), -1), (Place::Infinity, 2)]);
        assert_eq!(d.to_string(), "[(inf, 2), (t + 1, -1)]");
        let parts = split_divisor_text(&d.to_string()).unwrap();
        assert_eq!(parts, vec![("inf".to_string(), 2), ("t + 1".to_string(), -1)]);
        let parts = split_divisor_text("[(\"x^2 + (y)*z\", 3)]").unwrap();
        assert_eq!(parts, vec![("x^2 + (y)*z".to_string(), 3)]);
        assert!(split_divisor_text("(t, 1)").is_err());
        assert_eq!(split_divisor_text("[]").unwrap(), vec![]);
    }
}
