//! Homogeneous forms in `x, y, z` over F_q, the graded coordinate ring of the
//! projective plane. Monomials are ordered graded-lexicographically with
//! `x > y > z`; a form is normalized when its leading coefficient is 1.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::{Degree, Factorization, Field, FieldElement};
use crate::error::{Error, Result};

/// Exponent triple `x^a y^b z^c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(self, rhs: Monomial) -> Monomial {
        Monomial([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }

    /// `self / rhs` when `rhs` divides `self`.
    pub fn div(self, rhs: Monomial) -> Option<Monomial> {
        let mut out = [0; 3];
        for i in 0..3 {
            out[i] = self.0[i].checked_sub(rhs.0[i])?;
        }
        Some(Monomial(out))
    }

    /// All monomials of total degree `k`, largest first.
    pub fn of_degree(k: u32) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(((k + 2) * (k + 1) / 2) as usize);
        for a in (0..=k).rev() {
            for b in (0..=k - a).rev() {
                out.push(Monomial([a, b, k - a - b]));
            }
        }
        out
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in ["x", "y", "z"].iter().zip(self.0) {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Number of monomials of degree `k` in three variables.
pub fn monomial_count(k: u32) -> u32 {
    (k + 2) * (k + 1) / 2
}

#[derive(Clone)]
pub struct Form {
    field: Field,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Form {
    /// Builds a form from terms; zero coefficients are dropped and repeated
    /// monomials summed. Fails if the surviving terms have different degrees.
    pub fn new(
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Form> {
        let mut map: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m, c) in terms {
            let e = map.entry(m).or_insert(field.zero());
            *e = *e + c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degs = map.keys().map(|m| m.degree());
        if let Some(d) = degs.next() {
            if degs.any(|e| e != d) {
                return Err(Error::Inhomogeneous(
                    "terms of a form must share one total degree".into(),
                ));
            }
        }
        Ok(Form { field, terms: map })
    }

    fn from_map(field: Field, terms: BTreeMap<Monomial, FieldElement>) -> Form {
        Form { field, terms }
    }

    pub fn zero(field: Field) -> Form {
        Form::from_map(field, BTreeMap::new())
    }

    pub fn one(field: Field) -> Form {
        Form::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Form {
        Form::monomial(c, Monomial([0, 0, 0]))
    }

    pub fn monomial(c: FieldElement, m: Monomial) -> Form {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Form::from_map(c.field(), terms)
    }

    /// Variable by index: 0 = x, 1 = y, 2 = z.
    pub fn var(field: Field, i: usize) -> Form {
        let mut e = [0; 3];
        e[i] = 1;
        Form::monomial(field.one(), Monomial(e))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, FieldElement)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn coeff(&self, m: Monomial) -> FieldElement {
        self.terms.get(&m).copied().unwrap_or(self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next() {
            None => Degree::NegInfinity,
            Some(m) => Degree::Finite(m.degree()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(Monomial([0, 0, 0])).is_one()
    }

    pub fn leading_term(&self) -> Option<(Monomial, FieldElement)> {
        self.terms.last_key_value().map(|(m, c)| (*m, *c))
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.leading_term().map_or(self.field.zero(), |(_, c)| c)
    }

    pub fn is_normalized(&self) -> bool {
        self.leading_coeff().is_one()
    }

    pub fn checked_add(&self, rhs: &Form) -> Result<Form> {
        if !self.is_zero() && !rhs.is_zero() && self.degree() != rhs.degree() {
            return Err(Error::Inhomogeneous(format!(
                "cannot add forms of degrees {} and {}",
                self.degree(),
                rhs.degree()
            )));
        }
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let e = terms.entry(*m).or_insert(self.field.zero());
            *e = *e + *c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Form::from_map(self.field, terms))
    }

    /// Sum of two forms of equal degree.
    ///
    /// Panics on a degree mismatch; parsing and the fraction layer never produce one.
    pub fn add(&self, rhs: &Form) -> Form {
        self.checked_add(rhs).expect("form degrees must agree")
    }

    pub fn sub(&self, rhs: &Form) -> Form {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Form {
        Form::from_map(
            self.field,
            self.terms.iter().map(|(m, c)| (*m, -*c)).collect(),
        )
    }

    pub fn scale(&self, c: FieldElement) -> Form {
        if c.is_zero() {
            return Form::zero(self.field);
        }
        Form::from_map(
            self.field,
            self.terms.iter().map(|(m, x)| (*m, *x * c)).collect(),
        )
    }

    pub fn mul(&self, rhs: &Form) -> Form {
        let mut terms: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e = terms.entry(ma.mul(*mb)).or_insert(self.field.zero());
                *e = *e + *ca * *cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Form::from_map(self.field, terms)
    }

    pub fn pow(&self, mut e: u32) -> Form {
        let mut base = self.clone();
        let mut acc = Form::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `Some(self / divisor)` when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Form) -> Option<Form> {
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        while let Some((&m, &c)) = rem.last_key_value() {
            let qm = m.div(lm)?;
            let qc = c * lc_inv;
            quot.insert(qm, qc);
            for (dm, dc) in &divisor.terms {
                let key = dm.mul(qm);
                let e = rem.entry(key).or_insert(self.field.zero());
                *e = *e - qc * *dc;
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
        }
        Some(Form::from_map(self.field, quot))
    }

    /// Divides by the leading coefficient; zero is returned unchanged.
    pub fn normalize(&self) -> Form {
        match self.leading_coeff().inv() {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    /// Normalized forms of degree `k` in increasing `Ord` order.
    pub fn normalized_of_degree(field: Field, k: u32) -> impl Iterator<Item = Form> {
        let monos = Monomial::of_degree(k);
        let n = monos.len() as u32;
        let q = field.q() as u64;
        // leading monomial at position i (largest first); lower ones free
        (0..n).rev().flat_map(move |lead_pos| {
            let monos = monos.clone();
            let free = (n - 1 - lead_pos) as u32;
            (0..q.pow(free)).map(move |idx| {
                let mut terms = BTreeMap::new();
                terms.insert(monos[lead_pos as usize], field.one());
                let mut rest = idx;
                for pos in (lead_pos as usize + 1..n as usize).rev() {
                    let c = field.element((rest % q) as u32);
                    rest /= q;
                    if !c.is_zero() {
                        terms.insert(monos[pos], c);
                    }
                }
                Form::from_map(field, terms)
            })
        })
    }

    /// Every form of degree `k`, zero included.
    pub fn all_of_degree(field: Field, k: u32) -> impl Iterator<Item = Form> {
        let monos = Monomial::of_degree(k);
        let q = field.q() as u64;
        let count = q.pow(monos.len() as u32);
        (0..count).map(move |idx| {
            let mut terms = BTreeMap::new();
            let mut rest = idx;
            for m in &monos {
                let c = field.element((rest % q) as u32);
                rest /= q;
                if !c.is_zero() {
                    terms.insert(*m, c);
                }
            }
            Form::from_map(field, terms)
        })
    }

    /// Factorization into normalized irreducible forms by trial division with
    /// normalized candidates of increasing degree.
    pub fn factor(&self) -> Result<Factorization<Form>> {
        if self.is_zero() {
            return Err(Error::invalid("cannot factor the zero form"));
        }
        let unit = self.leading_coeff();
        let mut rest = self.normalize();
        let mut factors = Vec::new();
        let deg_of = |f: &Form| f.degree().finite().unwrap_or(0);
        // linear factors are the common case; monomial content first
        for i in 0..3 {
            let v = Form::var(self.field, i);
            let mut mult = 0;
            while let Some(q) = rest.exact_div(&v) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((v, mult));
            }
        }
        let mut d = 1;
        while 2 * d <= deg_of(&rest) {
            for cand in Form::normalized_of_degree(self.field, d) {
                if d == 1 && cand.terms.len() == 1 {
                    continue;
                }
                let mut mult = 0;
                while let Some(q) = rest.exact_div(&cand) {
                    rest = q;
                    mult += 1;
                }
                if mult > 0 {
                    factors.push((cand, mult));
                }
                if 2 * d > deg_of(&rest) {
                    break;
                }
            }
            d += 1;
        }
        if deg_of(&rest) > 0 {
            match factors.iter_mut().find(|(f, _)| *f == rest) {
                Some((_, m)) => *m += 1,
                None => factors.push((rest, 1)),
            }
        }
        factors.sort();
        Ok(Factorization { unit, factors })
    }

    pub fn is_irreducible(&self) -> bool {
        match self.factor() {
            Ok(fz) => fz.factors.len() == 1 && fz.factors[0].1 == 1,
            Err(_) => false,
        }
    }

    /// Normalized greatest common divisor, computed from the factorization of
    /// the operand of smaller degree. `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Form) -> Form {
        if self.is_zero() {
            return rhs.normalize();
        }
        if rhs.is_zero() {
            return self.normalize();
        }
        if self.degree() == Degree::Finite(0) || rhs.degree() == Degree::Finite(0) {
            return Form::one(self.field);
        }
        let (small, big) = if self.degree() <= rhs.degree() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if small.terms.len() == 1 || big.terms.len() == 1 {
            return monomial_gcd(small, big);
        }
        let mut g = Form::one(self.field);
        let mut rest = big.clone();
        for (p, m) in small.factor().expect("nonzero").factors {
            for _ in 0..m {
                match rest.exact_div(&p) {
                    Some(q) => {
                        rest = q;
                        g = g.mul(&p);
                    }
                    None => break,
                }
            }
        }
        g
    }
}

/// gcd when at least one side is a single term: the monomial part of the gcd.
fn monomial_gcd(a: &Form, b: &Form) -> Form {
    let min_exps = |f: &Form| {
        let mut e = [u32::MAX; 3];
        for m in f.terms.keys() {
            for i in 0..3 {
                e[i] = e[i].min(m.0[i]);
            }
        }
        e
    };
    let (ea, eb) = (min_exps(a), min_exps(b));
    let mut e = [0; 3];
    for i in 0..3 {
        e[i] = ea[i].min(eb[i]);
    }
    Form::monomial(a.field.one(), Monomial(e))
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Form {}

impl Hash for Form {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl PartialOrd for Form {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients in descending monomial order.
impl Ord for Form {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let Some(d) = self.degree().finite() else {
            return Ordering::Equal;
        };
        for m in Monomial::of_degree(d) {
            match self.coeff(m).cmp(&other.coeff(m)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            super::poly::write_coeff_times(f, *c, &m.to_string())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn x(f: Field) -> Form {
        Form::var(f, 0)
    }
    fn y(f: Field) -> Form {
        Form::var(f, 1)
    }
    fn z(f: Field) -> Form {
        Form::var(f, 2)
    }

    #[test]
    fn factor_x2_plus_xy() {
        let f = f2();
        let form = x(f).mul(&x(f)).add(&x(f).mul(&y(f)));
        let fz = form.factor().unwrap();
        let got: Vec<String> = fz.factors.iter().map(|(g, _)| g.to_string()).collect();
        assert_eq!(got, vec!["x".to_string(), "x + y".to_string()]);
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let ms: Vec<String> = Monomial::of_degree(2).iter().map(|m| m.to_string()).collect();
        assert_eq!(ms, vec!["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]);
        assert!(Monomial([0, 0, 2]) > Monomial([1, 0, 0]));
    }

    #[test]
    fn inhomogeneous_terms_rejected() {
        let f = f2();
        let r = Form::new(f, vec![(Monomial([1, 0, 0]), f.one()), (Monomial([0, 0, 0]), f.one())]);
        assert!(matches!(r, Err(Error::Inhomogeneous(_))));
        assert!(x(f).checked_add(&Form::one(f)).is_err());
    }

    #[test]
    fn normalized_enumeration_counts() {
        let f = f2();
        assert_eq!(Form::normalized_of_degree(f, 1).count(), 7);
        assert_eq!(Form::normalized_of_degree(f, 2).count(), 63);
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(Form::normalized_of_degree(f3, 1).count(), 13);
        let forms: Vec<Form> = Form::normalized_of_degree(f3, 2).collect();
        assert!(forms.iter().all(|g| g.is_normalized()));
        assert!(forms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Form::all_of_degree(f, 1).count(), 8);
    }

    #[test]
    fn exact_division() {
        let f = f2();
        let a = x(f).add(&y(f));
        let b = y(f).add(&z(f));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&x(f)), None);
    }

    #[test]
    fn gcd_of_forms() {
        let f = f2();
        let a = x(f).add(&y(f));
        let b = y(f).add(&z(f));
        let c = x(f).add(&z(f));
        assert_eq!(a.mul(&b).gcd(&b.mul(&c)), b);
        assert_eq!(x(f).mul(&y(f)).gcd(&x(f).mul(&z(f))), x(f));
        assert!(a.gcd(&c).is_one());
    }

    #[test]
    fn factorization_reconstructs_small_forms() {
        for q in [2, 3] {
            let f = Field::with_order(q).unwrap();
            for k in 1..=3 {
                if q == 3 && k == 3 {
                    // 3^10 forms; degree 2 already covers the interesting cases over F_3
                    continue;
                }
                for form in Form::all_of_degree(f, k).filter(|g| !g.is_zero()) {
                    let fz = form.factor().unwrap();
                    let mut prod = Form::constant(fz.unit);
                    for (g, m) in &fz.factors {
                        assert!(g.is_normalized());
                        prod = prod.mul(&g.pow(*m));
                    }
                    assert_eq!(prod, form);
                }
            }
        }
    }

    #[test]
    fn irreducible_conics_over_f2() {
        // 63 normalized conics = 21 products of two distinct lines + 7 squares + 35 irreducible
        let f = f2();
        let irreducible = Form::normalized_of_degree(f, 2).filter(|g| g.is_irreducible()).count();
        assert_eq!(irreducible, 35);
    }
}
