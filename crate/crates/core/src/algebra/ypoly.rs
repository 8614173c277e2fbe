use std::collections::BTreeMap;
use std::fmt;

use super::{CoordRing, Field, FnFieldElement};

/// A polynomial in coordinate variables with coefficients in F_q(X).
///
/// Terms are keyed by exponent vectors of length `nvars`; no zero coefficients
/// are stored. How variable indices map to names (`y0..` or `y1..`) is decided by
/// the owner.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct YPoly<R> {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FnFieldElement<R>>,
}

impl<R: CoordRing> YPoly<R> {
    pub fn zero(field: Field, nvars: usize) -> Self {
        YPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FnFieldElement<R>, nvars: usize) -> Self {
        let mut p = Self::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(field, nvars);
        p.terms.insert(e, FnFieldElement::one(field));
        p
    }

    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, FnFieldElement<R>)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: FnFieldElement<R>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FnFieldElement<R>)> {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The constant term when no variable occurs.
    pub fn as_constant(&self) -> Option<FnFieldElement<R>> {
        match self.terms.len() {
            0 => Some(FnFieldElement::zero(self.field)),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        YPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.field, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &FnFieldElement<R>) -> Self {
        let mut out = Self::zero(self.field, self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.mul(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(FnFieldElement::one(self.field), self.nvars);
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

    /// Value at a point of F_q(X)^nvars.
    pub fn eval(&self, point: &[FnFieldElement<R>]) -> FnFieldElement<R> {
        assert_eq!(point.len(), self.nvars, "arity mismatch");
        let mut acc = FnFieldElement::zero(self.field);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term = term.mul(&x.pow(k));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Composition: replaces variable `i` by `images[i]`, all images sharing one
    /// variable count.
    pub fn substitute(&self, images: &[YPoly<R>]) -> YPoly<R> {
        assert_eq!(images.len(), self.nvars, "arity mismatch");
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<YPoly<R>>> = images
            .iter()
            .map(|p| vec![YPoly::constant(FnFieldElement::one(self.field), target), p.clone()])
            .collect();
        let mut out = YPoly::zero(self.field, target);
        for (e, c) in &self.terms {
            let mut term = YPoly::constant(c.clone(), target);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Terms in display order: higher total degree first, then larger exponents.
    fn display_order(&self) -> Vec<(&Vec<u32>, &FnFieldElement<R>)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    /// Formats with variables named `y{offset + i}`.
    pub fn display_with_offset(&self, offset: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.display_order() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("y{}", i + offset)
                    } else {
                        format!("y{}^{k}", i + offset)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let cs = c.to_string();
            let part = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if cs.contains(' ') || cs.contains('/') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl<R: CoordRing> fmt::Display for YPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with_offset(0))
    }
}

impl<R: CoordRing> fmt::Debug for YPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YPoly({self})")
    }
}
