//! Univariate polynomials over F_q in the variable `t`: the affine coordinate ring of
//! the chart `A^1` of the projective line.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::{Degree, Factorization, Field, FieldElement};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    /// Builds a polynomial from coefficients, constant term first. Trailing zeros
    /// are dropped.
    pub fn new(field: Field, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::new(c.field(), vec![c])
    }

    /// `c * t^deg`
    pub fn monomial(c: FieldElement, deg: usize) -> Poly {
        let mut coeffs = vec![c.field().zero(); deg + 1];
        coeffs[deg] = c;
        Poly::new(c.field(), coeffs)
    }

    /// The variable `t`.
    pub fn t(field: Field) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n as u32 - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(self.field.zero())
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            self.field,
            (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            self.field,
            (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|&c| -c).collect())
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly::new(self.field, out)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
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

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    /// Euclidean division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let lead_inv = divisor.leading_coeff().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len() - dlen + 1];
        for shift in (0..quot.len()).rev() {
            let c = rem[shift + dlen - 1] * lead_inv;
            if c.is_zero() {
                continue;
            }
            quot[shift] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i] - c * d;
            }
        }
        Ok((Poly::new(self.field, quot), Poly::new(self.field, rem)))
    }

    /// `Some(self / divisor)` when the division is exact.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Divides by the leading coefficient; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff().inv() {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// All monic polynomials of the given degree, in increasing `Ord` order.
    pub fn monic_of_degree(field: Field, deg: u32) -> impl Iterator<Item = Poly> {
        let q = field.q() as u64;
        let count = q.pow(deg);
        (0..count).map(move |idx| {
            let mut coeffs = Vec::with_capacity(deg as usize + 1);
            let mut rest = idx;
            for _ in 0..deg {
                coeffs.push(field.element((rest % q) as u32));
                rest /= q;
            }
            coeffs.push(field.one());
            Poly::new(field, coeffs)
        })
    }

    /// All polynomials of degree at most `max_deg`, including zero.
    pub fn all_up_to_degree(field: Field, max_deg: u32) -> impl Iterator<Item = Poly> {
        let q = field.q() as u64;
        let count = q.pow(max_deg + 1);
        (0..count).map(move |idx| {
            let mut coeffs = Vec::with_capacity(max_deg as usize + 1);
            let mut rest = idx;
            for _ in 0..=max_deg {
                coeffs.push(field.element((rest % q) as u32));
                rest /= q;
            }
            Poly::new(field, coeffs)
        })
    }

    /// Factorization into monic irreducibles by trial division with monic
    /// candidates of increasing degree.
    pub fn factor(&self) -> Result<Factorization<Poly>> {
        if self.is_zero() {
            return Err(Error::invalid("cannot factor the zero polynomial"));
        }
        let unit = self.leading_coeff();
        let mut rest = self.monic();
        let mut factors = Vec::new();
        let mut d = 1;
        while rest.degree().finite().is_some_and(|n| 2 * d <= n) {
            for cand in Poly::monic_of_degree(self.field, d) {
                let mut mult = 0;
                while let Some(q) = rest.exact_div(&cand) {
                    rest = q;
                    mult += 1;
                }
                if mult > 0 {
                    factors.push((cand, mult));
                }
                if rest.degree().finite().is_some_and(|n| 2 * d > n) {
                    break;
                }
            }
            d += 1;
        }
        if !rest.is_one() {
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
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

pub(crate) fn write_coeff_times(
    f: &mut fmt::Formatter<'_>,
    c: FieldElement,
    mono: &str,
) -> fmt::Result {
    if mono.is_empty() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{mono}")
    } else if c.is_compound() {
        write!(f, "({c})*{mono}")
    } else {
        write!(f, "{c}*{mono}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                i => format!("t^{i}"),
            };
            write_coeff_times(f, c, &mono)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
