//! The finite field F_q, q = p^r, in a polynomial basis over F_p.
//!
//! Elements are encoded as integers `c = a_0 + a_1 p + ... + a_{r-1} p^{r-1}` where
//! `a_0 + a_1 u + ... + a_{r-1} u^{r-1}` is the residue modulo the defining
//! polynomial. Arithmetic goes through full tables, so fields are limited to
//! `q <= MAX_ORDER`. Tables are built once per `(p, r)` and interned for the
//! lifetime of the process.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 256;

pub(crate) struct FieldData {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Handle to an interned finite field. Cheap to copy.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldData);

fn registry() -> &'static Mutex<HashMap<(u32, u32), &'static FieldData>> {
    static REGISTRY: OnceLock<Mutex<HashMap<(u32, u32), &'static FieldData>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense F_p polynomials used only while building the tables.
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    fp_trim(&mut a);
    let dm = m.len() - 1;
    // m is monic
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let idx = shift + i;
            a[idx] = (a[idx] + p - (lead * c) % p) % p;
        }
        fp_trim(&mut a);
    }
    a
}

fn fp_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

/// Monic polynomial of degree `deg` over F_p whose lower coefficients are the base-p
/// digits of `index` (least significant digit = constant term).
fn fp_monic_from_index(mut index: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        v.push(index % p);
        index /= p;
    }
    v.push(1);
    v
}

fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d) {
            let g = fp_monic_from_index(idx, d, p);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `r` over F_p that is smallest when coefficient
/// vectors are compared from degree `r-1` down to the constant term.
fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    (0..p.pow(r))
        .map(|idx| fp_monic_from_index(idx, r, p))
        .find(|f| fp_is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn digits(code: u32, p: u32, r: u32) -> Vec<u32> {
    let mut c = code;
    let mut v = Vec::with_capacity(r as usize);
    for _ in 0..r {
        v.push(c % p);
        c /= p;
    }
    v
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl FieldData {
    fn build(p: u32, r: u32) -> Self {
        let q = p.pow(r);
        let modulus = smallest_irreducible(p, r);
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        let reps: Vec<Vec<u32>> = (0..q).map(|c| digits(c, p, r)).collect();
        for a in 0..qs {
            let na: Vec<u32> = reps[a].iter().map(|&d| (p - d) % p).collect();
            neg[a] = undigits(&na, p) as u8;
            for b in 0..qs {
                let s: Vec<u32> = reps[a]
                    .iter()
                    .zip(&reps[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * qs + b] = undigits(&s, p) as u8;
                let mut prod = fp_rem(&fp_mul(&reps[a], &reps[b], p), &modulus, p);
                prod.resize(r as usize, 0);
                mul[a * qs + b] = undigits(&prod, p) as u8;
            }
        }
        for a in 1..qs {
            for b in 1..qs {
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u8;
                    break;
                }
            }
        }
        FieldData {
            p,
            r,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }
}

impl Field {
    /// The field with `p^r` elements.
    pub fn new(p: u32, r: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let q = (p as u64).checked_pow(r).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(Error::InvalidField(format!(
                "q = {p}^{r} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        let mut reg = registry().lock().expect("field registry poisoned");
        let data = *reg
            .entry((p, r))
            .or_insert_with(|| Box::leak(Box::new(FieldData::build(p, r))));
        Ok(Field(data))
    }

    /// The field with `q` elements, `q` a prime power.
    pub fn with_order(q: u32) -> Result<Field> {
        if q < 2 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        let mut r = 0;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            r += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        Field::new(p, r)
    }

    pub fn p(self) -> u32 {
        self.0.p
    }

    pub fn r(self) -> u32 {
        self.0.r
    }

    pub fn q(self) -> u32 {
        self.0.q
    }

    /// Coefficients of the defining polynomial over F_p, constant term first.
    pub fn modulus(self) -> &'static [u32] {
        &self.0.modulus
    }

    pub fn zero(self) -> FieldElement {
        FieldElement { field: self, code: 0 }
    }

    pub fn one(self) -> FieldElement {
        FieldElement { field: self, code: 1 }
    }

    /// The residue class of the polynomial-basis variable. Only meaningful for `r > 1`.
    pub fn generator(self) -> FieldElement {
        if self.r() == 1 {
            // u reduces to minus the constant term of the linear modulus
            self.from_int(-(self.0.modulus[0] as i64))
        } else {
            FieldElement {
                field: self,
                code: self.p(),
            }
        }
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(self, n: i64) -> FieldElement {
        let p = self.p() as i64;
        FieldElement {
            field: self,
            code: n.rem_euclid(p) as u32,
        }
    }

    pub fn element(self, code: u32) -> FieldElement {
        assert!(code < self.q(), "element code {code} out of range for F_{}", self.q());
        FieldElement { field: self, code }
    }

    /// All elements in code order; zero comes first.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q()).map(move |code| FieldElement { field: self, code })
    }

    /// Nonzero elements in code order.
    pub fn units(self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.q()).map(move |code| FieldElement { field: self, code })
    }

    #[inline]
    fn idx(self, a: u32, b: u32) -> usize {
        (a * self.0.q + b) as usize
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0.p, self.0.r).hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

/// An element of F_q.
#[derive(Clone, Copy)]
pub struct FieldElement {
    field: Field,
    code: u32,
}

impl FieldElement {
    pub fn field(self) -> Field {
        self.field
    }

    /// Integer encoding of the F_p coordinate vector.
    pub fn code(self) -> u32 {
        self.code
    }

    /// Coordinates over F_p in the polynomial basis, constant term first.
    pub fn coordinates(self) -> Vec<u32> {
        digits(self.code, self.field.p(), self.field.r())
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }

    pub fn is_one(self) -> bool {
        self.code == 1
    }

    pub fn inv(self) -> Result<FieldElement> {
        if self.code == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement {
            field: self.field,
            code: self.field.0.inv[self.code as usize] as u32,
        })
    }

    pub fn checked_div(self, rhs: FieldElement) -> Result<FieldElement> {
        Ok(self * rhs.inv()?)
    }

    pub fn pow(self, mut e: u64) -> FieldElement {
        let mut base = self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.field == other.field, "mixed fields");
        self.code == other.code
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.code.cmp(&other.code)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        let f = self.field;
        FieldElement {
            field: f,
            code: f.0.add[f.idx(self.code, rhs.code)] as u32,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field,
            code: self.field.0.neg[self.code as usize] as u32,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + (-rhs)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        let f = self.field;
        FieldElement {
            field: f,
            code: f.0.mul[f.idx(self.code, rhs.code)] as u32,
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FieldElement {
    /// True when the printed form has more than one term and needs parentheses
    /// as a factor.
    pub(crate) fn is_compound(self) -> bool {
        self.field.r() > 1 && self.coordinates().iter().filter(|&&d| d != 0).count() > 1
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.r() == 1 || self.code < self.field.p() {
            return write!(f, "{}", self.code);
        }
        let coords = self.coordinates();
        let mut first = true;
        for (i, &c) in coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "g")?,
                (1, c) => write!(f, "{c}*g")?,
                (i, 1) => write!(f, "g^{i}")?,
                (i, c) => write!(f, "{c}*g^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_two() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.one() + f.one(), f.zero());
    }

    #[test]
    fn f4_generator_times_successor_is_one() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let u = f.generator();
        assert_eq!(u * (u + f.one()), f.one());
    }

    #[test]
    fn f3_two_over_two() {
        let f = Field::new(3, 1).unwrap();
        let two = f.from_int(2);
        assert_eq!(two.checked_div(two).unwrap(), f.one());
        assert_eq!(two.checked_div(f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn moduli_are_smallest_irreducibles() {
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(Field::new(5, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::new(4, 1).is_err());
        assert!(Field::new(2, 0).is_err());
        assert!(Field::new(2, 9).is_err());
        assert!(Field::with_order(6).is_err());
        assert_eq!(Field::with_order(9).unwrap().r(), 2);
    }

    #[test]
    fn interning_returns_same_handle() {
        assert_eq!(Field::new(3, 2).unwrap(), Field::with_order(9).unwrap());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16] {
            let f = Field::with_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(a + f.zero(), a);
                assert_eq!(a * f.one(), a);
                assert_eq!(a + (-a), f.zero());
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), f.one());
                }
                for b in f.elements() {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in f.elements() {
                        assert_eq!(a * (b + c), a * b + a * c);
                        assert_eq!((a * b) * c, a * (b * c));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Field::with_order(q).unwrap();
            let p = f.p() as u64;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!((a + b).pow(p), a.pow(p) + b.pow(p), "q = {q}");
                }
            }
        }
    }

    #[test]
    fn display_uses_generator() {
        let f = Field::new(3, 2).unwrap();
        let g = f.generator();
        assert_eq!(g.to_string(), "g");
        assert_eq!((g * f.from_int(2) + f.one()).to_string(), "2*g + 1");
        assert_eq!((g * g).to_string(), "2"); // g^2 = -1 for modulus u^2 + 1
    }
}
