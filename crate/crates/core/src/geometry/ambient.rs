use std::marker::PhantomData;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::divisor::{split_divisor_text, Divisor, Place};
use crate::algebra::{
    monomial_count, parse_ring, CoordRing, Degree, Field, FieldElement, FnFieldElement, Form, Model, Monomial, Poly,
};
use crate::error::{Error, Result};

/// Feasibility limits that keep enumerations at desk scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest number of effective divisors enumerated for one degree.
    pub max_divisors: u64,
    /// Largest number of coordinate tuples enumerated by one brute-force count.
    pub max_tuples: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_divisors: 1_000_000,
            max_tuples: 10_000_000,
        }
    }
}

impl Caps {
    pub(crate) fn check_divisors(&self, needed: u128) -> Result<()> {
        if needed > self.max_divisors as u128 {
            return Err(Error::CapExceeded {
                what: "effective divisors",
                needed,
                cap: self.max_divisors,
            });
        }
        Ok(())
    }

    pub(crate) fn check_tuples(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_tuples as u128 {
            return Err(Error::CapExceeded {
                what,
                needed,
                cap: self.max_tuples,
            });
        }
        Ok(())
    }
}

pub(crate) fn checked_pow(q: u32, e: u64) -> u128 {
    u32::try_from(e)
        .ok()
        .and_then(|e| (q as u128).checked_pow(e))
        .unwrap_or(u128::MAX)
}

/// `(q^e - 1) / (q - 1)`, the number of points of a projective space of dimension `e - 1`.
pub(crate) fn projective_count(q: u32, e: u64) -> u128 {
    match checked_pow(q, e) {
        u128::MAX => u128::MAX,
        n => (n - 1) / (q as u128 - 1),
    }
}

/// A basis of L(D) written over one common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRBasis<R> {
    pub divisor: Divisor,
    pub numerators: Vec<R>,
    pub denominator: R,
}

impl<R: CoordRing> RRBasis<R> {
    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    pub fn basis(&self) -> Vec<FnFieldElement<R>> {
        self.numerators
            .iter()
            .map(|n| FnFieldElement::new(n.clone(), self.denominator.clone()).expect("nonzero denominator"))
            .collect()
    }

    /// Numerator of the span element with the given coordinates.
    pub fn numerator_of(&self, coords: &[FieldElement]) -> R {
        assert_eq!(coords.len(), self.dim(), "coordinate count");
        let field = self.denominator.field();
        let mut acc = R::zero(field);
        for (n, &c) in self.numerators.iter().zip(coords) {
            if !c.is_zero() {
                acc = acc.add(&n.scale(c));
            }
        }
        acc
    }

    pub fn element(&self, coords: &[FieldElement]) -> FnFieldElement<R> {
        let num = self.numerator_of(coords);
        if num.is_zero() {
            return FnFieldElement::zero(self.denominator.field());
        }
        FnFieldElement::new(num, self.denominator.clone()).expect("nonzero denominator")
    }
}

/// Model-specific geometry of X. Implemented by the two coordinate rings.
pub trait Ambient: CoordRing {
    /// The place cut out by a normalized irreducible element.
    fn place_of(p: Self) -> Place;

    /// The ring element cutting out a finite place.
    fn ring_of(place: &Place) -> Option<&Self>;

    fn principal_divisor(f: &FnFieldElement<Self>) -> Result<Divisor>;

    /// Number of effective divisors of degree `k`.
    fn effective_count(q: u32, k: u32) -> u128;

    /// Effective divisors of degree `k`, unsorted.
    fn effective_of_degree(field: Field, k: u32) -> Vec<Divisor>;

    /// Prime divisors of degree exactly `k`, unsorted.
    fn primes_of_degree(field: Field, k: u32) -> Vec<Place>;

    fn rr_basis(field: Field, d: &Divisor) -> Result<RRBasis<Self>>;

    fn parse_place(text: &str, field: Field) -> Result<Place>;

    /// Candidate coordinates for points of height at most `d`, grouped in layers
    /// whose members may share a tuple: `(normalized leads, all incl. zero)`.
    fn point_layers(field: Field, d: u32) -> Vec<(Vec<Self>, Vec<Self>)>;

    /// Height of a coprime coordinate tuple, not all zero.
    fn tuple_height(coords: &[Self]) -> u32;

    /// Zeros of a nonzero ring element at finite places.
    fn finite_divisor(r: &Self) -> Divisor {
        let fac = r.factor().expect("nonzero element");
        Divisor::from_terms(fac.factors.into_iter().map(|(p, m)| (Self::place_of(p), m as i64)))
    }

    /// The product of finite places raised to their coefficients, for a divisor
    /// whose finite part is effective.
    fn finite_element(field: Field, d: &Divisor) -> Self {
        let mut acc = Self::one(field);
        for (p, n) in d.terms() {
            if let Some(r) = Self::ring_of(p) {
                assert!(n > 0, "finite part must be effective");
                acc = acc.mul(&r.pow(n as u32));
            }
        }
        acc
    }
}

fn degree_of<R: CoordRing>(r: &R) -> i64 {
    match r.degree() {
        Degree::Finite(d) => d as i64,
        Degree::NegInfinity => panic!("degree of zero"),
    }
}

impl Ambient for Poly {
    fn place_of(p: Poly) -> Place {
        Place::Line(p)
    }

    fn ring_of(place: &Place) -> Option<&Poly> {
        match place {
            Place::Line(p) => Some(p),
            _ => None,
        }
    }

    fn principal_divisor(f: &FnFieldElement<Poly>) -> Result<Divisor> {
        if f.is_zero() {
            return Err(Error::invalid("the zero function has no divisor"));
        }
        let mut d = Self::finite_divisor(f.num()).sub(&Self::finite_divisor(f.den()));
        d.add_place(Place::Infinity, degree_of(f.den()) - degree_of(f.num()));
        Ok(d)
    }

    fn effective_count(q: u32, k: u32) -> u128 {
        projective_count(q, k as u64 + 1)
    }

    fn effective_of_degree(field: Field, k: u32) -> Vec<Divisor> {
        let polys: Vec<Poly> = (0..=k).flat_map(|j| Poly::monic_of_degree(field, j)).collect();
        polys
            .par_iter()
            .map(|f| {
                let j = degree_of(f);
                let mut d = Self::finite_divisor(f);
                d.add_place(Place::Infinity, k as i64 - j);
                d
            })
            .collect()
    }

    fn primes_of_degree(field: Field, k: u32) -> Vec<Place> {
        let mut out: Vec<Place> = Poly::monic_of_degree(field, k)
            .filter(|p| p.is_irreducible())
            .map(Place::Line)
            .collect();
        if k == 1 {
            out.push(Place::Infinity);
        }
        out
    }

    fn rr_basis(field: Field, d: &Divisor) -> Result<RRBasis<Poly>> {
        let finite: Divisor = Divisor::from_terms(
            d.terms()
                .filter(|(p, _)| !matches!(p, Place::Infinity))
                .map(|(p, n)| (p.clone(), n)),
        );
        let neg = Self::finite_element(field, &finite.negative_part());
        let pos = Self::finite_element(field, &finite.positive_part());
        let top = d.degree();
        let numerators = (0..=top.max(-1))
            .map(|i| neg.mul(&Poly::monomial(field.one(), i as usize)))
            .collect();
        Ok(RRBasis {
            divisor: d.clone(),
            numerators,
            denominator: pos,
        })
    }

    fn parse_place(text: &str, field: Field) -> Result<Place> {
        if text.trim() == "inf" {
            return Ok(Place::Infinity);
        }
        Place::line(parse_ring(text, field)?)
    }

    fn point_layers(field: Field, d: u32) -> Vec<(Vec<Poly>, Vec<Poly>)> {
        let leads = (0..=d).flat_map(|j| Poly::monic_of_degree(field, j)).collect();
        vec![(leads, Poly::all_up_to_degree(field, d).collect())]
    }

    fn tuple_height(coords: &[Poly]) -> u32 {
        coords.iter().filter_map(|c| c.degree().finite()).max().expect("nonzero tuple")
    }
}

impl Ambient for Form {
    fn place_of(p: Form) -> Place {
        Place::Plane(p)
    }

    fn ring_of(place: &Place) -> Option<&Form> {
        match place {
            Place::Plane(f) => Some(f),
            _ => None,
        }
    }

    fn principal_divisor(f: &FnFieldElement<Form>) -> Result<Divisor> {
        if f.is_zero() {
            return Err(Error::invalid("the zero function has no divisor"));
        }
        Ok(Self::finite_divisor(f.num()).sub(&Self::finite_divisor(f.den())))
    }

    fn effective_count(q: u32, k: u32) -> u128 {
        projective_count(q, monomial_count(k) as u64)
    }

    fn effective_of_degree(field: Field, k: u32) -> Vec<Divisor> {
        let forms: Vec<Form> = Form::normalized_of_degree(field, k).collect();
        forms.par_iter().map(Self::finite_divisor).collect()
    }

    fn primes_of_degree(field: Field, k: u32) -> Vec<Place> {
        let forms: Vec<Form> = Form::normalized_of_degree(field, k).collect();
        forms
            .into_par_iter()
            .filter(|f| k > 0 && f.is_irreducible())
            .map(Place::Plane)
            .collect()
    }

    fn rr_basis(field: Field, d: &Divisor) -> Result<RRBasis<Form>> {
        if !d.is_effective() {
            return Err(Error::Unsupported(format!(
                "Riemann-Roch spaces on the plane are computed for effective divisors only, got {d}"
            )));
        }
        let fd = Self::finite_element(field, d);
        let k = d.degree() as u32;
        let numerators = Monomial::of_degree(k)
            .into_iter()
            .map(|m| Form::monomial(field.one(), m))
            .collect();
        Ok(RRBasis {
            divisor: d.clone(),
            numerators,
            denominator: fd,
        })
    }

    fn parse_place(text: &str, field: Field) -> Result<Place> {
        Place::plane(parse_ring(text, field)?)
    }

    fn point_layers(field: Field, d: u32) -> Vec<(Vec<Form>, Vec<Form>)> {
        (0..=d)
            .map(|m| {
                (
                    Form::normalized_of_degree(field, m).collect(),
                    Form::all_of_degree(field, m).collect(),
                )
            })
            .collect()
    }

    fn tuple_height(coords: &[Form]) -> u32 {
        coords.iter().find_map(|c| c.degree().finite()).expect("nonzero tuple")
    }
}

/// The divisor `(f)` of a nonzero function.
pub fn principal_divisor<R: Ambient>(f: &FnFieldElement<R>) -> Result<Divisor> {
    R::principal_divisor(f)
}

/// The divisor of poles `(f)_inf`, effective.
pub fn polar_divisor<R: Ambient>(f: &FnFieldElement<R>) -> Result<Divisor> {
    Ok(R::principal_divisor(f)?.negative_part())
}

/// The divisor of zeros `(f)_0`, effective.
pub fn zero_divisor<R: Ambient>(f: &FnFieldElement<R>) -> Result<Divisor> {
    Ok(R::principal_divisor(f)?.positive_part())
}

/// Whether `f` lies in L(D), i.e. `f = 0` or `(f) + D >= 0`.
pub fn in_riemann_roch<R: Ambient>(f: &FnFieldElement<R>, d: &Divisor) -> bool {
    f.is_zero() || R::principal_divisor(f).expect("nonzero").add(d).is_effective()
}

/// The ambient variety X over a fixed constant field, with enumeration caps.
///
/// Both supported models have trivial torsion in the class group, class number
/// one and Picard group generated by a class of degree one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmbientSpace<R> {
    field: Field,
    caps: Caps,
    _ring: PhantomData<fn() -> R>,
}

impl<R: Ambient> AmbientSpace<R> {
    pub fn new(field: Field) -> Self {
        Self::with_caps(field, Caps::default())
    }

    pub fn with_caps(field: Field, caps: Caps) -> Self {
        AmbientSpace {
            field,
            caps,
            _ring: PhantomData,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn model(&self) -> Model {
        R::MODEL
    }

    pub fn dim(&self) -> u32 {
        R::MODEL.dim()
    }

    /// Genus of the curve; `None` for the plane.
    pub fn genus(&self) -> Option<u32> {
        match R::MODEL {
            Model::ProjLine => Some(0),
            Model::ProjPlane => None,
        }
    }

    pub fn class_number(&self) -> u32 {
        1
    }

    pub fn picard_generator_degree(&self) -> u32 {
        1
    }

    pub fn torsion_classes(&self) -> Vec<Divisor> {
        Vec::new()
    }

    pub fn effective_count(&self, k: u32) -> u128 {
        R::effective_count(self.field.q(), k)
    }

    /// All effective divisors of degree `k` in canonical order.
    pub fn enumerate_effective(&self, k: u32) -> Result<Vec<Divisor>> {
        self.caps.check_divisors(self.effective_count(k))?;
        let mut out = R::effective_of_degree(self.field, k);
        out.sort();
        Ok(out)
    }

    /// Prime divisors of degree exactly `k` in canonical order.
    pub fn prime_divisors(&self, k: u32) -> Result<Vec<Place>> {
        self.caps.check_divisors(self.effective_count(k))?;
        let mut out = R::primes_of_degree(self.field, k);
        out.sort();
        Ok(out)
    }

    pub fn rr_basis(&self, d: &Divisor) -> Result<RRBasis<R>> {
        R::rr_basis(self.field, d)
    }

    pub fn rr_dim(&self, d: &Divisor) -> Result<usize> {
        Ok(self.rr_basis(d)?.dim())
    }

    pub fn parse_place(&self, text: &str) -> Result<Place> {
        R::parse_place(text, self.field)
    }

    /// Reads `[(place, coeff), ...]`.
    pub fn parse_divisor(&self, text: &str) -> Result<Divisor> {
        let mut d = Divisor::zero();
        for (p, n) in split_divisor_text(text)? {
            d.add_place(self.parse_place(&p)?, n);
        }
        Ok(d)
    }
}
