//! Exact arithmetic: F_q, polynomials for the projective line, ternary forms for
//! the projective plane, reduced function-field fractions, and their parser.

mod field;
mod fnfield;
mod form;
pub mod linalg;
mod mvpoly;
mod parse;
mod poly;
mod ypoly;

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

pub use field::{Field, FieldElement, MAX_ORDER};
pub use fnfield::FnFieldElement;
pub use form::{monomial_count, Form, Monomial};
pub use parse::{parse_fn, parse_ring, parse_ypoly, YVars};
pub use mvpoly::MvPoly;
pub use poly::Poly;
pub use ypoly::YPoly;

use crate::error::Result;

/// Degree of a ring element; the zero element has degree `NegInfinity`, which
/// compares below every finite degree.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// `unit * prod(factor^mult)` with normalized irreducible factors in sorted order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization<R> {
    pub unit: FieldElement,
    pub factors: Vec<(R, u32)>,
}

/// Which ambient variety X the function field belongs to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "p1")]
    ProjLine,
    #[serde(rename = "p2")]
    ProjPlane,
}

impl Model {
    pub fn dim(self) -> u32 {
        match self {
            Model::ProjLine => 1,
            Model::ProjPlane => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::ProjLine => "p1",
            Model::ProjPlane => "p2",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The coordinate ring behind a function field: `F_q[t]` for the line, the graded
/// ring `F_q[x, y, z]` (homogeneous elements only) for the plane.
///
/// Elements are unique-factorization domain elements with a chosen normalization
/// (monic, resp. leading graded-lex coefficient 1) that picks one associate.
pub trait CoordRing:
    Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + Sized + 'static
{
    /// Index of a basis monomial over F_q.
    type Mono: Clone + Ord + fmt::Debug + Send + Sync;

    const MODEL: Model;

    /// Whether elements carry a grading that fractions must respect.
    const GRADED: bool;

    fn field(&self) -> Field;
    fn zero(field: Field) -> Self;
    fn one(field: Field) -> Self;
    fn constant(c: FieldElement) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn degree(&self) -> Degree;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, c: FieldElement) -> Self;
    fn pow(&self, e: u32) -> Self;
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
    fn leading_coeff(&self) -> FieldElement;
    fn normalize(&self) -> Self;
    fn gcd(&self, rhs: &Self) -> Self;
    fn factor(&self) -> Result<Factorization<Self>>;
    /// Nonzero terms as (monomial, coefficient).
    fn terms(&self) -> Vec<(Self::Mono, FieldElement)>;
    /// Named generators of the ring as they appear in expressions.
    fn variables(field: Field) -> Vec<(&'static str, Self)>;

    fn is_normalized(&self) -> bool {
        self.leading_coeff().is_one()
    }

    /// Least common multiple, normalized.
    fn lcm(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.field());
        }
        let g = self.gcd(rhs);
        self.exact_div(&g)
            .expect("gcd divides")
            .mul(rhs)
            .normalize()
    }
}

impl CoordRing for Poly {
    type Mono = u32;
    const MODEL: Model = Model::ProjLine;
    const GRADED: bool = false;

    fn field(&self) -> Field {
        Poly::field(self)
    }
    fn zero(field: Field) -> Self {
        Poly::zero(field)
    }
    fn one(field: Field) -> Self {
        Poly::one(field)
    }
    fn constant(c: FieldElement) -> Self {
        Poly::constant(c)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Poly::is_one(self)
    }
    fn degree(&self) -> Degree {
        Poly::degree(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn scale(&self, c: FieldElement) -> Self {
        Poly::scale(self, c)
    }
    fn pow(&self, e: u32) -> Self {
        Poly::pow(self, e)
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        Poly::exact_div(self, divisor)
    }
    fn leading_coeff(&self) -> FieldElement {
        Poly::leading_coeff(self)
    }
    fn normalize(&self) -> Self {
        self.monic()
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Poly::gcd(self, rhs)
    }
    fn factor(&self) -> Result<Factorization<Self>> {
        Poly::factor(self)
    }
    fn terms(&self) -> Vec<(u32, FieldElement)> {
        self.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, *c))
            .collect()
    }
    fn variables(field: Field) -> Vec<(&'static str, Self)> {
        vec![("t", Poly::t(field))]
    }
}

impl CoordRing for Form {
    type Mono = Monomial;
    const MODEL: Model = Model::ProjPlane;
    const GRADED: bool = true;

    fn field(&self) -> Field {
        Form::field(self)
    }
    fn zero(field: Field) -> Self {
        Form::zero(field)
    }
    fn one(field: Field) -> Self {
        Form::one(field)
    }
    fn constant(c: FieldElement) -> Self {
        Form::constant(c)
    }
    fn is_zero(&self) -> bool {
        Form::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Form::is_one(self)
    }
    fn degree(&self) -> Degree {
        Form::degree(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Form::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Form::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        Form::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Form::mul(self, rhs)
    }
    fn scale(&self, c: FieldElement) -> Self {
        Form::scale(self, c)
    }
    fn pow(&self, e: u32) -> Self {
        Form::pow(self, e)
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        Form::exact_div(self, divisor)
    }
    fn leading_coeff(&self) -> FieldElement {
        Form::leading_coeff(self)
    }
    fn normalize(&self) -> Self {
        Form::normalize(self)
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Form::gcd(self, rhs)
    }
    fn factor(&self) -> Result<Factorization<Self>> {
        Form::factor(self)
    }
    fn terms(&self) -> Vec<(Monomial, FieldElement)> {
        Form::terms(self).collect()
    }
    fn variables(field: Field) -> Vec<(&'static str, Self)> {
        vec![
            ("x", Form::var(field, 0)),
            ("y", Form::var(field, 1)),
            ("z", Form::var(field, 2)),
        ]
    }
}
