use std::fmt;

use super::{CoordRing, Degree, Field, FieldElement, Poly};
use crate::error::{Error, Result};

/// An element of the function field F_q(X) as a reduced fraction `num / den`.
///
/// Canonical form: `gcd(num, den) = 1` and `den` normalized (monic on the line,
/// leading graded-lex coefficient 1 on the plane, where `num` and `den` are also
/// forms of one common degree). Zero is `0 / 1`. Because the representation is
/// canonical, the derived equality, ordering and hash are those of field elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FnFieldElement<R> {
    num: R,
    den: R,
}

impl<R: CoordRing> FnFieldElement<R> {
    /// Reduces `num / den` to canonical form.
    pub fn new(num: R, den: R) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = den.field();
        if num.is_zero() {
            return Ok(Self::zero(field));
        }
        if R::GRADED && num.degree() != den.degree() {
            return Err(Error::Inhomogeneous(format!(
                "numerator degree {} differs from denominator degree {}",
                num.degree(),
                den.degree()
            )));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Self::normalized(num, den))
    }

    // num and den already coprime
    fn normalized(num: R, den: R) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            return FnFieldElement { num, den };
        }
        let inv = lc.inv().expect("nonzero denominator");
        FnFieldElement {
            num: num.scale(inv),
            den: den.scale(inv),
        }
    }

    pub fn zero(field: Field) -> Self {
        FnFieldElement {
            num: R::zero(field),
            den: R::one(field),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        FnFieldElement {
            num: R::constant(c),
            den: R::one(c.field()),
        }
    }

    pub fn num(&self) -> &R {
        &self.num
    }

    pub fn den(&self) -> &R {
        &self.den
    }

    pub fn into_parts(self) -> (R, R) {
        (self.num, self.den)
    }

    pub fn field(&self) -> Field {
        self.den.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The constant value when the element lies in F_q.
    pub fn as_constant(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.field().zero());
        }
        (self.den.is_one() && self.num.degree() == Degree::Finite(0))
            .then(|| self.num.leading_coeff())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone()).expect("valid sum");
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::new(num, self.den.mul(&rhs.den)).expect("valid sum")
    }

    pub fn neg(&self) -> Self {
        FnFieldElement {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.field());
        }
        // cross-cancel so the product stays reduced
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        Self::normalized(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.field());
        }
        FnFieldElement {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::normalized(self.num.pow(e), self.den.pow(e))
    }
}

impl FnFieldElement<Poly> {
    /// A polynomial in `t` viewed as a rational function.
    pub fn from_poly(p: Poly) -> Self {
        let field = p.field();
        FnFieldElement {
            num: p,
            den: Poly::one(field),
        }
    }
}

fn needs_parens(s: &str) -> bool {
    s.contains(' ')
}

impl<R: CoordRing> fmt::Display for FnFieldElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        let d = self.den.to_string();
        let wrap = |s: String| if needs_parens(&s) || s.contains('*') || s.contains('^') { format!("({s})") } else { s };
        write!(f, "{}/{}", wrap(n), wrap(d))
    }
}

impl<R: CoordRing> fmt::Debug for FnFieldElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FnFieldElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Form;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    #[test]
    fn cancels_common_factor_on_the_line() {
        let f = f2();
        let e = FnFieldElement::new(Poly::from_ints(f, &[0, 1, 1]), Poly::from_ints(f, &[1, 1])).unwrap();
        assert_eq!(e.num(), &Poly::t(f));
        assert!(e.den().is_one());
    }

    #[test]
    fn cancels_common_factor_on_the_plane() {
        let f = f2();
        let (x, y, z) = (Form::var(f, 0), Form::var(f, 1), Form::var(f, 2));
        let e = FnFieldElement::new(x.mul(&y), x.mul(&z)).unwrap();
        assert_eq!((e.num(), e.den()), (&y, &z));
        assert_eq!(e.to_string(), "y/z");
    }

    #[test]
    fn zero_over_anything_is_canonical_zero() {
        let f = f2();
        let e = FnFieldElement::new(Poly::zero(f), Poly::from_ints(f, &[1, 1])).unwrap();
        assert_eq!(e, FnFieldElement::zero(f));
        assert!(e.den().is_one());
    }

    #[test]
    fn rejects_zero_denominator_and_unequal_degrees() {
        let f = f2();
        assert_eq!(
            FnFieldElement::new(Poly::one(f), Poly::zero(f)).unwrap_err(),
            Error::DivisionByZero
        );
        let r = FnFieldElement::new(Form::var(f, 0), Form::one(f));
        assert!(matches!(r, Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn denominator_is_normalized() {
        let f = Field::new(3, 1).unwrap();
        let e = FnFieldElement::new(Poly::from_ints(f, &[1]), Poly::from_ints(f, &[0, 2])).unwrap();
        assert!(e.den().is_monic());
        assert_eq!(e.num(), &Poly::from_ints(f, &[2]));
    }

    #[test]
    fn arithmetic_round_trips() {
        let f = Field::new(3, 1).unwrap();
        let a = FnFieldElement::new(Poly::from_ints(f, &[1, 1]), Poly::from_ints(f, &[0, 1])).unwrap();
        let b = FnFieldElement::new(Poly::from_ints(f, &[2]), Poly::from_ints(f, &[1, 0, 1])).unwrap();
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
    }
}
