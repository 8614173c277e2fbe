use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

/// Whether valuations are normalized for `p` or for `q = p^r`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    P,
    #[default]
    Q,
}

/// A p-adic valuation: an exact rational or `+inf` for zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Valuation(Option<BigRational>);

impl Valuation {
    pub fn infinite() -> Self {
        Valuation(None)
    }

    pub fn finite(v: BigRational) -> Self {
        Valuation(Some(v))
    }

    pub fn from_int(v: i64) -> Self {
        Valuation(Some(BigRational::from_integer(v.into())))
    }

    pub fn value(&self) -> Option<&BigRational> {
        self.0.as_ref()
    }

    pub fn is_infinite(&self) -> bool {
        self.0.is_none()
    }

    pub fn add(&self, rhs: &Valuation) -> Valuation {
        match (&self.0, &rhs.0) {
            (Some(a), Some(b)) => Valuation(Some(a + b)),
            _ => Valuation(None),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite values in their natural order, `+inf` above all of them.
impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => f.write_str("inf"),
            Some(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Valuation({self})")
    }
}

/// `{"num", "den"}` for finite values, the string `"inf"` otherwise.
impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            None => s.serialize_str("inf"),
            Some(v) => {
                let mut st = s.serialize_struct("Valuation", 2)?;
                st.serialize_field("num", &v.numer().to_string())?;
                st.serialize_field("den", &v.denom().to_string())?;
                st.end()
            }
        }
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn ord_p_int(n: &BigInt, p: u32) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    if p == 2 {
        return n.trailing_zeros();
    }
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut k = 0;
    loop {
        let (quot, rem) = m.div_rem(&p);
        if !rem.is_zero() {
            return Some(k);
        }
        m = quot;
        k += 1;
    }
}

/// `ord_p(n)`, or `ord_q(n) = ord_p(n) / r` for `Base::Q`.
pub fn ord(n: &BigInt, p: u32, r: u32, base: Base) -> Valuation {
    match ord_p_int(n, p) {
        None => Valuation::infinite(),
        Some(k) => {
            let den = match base {
                Base::P => 1,
                Base::Q => r,
            };
            Valuation::finite(BigRational::new(BigInt::from(k), BigInt::from(den)))
        }
    }
}
