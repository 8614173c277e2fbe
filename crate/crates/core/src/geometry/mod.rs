//! Places and divisors of X, effective divisors by degree, and Riemann-Roch spaces.

mod ambient;
mod divisor;

pub use ambient::{
    in_riemann_roch, polar_divisor, principal_divisor, zero_divisor, Ambient, AmbientSpace, Caps, RRBasis,
};
pub(crate) use ambient::checked_pow;
pub use divisor::{Divisor, Place};
