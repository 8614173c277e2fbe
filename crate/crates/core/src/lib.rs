pub mod algebra;
pub mod error;
pub mod geometry;
pub mod padic;
pub mod varieties;
pub mod zeta;

pub use error::{Error, Result};
