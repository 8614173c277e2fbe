//! Varieties over F_q(X), projective points and heights, and the twisted
//! decomposition of projective space into affine pieces.

mod decompose;
mod point;
mod spec;
mod twist;

pub use decompose::{decompose, locate};
pub use point::{
    enumerate_points, inf_of_coordinates, point_tuple_count, sup_of_polar, twisted_height, ProjPoint,
};
pub use spec::{VarietyKind, VarietySpec};
pub use twist::TwistData;
