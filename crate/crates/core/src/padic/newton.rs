use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::{ord, Base};
use crate::zeta::TruncSeries;

/// Lower convex hull of the points `(k, ord(a_k))` with `a_k != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, BigRational)>,
    /// Hull vertices, a subsequence of `points`. Collinear points are kept.
    pub hull: Vec<(usize, BigRational)>,
    pub slopes: Vec<BigRational>,
    /// Fewer than two points with finite valuation.
    pub degenerate: bool,
}

// (b - a) x (c - a)
fn cross(a: &(usize, BigRational), b: &(usize, BigRational), c: &(usize, BigRational)) -> BigRational {
    let dx1 = BigRational::from_integer(BigInt::from(b.0 as i64 - a.0 as i64));
    let dx2 = BigRational::from_integer(BigInt::from(c.0 as i64 - a.0 as i64));
    dx1 * (&c.1 - &a.1) - dx2 * (&b.1 - &a.1)
}

pub fn newton_polygon(series: &TruncSeries, p: u32, r: u32, base: Base) -> NewtonPolygon {
    let points: Vec<(usize, BigRational)> = series
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(k, c)| ord(c, p, r, base).value().map(|v| (k, v.clone())))
        .collect();
    let mut hull: Vec<(usize, BigRational)> = Vec::new();
    for pt in &points {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], pt) < BigRational::from_integer(0.into()) {
            hull.pop();
        }
        hull.push(pt.clone());
    }
    let slopes = hull
        .windows(2)
        .map(|w| (&w[1].1 - &w[0].1) / BigRational::from_integer(BigInt::from(w[1].0 - w[0].0)))
        .collect();
    NewtonPolygon {
        degenerate: points.len() < 2,
        points,
        hull,
        slopes,
    }
}

fn rat_str(r: &BigRational) -> String {
    r.to_string()
}

impl Serialize for NewtonPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pts = |v: &[(usize, BigRational)]| -> Vec<(usize, String)> { v.iter().map(|(k, r)| (*k, rat_str(r))).collect() };
        let mut st = s.serialize_struct("NewtonPolygon", 4)?;
        st.serialize_field("points", &pts(&self.points))?;
        st.serialize_field("hull", &pts(&self.hull))?;
        st.serialize_field("slopes", &self.slopes.iter().map(rat_str).collect::<Vec<_>>())?;
        st.serialize_field("degenerate", &self.degenerate)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn collinear_points_keep_every_vertex() {
        let np = newton_polygon(&TruncSeries::from_ints(&[2, 12, 56], 2), 2, 1, Base::P);
        assert_eq!(np.points, vec![(0, r(1)), (1, r(2)), (2, r(3))]);
        assert_eq!(np.slopes, vec![r(1), r(1)]);
        assert!(!np.degenerate);
    }

    #[test]
    fn zero_coefficients_are_skipped() {
        let np = newton_polygon(&TruncSeries::from_ints(&[1, 0, 4], 2), 2, 1, Base::P);
        assert_eq!(np.points, vec![(0, r(0)), (2, r(2))]);
        assert_eq!(np.slopes, vec![r(1)]);
    }

    #[test]
    fn constant_series_is_degenerate() {
        assert!(newton_polygon(&TruncSeries::from_ints(&[5], 0), 2, 1, Base::P).degenerate);
    }

    #[test]
    fn hull_drops_points_above_and_slopes_increase() {
        // ords 0, 3, 1, 5, 2
        let np = newton_polygon(&TruncSeries::from_ints(&[1, 8, 2, 32, 4], 4), 2, 1, Base::P);
        let xs: Vec<usize> = np.hull.iter().map(|h| h.0).collect();
        assert_eq!(xs, vec![0, 2, 4]);
        assert!(np.slopes.windows(2).all(|w| w[0] <= w[1]));
    }
}
