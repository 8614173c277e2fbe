use super::{ProjPoint, TwistData, VarietyKind, VarietySpec};
use crate::algebra::{FnFieldElement, YPoly};
use crate::error::{Error, Result};
use crate::geometry::Ambient;

/// Splits a projective variety into the affine pieces `Y_0, ..., Y_n`.
///
/// With `z = A y`, piece `i` consists of the points with
/// `z_{sigma(0)} = ... = z_{sigma(i-1)} = 0` and `z_{sigma(i)} = 1`; its affine
/// coordinates `y1..y_{n-i}` are `z_{sigma(i+1)}, ..., z_{sigma(n)}` and its
/// equations are those of `Y` pulled back along `y = A^-1 z`.
pub fn decompose<R: Ambient>(y: &VarietySpec<R>, tw: &TwistData<R>) -> Result<Vec<VarietySpec<R>>> {
    let VarietyKind::Projective(n) = y.kind() else {
        return Err(Error::invalid("decompose needs a projective variety"));
    };
    if tw.size() != n + 1 {
        return Err(Error::invalid(format!(
            "twist has size {}, variety has {} coordinates",
            tw.size(),
            n + 1
        )));
    }
    let field = tw.matrix()[0][0].field();
    let sigma = tw.sigma();
    (0..=n)
        .map(|i| {
            let m = n - i;
            let mut z = vec![YPoly::<R>::zero(field, m); n + 1];
            z[sigma[i]] = YPoly::constant(FnFieldElement::one(field), m);
            for k in 1..=m {
                z[sigma[i + k]] = YPoly::var(field, m, k - 1);
            }
            let images: Vec<YPoly<R>> = tw
                .inverse()
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&z)
                        .fold(YPoly::zero(field, m), |acc, (a, zc)| acc.add(&zc.scale(a)))
                })
                .collect();
            let equations = y.equations().iter().map(|f| f.substitute(&images)).collect();
            VarietySpec::new(VarietyKind::Affine(m), equations)
        })
        .collect()
}

/// The piece containing a point and the point's affine coordinates there.
pub fn locate<R: Ambient>(point: &ProjPoint<R>, tw: &TwistData<R>) -> (usize, Vec<FnFieldElement<R>>) {
    let z = tw.apply(&point.functions());
    let sigma = tw.sigma();
    let i = sigma
        .iter()
        .position(|&s| !z[s].is_zero())
        .expect("A y is nonzero");
    let pivot = z[sigma[i]].inv().expect("nonzero");
    let coords = sigma[i + 1..].iter().map(|&s| z[s].mul(&pivot)).collect();
    (i, coords)
}
