use std::fmt;

use crate::algebra::{parse_ypoly, CoordRing, Field, FnFieldElement, YPoly, YVars};
use crate::error::{Error, Result};

/// Affine space of dimension `n` (coordinates `y1..yn`) or projective space of
/// dimension `n` (coordinates `y0..yn`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarietyKind {
    Affine(usize),
    Projective(usize),
}

impl VarietyKind {
    pub fn dim(self) -> usize {
        match self {
            VarietyKind::Affine(n) | VarietyKind::Projective(n) => n,
        }
    }

    /// Number of coordinates.
    pub fn nvars(self) -> usize {
        match self {
            VarietyKind::Affine(n) => n,
            VarietyKind::Projective(n) => n + 1,
        }
    }

    pub fn yvars(self) -> YVars {
        match self {
            VarietyKind::Affine(n) => YVars::affine(n),
            VarietyKind::Projective(n) => YVars::projective(n),
        }
    }
}

/// A variety over F_q(X) cut out by polynomial equations in the coordinates.
/// An empty equation list is the whole ambient space.
#[derive(Clone, PartialEq, Eq)]
pub struct VarietySpec<R> {
    kind: VarietyKind,
    equations: Vec<YPoly<R>>,
}

impl<R: CoordRing> VarietySpec<R> {
    pub fn new(kind: VarietyKind, equations: Vec<YPoly<R>>) -> Result<Self> {
        for eq in &equations {
            if eq.nvars() != kind.nvars() {
                return Err(Error::invalid(format!(
                    "equation has {} variables, expected {}",
                    eq.nvars(),
                    kind.nvars()
                )));
            }
            if matches!(kind, VarietyKind::Projective(_)) && !eq.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!(
                    "projective equation `{}` must be homogeneous in y0..y{}",
                    eq.display_with_offset(0),
                    kind.dim()
                )));
            }
        }
        let equations = equations.into_iter().filter(|e| !e.is_zero()).collect();
        Ok(VarietySpec { kind, equations })
    }

    pub fn affine_space(n: usize) -> Self {
        VarietySpec {
            kind: VarietyKind::Affine(n),
            equations: Vec::new(),
        }
    }

    pub fn projective_space(n: usize) -> Self {
        VarietySpec {
            kind: VarietyKind::Projective(n),
            equations: Vec::new(),
        }
    }

    /// Reads `affine:N:eq1;eq2` or `projective:N:eq1;...`. An equation may be
    /// written `lhs = rhs`.
    pub fn parse(text: &str, field: Field) -> Result<Self> {
        let mut parts = text.splitn(3, ':');
        let kind = parts.next().unwrap_or("").trim();
        let n = parts
            .next()
            .and_then(|n| n.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::invalid(format!("variety `{text}` must look like `affine:N:...`")))?;
        let kind = match kind {
            "affine" => VarietyKind::Affine(n),
            "projective" => VarietyKind::Projective(n),
            other => return Err(Error::invalid(format!("unknown variety kind `{other}`"))),
        };
        let eqs = parts.next().unwrap_or("");
        let mut equations = Vec::new();
        for eq in eqs.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let poly = match eq.split_once('=') {
                Some((lhs, rhs)) => {
                    let l = parse_ypoly(lhs, field, kind.yvars())?;
                    let r = parse_ypoly(rhs, field, kind.yvars())?;
                    l.sub(&r)
                }
                None => parse_ypoly(eq, field, kind.yvars())?,
            };
            equations.push(poly);
        }
        Self::new(kind, equations)
    }

    pub fn kind(&self) -> VarietyKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.kind.nvars()
    }

    pub fn equations(&self) -> &[YPoly<R>] {
        &self.equations
    }

    /// Largest total degree among the equations, 0 when there are none.
    pub fn max_degree(&self) -> u32 {
        self.equations.iter().filter_map(|e| e.degree()).max().unwrap_or(0)
    }

    fn offset(&self) -> usize {
        match self.kind {
            VarietyKind::Affine(_) => 1,
            VarietyKind::Projective(_) => 0,
        }
    }

    /// Whether every equation vanishes at the point.
    pub fn contains(&self, point: &[FnFieldElement<R>]) -> Result<bool> {
        if point.len() != self.nvars() {
            return Err(Error::invalid(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.nvars()
            )));
        }
        if matches!(self.kind, VarietyKind::Projective(_)) && point.iter().all(|c| c.is_zero()) {
            return Err(Error::invalid("projective point with all coordinates zero"));
        }
        Ok(self.equations.iter().all(|e| e.eval(point).is_zero()))
    }
}

impl<R: CoordRing> fmt::Display for VarietySpec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            VarietyKind::Affine(_) => "affine",
            VarietyKind::Projective(_) => "projective",
        };
        let eqs: Vec<String> = self
            .equations
            .iter()
            .map(|e| e.display_with_offset(self.offset()))
            .collect();
        write!(f, "{kind}:{}:{}", self.kind.dim(), eqs.join("; "))
    }
}

impl<R: CoordRing> fmt::Debug for VarietySpec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarietySpec({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_fn, Poly};

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn fe(s: &str) -> FnFieldElement<Poly> {
        parse_fn(s, f2()).unwrap()
    }

    #[test]
    fn membership_on_a_hyperbola() {
        let v = VarietySpec::<Poly>::parse("affine:2:y1*y2 = 1", f2()).unwrap();
        assert!(v.contains(&[fe("t"), fe("1/t")]).unwrap());
        assert!(!v.contains(&[fe("t"), fe("t")]).unwrap());
        assert!(v.contains(&[fe("t")]).is_err());
        let a2 = VarietySpec::<Poly>::affine_space(2);
        assert!(a2.contains(&[fe("t^5"), fe("0")]).unwrap());
    }

    #[test]
    fn projective_equations_must_be_homogeneous() {
        assert!(VarietySpec::<Poly>::parse("projective:1:y0*y1", f2()).is_ok());
        assert!(matches!(
            VarietySpec::<Poly>::parse("projective:1:y0*y1 + y1", f2()),
            Err(Error::Inhomogeneous(_))
        ));
        assert!(VarietySpec::<Poly>::parse("affine:1:y2", f2()).is_err());
        assert!(VarietySpec::<Poly>::parse("conic:1:", f2()).is_err());
    }

    #[test]
    fn projective_membership_ignores_scale() {
        let v = VarietySpec::<Poly>::parse("projective:1:y0*y1", f2()).unwrap();
        assert!(v.contains(&[fe("0"), fe("t")]).unwrap());
        assert!(v.contains(&[fe("0"), fe("1/(t+1)")]).unwrap());
        assert!(!v.contains(&[fe("1"), fe("t")]).unwrap());
        assert!(v.contains(&[fe("0"), fe("0")]).is_err());
    }

    #[test]
    fn display_round_trips() {
        let v = VarietySpec::<Poly>::parse("affine:2:y1*y2 + t/(t+1)*y1 + 1", f2()).unwrap();
        let again = VarietySpec::<Poly>::parse(&v.to_string(), f2()).unwrap();
        assert_eq!(v, again);
    }
}
