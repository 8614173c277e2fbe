use std::collections::BTreeMap;
use std::fmt;

use super::{Field, FieldElement};

/// A sparse polynomial over F_q in `nvars` variables `x1..`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MvPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MvPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        MvPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, FieldElement)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: FieldElement) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Value at a point of F_q^nvars.
    pub fn eval(&self, x: &[FieldElement]) -> FieldElement {
        let mut acc = self.field.zero();
        for (e, &c) in &self.terms {
            let mut term = c;
            for (&xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    term = term * xi.pow(k as u64);
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Coefficients of `x1..xn` and the constant term, when of degree at most 1.
    pub fn as_affine(&self) -> Option<(Vec<FieldElement>, FieldElement)> {
        let mut lin = vec![self.field.zero(); self.nvars];
        let mut constant = self.field.zero();
        for (e, &c) in &self.terms {
            match e.iter().sum::<u32>() {
                0 => constant = c,
                1 => lin[e.iter().position(|&k| k == 1).unwrap()] = c,
                _ => return None,
            }
        }
        Some((lin, constant))
    }
}

impl fmt::Display for MvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut first = true;
        for (e, c) in terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect();
            super::poly::write_coeff_times(f, *c, &mono.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MvPoly({self})")
    }
}
