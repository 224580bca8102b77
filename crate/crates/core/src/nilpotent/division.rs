//! The composition algebras ℂ, ℍ and 𝕆 on their standard real bases.

use num_traits::Zero;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::tables::HeisenbergField;

const OCTONIONS: &str = include_str!("../../data/octonions.toml");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Fano {
    triples: Vec<[usize; 3]>,
}

/// Real basis `e_0 = 1, e_1, …` with `e_a e_b = sign · e_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub field: HeisenbergField,
    table: Vec<Vec<(usize, i64)>>,
}

impl Composition {
    fn from_triples(field: HeisenbergField, dim: usize, triples: &[[usize; 3]]) -> Result<Self> {
        let mut table = vec![vec![(usize::MAX, 0); dim]; dim];
        for a in 0..dim {
            table[0][a] = (a, 1);
            table[a][0] = (a, 1);
            if a > 0 {
                table[a][a] = (0, -1);
            }
        }
        for t in triples {
            if t.iter().any(|&x| x == 0 || x >= dim) {
                return Err(Error::Parse(format!("unit index out of range in {t:?}")));
            }
            for r in 0..3 {
                let (a, b, c) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
                table[a][b] = (c, 1);
                table[b][a] = (c, -1);
            }
        }
        if table.iter().flatten().any(|&(c, _)| c == usize::MAX) {
            return Err(Error::Parse(format!(
                "incomplete multiplication table for {field:?}"
            )));
        }
        Ok(Composition { field, table })
    }

    pub fn new(field: HeisenbergField) -> Result<Self> {
        match field {
            HeisenbergField::C => Self::from_triples(field, 2, &[]),
            HeisenbergField::H => Self::from_triples(field, 4, &[[1, 2, 3]]),
            HeisenbergField::O => {
                let fano: Fano = toml::from_str(OCTONIONS)
                    .map_err(|e| Error::Parse(format!("octonions: {e}")))?;
                if fano.triples.len() != 7 {
                    return Err(Error::Parse("octonions: expected 7 Fano triples".into()));
                }
                Self::from_triples(field, 8, &fano.triples)
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn unit_product(&self, a: usize, b: usize) -> (usize, i64) {
        self.table[a][b]
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let (c, s) = self.table[a][b];
                let p = xa * yb;
                if s > 0 {
                    out[c] += p;
                } else {
                    out[c] -= p;
                }
            }
        }
        out
    }

    pub fn conj(&self, x: &[Q]) -> Vec<Q> {
        x.iter()
            .enumerate()
            .map(|(a, v)| if a == 0 { v.clone() } else { -v.clone() })
            .collect()
    }

    pub fn norm2(&self, x: &[Q]) -> Q {
        x.iter().map(|v| v * v).sum()
    }

    /// Basis vector `e_a`.
    pub fn unit(&self, a: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[a] = num_traits::One::one();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn quaternion_units() {
        let h = Composition::new(HeisenbergField::H).unwrap();
        assert_eq!(h.unit_product(1, 2), (3, 1));
        assert_eq!(h.unit_product(2, 1), (3, -1));
        assert_eq!(h.unit_product(3, 1), (2, 1));
        assert_eq!(h.unit_product(3, 3), (0, -1));
    }

    #[test]
    fn octonion_norm_is_multiplicative() {
        let o = Composition::new(HeisenbergField::O).unwrap();
        let x: Vec<Q> = (1..=8).map(q).collect();
        let y: Vec<Q> = [3, -1, 4, 1, -5, 9, 2, -6].into_iter().map(q).collect();
        assert_eq!(o.norm2(&o.mul(&x, &y)), o.norm2(&x) * o.norm2(&y));
    }
}
