//! Matrix-model spaces and their rational coordinate charts.
//!
//! Basis orders (components `1, i, j, k` innermost wherever an entry is not
//! forced real):
//! - `M(p,q)`: `E_ij` row-major.
//! - `Sym(n)`: `E_ii` first, then `E_ij + E_ji` for `i < j`.
//! - `Asym(n)`: `E_ij − E_ji` for `i < j`.
//! - `Herm(n)`: real `E_ii` first, then for each `i < j` and unit `e`
//!   the matrix `e E_ij + ē E_ji`.
//! - `Vec(n)`: standard real basis, as `n × 1` columns.

use std::fmt;

use serde::Serialize;

use super::linalg::Vector;
use super::matrix::ExactMatrix;
use super::rational::Rational;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum Model {
    Rect { rows: usize, cols: usize },
    Sym { n: usize },
    Asym { n: usize },
    Herm { n: usize },
    Vector { n: usize },
}

/// A realified matrix-model space.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Space {
    pub model: Model,
    pub field: Field,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.field.symbol();
        match self.model {
            Model::Rect { rows, cols } => write!(f, "M({rows},{cols};{k})"),
            Model::Sym { n } => write!(f, "Sym({n};{k})"),
            Model::Asym { n } => write!(f, "Asym({n};{k})"),
            Model::Herm { n } => write!(f, "Herm({n};{k})"),
            Model::Vector { n } => write!(f, "{k}^{n}"),
        }
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

impl Space {
    pub fn new(model: Model, field: Field) -> Result<Self> {
        let ok = match model {
            Model::Rect { rows, cols } => rows > 0 && cols > 0,
            Model::Sym { n } | Model::Asym { n } => n > 0 && field != Field::Quaternion,
            Model::Herm { n } => n > 0 && field != Field::Real,
            Model::Vector { n } => n > 0 && field == Field::Real,
        };
        if !ok {
            return Err(Error::Size(format!("unsupported space {model:?} over {}", field.symbol())));
        }
        Ok(Space { model, field })
    }

    pub fn rect(rows: usize, cols: usize, field: Field) -> Self {
        Self::new(Model::Rect { rows, cols }, field).expect("valid rect space")
    }

    /// Matrix shape of the elements.
    pub fn shape(&self) -> (usize, usize) {
        match self.model {
            Model::Rect { rows, cols } => (rows, cols),
            Model::Sym { n } | Model::Asym { n } | Model::Herm { n } => (n, n),
            Model::Vector { n } => (n, 1),
        }
    }

    pub fn dim(&self) -> usize {
        let k = self.field.dim();
        match self.model {
            Model::Rect { rows, cols } => rows * cols * k,
            Model::Sym { n } => n * (n + 1) / 2 * k,
            Model::Asym { n } => n * (n - 1) / 2 * k,
            Model::Herm { n } => n + n * (n - 1) / 2 * k,
            Model::Vector { n } => n,
        }
    }

    /// Realified coordinates; errors if `x` is not an element of the space.
    pub fn coords(&self, x: &ExactMatrix) -> Result<Vector> {
        if x.shape() != self.shape() {
            return Err(crate::error::shape_err(format!("{:?}", self.shape()), format!("{:?}", x.shape())));
        }
        let k = self.field.dim();
        let mut v = Vec::with_capacity(self.dim());
        for e in x.entries() {
            if e.minimal_field() > self.field {
                return Err(self.not_in(format!("entry {e} outside {}", self.field.symbol())));
            }
        }
        match self.model {
            Model::Rect { .. } | Model::Vector { .. } => {
                for e in x.entries() {
                    v.extend(e.c[..k].iter().cloned());
                }
            }
            Model::Sym { n } => {
                (0..n).for_each(|i| v.extend(x.get(i, i).c[..k].iter().cloned()));
                pairs(n).for_each(|(i, j)| v.extend(x.get(i, j).c[..k].iter().cloned()));
            }
            Model::Asym { n } => {
                pairs(n).for_each(|(i, j)| v.extend(x.get(i, j).c[..k].iter().cloned()));
            }
            Model::Herm { n } => {
                (0..n).for_each(|i| v.push(x.get(i, i).c[0].clone()));
                pairs(n).for_each(|(i, j)| v.extend(x.get(i, j).c[..k].iter().cloned()));
            }
        }
        if &self.element(&v)? != x {
            return Err(self.not_in(match self.model {
                Model::Sym { .. } => "not symmetric".to_string(),
                Model::Asym { .. } => "not skew-symmetric".to_string(),
                Model::Herm { .. } => "not Hermitian".to_string(),
                _ => "round trip mismatch".to_string(),
            }));
        }
        Ok(v)
    }

    fn not_in(&self, reason: String) -> Error {
        Error::NotInSpace { space: self.to_string(), reason }
    }

    /// Inverse chart.
    pub fn element(&self, v: &[Rational]) -> Result<ExactMatrix> {
        if v.len() != self.dim() {
            return Err(crate::error::shape_err(self.dim(), v.len()));
        }
        let k = self.field.dim();
        let f = self.field;
        let (r, c) = self.shape();
        let mut m = ExactMatrix::zeros_in(f, r, c);
        let sc = |off: usize| Scalar::from_components(f, &v[off..off + k]);
        match self.model {
            Model::Rect { .. } | Model::Vector { .. } => {
                for idx in 0..r * c {
                    m.set(idx / c, idx % c, if k == 1 { Scalar::real(f, v[idx].clone()) } else { sc(idx * k) });
                }
            }
            Model::Sym { n } => {
                for i in 0..n {
                    m.set(i, i, sc(i * k));
                }
                for (t, (i, j)) in pairs(n).enumerate() {
                    let s = sc((n + t) * k);
                    m.set(i, j, s.clone());
                    m.set(j, i, s);
                }
            }
            Model::Asym { n } => {
                for (t, (i, j)) in pairs(n).enumerate() {
                    let s = sc(t * k);
                    m.set(j, i, -&s);
                    m.set(i, j, s);
                }
            }
            Model::Herm { n } => {
                for i in 0..n {
                    m.set(i, i, Scalar::real(f, v[i].clone()));
                }
                for (t, (i, j)) in pairs(n).enumerate() {
                    let s = sc(n + t * k);
                    m.set(j, i, s.conj());
                    m.set(i, j, s);
                }
            }
        }
        Ok(m)
    }

    /// The `idx`-th basis element.
    pub fn basis_element(&self, idx: usize) -> ExactMatrix {
        let mut v = vec![Rational::ZERO; self.dim()];
        v[idx] = Rational::ONE;
        self.element(&v).expect("basis index in range")
    }

    pub fn basis(&self) -> Vec<ExactMatrix> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    /// Human-readable label for a basis index, used in witnesses.
    pub fn basis_label(&self, idx: usize) -> String {
        let k = self.field.dim();
        let unit = |c: usize| ["", "i", "j", "k"][c];
        match self.model {
            Model::Rect { cols, .. } => {
                let (e, c) = (idx / k, idx % k);
                format!("{}E{}{}", unit(c), e / cols + 1, e % cols + 1)
            }
            Model::Vector { .. } => format!("e{}", idx + 1),
            Model::Sym { n } | Model::Herm { n } if idx < n && (k == 1 || matches!(self.model, Model::Herm { .. })) => {
                format!("E{}{}", idx + 1, idx + 1)
            }
            Model::Sym { n } if idx < n * k => format!("{}E{}{}", unit(idx % k), idx / k + 1, idx / k + 1),
            Model::Sym { n } => {
                let t = idx - n * k;
                let (i, j) = pairs(n).nth(t / k).expect("index in range");
                format!("{}(E{}{}+E{}{})", unit(t % k), i + 1, j + 1, j + 1, i + 1)
            }
            Model::Herm { n } => {
                let t = idx - n;
                let (i, j) = pairs(n).nth(t / k).expect("index in range");
                format!("{}E{}{}+h.c.", unit(t % k), i + 1, j + 1)
            }
            Model::Asym { n } => {
                let (i, j) = pairs(n).nth(idx / k).expect("index in range");
                format!("{}(E{}{}-E{}{})", unit(idx % k), i + 1, j + 1, j + 1, i + 1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    #[test]
    fn sym2_diag_coordinates() {
        let s = Space::new(Model::Sym { n: 2 }, Field::Real).unwrap();
        let x = ExactMatrix::from_ints_in(Field::Real, &[&[1, 0], &[0, 2]]);
        assert_eq!(s.coords(&x).unwrap(), vec![q(1), q(2), q(0)]);
        let bad = ExactMatrix::from_ints_in(Field::Real, &[&[1, 1], &[0, 2]]);
        assert!(matches!(s.coords(&bad), Err(Error::NotInSpace { .. })));
    }

    #[test]
    fn complex_scalar_coordinates() {
        let s = Space::rect(1, 1, Field::Complex);
        let x = ExactMatrix::from_rows(vec![vec![Scalar::complex(q(2), q(3))]]);
        assert_eq!(s.coords(&x).unwrap(), vec![q(2), q(3)]);
    }

    #[test]
    fn asym3_cross_matrix_of_e1() {
        let s = Space::new(Model::Asym { n: 3 }, Field::Real).unwrap();
        // [e1]x has its only entries in the (2,3) slot
        let x = ExactMatrix::from_ints_in(Field::Real, &[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]);
        assert_eq!(s.coords(&x).unwrap(), vec![q(0), q(0), q(-1)]);
        assert_eq!(s.basis_label(2), "(E23-E32)");
    }

    #[test]
    fn herm_rejects_complex_diagonal() {
        let s = Space::new(Model::Herm { n: 1 }, Field::Complex).unwrap();
        let x = ExactMatrix::from_rows(vec![vec![Scalar::complex(q(0), q(1))]]);
        assert!(s.coords(&x).is_err());
    }

    #[test]
    fn dims() {
        assert_eq!(Space::new(Model::Herm { n: 2 }, Field::Quaternion).unwrap().dim(), 6);
        assert_eq!(Space::new(Model::Herm { n: 3 }, Field::Complex).unwrap().dim(), 9);
        assert_eq!(Space::new(Model::Sym { n: 3 }, Field::Complex).unwrap().dim(), 12);
        assert!(Space::new(Model::Sym { n: 2 }, Field::Quaternion).is_err());
    }

    fn any_space() -> impl Strategy<Value = Space> {
        let f = prop_oneof![Just(Field::Real), Just(Field::Complex), Just(Field::Quaternion)];
        (f, 1usize..4, 1usize..4, 0usize..4).prop_filter_map("valid", |(f, a, b, m)| {
            let model = match m {
                0 => Model::Rect { rows: a, cols: b },
                1 => Model::Sym { n: a },
                2 => Model::Asym { n: a + 1 },
                _ => Model::Herm { n: a },
            };
            Space::new(model, f).ok()
        })
    }

    proptest! {
        #[test]
        fn chart_round_trips(s in any_space(), seed in proptest::collection::vec(-5i64..5, 64)) {
            let v: Vec<Rational> = (0..s.dim()).map(|i| Rational::new(seed[i % 64], 1 + (i as i64 % 3))).collect();
            let x = s.element(&v).unwrap();
            prop_assert_eq!(s.coords(&x).unwrap(), v);
            for i in 0..s.dim() {
                let b = s.basis_element(i);
                let c = s.coords(&b).unwrap();
                prop_assert_eq!(c, super::super::linalg::unit_vec(s.dim(), i));
            }
        }
    }
}
