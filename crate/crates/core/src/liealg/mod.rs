//! Lie algebras given by structure constants: the `A`-twisted matrix algebras
//! `XAY − YAX`, standard imbeddings of Lie triple systems, and the
//! low-dimensional isomorphisms between matrix pairs and spin factors.

mod imbedding;
mod iso;

pub use imbedding::{standard_imbedding, GradedImbedding};
pub use iso::{verify_isomorphism, IsoCertificate, IsoId};

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{shape_err, Error, Result};
use crate::exactalg::linalg::{congruent_diagonalize, inverse, is_zero_vec, Inertia, Vector};
use crate::exactalg::{ExactMatrix, Model, QMatrix, Rational, Space};
use crate::report::{Check, CheckReport, Coverage};
use crate::tensor::TripleTensor;

/// A bracket on `𝕂ᵈ` stored as dense structure constants `[eᵢ, eⱼ]`.
#[derive(Clone, Debug)]
pub struct LieAlgebraTensor {
    dim: usize,
    table: Vec<Vector>,
    pub labels: Vec<String>,
}

impl PartialEq for LieAlgebraTensor {
    /// Structure constants only; labels are cosmetic.
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.table == o.table
    }
}

impl Serialize for LieAlgebraTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Bracket<'a> {
            i: usize,
            j: usize,
            value: &'a [Rational],
        }
        let brackets: Vec<Bracket> = (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .filter(|&(i, j)| !is_zero_vec(self.bracket_basis(i, j)))
            .map(|(i, j)| Bracket { i, j, value: self.bracket_basis(i, j) })
            .collect();
        let mut st = s.serialize_struct("LieAlgebraTensor", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("brackets", &brackets)?;
        st.end()
    }
}

impl LieAlgebraTensor {
    pub fn from_fn(dim: usize, labels: Vec<String>, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        assert_eq!(labels.len(), dim, "one label per basis vector");
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                debug_assert_eq!(v.len(), dim);
                table.push(v);
            }
        }
        LieAlgebraTensor { dim, table, labels }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = vec![Rational::ZERO; self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let s = xi * yj;
                for (o, c) in out.iter_mut().zip(self.bracket_basis(i, j)) {
                    if !c.is_zero() {
                        *o += &(&s * c);
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| is_zero_vec(v))
    }

    /// Antisymmetry and the Jacobi identity on all basis pairs and triples.
    pub fn check_axioms(&self) -> CheckReport {
        let d = self.dim;
        let mut r = CheckReport::new();
        let mut anti = None;
        'anti: for i in 0..d {
            for j in i..d {
                let s: Vector = self.bracket_basis(i, j).iter().zip(self.bracket_basis(j, i)).map(|(a, b)| a + b).collect();
                if !is_zero_vec(&s) {
                    anti = Some(vec![i, j]);
                    break 'anti;
                }
            }
        }
        r.push(match anti {
            None => Check::pass("antisymmetry", (d * d) as u64, Coverage::Exhaustive),
            Some(t) => Check::fail("antisymmetry", (d * d) as u64, Coverage::Exhaustive, t, "[x,y] != -[y,x]"),
        });
        let unit = |i: usize| crate::exactalg::linalg::unit_vec(d, i);
        let mut jac = None;
        'jac: for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let a = self.bracket(self.bracket_basis(i, j), &unit(k));
                    let b = self.bracket(self.bracket_basis(j, k), &unit(i));
                    let c = self.bracket(self.bracket_basis(k, i), &unit(j));
                    let s: Vector = a.iter().zip(&b).zip(&c).map(|((x, y), z)| &(x + y) + z).collect();
                    if !is_zero_vec(&s) {
                        jac = Some(vec![i, j, k]);
                        break 'jac;
                    }
                }
            }
        }
        // with antisymmetry, distinct triples suffice
        let cases = (d * d.saturating_sub(1) * d.saturating_sub(2) / 6) as u64;
        r.push(match jac {
            None => Check::pass("jacobi", cases, Coverage::Exhaustive),
            Some(t) => Check::fail("jacobi", cases, Coverage::Exhaustive, t, "cyclic sum of [[x,y],z] is nonzero"),
        });
        r
    }

    /// Errors with the first failing axiom.
    pub fn require_lie(self) -> Result<Self> {
        match self.check_axioms().first_failure() {
            None => Ok(self),
            Some(c) => Err(Error::Axiom { axiom: c.id.clone(), tuple: c.witness.as_ref().map(|w| w.tuple.clone()).unwrap_or_default() }),
        }
    }

    pub fn ad(&self, x: &[Rational]) -> QMatrix {
        let d = self.dim;
        let cols: Vec<Vector> = (0..d).map(|j| self.bracket(x, &crate::exactalg::linalg::unit_vec(d, j))).collect();
        QMatrix::from_cols(d, &cols)
    }

    /// `B(x, y) = tr(ad x ad y)`.
    pub fn killing_form(&self) -> QMatrix {
        let d = self.dim;
        let ads: Vec<QMatrix> = (0..d).map(|i| self.ad(&crate::exactalg::linalg::unit_vec(d, i))).collect();
        QMatrix::from_fn(d, d, |i, j| (&ads[i] * &ads[j]).trace())
    }

    pub fn killing_inertia(&self) -> Inertia {
        congruent_diagonalize(&self.killing_form()).expect("Killing form is symmetric")
    }

    /// Structure constants in the basis given by the columns of `p`.
    pub fn in_basis(&self, p: &QMatrix, labels: Vec<String>) -> Result<Self> {
        if p.shape() != (self.dim, self.dim) {
            return Err(shape_err(format!("{0}x{0}", self.dim), format!("{}x{}", p.rows(), p.cols())));
        }
        let pinv = inverse(p).ok_or(Error::DependentBasis)?;
        let cols: Vec<Vector> = (0..self.dim).map(|c| p.col(c)).collect();
        Ok(Self::from_fn(self.dim, labels, |i, j| pinv.mul_vec(&self.bracket(&cols[i], &cols[j]))))
    }

    /// First basis pair `(i, j)` with `φ[eᵢ, eⱼ] ≠ [φeᵢ, φeⱼ]` in `target`.
    pub fn homomorphism_violation(&self, target: &LieAlgebraTensor, phi: &QMatrix) -> Option<[usize; 2]> {
        assert_eq!(phi.shape(), (target.dim, self.dim), "shape mismatch");
        let cols: Vec<Vector> = (0..self.dim).map(|c| phi.col(c)).collect();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if phi.mul_vec(self.bracket_basis(i, j)) != target.bracket(&cols[i], &cols[j]) {
                    return Some([i, j]);
                }
            }
        }
        None
    }

    /// `[[x, y], z]` on the span of the given basis vectors, which must be
    /// closed under it.
    pub fn triple_bracket(&self, basis: &[usize]) -> Result<TripleTensor> {
        let m = basis.len();
        let unit = |i: usize| crate::exactalg::linalg::unit_vec(self.dim, i);
        let mut failed = None;
        let t = TripleTensor::cubic(m, |a, b, c| {
            let v = self.bracket(self.bracket_basis(basis[a], basis[b]), &unit(basis[c]));
            let inside = v.iter().enumerate().all(|(k, x)| x.is_zero() || basis.contains(&k));
            if !inside {
                failed.get_or_insert([a, b, c]);
            }
            basis.iter().map(|&k| v[k].clone()).collect()
        });
        match failed {
            None => Ok(t),
            Some(tr) => Err(Error::Degenerate(format!("triple bracket leaves the subspace at {tr:?}"))),
        }
    }
}

/// `[e,f] = ck, [e,k] = af, [f,k] = −be` on `(e, f, k)`.
pub fn o3_brackets(a: &Rational, b: &Rational, c: &Rational) -> LieAlgebraTensor {
    let z = Rational::ZERO;
    let v = |x: &Rational, at: usize| -> Vector {
        let mut out = vec![z.clone(); 3];
        out[at] = x.clone();
        out
    };
    let nb = -b;
    LieAlgebraTensor::from_fn(3, vec!["e".into(), "f".into(), "k".into()], |i, j| match (i, j) {
        (0, 1) => v(c, 2),
        (1, 0) => v(&-c, 2),
        (0, 2) => v(a, 1),
        (2, 0) => v(&-a, 1),
        (1, 2) => v(&nb, 0),
        (2, 1) => v(b, 0),
        _ => vec![z.clone(); 3],
    })
}

fn matrix_bracket_algebra(space: &Space, a: &ExactMatrix) -> Result<LieAlgebraTensor> {
    let basis = space.basis();
    let d = basis.len();
    let names = (0..d).map(|i| space.basis_label(i)).collect();
    let mut err = None;
    let alg = LieAlgebraTensor::from_fn(d, names, |i, j| {
        let x = &basis[i];
        let y = &basis[j];
        let m = &(&(x * a) * y) - &(&(y * a) * x);
        space.coords(&m).unwrap_or_else(|e| {
            err.get_or_insert(e);
            vec![Rational::ZERO; d]
        })
    });
    match err {
        Some(e) => Err(e),
        None => alg.require_lie(),
    }
}

/// `𝔬ₙ(A; 𝕂)`: `Asym(n; 𝕂)` with `[X, Y]_A = XAY − YAX`, `A` symmetric.
pub fn a_orth_algebra(a: &ExactMatrix) -> Result<LieAlgebraTensor> {
    if !a.is_square() {
        return Err(shape_err("square matrix", format!("{}x{}", a.rows(), a.cols())));
    }
    if &a.transpose() != a {
        return Err(Error::NotSymmetric);
    }
    let n = a.rows();
    if n < 2 {
        return Err(Error::Size("Asym(n) needs n >= 2".into()));
    }
    matrix_bracket_algebra(&Space::new(Model::Asym { n }, a.field())?, a)
}

/// `𝔤𝔩_{p,q}(A; 𝕂)`: `M(p, q; 𝕂)` with `[X, Y]_A = XAY − YAX`, `A` of shape `q × p`.
pub fn a_gl_algebra(a: &ExactMatrix, p: usize, q: usize) -> Result<LieAlgebraTensor> {
    if a.shape() != (q, p) {
        return Err(shape_err(format!("{q}x{p}"), format!("{}x{}", a.rows(), a.cols())));
    }
    matrix_bracket_algebra(&Space::new(Model::Rect { rows: p, cols: q }, a.field())?, a)
}

/// Coordinates of `e = E₁₃ − E₃₁`, `f = E₂₃ − E₃₂`, `k = E₁₂ − E₂₁` in the
/// standard basis of `Asym(3; ℝ)`, as columns.
pub fn efk_basis() -> QMatrix {
    let s = Space::new(Model::Asym { n: 3 }, crate::exactalg::Field::Real).expect("Asym(3)");
    let e = |i: usize, j: usize| {
        let mut m = ExactMatrix::zeros_in(crate::exactalg::Field::Real, 3, 3);
        m.set(i, j, crate::exactalg::Scalar::int(crate::exactalg::Field::Real, 1));
        m.set(j, i, crate::exactalg::Scalar::int(crate::exactalg::Field::Real, -1));
        s.coords(&m).expect("skew")
    };
    QMatrix::from_cols(3, &[e(0, 2), e(1, 2), e(0, 1)])
}
