//! Classical Jordan pairs: construction, triple products and quadratic operators.

pub(crate) mod axioms;
mod forms;

pub use axioms::{check_pair_axioms, derivation_violation, AxiomPolicy};
pub use forms::{
    cartan_involution, cartan_jts, check_nondegenerate, check_positive_and_backes, sub_jts_positive, trace_form, CartanCertificate,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{shape_err, Error, Result};
use crate::exactalg::linalg::{congruent_diagonalize, inverse, Vector};
use crate::exactalg::{ExactMatrix, Field, Model, QMatrix, Rational, Space};
use crate::tensor::TripleTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PairKind {
    Rect { p: usize, q: usize, field: Field },
    Sym { n: usize, field: Field },
    Asym { n: usize, field: Field },
    HermC { n: usize },
    HermH { n: usize },
    /// Spin factor; `(p, q)` is the signature of the form.
    Spin { p: usize, q: usize },
    /// Anything assembled from other pairs.
    Custom { label: String },
}

/// Parsed form of a pair spec string such as `rect:R:2x3` or `spin:2,1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSpec {
    Kind(PairKind),
    /// `spin:G:<path>`; the caller loads the Gram matrix.
    SpinGramFile(String),
}

impl FromStr for PairSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::PairSpec(s.to_string());
        let parts: Vec<&str> = s.splitn(3, ':').collect();
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let field = |t: &str| Field::from_symbol(t).ok_or_else(bad);
        let kind = match parts.as_slice() {
            ["rect", f, dims] => {
                let (p, q) = dims.split_once('x').ok_or_else(bad)?;
                PairKind::Rect { p: num(p)?, q: num(q)?, field: field(f)? }
            }
            ["sym", f, n] => PairKind::Sym { n: num(n)?, field: field(f)? },
            ["asym", f, n] => PairKind::Asym { n: num(n)?, field: field(f)? },
            ["hermC", n] => PairKind::HermC { n: num(n)? },
            ["hermH", n] => PairKind::HermH { n: num(n)? },
            ["spin", "G", path] => return Ok(PairSpec::SpinGramFile(path.to_string())),
            ["spin", pq] => {
                let (p, q) = pq.split_once(',').ok_or_else(bad)?;
                PairKind::Spin { p: num(p)?, q: num(q)? }
            }
            _ => return Err(bad()),
        };
        Ok(PairSpec::Kind(kind))
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairKind::Rect { p, q, field } => write!(f, "rect:{}:{p}x{q}", field.symbol()),
            PairKind::Sym { n, field } => write!(f, "sym:{}:{n}", field.symbol()),
            PairKind::Asym { n, field } => write!(f, "asym:{}:{n}", field.symbol()),
            PairKind::HermC { n } => write!(f, "hermC:{n}"),
            PairKind::HermH { n } => write!(f, "hermH:{n}"),
            PairKind::Spin { p, q } => write!(f, "spin:{p},{q}"),
            PairKind::Custom { label } => write!(f, "{label}"),
        }
    }
}

/// A Jordan pair with structure constants in realified coordinates.
#[derive(Clone)]
pub struct JordanPair {
    pub kind: PairKind,
    pub label: String,
    plus: Option<Space>,
    minus: Option<Space>,
    t_plus: TripleTensor,
    t_minus: TripleTensor,
    cartan: Option<QMatrix>,
    spin_form: Option<QMatrix>,
}

impl fmt::Debug for JordanPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JordanPair({}, dims {}+{})", self.label, self.dim(Side::Plus), self.dim(Side::Minus))
    }
}

/// Structure constants of `(X, Y, Z) ↦ XYZ + ZYX` on the given bases.
fn matrix_triple_tensor(outer: &Space, middle: &Space) -> TripleTensor {
    let b = outer.basis();
    let c = middle.basis();
    let e = c.len();
    let products: Vec<(ExactMatrix, ExactMatrix)> =
        (0..b.len() * e).map(|t| (&b[t / e] * &c[t % e], &c[t % e] * &b[t / e])).collect();
    TripleTensor::from_fn([b.len(), e, b.len(), b.len()], |i, j, k| {
        let m = &(&products[i * e + j].0 * &b[k]) + &(&b[k] * &products[i * e + j].1);
        outer.coords(&m).expect("triple product stays in the model space")
    })
}

fn spin_tensor(g: &QMatrix) -> TripleTensor {
    let n = g.rows();
    TripleTensor::cubic(n, |i, j, k| {
        let mut v = vec![Rational::ZERO; n];
        v[i] += g.get(j, k);
        v[k] += g.get(j, i);
        v[j] -= g.get(i, k);
        v
    })
}

impl JordanPair {
    pub fn from_kind(kind: &PairKind) -> Result<Self> {
        let size = |n: usize| if n == 0 { Err(Error::Size("sizes must be at least 1".into())) } else { Ok(n) };
        let (plus, minus) = match *kind {
            PairKind::Rect { p, q, field } => {
                size(p)?;
                size(q)?;
                (Space::new(Model::Rect { rows: p, cols: q }, field)?, Space::new(Model::Rect { rows: q, cols: p }, field)?)
            }
            PairKind::Sym { n, field } => {
                let s = Space::new(Model::Sym { n: size(n)? }, field)?;
                (s.clone(), s)
            }
            PairKind::Asym { n, field } => {
                if n < 2 {
                    return Err(Error::Size("Asym(n) needs n >= 2".into()));
                }
                let s = Space::new(Model::Asym { n }, field)?;
                (s.clone(), s)
            }
            PairKind::HermC { n } => {
                let s = Space::new(Model::Herm { n: size(n)? }, Field::Complex)?;
                (s.clone(), s)
            }
            PairKind::HermH { n } => {
                let s = Space::new(Model::Herm { n: size(n)? }, Field::Quaternion)?;
                (s.clone(), s)
            }
            PairKind::Spin { p, q } => {
                if p + q == 0 {
                    return Err(Error::Size("spin(p,q) needs p + q >= 1".into()));
                }
                let d: Vec<Rational> =
                    (0..p + q).map(|i| if i < p { Rational::ONE } else { -Rational::ONE }).collect();
                return Self::spin_with_form(&QMatrix::diag(&d), &kind.to_string());
            }
            PairKind::Custom { .. } => return Err(Error::PairSpec(kind.to_string())),
        };
        let t_plus = matrix_triple_tensor(&plus, &minus);
        let t_minus = matrix_triple_tensor(&minus, &plus);
        // X ↦ X* on every matrix kind
        let cartan = QMatrix::from_cols(
            minus.dim(),
            &plus
                .basis()
                .iter()
                .map(|b| minus.coords(&b.conj_transpose()).expect("adjoint lands in V-"))
                .collect::<Vec<_>>(),
        );
        Ok(JordanPair {
            kind: kind.clone(),
            label: kind.to_string(),
            plus: Some(plus),
            minus: Some(minus),
            t_plus,
            t_minus,
            cartan: Some(cartan),
            spin_form: None,
        })
    }

    pub fn parse(spec: &str) -> Result<Self> {
        match spec.parse::<PairSpec>()? {
            PairSpec::Kind(k) => Self::from_kind(&k),
            PairSpec::SpinGramFile(_) => Err(Error::PairSpec(format!("{spec}: Gram file must be loaded by the caller"))),
        }
    }

    pub fn rect(p: usize, q: usize, field: Field) -> Self {
        Self::from_kind(&PairKind::Rect { p, q, field }).expect("valid rect pair")
    }

    /// Spin factor on ℚⁿ for an invertible symmetric Gram matrix.
    pub fn spin_with_form(g: &QMatrix, label: &str) -> Result<Self> {
        let inertia = congruent_diagonalize(g)?;
        if g.rows() == 0 {
            return Err(Error::Size("spin form must be at least 1x1".into()));
        }
        if inertia.zero > 0 {
            return Err(Error::SingularForm);
        }
        let n = g.rows();
        let space = Space::new(Model::Vector { n }, Field::Real)?;
        // Cartan involution: C sign(D) C⁻¹ for a diagonalizing congruence C
        let c = &inertia.witness;
        let sign: Vec<Rational> = inertia.diagonal.iter().map(|x| Rational::int(x.signum() as i64)).collect();
        let cartan = &(c * &QMatrix::diag(&sign)) * &inverse(c).expect("congruence witness is invertible");
        let t = spin_tensor(g);
        Ok(JordanPair {
            kind: PairKind::Spin { p: inertia.positive, q: inertia.negative },
            label: label.to_string(),
            plus: Some(space.clone()),
            minus: Some(space),
            t_plus: t.clone(),
            t_minus: t,
            cartan: Some(cartan),
            spin_form: Some(g.clone()),
        })
    }

    /// A pair given directly by structure constants.
    pub fn from_tensors(label: &str, t_plus: TripleTensor, t_minus: TripleTensor, cartan: Option<QMatrix>) -> Result<Self> {
        let [a, b, c, d] = t_plus.dims();
        let [e, f, g, h] = t_minus.dims();
        if !(a == c && c == d && b == e && e == g && g == h && f == a) {
            return Err(shape_err("T+: V+ x V- x V+ -> V+ and T-: V- x V+ x V- -> V-", format!("{:?} / {:?}", t_plus.dims(), t_minus.dims())));
        }
        if let Some(t) = &cartan {
            if t.shape() != (b, a) {
                return Err(shape_err(format!("{b}x{a}"), format!("{:?}", t.shape())));
            }
        }
        Ok(JordanPair {
            kind: PairKind::Custom { label: label.to_string() },
            label: label.to_string(),
            plus: None,
            minus: None,
            t_plus,
            t_minus,
            cartan,
            spin_form: None,
        })
    }

    /// One-dimensional (or `d`-dimensional) pair with zero product.
    pub fn zero_product(d: usize) -> Self {
        Self::from_tensors("zero", TripleTensor::zero([d, d, d, d]), TripleTensor::zero([d, d, d, d]), None)
            .expect("consistent shapes")
    }

    pub fn dim(&self, side: Side) -> usize {
        self.tensor(side).dims()[0]
    }

    pub fn space(&self, side: Side) -> Option<&Space> {
        match side {
            Side::Plus => self.plus.as_ref(),
            Side::Minus => self.minus.as_ref(),
        }
    }

    pub fn tensor(&self, side: Side) -> &TripleTensor {
        match side {
            Side::Plus => &self.t_plus,
            Side::Minus => &self.t_minus,
        }
    }

    /// Cartan involution `τ: V⁺ → V⁻`, if the pair has one.
    pub fn cartan(&self) -> Option<&QMatrix> {
        self.cartan.as_ref()
    }

    pub fn spin_form(&self) -> Option<&QMatrix> {
        self.spin_form.as_ref()
    }

    pub fn field(&self) -> Field {
        self.plus.as_ref().map_or(Field::Real, |s| s.field)
    }

    /// `(V⁻, V⁺)` with the roles of the products exchanged.
    pub fn opposite(&self) -> Self {
        JordanPair {
            kind: self.kind.clone(),
            label: format!("{}^op", self.label),
            plus: self.minus.clone(),
            minus: self.plus.clone(),
            t_plus: self.t_minus.clone(),
            t_minus: self.t_plus.clone(),
            cartan: self.cartan.as_ref().map(|t| inverse(t).expect("Cartan involution is invertible")),
            spin_form: self.spin_form.clone(),
        }
    }

    /// Componentwise product on `(A⁺ ⊕ B⁺, A⁻ ⊕ B⁻)`.
    pub fn direct_sum(a: &JordanPair, b: &JordanPair) -> Self {
        let block = |s: Side| {
            let (ta, tb) = (a.tensor(s), b.tensor(s));
            let (da, ea) = (a.dim(s), a.dim(s.opposite()));
            let (db, eb) = (b.dim(s), b.dim(s.opposite()));
            TripleTensor::from_fn([da + db, ea + eb, da + db, da + db], |i, j, k| {
                let mut v = vec![Rational::ZERO; da + db];
                if i < da && j < ea && k < da {
                    for (m, x) in ta.entry(i, j, k) {
                        v[*m] = x.clone();
                    }
                } else if i >= da && j >= ea && k >= da {
                    for (m, x) in tb.entry(i - da, j - ea, k - da) {
                        v[da + *m] = x.clone();
                    }
                }
                v
            })
        };
        let cartan = match (a.cartan(), b.cartan()) {
            (Some(x), Some(y)) => Some(block_diag(x, y)),
            _ => None,
        };
        Self::from_tensors(&format!("({})+({})", a.label, b.label), block(Side::Plus), block(Side::Minus), cartan)
            .expect("consistent shapes")
    }

    pub fn coords(&self, side: Side, x: &ExactMatrix) -> Result<Vector> {
        self.space(side)
            .ok_or_else(|| Error::Precondition(format!("{} has no matrix model", self.label)))?
            .coords(x)
    }

    pub fn element(&self, side: Side, v: &[Rational]) -> Result<ExactMatrix> {
        self.space(side)
            .ok_or_else(|| Error::Precondition(format!("{} has no matrix model", self.label)))?
            .element(v)
    }

    /// `T^side(x, y, z)` in coordinates.
    pub fn triple_coords(&self, side: Side, x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<Vector> {
        let (d, e) = (self.dim(side), self.dim(side.opposite()));
        if x.len() != d || y.len() != e || z.len() != d {
            return Err(shape_err(format!("({d},{e},{d})"), format!("({},{},{})", x.len(), y.len(), z.len())));
        }
        Ok(self.tensor(side).eval(x, y, z))
    }

    /// `T^side(x, y, z)` on model elements.
    pub fn triple_product(&self, side: Side, x: &ExactMatrix, y: &ExactMatrix, z: &ExactMatrix) -> Result<ExactMatrix> {
        let xs = self.coords(side, x)?;
        let ys = self.coords(side.opposite(), y)?;
        let zs = self.coords(side, z)?;
        self.element(side, &self.triple_coords(side, &xs, &ys, &zs)?)
    }

    /// `Q(x) = ½ T(x, ·, x)` as a matrix `V∓ → V±`.
    pub fn quadratic_operator(&self, side: Side, x: &[Rational]) -> Result<QMatrix> {
        if x.len() != self.dim(side) {
            return Err(shape_err(self.dim(side), x.len()));
        }
        let half = Rational::new(1, 2);
        let e = self.dim(side.opposite());
        let cols: Vec<Vector> = (0..e)
            .map(|j| {
                let y = crate::exactalg::linalg::unit_vec(e, j);
                self.tensor(side).eval(x, &y, x).iter().map(|c| c * &half).collect()
            })
            .collect();
        Ok(QMatrix::from_cols(self.dim(side), &cols))
    }

    /// `Q(x)y + Q(y)x`-type polarization `z ↦ T(x, z, y)`, the linear part of `Q(x+y)`.
    pub fn polarized_quadratic(&self, side: Side, x: &[Rational], y: &[Rational]) -> QMatrix {
        let e = self.dim(side.opposite());
        let cols: Vec<Vector> =
            (0..e).map(|j| self.tensor(side).eval(x, &crate::exactalg::linalg::unit_vec(e, j), y)).collect();
        QMatrix::from_cols(self.dim(side), &cols)
    }

    /// Realified matrix of a map `V^from → V^to` given on model elements.
    pub fn realify_map(&self, from: Side, to: Side, f: impl Fn(&ExactMatrix) -> ExactMatrix) -> Result<QMatrix> {
        let sf = self.space(from).ok_or_else(|| Error::Precondition(format!("{} has no matrix model", self.label)))?;
        let st = self.space(to).ok_or_else(|| Error::Precondition(format!("{} has no matrix model", self.label)))?;
        let cols: Result<Vec<Vector>> = sf.basis().iter().map(|b| st.coords(&f(b))).collect();
        Ok(QMatrix::from_cols(st.dim(), &cols?))
    }

    /// Label of a basis vector for witnesses.
    pub fn basis_label(&self, side: Side, i: usize) -> String {
        match self.space(side) {
            Some(s) => s.basis_label(i),
            None => format!("b{}", i + 1),
        }
    }
}

pub(crate) fn block_diag(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    QMatrix::from_fn(ra + rb, ca + cb, |i, j| {
        if i < ra && j < ca {
            a.get(i, j).clone()
        } else if i >= ra && j >= ca {
            b.get(i - ra, j - ca).clone()
        } else {
            Rational::ZERO
        }
    })
}
