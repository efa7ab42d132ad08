//! Parametrized families of homotopies of the classical matrix pairs.

mod spin;
mod structural;

pub use spin::{
    ktwo_equivalence, ktwo_pair, ktwo_predicate, rivillis_equivalence, rivillis_predicate, spin_family_alpha,
    spin_member_fast, EquivalenceReport, SpinDescriptor,
};
pub use structural::{structural_endo_family, structural_rows, StructuralParams, StructuralRow};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::linalg::{kernel, Subspace, Vector};
use crate::exactalg::{ExactMatrix, Field, QMatrix, Rational, Scalar};
use crate::ideals::IdealDescriptor;
use crate::jordan::{JordanPair, PairKind, Side};
use crate::sampling::SeededRng;
use crate::svar::{svar_membership, Homotopy, Linearity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowPair {
    Rect,
    Sym,
    Asym,
    #[serde(rename = "hermC")]
    HermC,
    #[serde(rename = "hermH")]
    HermH,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    Any,
    /// `A = Aᵗ`.
    Sym,
    /// `A = −Aᵗ`.
    Asym,
    /// `A = A*`.
    Herm,
    /// `A = −A*`; over `ℂ` this is `i·Herm`.
    SkewHerm,
}

/// Shape of a parameter; `p × q` is the shape of `V⁺` (`n × n` for square pairs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamShape {
    QxP,
    QxQ,
    PxP,
    NxN,
    /// Column vector of length `n`.
    Vector,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub shape: ParamShape,
    pub constraint: Constraint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    /// `A X A`
    Sandwich,
    /// `A Xᵗ B`
    Transpose,
    /// `A X̄ Ā`
    ConjSandwich,
    /// `A X* B`
    Adjoint,
    /// `A X̄ A*`
    ConjCongruence,
    /// `A X A*`
    Congruence,
    /// `uuᵗ X A + A X uuᵗ`
    Point,
    /// `uu* X̄ Ā + A X̄ ūuᵗ`
    ConjPoint,
}

impl Formula {
    pub fn symbolic(self) -> &'static str {
        match self {
            Formula::Sandwich => "A X A",
            Formula::Transpose => "A X^t B",
            Formula::ConjSandwich => "A conj(X) conj(A)",
            Formula::Adjoint => "A X^* B",
            Formula::ConjCongruence => "A conj(X) A^*",
            Formula::Congruence => "A X A^*",
            Formula::Point => "u u^t X A + A X u u^t",
            Formula::ConjPoint => "u u^* conj(X) conj(A) + A conj(X) conj(u u^*)",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyRow {
    pub label: &'static str,
    pub pair: RowPair,
    pub fields: &'static [Field],
    pub sign: i8,
    pub antilinear: bool,
    pub formula: Formula,
    pub params: &'static [ParamSpec],
}

const fn spec(name: &'static str, shape: ParamShape, constraint: Constraint) -> ParamSpec {
    ParamSpec { name, shape, constraint }
}

use Constraint as C;
use ParamShape as S;

const A_QP: &[ParamSpec] = &[spec("A", S::QxP, C::Any)];
const AB_SYM: &[ParamSpec] = &[spec("A", S::QxQ, C::Sym), spec("B", S::PxP, C::Sym)];
const AB_ASYM: &[ParamSpec] = &[spec("A", S::QxQ, C::Asym), spec("B", S::PxP, C::Asym)];
const AB_HERM: &[ParamSpec] = &[spec("A", S::QxQ, C::Herm), spec("B", S::PxP, C::Herm)];
const A_SYM: &[ParamSpec] = &[spec("A", S::NxN, C::Sym)];
const A_ASYM: &[ParamSpec] = &[spec("A", S::NxN, C::Asym)];
const A_HERM: &[ParamSpec] = &[spec("A", S::NxN, C::Herm)];
const A_SKEW: &[ParamSpec] = &[spec("A", S::NxN, C::SkewHerm)];
const AU_SYM: &[ParamSpec] = &[spec("A", S::NxN, C::Sym), spec("u", S::Vector, C::Any)];
const AU_HERM: &[ParamSpec] = &[spec("A", S::NxN, C::Herm), spec("u", S::Vector, C::Any)];

const RC: &[Field] = &[Field::Real, Field::Complex];
const CX: &[Field] = &[Field::Complex];
const HQ: &[Field] = &[Field::Quaternion];

const fn row(
    label: &'static str,
    pair: RowPair,
    fields: &'static [Field],
    sign: i8,
    antilinear: bool,
    formula: Formula,
    params: &'static [ParamSpec],
) -> FamilyRow {
    FamilyRow { label, pair, fields, sign, antilinear, formula, params }
}

use Formula as F;
use RowPair as P;

static ROWS: &[FamilyRow] = &[
    row("1.a", P::Rect, RC, 1, false, F::Sandwich, A_QP),
    row("1.a′", P::Rect, RC, -1, false, F::Sandwich, A_QP),
    row("1.b", P::Rect, RC, 1, false, F::Transpose, AB_SYM),
    row("1.c", P::Rect, RC, 1, false, F::Transpose, AB_ASYM),
    row("1.A", P::Rect, CX, 1, true, F::ConjSandwich, A_QP),
    row("1.A′", P::Rect, CX, -1, true, F::ConjSandwich, A_QP),
    row("1.B", P::Rect, CX, 1, true, F::Adjoint, AB_HERM),
    row("1.3.a", P::Rect, HQ, 1, false, F::Sandwich, A_QP),
    row("1.3.a′", P::Rect, HQ, -1, false, F::Sandwich, A_QP),
    row("1.3.b", P::Rect, HQ, 1, false, F::Adjoint, AB_HERM),
    row("2.a", P::Sym, RC, 1, false, F::Sandwich, A_SYM),
    row("2.a′", P::Sym, RC, -1, false, F::Sandwich, A_SYM),
    row("2.b", P::Sym, RC, 1, false, F::Sandwich, A_ASYM),
    row("2.b′", P::Sym, RC, -1, false, F::Sandwich, A_ASYM),
    row("2.A", P::Sym, CX, 1, true, F::ConjSandwich, A_HERM),
    row("2.A′", P::Sym, CX, -1, true, F::ConjSandwich, A_HERM),
    row("3.a", P::Asym, RC, 1, false, F::Sandwich, A_ASYM),
    row("3.a′", P::Asym, RC, -1, false, F::Sandwich, A_ASYM),
    row("3.b", P::Asym, RC, 1, false, F::Sandwich, A_SYM),
    row("3.b′", P::Asym, RC, -1, false, F::Sandwich, A_SYM),
    row("3.c", P::Asym, RC, 1, false, F::Point, AU_SYM),
    row("3.c′", P::Asym, RC, -1, false, F::Point, AU_SYM),
    row("3.A", P::Asym, CX, 1, true, F::ConjSandwich, A_SKEW),
    row("3.A′", P::Asym, CX, -1, true, F::ConjSandwich, A_SKEW),
    row("3.B", P::Asym, CX, 1, true, F::ConjPoint, AU_HERM),
    row("3.B′", P::Asym, CX, -1, true, F::ConjPoint, AU_HERM),
    row("4.1.a", P::HermC, CX, 1, false, F::Sandwich, A_HERM),
    row("4.1.a′", P::HermC, CX, -1, false, F::Sandwich, A_HERM),
    row("4.1.b", P::HermC, CX, 1, true, F::ConjCongruence, A_SYM),
    row("4.1.b′", P::HermC, CX, -1, true, F::ConjCongruence, A_SYM),
    row("4.1.c", P::HermC, CX, 1, true, F::ConjCongruence, A_ASYM),
    row("4.1.c′", P::HermC, CX, -1, true, F::ConjCongruence, A_ASYM),
    row("4.2.a", P::HermH, HQ, 1, false, F::Sandwich, A_HERM),
    row("4.2.a′", P::HermH, HQ, -1, false, F::Sandwich, A_HERM),
    row("4.2.b", P::HermH, HQ, 1, false, F::Congruence, A_SKEW),
    row("4.2.b′", P::HermH, HQ, -1, false, F::Congruence, A_SKEW),
];

/// Rows over the split quaternions.
const OUT_OF_SCOPE: &[&str] = &["1.3.c", "4.3.a", "4.3.a′", "4.3.b", "4.3.b′"];

pub fn family_rows() -> &'static [FamilyRow] {
    ROWS
}

/// Accepts ASCII `'` for `′`.
pub fn normalize_label(label: &str) -> String {
    label.trim().replace('\'', "′")
}

pub fn family_row(label: &str) -> Result<&'static FamilyRow> {
    let l = normalize_label(label);
    if OUT_OF_SCOPE.contains(&l.as_str()) {
        return Err(Error::OutOfScopeScalar(format!("row {l} is over the split quaternions")));
    }
    ROWS.iter().find(|r| r.label == l).ok_or(Error::UnknownRow(l))
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FamilyParams {
    pub a: Option<ExactMatrix>,
    pub b: Option<ExactMatrix>,
    pub u: Option<Vec<Scalar>>,
}

impl FamilyParams {
    pub fn a(a: ExactMatrix) -> Self {
        FamilyParams { a: Some(a), ..Default::default() }
    }

    pub fn ab(a: ExactMatrix, b: ExactMatrix) -> Self {
        FamilyParams { a: Some(a), b: Some(b), u: None }
    }

    pub fn au(a: ExactMatrix, u: Vec<Scalar>) -> Self {
        FamilyParams { a: Some(a), b: None, u: Some(u) }
    }
}

/// `(p, q)` of `V⁺` (`(n, n)` for square pairs) after checking the pair fits the row.
pub fn row_dims(r: &FamilyRow, pair: &JordanPair) -> Result<(usize, usize)> {
    let (dims, field) = match (r.pair, &pair.kind) {
        (RowPair::Rect, PairKind::Rect { p, q, field }) => ((*p, *q), *field),
        (RowPair::Sym, PairKind::Sym { n, field }) | (RowPair::Asym, PairKind::Asym { n, field }) => ((*n, *n), *field),
        (RowPair::HermC, PairKind::HermC { n }) => ((*n, *n), Field::Complex),
        (RowPair::HermH, PairKind::HermH { n }) => ((*n, *n), Field::Quaternion),
        _ => return Err(Error::Descriptor(format!("row {} does not apply to {}", r.label, pair.kind))),
    };
    if !r.fields.contains(&field) {
        return Err(Error::Descriptor(format!("row {} does not apply to {}", r.label, pair.kind)));
    }
    Ok(dims)
}

fn param_shape(s: ParamShape, (p, q): (usize, usize)) -> (usize, usize) {
    match s {
        ParamShape::QxP => (q, p),
        ParamShape::QxQ => (q, q),
        ParamShape::PxP | ParamShape::NxN => (p, p),
        ParamShape::Vector => (p, 1),
    }
}

fn satisfies(a: &ExactMatrix, c: Constraint) -> bool {
    match c {
        Constraint::Any => true,
        Constraint::Sym => *a == a.transpose(),
        Constraint::Asym => *a == -&a.transpose(),
        Constraint::Herm => *a == a.conj_transpose(),
        Constraint::SkewHerm => *a == -&a.conj_transpose(),
    }
}

fn constraint_name(c: Constraint) -> &'static str {
    match c {
        Constraint::Any => "arbitrary",
        Constraint::Sym => "symmetric",
        Constraint::Asym => "skew-symmetric",
        Constraint::Herm => "Hermitian",
        Constraint::SkewHerm => "skew-Hermitian",
    }
}

fn fits_field(s: &Scalar, field: Field) -> bool {
    s.minimal_field() <= field
}

struct Resolved {
    a: ExactMatrix,
    b: Option<ExactMatrix>,
    u: Option<ExactMatrix>,
}

fn resolve(r: &FamilyRow, pair: &JordanPair, params: &FamilyParams) -> Result<Resolved> {
    let dims = row_dims(r, pair)?;
    let field = pair.field();
    let schema = |m: String| Error::Schema(format!("row {}: {m}", r.label));
    let mut a = None;
    let mut b = None;
    let mut u = None;
    for ps in r.params {
        let (rows, cols) = param_shape(ps.shape, dims);
        let m = match (ps.name, ps.shape) {
            (_, ParamShape::Vector) => {
                let v = params.u.as_ref().ok_or_else(|| schema("missing vector u".into()))?;
                if v.len() != rows {
                    return Err(schema(format!("u has length {}, expected {rows}", v.len())));
                }
                if !v.iter().all(|s| fits_field(s, field)) {
                    return Err(schema(format!("u has entries outside {}", field.symbol())));
                }
                ExactMatrix::from_fn(rows, 1, |i, _| v[i].clone().with_field(field))
            }
            (name, _) => {
                let m = if name == "A" { params.a.as_ref() } else { params.b.as_ref() };
                let m = m.ok_or_else(|| schema(format!("missing matrix {name}")))?;
                if m.shape() != (rows, cols) {
                    return Err(schema(format!("{name} is {}x{}, expected {rows}x{cols}", m.rows(), m.cols())));
                }
                if !m.entries().iter().all(|s| fits_field(s, field)) {
                    return Err(schema(format!("{name} has entries outside {}", field.symbol())));
                }
                let m = m.in_field(field);
                if !satisfies(&m, ps.constraint) {
                    return Err(schema(format!("{name} must be {}", constraint_name(ps.constraint))));
                }
                m
            }
        };
        match ps.name {
            "A" => a = Some(m),
            "B" => b = Some(m),
            _ => u = Some(m),
        }
    }
    Ok(Resolved { a: a.expect("every row has A"), b, u })
}

fn apply(formula: Formula, r: &Resolved, x: &ExactMatrix) -> ExactMatrix {
    let a = &r.a;
    match formula {
        Formula::Sandwich => &(a * x) * a,
        Formula::Transpose => &(a * &x.transpose()) * r.b.as_ref().expect("B"),
        Formula::ConjSandwich => &(a * &x.conj()) * &a.conj(),
        Formula::Adjoint => &(a * &x.conj_transpose()) * r.b.as_ref().expect("B"),
        Formula::ConjCongruence => &(a * &x.conj()) * &a.conj_transpose(),
        Formula::Congruence => &(a * x) * &a.conj_transpose(),
        Formula::Point => {
            let u = r.u.as_ref().expect("u");
            let uu = u * &u.transpose();
            &(&(&uu * x) * a) + &(&(a * x) * &uu)
        }
        Formula::ConjPoint => {
            let u = r.u.as_ref().expect("u");
            let uu = u * &u.conj_transpose();
            let xb = x.conj();
            &(&(&uu * &xb) * &a.conj()) + &(&(a * &xb) * &uu.conj())
        }
    }
}

/// The realified matrix of the row's map, without the membership certificate.
pub fn family_matrix(label: &str, pair: &JordanPair, params: &FamilyParams) -> Result<QMatrix> {
    let r = family_row(label)?;
    let res = resolve(r, pair, params)?;
    let m = pair.realify_map(Side::Plus, Side::Minus, |x| apply(r.formula, &res, x))?;
    Ok(if r.sign < 0 { m.scale(&-Rational::ONE) } else { m })
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyInstance {
    pub row: &'static str,
    pub alpha: Homotopy,
    pub rank: usize,
    pub image: Subspace,
    pub kernel: Subspace,
}

/// The row's homotopy; membership is certified and a failure is an error.
pub fn family_alpha(label: &str, pair: &JordanPair, params: &FamilyParams) -> Result<FamilyInstance> {
    let r = family_row(label)?;
    let m = family_matrix(label, pair, params)?;
    if let Some(triple) = svar_membership(pair, &m)?.witness {
        return Err(Error::NotMember { triple });
    }
    let image = Subspace::image_of(&m);
    let kernel = Subspace::kernel_of(&m);
    let alpha = Homotopy { matrix: m, linearity: if r.antilinear { Linearity::Antilinear } else { Linearity::Linear } };
    Ok(FamilyInstance { row: r.label, rank: image.dim(), alpha, image, kernel })
}

/// The pair of the row with `V⁺` of shape `p × q` (`q` ignored for square pairs).
pub fn row_pair(r: &FamilyRow, field: Field, p: usize, q: usize) -> Result<JordanPair> {
    if !r.fields.contains(&field) {
        return Err(Error::Descriptor(format!("row {} is not defined over {}", r.label, field.symbol())));
    }
    let kind = match r.pair {
        RowPair::Rect => PairKind::Rect { p, q, field },
        RowPair::Sym => PairKind::Sym { n: p, field },
        RowPair::Asym => PairKind::Asym { n: p, field },
        RowPair::HermC => PairKind::HermC { n: p },
        RowPair::HermH => PairKind::HermH { n: p },
    };
    JordanPair::from_kind(&kind)
}

fn random_scalar(rng: &mut SeededRng, field: Field) -> Scalar {
    let c: Vec<Rational> = (0..field.dim()).map(|_| Rational::int(rng.gen_range(-3..=3))).collect();
    Scalar::from_components(field, &c)
}

fn random_matrix(rng: &mut SeededRng, field: Field, rows: usize, cols: usize, c: Constraint) -> ExactMatrix {
    let m = ExactMatrix::from_fn(rows, cols, |_, _| random_scalar(rng, field));
    match c {
        Constraint::Any => m,
        Constraint::Sym => &m + &m.transpose(),
        Constraint::Asym => &m - &m.transpose(),
        Constraint::Herm => &m + &m.conj_transpose(),
        Constraint::SkewHerm if field == Field::Complex => {
            (&m + &m.conj_transpose()).mul_scalar_left(&Scalar::unit(Field::Complex, 1))
        }
        Constraint::SkewHerm => &m - &m.conj_transpose(),
    }
}

/// Shape `(p, q)` of draw `k` in a seeded table sweep: sizes cycle through
/// `min..=max_size` (at most 2 over `ℍ`), with `q` varying only on rect pairs.
pub fn draw_shape(r: &FamilyRow, field: Field, k: usize, max_size: usize) -> (usize, usize) {
    let top = if field == Field::Quaternion { max_size.min(2) } else { max_size };
    let lo = if r.pair == RowPair::Asym { 2 } else { 1 };
    let span = top.saturating_sub(lo) + 1;
    let p = lo + k % span;
    match r.pair {
        RowPair::Rect => (p, 1 + (k / span) % top),
        _ => (p, p),
    }
}

/// Random parameters for the row on `pair`: integer components in `[-3, 3]`,
/// constraints enforced by symmetrization.
pub fn sample_params(label: &str, pair: &JordanPair, rng: &mut SeededRng) -> Result<FamilyParams> {
    let r = family_row(label)?;
    let dims = row_dims(r, pair)?;
    let field = pair.field();
    let mut out = FamilyParams::default();
    for ps in r.params {
        let (rows, cols) = param_shape(ps.shape, dims);
        match ps.shape {
            ParamShape::Vector => out.u = Some((0..rows).map(|_| random_scalar(rng, field)).collect()),
            _ => {
                let m = random_matrix(rng, field, rows, cols, ps.constraint);
                if ps.name == "A" {
                    out.a = Some(m);
                } else {
                    out.b = Some(m);
                }
            }
        }
    }
    Ok(out)
}

/// Real spanning set of `ker(x ↦ Bx)` on `𝕂ⁿ`, as `𝕂`-vectors.
fn left_kernel(b: &ExactMatrix, field: Field) -> Vec<Vec<Scalar>> {
    let n = b.cols();
    let k = field.dim();
    let units = field.units();
    let mut cols = Vec::new();
    for m in 0..n {
        for u in &units {
            let e = ExactMatrix::from_fn(n, 1, |i, _| if i == m { u.clone() } else { Scalar::zero(field) });
            let img = b * &e;
            cols.push((0..b.rows()).flat_map(|i| img.get(i, 0).clone().with_field(field).components().to_vec()).collect::<Vector>());
        }
    }
    let mat = QMatrix::from_cols(b.rows() * k, &cols);
    kernel(&mat).into_iter().map(|x| (0..n).map(|i| Scalar::from_components(field, &x[i * k..(i + 1) * k])).collect()).collect()
}

fn columns(a: &ExactMatrix) -> Vec<Vec<Scalar>> {
    (0..a.cols()).map(|j| a.col(j)).collect()
}

/// Inner ideal that `Im α` should equal, for rows whose image is classified:
/// `I_{ker B, Im A}` for 1.b, `I_{Im A}` for the `AXA` rows of square pairs,
/// `K_u` for the point rows (containment; equality once dimensions agree).
pub fn expected_image(label: &str, pair: &JordanPair, params: &FamilyParams) -> Result<Option<IdealDescriptor>> {
    let r = family_row(label)?;
    let res = resolve(r, pair, params)?;
    let field = pair.field();
    Ok(match r.label.trim_end_matches('′') {
        "1.b" if field != Field::Quaternion => {
            let b = res.b.as_ref().expect("B");
            Some(IdealDescriptor::Rect { a: left_kernel(b, field), b: columns(&res.a) })
        }
        "2.a" | "3.a" | "4.1.a" | "4.2.a" => Some(IdealDescriptor::Principal { b: columns(&res.a) }),
        "3.c" | "3.B" => {
            let u = res.u.as_ref().expect("u").col(0);
            if u.iter().all(Scalar::is_zero) {
                None
            } else {
                Some(IdealDescriptor::Point { u })
            }
        }
        _ => None,
    })
}

#[cfg(test)]
mod tests;
