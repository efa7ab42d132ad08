//! Constructors for the classified inner ideals.

use serde::Serialize;

use super::{is_inner, InnerIdeal};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{dot, kernel, Subspace, Vector};
use crate::exactalg::{ExactMatrix, Field, Model, QMatrix, Rational, Scalar, Space};
use crate::jordan::{JordanPair, PairKind, Side};

/// Descriptor of a classified inner ideal. Vectors live in `𝕂ⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum IdealDescriptor {
    /// `I_{a,b} = {f : a ⊆ ker f, Im f ⊆ b}` in `Hom(F, E)`.
    Rect { a: Vec<Vec<Scalar>>, b: Vec<Vec<Scalar>> },
    /// `I_b = {f = ±f*, Im f ⊆ b}`.
    Principal { b: Vec<Vec<Scalar>> },
    /// `K_u = {f = −fᵗ, f(u^⊥) ⊆ 𝕂u}`.
    Point { u: Vec<Scalar> },
    /// A β-isotropic subspace of a spin factor.
    Isotropic { basis: Vec<Vector> },
}

fn column(field: Field, v: &[Scalar]) -> ExactMatrix {
    ExactMatrix::from_fn(v.len(), 1, |i, _| v[i].clone().with_field(field))
}

fn check_len(n: usize, vs: &[Vec<Scalar>]) -> Result<()> {
    match vs.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::Descriptor(format!("vector of length {} in {n}-space", v.len()))),
        None => Ok(()),
    }
}

/// Real spanning set of the right `𝕂`-span of `vs`.
fn right_span(field: Field, vs: &[Vec<Scalar>]) -> Vec<ExactMatrix> {
    let units = field.units();
    vs.iter().flat_map(|v| units.iter().map(move |u| column(field, v).mul_scalar_right(u))).collect()
}

/// Real spanning set of `{c ∈ 𝕂ⁿ : a* c = 0 for all a}`.
fn k_perp(field: Field, n: usize, vs: &[Vec<Scalar>]) -> Vec<ExactMatrix> {
    let k = field.dim();
    let units = field.units();
    let mut rows: Vec<Vector> = Vec::new();
    for a in vs {
        let mut block = vec![vec![Rational::ZERO; n * k]; k];
        for m in 0..n {
            let ca = a[m].clone().with_field(field).conj();
            for (c, u) in units.iter().enumerate() {
                let val = &ca * u;
                for (r, row) in block.iter_mut().enumerate() {
                    row[m * k + c] = val.components()[r].clone();
                }
            }
        }
        rows.extend(block);
    }
    let m = if rows.is_empty() { QMatrix::zeros(0, n * k) } else { QMatrix::from_rows(rows) };
    kernel(&m)
        .into_iter()
        .map(|x| ExactMatrix::from_fn(n, 1, |i, _| Scalar::from_components(field, &x[i * k..(i + 1) * k])))
        .collect()
}

fn span_of(space: &Space, elems: &[ExactMatrix]) -> Result<Subspace> {
    let coords: Result<Vec<Vector>> = elems.iter().map(|e| space.coords(e)).collect();
    Ok(Subspace::span(space.dim(), &coords?))
}

fn mismatch(d: &IdealDescriptor, p: &JordanPair) -> Error {
    let name = match d {
        IdealDescriptor::Rect { .. } => "rect",
        IdealDescriptor::Principal { .. } => "principal",
        IdealDescriptor::Point { .. } => "point",
        IdealDescriptor::Isotropic { .. } => "isotropic",
    };
    Error::Descriptor(format!("{name} ideal does not apply to {}", p.kind))
}

/// Builds the inner ideal on `side`. Plus-side ideals are built in the opposite pair.
pub fn make_inner_ideal(p: &JordanPair, side: Side, desc: &IdealDescriptor) -> Result<InnerIdeal> {
    if side == Side::Plus {
        let mut i = make_inner_ideal(&p.opposite(), Side::Minus, desc)?;
        i.side = Side::Plus;
        return Ok(i);
    }
    let space = match desc {
        IdealDescriptor::Isotropic { basis } => isotropic(p, basis)?,
        _ => {
            let sp = p.space(Side::Minus).ok_or_else(|| mismatch(desc, p))?;
            matrix_ideal(sp, desc)?.ok_or_else(|| mismatch(desc, p))?
        }
    };
    if !is_inner(p, Side::Minus, &space) {
        return Err(Error::Degenerate(format!("constructed subspace for {} is not inner", p.kind)));
    }
    Ok(InnerIdeal { side: Side::Minus, space, meta: Some(desc.clone()) })
}

/// `None` when the descriptor does not fit the model.
fn matrix_ideal(sp: &Space, desc: &IdealDescriptor) -> Result<Option<Subspace>> {
    let field = sp.field;
    let elems: Vec<ExactMatrix> = match (desc, sp.model) {
        (IdealDescriptor::Rect { a, b }, Model::Rect { rows, cols }) => {
            check_len(cols, a)?;
            check_len(rows, b)?;
            let bs = right_span(field, b);
            let cs = k_perp(field, cols, a);
            bs.iter().flat_map(|x| cs.iter().map(move |c| x * &c.conj_transpose())).collect()
        }
        (IdealDescriptor::Principal { b }, Model::Sym { n } | Model::Asym { n } | Model::Herm { n }) => {
            check_len(n, b)?;
            let bs = right_span(field, b);
            let adj = |x: &ExactMatrix| if matches!(sp.model, Model::Herm { .. }) { x.conj_transpose() } else { x.transpose() };
            let mut out = Vec::new();
            for x in &bs {
                for y in &bs {
                    let (xy, yx) = (x * &adj(y), y * &adj(x));
                    out.push(if matches!(sp.model, Model::Asym { .. }) { &xy - &yx } else { &xy + &yx });
                }
            }
            out
        }
        (IdealDescriptor::Point { u }, Model::Asym { n }) => {
            check_len(n, std::slice::from_ref(u))?;
            if u.iter().all(Scalar::is_zero) {
                return Err(Error::Descriptor("point space needs u != 0".into()));
            }
            let uc = column(field, u);
            let ws: Vec<Vec<Scalar>> =
                (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one(field) } else { Scalar::zero(field) }).collect()).collect();
            right_span(field, &ws).iter().map(|w| &(&uc * &w.transpose()) - &(w * &uc.transpose())).collect()
        }
        _ => return Ok(None),
    };
    span_of(sp, &elems).map(Some)
}

fn isotropic(p: &JordanPair, basis: &[Vector]) -> Result<Subspace> {
    if !matches!(p.kind, PairKind::Spin { .. }) {
        return Err(mismatch(&IdealDescriptor::Isotropic { basis: vec![] }, p));
    }
    let g = p.spin_form().ok_or_else(|| Error::Precondition("spin pair without form".into()))?;
    let n = g.rows();
    if let Some(v) = basis.iter().find(|v| v.len() != n) {
        return Err(Error::Descriptor(format!("vector of length {} in {n}-space", v.len())));
    }
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let b = dot(&basis[i], &g.mul_vec(&basis[j]));
            if !b.is_zero() {
                return Err(Error::NotIsotropic(i, j, b.to_string()));
            }
        }
    }
    Subspace::from_independent(n, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{complement_construct, kern, kern_is_orthocomplement};

    fn v(field: Field, x: &[i64]) -> Vec<Scalar> {
        x.iter().map(|&a| Scalar::int(field, a)).collect()
    }

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    #[test]
    fn point_space_in_asym3() {
        let p = JordanPair::parse("asym:R:3").unwrap();
        let k = make_inner_ideal(&p, Side::Minus, &IdealDescriptor::Point { u: v(Field::Real, &[0, 0, 1]) }).unwrap();
        assert_eq!(k.dim(), 2);
        let sp = p.space(Side::Minus).unwrap();
        for b in k.space.basis() {
            let m = sp.element(b).unwrap();
            for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                assert!(m.get(i, j).is_zero());
            }
        }
        // K_u is the kernel of I_{u⊥}
        let i = make_inner_ideal(&p, Side::Plus, &IdealDescriptor::Principal { b: vec![v(Field::Real, &[1, 0, 0]), v(Field::Real, &[0, 1, 0])] })
            .unwrap();
        assert_eq!(kern(&p, &i), k.space);
        let c = kern_is_orthocomplement(&p, &k).unwrap();
        assert!(c.equal && c.routes_agree);
        assert_eq!(c.kern.dim(), 1);
        assert!(complement_construct(&p, &k).is_ok());
    }

    #[test]
    fn point_space_dimension() {
        for (n, field) in [(4, Field::Real), (3, Field::Complex)] {
            let p = JordanPair::from_kind(&PairKind::Asym { n, field }).unwrap();
            let k = make_inner_ideal(&p, Side::Minus, &IdealDescriptor::Point { u: v(field, &[1, 2, 0, 1][..n]) }).unwrap();
            assert_eq!(k.dim(), (n - 1) * field.dim());
        }
        let p = JordanPair::parse("asym:R:3").unwrap();
        assert!(make_inner_ideal(&p, Side::Minus, &IdealDescriptor::Point { u: v(Field::Real, &[0, 0, 0]) }).is_err());
    }

    #[test]
    fn spin_isotropic_line() {
        let p = JordanPair::parse("spin:2,1").unwrap();
        let i = make_inner_ideal(&p, Side::Minus, &IdealDescriptor::Isotropic { basis: vec![vec![q(1), q(0), q(1)]] }).unwrap();
        assert_eq!(i.dim(), 1);
        let e = make_inner_ideal(&p, Side::Minus, &IdealDescriptor::Isotropic { basis: vec![vec![q(1), q(0), q(0)]] });
        assert!(matches!(e, Err(Error::NotIsotropic(0, 0, _))));
        let r = JordanPair::parse("rect:R:2x2").unwrap();
        assert!(matches!(
            make_inner_ideal(&r, Side::Minus, &IdealDescriptor::Isotropic { basis: vec![] }),
            Err(Error::Descriptor(_))
        ));
        let c = kern_is_orthocomplement(&p, &i).unwrap();
        assert!(c.equal);
    }

    #[test]
    fn sym_principal_line_is_image_of_q() {
        let p = JordanPair::parse("sym:R:2").unwrap();
        let i = make_inner_ideal(&p, Side::Minus, &IdealDescriptor::Principal { b: vec![v(Field::Real, &[1, 0])] }).unwrap();
        let e11 = p.coords(Side::Plus, &ExactMatrix::from_ints_in(Field::Real, &[&[1, 0], &[0, 0]])).unwrap();
        let qe = p.quadratic_operator(Side::Plus, &e11).unwrap();
        assert_eq!(Subspace::image_of(&qe), i.space);
        assert!(matches!(
            make_inner_ideal(&p, Side::Minus, &IdealDescriptor::Point { u: v(Field::Real, &[1, 0]) }),
            Err(Error::Descriptor(_))
        ));
    }

    #[test]
    fn quaternionic_rect_ideal() {
        let p = JordanPair::parse("rect:H:2x2").unwrap();
        let h = Field::Quaternion;
        let b = vec![vec![Scalar::one(h), Scalar::unit(h, 2)]];
        let i = make_inner_ideal(&p, Side::Minus, &IdealDescriptor::Rect { a: vec![v(h, &[0, 1])], b }).unwrap();
        assert_eq!(i.dim(), 4);
        assert!(kern_is_orthocomplement(&p, &i).unwrap().equal);
        assert!(complement_construct(&p, &i).is_ok());
    }

    #[test]
    fn herm_principal() {
        let p = JordanPair::parse("hermC:3").unwrap();
        let c = Field::Complex;
        let b = vec![vec![Scalar::one(c), Scalar::unit(c, 1), Scalar::zero(c)], v(c, &[0, 0, 1])];
        let i = make_inner_ideal(&p, Side::Minus, &IdealDescriptor::Principal { b }).unwrap();
        assert_eq!(i.dim(), 4);
        assert!(kern_is_orthocomplement(&p, &i).unwrap().equal);
    }
}
