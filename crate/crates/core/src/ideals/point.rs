//! Point spaces `K_u ⊂ Asym(n, 𝕂)` and their projective triple structure.

use serde::Serialize;

use super::{cartan_chart, is_inner, make_inner_ideal, IdealDescriptor, InnerIdeal};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{Subspace, Vector};
use crate::exactalg::{ExactMatrix, QMatrix, Scalar, Space};
use crate::jordan::{cartan_jts, JordanPair, PairKind, Side};
use crate::tensor::TripleTensor;

#[derive(Debug, Clone, Serialize)]
pub struct PointSpaceReport {
    pub ideal: InnerIdeal,
    /// `T⁻(x, τ⁻¹y, z)` on `K_u` in the echelon basis of the ideal.
    #[serde(skip)]
    pub induced: TripleTensor,
    /// `Q(f)g ∈ 𝕂f` for basis `f ∈ K_u` and basis `g ∈ V⁺`.
    pub proportional: bool,
    /// `𝕂f` is inner for every basis `f`.
    pub lines_inner: bool,
    /// For `u ∈ 𝕂eₙ`: the induced product matches `M(1, n−1; 𝕂)` under `f ↦ f eₙ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projective_isomorphism: Option<bool>,
}

fn k_line(space: &Space, f: &ExactMatrix) -> Result<Subspace> {
    let c: Result<Vec<Vector>> = space.field.units().iter().map(|u| space.coords(&f.mul_scalar_right(u))).collect();
    Ok(Subspace::span(space.dim(), &c?))
}

pub fn point_space_structure(p: &JordanPair, u: &[Scalar]) -> Result<PointSpaceReport> {
    let n = match p.kind {
        PairKind::Asym { n, .. } => n,
        _ => return Err(Error::Descriptor(format!("point spaces live in asym pairs, not {}", p.kind))),
    };
    if u.iter().all(Scalar::is_zero) {
        return Err(Error::Degenerate("point space needs u != 0".into()));
    }
    let ideal = make_inner_ideal(p, Side::Minus, &IdealDescriptor::Point { u: u.to_vec() })?;
    let sm = p.space(Side::Minus).expect("asym pairs have a matrix model").clone();
    let dplus = p.dim(Side::Plus);

    let mut proportional = true;
    let mut lines_inner = true;
    for f in ideal.space.basis() {
        let line = k_line(&sm, &sm.element(f)?)?;
        let qf = p.quadratic_operator(Side::Minus, f)?;
        proportional &= (0..dplus).all(|g| line.contains(&qf.col(g)));
        lines_inner &= is_inner(p, Side::Minus, &line);
    }

    let chart = cartan_chart(p, &ideal)?;
    let tau = p.cartan().expect("chart needs a Cartan involution");
    let tau_inv = crate::exactalg::linalg::inverse(tau).expect("invertible");
    let to_j = &(&chart.pi_j * &tau_inv) * &chart.iota_i;
    let induced = chart.sub.tensor(Side::Minus).with_middle(&to_j);

    let projective_isomorphism = if u[..n - 1].iter().all(Scalar::is_zero) && n >= 2 {
        let target = Space::rect(1, n - 1, sm.field);
        let cols: Result<Vec<Vector>> = ideal
            .space
            .basis()
            .iter()
            .map(|f| {
                let m = sm.element(f)?;
                let x = ExactMatrix::from_fn(1, n - 1, |_, j| m.get(j, n - 1).clone());
                target.coords(&x)
            })
            .collect();
        let l = QMatrix::from_cols(target.dim(), &cols?);
        let proj = cartan_jts(&JordanPair::rect(1, n - 1, sm.field))?;
        Some(induced.then(&l) == proj.precompose(&l, &l, &l))
    } else {
        None
    };

    Ok(PointSpaceReport { ideal, induced, proportional, lines_inner, projective_isomorphism })
}
