//! The associative pair `(M(p,q;K), M(q,p;K))` with `⟨x,y,z⟩ = xyz`.

use serde::Serialize;

use super::{sandwich_violation, Membership};
use crate::error::{shape_err, Result};
use crate::exactalg::{Field, QMatrix, Space};
use crate::jordan::{JordanPair, Side};
use crate::tensor::TripleTensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AssocMode {
    /// `(αu) v (αw) = α(u (αv) w)`.
    Standard,
    /// `α⟨x, αy, z⟩ = ⟨αz, y, αx⟩`.
    Opposite,
}

#[derive(Debug, Clone)]
pub struct AssocPair {
    pub plus: Space,
    pub minus: Space,
    pub a_plus: TripleTensor,
    pub a_minus: TripleTensor,
    /// The symmetrized pair `xyz + zyx`.
    pub jordan: JordanPair,
}

fn product_tensor(a: &Space, b: &Space) -> TripleTensor {
    let (ab, bb) = (a.basis(), b.basis());
    TripleTensor::from_fn([a.dim(), b.dim(), a.dim(), a.dim()], |i, j, k| {
        a.coords(&(&(&ab[i] * &bb[j]) * &ab[k])).expect("product stays in the space")
    })
}

impl AssocPair {
    pub fn new(p: usize, q: usize, field: Field) -> Self {
        let plus = Space::rect(p, q, field);
        let minus = Space::rect(q, p, field);
        AssocPair {
            a_plus: product_tensor(&plus, &minus),
            a_minus: product_tensor(&minus, &plus),
            jordan: JordanPair::rect(p, q, field),
            plus,
            minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssocMembership {
    pub assoc: Membership,
    /// Membership for the symmetrized Jordan pair.
    pub jordan: Membership,
}

/// Membership in the associative structure variety in the given mode, together
/// with the (implied) Jordan membership.
pub fn assoc_svar_membership(a: &AssocPair, alpha: &QMatrix, mode: AssocMode) -> Result<AssocMembership> {
    let want = (a.minus.dim(), a.plus.dim());
    if alpha.shape() != want {
        return Err(shape_err(format!("{}x{}", want.0, want.1), format!("{}x{}", alpha.rows(), alpha.cols())));
    }
    let w = sandwich_violation(&a.a_minus, &a.a_plus, alpha, alpha, mode == AssocMode::Opposite);
    let j = super::svar_membership(&a.jordan, alpha)?;
    debug_assert_eq!(a.jordan.dim(Side::Plus), a.plus.dim());
    Ok(AssocMembership { assoc: Membership { member: w.is_none(), witness: w }, jordan: j })
}
