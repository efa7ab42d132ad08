//! Inner ideals, their kernels and complements, and the correspondence between
//! `Svar(I)` and the part of `Svar(V)` with image in `I`.

mod construct;
mod point;

pub use construct::{make_inner_ideal, IdealDescriptor};
pub use point::{point_space_structure, PointSpaceReport};

use serde::Serialize;

use crate::error::{shape_err, Error, Result};
use crate::exactalg::linalg::{inverse, unit_vec, Subspace, Vector};
use crate::exactalg::QMatrix;
use crate::jordan::{trace_form, JordanPair, Side};
use crate::svar::svar_membership;
use crate::tensor::TripleTensor;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InnerIdeal {
    pub side: Side,
    pub space: Subspace,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<IdealDescriptor>,
}

impl InnerIdeal {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

fn is_inner(p: &JordanPair, side: Side, sub: &Subspace) -> bool {
    let t = p.tensor(side);
    let e = p.dim(side.opposite());
    let b = sub.basis();
    for i in 0..b.len() {
        for j in i..b.len() {
            for k in 0..e {
                if !sub.contains(&t.eval(&b[i], &unit_vec(e, k), &b[j])) {
                    return false;
                }
            }
        }
    }
    true
}

/// `T(I, V_opp, I) ⊆ I` for the span of an independent family.
pub fn inner_ideal_check(p: &JordanPair, side: Side, basis: &[Vector]) -> Result<bool> {
    let d = p.dim(side);
    if let Some(v) = basis.iter().find(|v| v.len() != d) {
        return Err(shape_err(d, v.len()));
    }
    let sub = Subspace::from_independent(d, basis)?;
    Ok(is_inner(p, side, &sub))
}

/// Wraps a subspace after verifying it is inner.
pub fn inner_ideal(p: &JordanPair, side: Side, space: Subspace) -> Result<InnerIdeal> {
    if space.ambient() != p.dim(side) {
        return Err(shape_err(p.dim(side), space.ambient()));
    }
    if !is_inner(p, side, &space) {
        return Err(Error::Precondition("subspace is not an inner ideal".into()));
    }
    Ok(InnerIdeal { side, space, meta: None })
}

/// `Im α` as an inner ideal of `V⁻`.
pub fn image_ideal(p: &JordanPair, alpha: &QMatrix) -> Result<InnerIdeal> {
    if alpha.shape() != (p.dim(Side::Minus), p.dim(Side::Plus)) {
        return Err(shape_err(format!("{}x{}", p.dim(Side::Minus), p.dim(Side::Plus)), format!("{:?}", alpha.shape())));
    }
    inner_ideal(p, Side::Minus, Subspace::image_of(alpha))
}

/// `Kern I = {x : T(I, x, I) = 0}` as the joint kernel of `x ↦ T(b_i, x, b_j)`.
pub fn kern(p: &JordanPair, ideal: &InnerIdeal) -> Subspace {
    let side = ideal.side;
    let e = p.dim(side.opposite());
    let b = ideal.space.basis();
    let mut rows: Vec<Vector> = Vec::new();
    for i in 0..b.len() {
        for j in i..b.len() {
            let m = p.polarized_quadratic(side, &b[i], &b[j]);
            rows.extend(m.to_rows());
        }
    }
    Subspace::span(e, &rows).annihilator()
}

/// `⋂ ker Q(y)` over basis vectors of `I` and their pairwise sums.
pub fn kern_via_quadratic(p: &JordanPair, ideal: &InnerIdeal) -> Result<Subspace> {
    let side = ideal.side;
    let b = ideal.space.basis();
    let mut acc = Subspace::full(p.dim(side.opposite()));
    let mut probes: Vec<Vector> = b.to_vec();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            probes.push(crate::exactalg::linalg::add_vec(&b[i], &b[j]));
        }
    }
    for y in &probes {
        acc = acc.intersect(&Subspace::kernel_of(&p.quadratic_operator(side, y)?));
    }
    Ok(acc)
}

/// Trace-form orthogonal of `I` in the opposite space.
pub fn orthogonal(p: &JordanPair, ideal: &InnerIdeal) -> Subspace {
    let g = trace_form(p);
    let rows: Vec<Vector> = ideal
        .space
        .basis()
        .iter()
        .map(|b| match ideal.side {
            // x ∈ V⁺ with xᵗ G b = 0
            Side::Minus => g.mul_vec(b),
            Side::Plus => g.transpose().mul_vec(b),
        })
        .collect();
    Subspace::span(p.dim(ideal.side.opposite()), &rows).annihilator()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernCertificate {
    pub kern: Subspace,
    pub perp: Subspace,
    /// `Kern I = I^⊥`.
    pub equal: bool,
    /// The two routes to `Kern I` agree.
    pub routes_agree: bool,
}

pub fn kern_is_orthocomplement(p: &JordanPair, ideal: &InnerIdeal) -> Result<KernCertificate> {
    let k = kern(p, ideal);
    let q = kern_via_quadratic(p, ideal)?;
    let perp = orthogonal(p, ideal);
    Ok(KernCertificate { equal: k == perp, routes_agree: k == q, kern: k, perp })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplementCertificate {
    pub ideal_i: InnerIdeal,
    pub ideal_j: InnerIdeal,
    pub kern_i: Subspace,
    pub kern_j: Subspace,
    /// `V_I = I ⊕ Kern J`.
    pub i_sum: bool,
    /// `V_J = J ⊕ Kern I`.
    pub j_sum: bool,
}

impl ComplementCertificate {
    pub fn passed(&self) -> bool {
        self.i_sum && self.j_sum
    }
}

pub fn complement_check(p: &JordanPair, i: &InnerIdeal, j: &InnerIdeal) -> Result<ComplementCertificate> {
    if i.side == j.side {
        return Err(Error::Precondition("complement must live on the opposite side".into()));
    }
    for x in [i, j] {
        if !is_inner(p, x.side, &x.space) {
            return Err(Error::Precondition("subspace is not an inner ideal".into()));
        }
    }
    let kern_i = kern(p, i);
    let kern_j = kern(p, j);
    Ok(ComplementCertificate {
        i_sum: i.space.is_complement_of(&kern_j),
        j_sum: j.space.is_complement_of(&kern_i),
        ideal_i: i.clone(),
        ideal_j: j.clone(),
        kern_i,
        kern_j,
    })
}

fn cartan(p: &JordanPair) -> Result<&QMatrix> {
    p.cartan().ok_or_else(|| Error::Precondition(format!("{} has no Cartan involution", p.label)))
}

/// The image of `I` under the Cartan involution, certified as a complement.
pub fn complement_construct(p: &JordanPair, ideal: &InnerIdeal) -> Result<InnerIdeal> {
    let tau = cartan(p)?;
    let map = match ideal.side {
        Side::Minus => inverse(tau).ok_or_else(|| Error::Precondition("Cartan involution is singular".into()))?,
        Side::Plus => tau.clone(),
    };
    let j = InnerIdeal { side: ideal.side.opposite(), space: ideal.space.image_under(&map), meta: None };
    let c = complement_check(p, ideal, &j)?;
    if !c.passed() {
        return Err(Error::Degenerate("Cartan image is not a complement".into()));
    }
    Ok(j)
}

/// `V⁺ = J ⊕ Kern I`, `V⁻ = I ⊕ Kern J` with projections, inclusions and the
/// sub-pair `(J, I)`.
#[derive(Debug, Clone)]
pub struct IdealChart {
    pub i: InnerIdeal,
    pub j: InnerIdeal,
    pub kern_i: Subspace,
    pub kern_j: Subspace,
    /// `V⁻ → I` along `Kern J`, in `I`-coordinates.
    pub pi_i: QMatrix,
    /// `V⁺ → J` along `Kern I`, in `J`-coordinates.
    pub pi_j: QMatrix,
    pub iota_i: QMatrix,
    pub iota_j: QMatrix,
    pub sub: JordanPair,
}

fn restrict_pair(p: &JordanPair, j: &Subspace, i: &Subspace) -> Result<JordanPair> {
    let restrict = |t: &TripleTensor, outer: &Subspace, inner: &Subspace| -> Result<TripleTensor> {
        let (ob, ib) = (outer.basis(), inner.basis());
        let mut err = None;
        let r = TripleTensor::from_fn([ob.len(), ib.len(), ob.len(), ob.len()], |a, b, c| {
            match outer.coords(&t.eval(&ob[a], &ib[b], &ob[c])) {
                Some(v) => v,
                None => {
                    err = Some(Error::Precondition("subspace is not an inner ideal".into()));
                    vec![crate::exactalg::Rational::ZERO; ob.len()]
                }
            }
        });
        err.map_or(Ok(r), Err)
    };
    let tp = restrict(p.tensor(Side::Plus), j, i)?;
    let tm = restrict(p.tensor(Side::Minus), i, j)?;
    JordanPair::from_tensors(&format!("({})|ideal", p.label), tp, tm, None)
}

/// Chart for an inner ideal `I ⊆ V⁻` and a complement `J ⊆ V⁺`.
pub fn ideal_chart(p: &JordanPair, i: &InnerIdeal, j: &InnerIdeal) -> Result<IdealChart> {
    if i.side != Side::Minus || j.side != Side::Plus {
        return Err(Error::Precondition("chart expects I in V- and J in V+".into()));
    }
    let c = complement_check(p, i, j)?;
    if !c.passed() {
        return Err(Error::Precondition("J is not a complement of I".into()));
    }
    Ok(IdealChart {
        pi_i: i.space.projection_along(&c.kern_j)?,
        pi_j: j.space.projection_along(&c.kern_i)?,
        iota_i: i.space.inclusion(),
        iota_j: j.space.inclusion(),
        sub: restrict_pair(p, &j.space, &i.space)?,
        i: i.clone(),
        j: j.clone(),
        kern_i: c.kern_i,
        kern_j: c.kern_j,
    })
}

/// Chart with the Cartan complement `J = τ⁻¹(I)`.
pub fn cartan_chart(p: &JordanPair, i: &InnerIdeal) -> Result<IdealChart> {
    let j = complement_construct(p, i)?;
    ideal_chart(p, i, &j)
}

impl IdealChart {
    /// `φ(γ) = ι_I γ π_J` for `γ ∈ Svar(J, I)`.
    pub fn phi(&self, gamma: &QMatrix) -> Result<QMatrix> {
        let m = svar_membership(&self.sub, gamma)?;
        if let Some(triple) = m.witness {
            return Err(Error::NotMember { triple });
        }
        Ok(&(&self.iota_i * gamma) * &self.pi_j)
    }

    /// `ψ(α) = π_I α ι_J`.
    pub fn psi(&self, alpha: &QMatrix) -> QMatrix {
        &(&self.pi_i * alpha) * &self.iota_j
    }

    /// `Im α ⊆ I` and `Kern I ⊆ ker α`.
    pub fn in_phi_image(&self, alpha: &QMatrix) -> bool {
        self.i.space.contains_space(&Subspace::image_of(alpha)) && Subspace::kernel_of(alpha).contains_space(&self.kern_i)
    }

    /// `β = ι_J γ π_I` on the opposite side.
    pub fn phi_opposite(&self, gamma: &QMatrix) -> QMatrix {
        &(&self.iota_j * gamma) * &self.pi_i
    }
}
