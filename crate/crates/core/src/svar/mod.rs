//! Structure varieties, homotope triple systems and structural transformations.

mod assoc;
mod axioms;
mod polarized;

pub use assoc::{assoc_svar_membership, AssocMembership, AssocMode, AssocPair};
pub use axioms::{check_triple_axioms, TripleKind};
pub use polarized::{embed_structural, exchange_map, polarized_pair};

use serde::Serialize;

use crate::error::{shape_err, Error, Result};
use crate::exactalg::linalg::{add_vec, unit_vec, Vector};
use crate::exactalg::rational::common_denominator;
use crate::exactalg::{QMatrix, Rational};
use crate::jordan::{trace_form, JordanPair, Side};
use crate::tensor::TripleTensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Linearity {
    Linear,
    Antilinear,
}

/// A map `V⁺ → V⁻` in realified coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Homotopy {
    pub matrix: QMatrix,
    pub linearity: Linearity,
}

impl Homotopy {
    pub fn new(matrix: QMatrix) -> Self {
        Homotopy { matrix, linearity: Linearity::Linear }
    }

    pub fn antilinear(matrix: QMatrix) -> Self {
        Homotopy { matrix, linearity: Linearity::Antilinear }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// First basis triple `(u, v, w)` violating the identity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[usize; 3]>,
}

fn row_support(m: &QMatrix) -> Vec<Vec<(usize, Rational)>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).filter(|&c| !m.get(r, c).is_zero()).map(|c| (c, m.get(r, c).clone())).collect())
        .collect()
}

/// First basis triple `(u, v, w)` with `tw(g u, v, g w) ≠ g tv(u, h v, w)`
/// (or `tw(g w, v, g u)` on the left when `swap_outer`).
///
/// Shapes: `g: A → B`, `h: C → D`, `tv: A × D × A → A`, `tw: B × C × B → B`.
pub(crate) fn sandwich_violation(
    tw: &TripleTensor,
    tv: &TripleTensor,
    g: &QMatrix,
    h: &QMatrix,
    swap_outer: bool,
) -> Option<[usize; 3]> {
    let da = g.cols();
    let db = g.rows();
    let dc = h.cols();
    let gr = row_support(g);
    let gcols: Vec<Vec<(usize, Rational)>> =
        (0..da).map(|c| (0..db).filter(|&r| !g.get(r, c).is_zero()).map(|r| (r, g.get(r, c).clone())).collect()).collect();
    let mut lhs: Vec<Vec<Rational>> = vec![Vec::new(); da * da];
    let mut mid: Vec<Vec<Rational>> = vec![Vec::new(); da * da];
    for v in 0..dc {
        for slot in lhs.iter_mut().chain(mid.iter_mut()) {
            slot.clear();
        }
        // tw(g u, v, g w) = Σ g[a][u] g[b][w] tw(a, v, b)
        for &(a, b) in tw.middle_support(v) {
            let e = tw.entry(a, v, b);
            for (u, gau) in &gr[a] {
                for (w, gbw) in &gr[b] {
                    let (x, y) = if swap_outer { (*w, *u) } else { (*u, *w) };
                    let slot = &mut lhs[x * da + y];
                    if slot.is_empty() {
                        *slot = vec![Rational::ZERO; db];
                    }
                    let s = gau * gbw;
                    for (m, val) in e {
                        slot[*m] += &(&s * val);
                    }
                }
            }
        }
        // tv(u, h v, w)
        for k in 0..h.rows() {
            let s = h.get(k, v);
            if s.is_zero() {
                continue;
            }
            for &(u, w) in tv.middle_support(k) {
                let slot = &mut mid[u * da + w];
                if slot.is_empty() {
                    *slot = vec![Rational::ZERO; da];
                }
                for (m, val) in tv.entry(u, k, w) {
                    slot[*m] += &(s * val);
                }
            }
        }
        for u in 0..da {
            for w in 0..da {
                let mut rhs = vec![Rational::ZERO; db];
                let y = &mid[u * da + w];
                for (m, ym) in y.iter().enumerate() {
                    if ym.is_zero() {
                        continue;
                    }
                    for (r, grm) in &gcols[m] {
                        rhs[*r] += &(ym * grm);
                    }
                }
                let l = &lhs[u * da + w];
                let equal = if l.is_empty() { rhs.iter().all(Rational::is_zero) } else { *l == rhs };
                if !equal {
                    return Some([u, v, w]);
                }
            }
        }
    }
    None
}

fn check_alpha_shape(p: &JordanPair, alpha: &QMatrix) -> Result<()> {
    let want = (p.dim(Side::Minus), p.dim(Side::Plus));
    if alpha.shape() != want {
        return Err(shape_err(format!("{}x{}", want.0, want.1), format!("{}x{}", alpha.rows(), alpha.cols())));
    }
    Ok(())
}

/// Both sides of the membership identity are quadratic in the map, so the sweep
/// may run on `cα` for any `c ≠ 0`; clearing denominators keeps it integral.
fn cleared(m: &QMatrix) -> QMatrix {
    let l = common_denominator(m.entries());
    if l.is_one() {
        m.clone()
    } else {
        m.scale(&l)
    }
}

/// `T⁻(αu, v, αw) = α T⁺(u, αv, w)` on all basis triples.
pub fn svar_membership(p: &JordanPair, alpha: &QMatrix) -> Result<Membership> {
    check_alpha_shape(p, alpha)?;
    let alpha = &cleared(alpha);
    let w = sandwich_violation(p.tensor(Side::Minus), p.tensor(Side::Plus), alpha, alpha, false);
    Ok(Membership { member: w.is_none(), witness: w })
}

/// Membership in `Svar(V⁻)`: the mirrored identity, i.e. membership for the opposite pair.
pub fn svar_minus_membership(p: &JordanPair, beta: &QMatrix) -> Result<Membership> {
    let want = (p.dim(Side::Plus), p.dim(Side::Minus));
    if beta.shape() != want {
        return Err(shape_err(format!("{}x{}", want.0, want.1), format!("{}x{}", beta.rows(), beta.cols())));
    }
    let beta = &cleared(beta);
    let w = sandwich_violation(p.tensor(Side::Plus), p.tensor(Side::Minus), beta, beta, false);
    Ok(Membership { member: w.is_none(), witness: w })
}

/// The quadratic criterion `Q⁻(αu) = α Q⁺(u) α`, polarized: checked on basis
/// vectors and on all pairwise sums of basis vectors.
pub fn svar_membership_quadratic(p: &JordanPair, alpha: &QMatrix) -> Result<bool> {
    check_alpha_shape(p, alpha)?;
    let d = p.dim(Side::Plus);
    let mut probes: Vec<Vector> = (0..d).map(|i| unit_vec(d, i)).collect();
    for i in 0..d {
        for j in i + 1..d {
            probes.push(add_vec(&unit_vec(d, i), &unit_vec(d, j)));
        }
    }
    for u in &probes {
        let lhs = p.quadratic_operator(Side::Minus, &alpha.mul_vec(u))?;
        let rhs = &(alpha * &p.quadratic_operator(Side::Plus, u)?) * alpha;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_member(p: &JordanPair, alpha: &QMatrix) -> Result<()> {
    let m = svar_membership(p, alpha)?;
    match m.witness {
        Some(triple) => Err(Error::NotMember { triple }),
        None => Ok(()),
    }
}

/// `T_α(x, y, z) = T⁺(x, αy, z)` on `V⁺`.
pub fn homotope_jts(p: &JordanPair, alpha: &QMatrix) -> Result<TripleTensor> {
    require_member(p, alpha)?;
    Ok(p.tensor(Side::Plus).with_middle(alpha))
}

/// `R_α(x, y)z = T_α(x, y, z) − T_α(y, x, z)`.
pub fn homotope_lts(p: &JordanPair, alpha: &QMatrix) -> Result<TripleTensor> {
    Ok(homotope_jts(p, alpha)?.antisymmetrize())
}

/// `α` is self-adjoint for the trace form: `G α` is symmetric.
pub fn trace_form_symmetric(p: &JordanPair, alpha: &QMatrix) -> bool {
    (&trace_form(p) * alpha).is_symmetric()
}

/// `(g, h)` with `g: V⁺ → W⁺` and `h: W⁻ → V⁻`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuralPair {
    pub g: QMatrix,
    pub h: QMatrix,
}

impl StructuralPair {
    pub fn identity(p: &JordanPair) -> Self {
        StructuralPair { g: QMatrix::identity(p.dim(Side::Plus)), h: QMatrix::identity(p.dim(Side::Minus)) }
    }

    /// `(g, h)(g′, h′) = (g ∘ g′, h′ ∘ h)`.
    pub fn compose(&self, o: &StructuralPair) -> StructuralPair {
        StructuralPair { g: &self.g * &o.g, h: &o.h * &self.h }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuralCheck {
    pub structural: bool,
    /// Which identity failed (1 or 2) and where.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(u8, [usize; 3])>,
}

/// Both identities `g T⁺_V(u, hv, w) = T⁺_W(gu, v, gw)` and
/// `h T⁻_W(v, gw, z) = T⁻_V(hv, w, hz)` on basis triples.
pub fn structural_check(v: &JordanPair, w: &JordanPair, sp: &StructuralPair) -> Result<StructuralCheck> {
    let (g, h) = (&sp.g, &sp.h);
    if g.shape() != (w.dim(Side::Plus), v.dim(Side::Plus)) {
        return Err(shape_err(format!("g: {}x{}", w.dim(Side::Plus), v.dim(Side::Plus)), format!("{:?}", g.shape())));
    }
    if h.shape() != (v.dim(Side::Minus), w.dim(Side::Minus)) {
        return Err(shape_err(format!("h: {}x{}", v.dim(Side::Minus), w.dim(Side::Minus)), format!("{:?}", h.shape())));
    }
    if let Some(t) = sandwich_violation(w.tensor(Side::Plus), v.tensor(Side::Plus), g, h, false) {
        return Ok(StructuralCheck { structural: false, witness: Some((1, t)) });
    }
    if let Some(t) = sandwich_violation(v.tensor(Side::Minus), w.tensor(Side::Minus), h, g, false) {
        return Ok(StructuralCheck { structural: false, witness: Some((2, t)) });
    }
    Ok(StructuralCheck { structural: true, witness: None })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transfer {
    /// `h α g ∈ Svar(W⁺)`.
    pub alpha: QMatrix,
    /// `g T_{hαg}(u,v,w) = T_α(gu, gv, gw)` on basis triples.
    pub homomorphism: bool,
}

/// Transfer of `α ∈ Svar(V⁺)` along a structural pair `(g, h)` from `W` to `V`
/// (`g: W⁺ → V⁺`, `h: V⁻ → W⁻`).
pub fn transfer(v: &JordanPair, alpha: &QMatrix, w: &JordanPair, sp: &StructuralPair) -> Result<Transfer> {
    let sc = structural_check(w, v, sp)?;
    if let Some((_, t)) = sc.witness {
        return Err(Error::NotStructural { triple: t });
    }
    require_member(v, alpha)?;
    let beta = &(&sp.h * alpha) * &sp.g;
    require_member(w, &beta)?;
    let t_beta = w.tensor(Side::Plus).with_middle(&beta).then(&sp.g);
    let t_alpha = v.tensor(Side::Plus).with_middle(alpha).precompose(&sp.g, &sp.g, &sp.g);
    Ok(Transfer { homomorphism: t_beta == t_alpha, alpha: beta })
}
