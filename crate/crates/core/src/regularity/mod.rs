//! Pseudo-inverses, idempotent pairs and the split fibration of a homotope.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::linalg::{inverse, is_zero_vec, unit_vec, Subspace, Vector};
use crate::exactalg::rational::common_denominator;
use crate::exactalg::QMatrix;
use crate::ideals::{cartan_chart, image_ideal};
use crate::jordan::{JordanPair, Side};
use crate::report::{Check, CheckReport, Coverage};
use crate::svar::{check_triple_axioms, svar_membership, svar_minus_membership, TripleKind};
use crate::tensor::TripleTensor;

/// `α: W⁺ → W⁻` and `β: W⁻ → W⁺` with `αβα = α`, `βαβ = β`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdempotentPair {
    pub alpha: QMatrix,
    pub beta: QMatrix,
}

pub fn is_idempotent(alpha: &QMatrix, beta: &QMatrix) -> bool {
    &(&(alpha * beta) * alpha) == alpha && &(&(beta * alpha) * beta) == beta
}

/// Pseudo-inverse through the Cartan chart of `Im α`, certified exactly.
pub fn pseudo_inverse(p: &JordanPair, alpha: &QMatrix) -> Result<IdempotentPair> {
    let m = svar_membership(p, alpha)?;
    if let Some(triple) = m.witness {
        return Err(Error::NotMember { triple });
    }
    let i = image_ideal(p, alpha)?;
    let chart = cartan_chart(p, &i)?;
    if Subspace::kernel_of(alpha) != chart.kern_i {
        return Err(Error::Degenerate("ker alpha differs from Kern(Im alpha)".into()));
    }
    let gamma = chart.psi(alpha);
    let gamma_inv = inverse(&gamma).ok_or_else(|| Error::Degenerate("restriction of alpha to the complement is singular".into()))?;
    let beta = chart.phi_opposite(&gamma_inv);
    if !is_idempotent(alpha, &beta) {
        return Err(Error::Degenerate("chart inverse is not idempotent".into()));
    }
    if let Some(triple) = svar_minus_membership(p, &beta)?.witness {
        return Err(Error::Degenerate(format!("pseudo-inverse leaves Svar(V-) at {triple:?}")));
    }
    Ok(IdempotentPair { alpha: alpha.clone(), beta })
}

/// `β′ = βαβ`, again a pseudo-inverse and moreover `β′αβ′ = β′`.
pub fn improve(beta: &QMatrix, alpha: &QMatrix) -> Result<QMatrix> {
    if &(&(alpha * beta) * alpha) != alpha {
        return Err(Error::Precondition("beta is not a pseudo-inverse of alpha".into()));
    }
    Ok(&(beta * alpha) * beta)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub im_beta: Subspace,
    pub ker_alpha: Subspace,
    pub im_alpha: Subspace,
    pub ker_beta: Subspace,
    /// `W⁺ = Im β ⊕ ker α`.
    pub plus_direct: bool,
    /// `W⁻ = Im α ⊕ ker β`.
    pub minus_direct: bool,
    /// `β|Im α` and `α|Im β` are mutually inverse.
    pub mutual_inverse: bool,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.plus_direct && self.minus_direct && self.mutual_inverse
    }
}

pub fn decomposition(alpha: &QMatrix, beta: &QMatrix) -> Decomposition {
    let im_alpha = Subspace::image_of(alpha);
    let im_beta = Subspace::image_of(beta);
    let ker_alpha = Subspace::kernel_of(alpha);
    let ker_beta = Subspace::kernel_of(beta);
    let ab = alpha * beta;
    let ba = beta * alpha;
    let mutual_inverse = im_alpha.basis().iter().all(|x| &ab.mul_vec(x) == x)
        && im_beta.basis().iter().all(|y| &ba.mul_vec(y) == y)
        && im_alpha.dim() == im_beta.dim();
    Decomposition {
        plus_direct: im_beta.is_complement_of(&ker_alpha),
        minus_direct: im_alpha.is_complement_of(&ker_beta),
        mutual_inverse,
        im_beta,
        ker_alpha,
        im_alpha,
        ker_beta,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OffDiagonalSample {
    /// Basis indices of `k₁ ∈ K`, `j ∈ J`, `k₂ ∈ K`.
    pub triple: [usize; 3],
    pub value: Vector,
}

#[derive(Debug, Clone, Serialize)]
pub struct FibrationReport {
    pub base_dim: usize,
    pub fiber_dim: usize,
    pub pair: IdempotentPair,
    /// `T⁻(u, βv, w)` on `Im α`, in its echelon basis.
    #[serde(skip)]
    pub base: TripleTensor,
    pub checks: CheckReport,
    /// Nonzero values of `R_α(K, J)K` on basis triples (at most eight).
    pub off_diagonal: Vec<OffDiagonalSample>,
}

const OFF_DIAGONAL_LIMIT: usize = 8;

fn coords_in(sub: &Subspace, v: &[crate::exactalg::Rational]) -> Vector {
    sub.coords(v).expect("vector lies in the subspace")
}

pub fn fibration_report(p: &JordanPair, alpha: &QMatrix) -> Result<FibrationReport> {
    let pair = pseudo_inverse(p, alpha)?;
    let beta = &pair.beta;
    let dplus = p.dim(Side::Plus);
    let im = Subspace::image_of(alpha);
    let ker = Subspace::kernel_of(alpha);
    let jsp = Subspace::image_of(beta);
    let r = im.dim();
    let tm = p.tensor(Side::Minus);
    let ib = im.basis();
    let mid: Vec<Vector> = ib.iter().map(|b| beta.mul_vec(b)).collect();
    let base = TripleTensor::from_fn([r, r, r, r], |a, b, c| coords_in(&im, &tm.eval(&ib[a], &mid[b], &ib[c])));
    // JTS axioms are homogeneous, so they are checked on an integral multiple
    let base_scale = base.common_denominator();
    let base_int = base.scale(&base_scale);
    let t_alpha = p.tensor(Side::Plus).with_middle(alpha);
    let r_alpha = t_alpha.antisymmetrize();

    let mut checks = CheckReport::new();
    let ax = check_triple_axioms(&base_int, TripleKind::Jts, 0xba5e);
    checks.push(match ax.first_failure() {
        None => Check::pass("base-jts", ax.checks.iter().map(|c| c.cases).sum(), ax.checks.first().map_or(Coverage::Exhaustive, |c| c.coverage)),
        Some(f) => {
            let mut f = f.clone();
            f.id = "base-jts".into();
            f
        }
    });

    // α as a map V⁺ → I in I-coordinates
    let alpha_i = QMatrix::from_cols(r, &(0..dplus).map(|x| coords_in(&im, &alpha.col(x))).collect::<Vec<_>>());
    // both sides times c·k³, which keeps the contraction integral
    let k = common_denominator(alpha_i.entries());
    let alpha_k = alpha_i.scale(&k);
    let lhs = t_alpha.then(&alpha_i.scale(&(&base_scale * &k.pow(3))));
    let hom = lhs.first_difference(&base_int.precompose(&alpha_k, &alpha_k, &alpha_k));
    checks.push(match hom {
        None => Check::pass("homomorphism", (dplus * dplus * dplus) as u64, Coverage::Exhaustive),
        Some(t) => Check::fail("homomorphism", (dplus * dplus * dplus) as u64, Coverage::Exhaustive, t.to_vec(), "alpha T_alpha != T_I(alpha, alpha, alpha)"),
    });

    let ab = alpha * beta;
    let split = ib.iter().position(|b| &ab.mul_vec(b) != b);
    checks.push(match split {
        None => Check::pass("splitting", r as u64, Coverage::Exhaustive),
        Some(k) => Check::fail("splitting", r as u64, Coverage::Exhaustive, vec![k], "alpha beta != id on Im alpha"),
    });

    let kb = ker.basis();
    let e = |i| unit_vec(dplus, i);
    let mut ideal_fail = None;
    'ideal: for (ki, k) in kb.iter().enumerate() {
        for x in 0..dplus {
            for y in 0..dplus {
                if !ker.contains(&t_alpha.eval(k, &e(x), &e(y))) || !ker.contains(&t_alpha.eval(&e(x), k, &e(y))) {
                    ideal_fail = Some(vec![ki, x, y]);
                    break 'ideal;
                }
            }
        }
    }
    let cases = (kb.len() * dplus * dplus) as u64;
    checks.push(match ideal_fail {
        None => Check::pass("kernel-ideal", cases, Coverage::Exhaustive),
        Some(t) => Check::fail("kernel-ideal", cases, Coverage::Exhaustive, t, "T_alpha(K, V, V) or T_alpha(V, K, V) leaves ker alpha"),
    });

    let mut flat_fail = None;
    'flat: for (a, k1) in kb.iter().enumerate() {
        for (b, k2) in kb.iter().enumerate() {
            for z in 0..dplus {
                if !is_zero_vec(&r_alpha.eval(k1, k2, &e(z))) {
                    flat_fail = Some(vec![a, b, z]);
                    break 'flat;
                }
            }
        }
    }
    let cases = (kb.len() * kb.len() * dplus) as u64;
    checks.push(match flat_fail {
        None => Check::pass("flat-fiber", cases, Coverage::Exhaustive),
        Some(t) => Check::fail("flat-fiber", cases, Coverage::Exhaustive, t, "R_alpha(K, K) != 0"),
    });

    let mut off_diagonal = Vec::new();
    'off: for (a, k1) in kb.iter().enumerate() {
        for (b, j) in jsp.basis().iter().enumerate() {
            for (c, k2) in kb.iter().enumerate() {
                let v = r_alpha.eval(k1, j, k2);
                if !is_zero_vec(&v) {
                    off_diagonal.push(OffDiagonalSample { triple: [a, b, c], value: v });
                    if off_diagonal.len() == OFF_DIAGONAL_LIMIT {
                        break 'off;
                    }
                }
            }
        }
    }

    Ok(FibrationReport { base_dim: r, fiber_dim: ker.dim(), pair, base, checks, off_diagonal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{ExactMatrix, Field};
    use crate::ideals::{complement_check, kern, InnerIdeal};
    use crate::svar::{svar_minus_membership, transfer, StructuralPair};

    fn realify(p: &JordanPair, from: Side, to: Side, f: impl Fn(&ExactMatrix) -> ExactMatrix) -> QMatrix {
        let (sf, st) = (p.space(from).unwrap(), p.space(to).unwrap());
        let cols: Vec<Vector> = sf.basis().iter().map(|b| st.coords(&f(b)).unwrap()).collect();
        QMatrix::from_cols(st.dim(), &cols)
    }

    fn ints(field: Field, rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_ints_in(field, rows)
    }

    #[test]
    fn quadratic_operator_of_invertible_symmetric() {
        let p = JordanPair::parse("sym:R:2").unwrap();
        let a = ints(Field::Real, &[&[2, 1], &[1, 1]]);
        // hand-computed inverse (det 1)
        let a_inv = ints(Field::Real, &[&[1, -1], &[-1, 2]]);
        let alpha = realify(&p, Side::Plus, Side::Minus, |x| &(&a * x) * &a);
        let pi = pseudo_inverse(&p, &alpha).unwrap();
        let expect = realify(&p, Side::Minus, Side::Plus, |y| &(&a_inv * y) * &a_inv);
        assert_eq!(pi.beta, expect);
        assert_eq!(&pi.beta * &alpha, QMatrix::identity(3));
    }

    #[test]
    fn zero_and_invertible() {
        let p = JordanPair::parse("rect:R:2x2").unwrap();
        let pi = pseudo_inverse(&p, &QMatrix::zeros(4, 4)).unwrap();
        assert!(pi.beta.is_zero());
        let d = decomposition(&pi.alpha, &pi.beta);
        assert!(d.holds());
        assert_eq!(d.ker_alpha, Subspace::full(4));
        assert_eq!(d.im_beta.dim(), 0);

        let id = QMatrix::identity(4);
        let pi = pseudo_inverse(&p, &id).unwrap();
        assert_eq!(pi.beta, id);
        // (α, α⁻¹) is an involution: structural from V to V^op
        let o = p.opposite();
        let sp = StructuralPair { g: pi.alpha.clone(), h: pi.beta.clone() };
        assert!(crate::svar::structural_check(&p, &o, &sp).unwrap().structural);
        let d = decomposition(&pi.alpha, &pi.beta);
        assert!(d.holds() && d.ker_alpha.dim() == 0);
    }

    #[test]
    fn rank_one_rect() {
        let p = JordanPair::parse("rect:R:2x2").unwrap();
        let a = ints(Field::Real, &[&[1, 0], &[0, 0]]);
        let alpha = realify(&p, Side::Plus, Side::Minus, |x| &(&a * &x.transpose()) * &a);
        let pi = pseudo_inverse(&p, &alpha).unwrap();
        let d = decomposition(&pi.alpha, &pi.beta);
        assert!(d.holds());
        assert_eq!((d.im_beta.dim(), d.ker_alpha.dim()), (1, 3));
        assert_eq!((d.im_alpha.dim(), d.ker_beta.dim()), (1, 3));

        let f = fibration_report(&p, &alpha).unwrap();
        assert!(f.checks.passed(), "{:?}", f.checks.first_failure());
        assert_eq!((f.base_dim, f.fiber_dim), (1, 3));
        assert!(!f.off_diagonal.is_empty());
    }

    #[test]
    fn improve_and_affine_family() {
        let p = JordanPair::parse("rect:R:2x2").unwrap();
        let a = ints(Field::Real, &[&[1, 0], &[0, 0]]);
        let alpha = realify(&p, Side::Plus, Side::Minus, |x| &(&a * &x.transpose()) * &a);
        let beta = pseudo_inverse(&p, &alpha).unwrap().beta;
        assert_eq!(improve(&beta, &alpha).unwrap(), beta);
        // another member partner: Y ↦ C Yᵗ D with C, D symmetric and C₁₁D₁₁ = 1
        let c = ints(Field::Real, &[&[1, 1], &[1, 0]]);
        let d = ints(Field::Real, &[&[1, 2], &[2, 3]]);
        let shifted = realify(&p, Side::Minus, Side::Plus, |y| &(&c * &y.transpose()) * &d);
        assert!(svar_minus_membership(&p, &shifted).unwrap().member);
        assert_eq!(&(&alpha * &shifted) * &alpha, alpha);
        assert!(!is_idempotent(&alpha, &shifted));
        let b2 = improve(&shifted, &alpha).unwrap();
        assert!(is_idempotent(&alpha, &b2));
        assert!(svar_minus_membership(&p, &b2).unwrap().member);
        // two partners differ by a solution of αγα = 0
        assert!((&(&alpha * &(&beta - &shifted)) * &alpha).is_zero());
        assert!(improve(&QMatrix::zeros(4, 4), &alpha).is_err());
    }

    #[test]
    fn point_space_projection() {
        let p = JordanPair::parse("asym:R:3").unwrap();
        let u = ints(Field::Real, &[&[0], &[0], &[1]]);
        let uu = &u * &u.transpose();
        let a = ints(Field::Real, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        let alpha = realify(&p, Side::Plus, Side::Minus, |x| &(&(&uu * x) * &a) + &(&(&a * x) * &uu));
        let f = fibration_report(&p, &alpha).unwrap();
        assert!(f.checks.passed(), "{:?}", f.checks.first_failure());
        assert_eq!((f.base_dim, f.fiber_dim), (2, 1));
        let sm = p.space(Side::Minus).unwrap();
        let im = Subspace::image_of(&alpha);
        for b in im.basis() {
            let m = sm.element(b).unwrap();
            assert!(m.get(0, 1).is_zero());
        }
    }

    #[test]
    fn zero_fibration() {
        let p = JordanPair::parse("sym:R:2").unwrap();
        let f = fibration_report(&p, &QMatrix::zeros(3, 3)).unwrap();
        assert!(f.checks.passed());
        assert_eq!((f.base_dim, f.fiber_dim), (0, 3));
        assert!(f.off_diagonal.is_empty());
    }

    #[test]
    fn decomposition_converse() {
        let alpha = QMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        let good = QMatrix::from_ints(&[&[1, 3], &[0, 0]]);
        let bad = QMatrix::from_ints(&[&[1, 0], &[0, 1]]);
        assert!(is_idempotent(&alpha, &good) && decomposition(&alpha, &good).holds());
        assert!(!is_idempotent(&alpha, &bad) && !decomposition(&alpha, &bad).holds());
    }

    #[test]
    fn kern_of_image_is_kernel_of_h() {
        // (α, β) from a pseudo-inverse: Kern(Im α) = ker α (β structural partner)
        let p = JordanPair::parse("sym:R:3").unwrap();
        let a = ints(Field::Real, &[&[1, 1, 0], &[1, 1, 0], &[0, 0, 2]]);
        let alpha = realify(&p, Side::Plus, Side::Minus, |x| &(&a * x) * &a);
        let pi = pseudo_inverse(&p, &alpha).unwrap();
        let i = InnerIdeal { side: Side::Minus, space: Subspace::image_of(&alpha), meta: None };
        assert_eq!(kern(&p, &i), Subspace::kernel_of(&alpha));
        let j = InnerIdeal { side: Side::Plus, space: Subspace::image_of(&pi.beta), meta: None };
        assert!(complement_check(&p, &i, &j).unwrap().passed());
        // transfer along (β, β) and (α, α)
        let o = p.opposite();
        let bb = StructuralPair { g: pi.beta.clone(), h: pi.beta.clone() };
        let t = transfer(&p, &alpha, &o, &bb).unwrap();
        assert_eq!(t.alpha, &(&pi.beta * &alpha) * &pi.beta);
        assert!(svar_minus_membership(&p, &t.alpha).unwrap().member);
        let aa = StructuralPair { g: alpha.clone(), h: alpha.clone() };
        let t = transfer(&o, &pi.beta, &p, &aa).unwrap();
        assert_eq!(t.alpha, alpha);
    }
}
