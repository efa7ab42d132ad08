//! Trace form, Cartan involution, positivity and non-degeneracy.

use serde::Serialize;

use super::{JordanPair, Side};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{congruent_diagonalize, inverse, rank, unit_vec, Inertia, Subspace};
use crate::exactalg::{QMatrix, Rational};
use crate::report::{Check, CheckReport, Coverage};
use crate::sampling;
use crate::tensor::TripleTensor;

/// Gram matrix of `⟨u, v⟩ = Tr T⁺(u, v, ·)` on `V⁺ × V⁻`.
pub fn trace_form(p: &JordanPair) -> QMatrix {
    p.tensor(Side::Plus).trace_form()
}

#[derive(Debug, Clone, Serialize)]
pub struct CartanCertificate {
    /// `τ: V⁺ → V⁻`.
    pub tau: QMatrix,
    /// Trace form of `T(x,y,z) = T⁺(x, τy, z)`.
    pub jts_gram: QMatrix,
    pub inertia: Inertia,
}

/// The attached Cartan involution together with its positivity certificate.
pub fn cartan_involution(p: &JordanPair) -> Result<CartanCertificate> {
    let tau = p.cartan().ok_or_else(|| Error::Precondition(format!("{} has no Cartan involution", p.label)))?.clone();
    let tau_inv = inverse(&tau).ok_or_else(|| Error::Positivity("tau is not invertible".into()))?;
    // (τ, τ⁻¹) must intertwine T⁺ with T⁻
    let lhs = p.tensor(Side::Plus).then(&tau);
    let rhs = p.tensor(Side::Minus).precompose(&tau, &tau_inv, &tau);
    if let Some(t) = lhs.first_difference(&rhs) {
        return Err(Error::Positivity(format!("(tau, tau^-1) is not an involution of the pair at {t:?}")));
    }
    if &(&tau_inv * &tau) != &QMatrix::identity(tau.cols()) {
        return Err(Error::Positivity("tau is not invertible".into()));
    }
    let jts = p.tensor(Side::Plus).with_middle(&tau);
    let gram = jts.trace_form();
    if !gram.is_symmetric() {
        return Err(Error::Positivity("JTS trace form is not symmetric".into()));
    }
    let inertia = congruent_diagonalize(&gram)?;
    if !inertia.is_positive_definite() {
        return Err(Error::Positivity(format!("JTS trace form has signature {:?}", inertia.signature())));
    }
    Ok(CartanCertificate { tau, jts_gram: gram, inertia })
}

/// The JTS `T(x,y,z) = T⁺(x, τy, z)`.
pub fn cartan_jts(p: &JordanPair) -> Result<TripleTensor> {
    let tau = p.cartan().ok_or_else(|| Error::Precondition(format!("{} has no Cartan involution", p.label)))?;
    Ok(p.tensor(Side::Plus).with_middle(tau))
}

fn symmetrized_operator(j: &TripleTensor, u: &[Rational], v: &[Rational]) -> QMatrix {
    let half = Rational::new(1, 2);
    (&j.operator(u, v) + &j.operator(v, u)).map(|x| x * &half)
}

/// `Tr S(S(u,v)u, v)` together with `S(u,v)`.
fn backes_value(j: &TripleTensor, u: &[Rational], v: &[Rational]) -> (Rational, QMatrix) {
    let s = symmetrized_operator(j, u, v);
    let w = s.mul_vec(u);
    (symmetrized_operator(j, &w, v).trace(), s)
}

/// Positivity of the trace form and the Backes inequality on all basis pairs
/// plus `samples` seeded rational pairs.
pub fn check_positive_and_backes(j: &TripleTensor, samples: usize, seed: u64) -> CheckReport {
    let d = j.dim();
    let mut r = CheckReport::new();
    let gram = j.trace_form();
    let positive = gram.is_symmetric() && congruent_diagonalize(&gram).map(|i| i.is_positive_definite()).unwrap_or(false);
    r.push(Check::from_bool("trace-form-positive", positive, "trace form not positive definite"));

    let judge = |u: &[Rational], v: &[Rational]| -> Option<String> {
        let (val, s) = backes_value(j, u, v);
        if val.signum() < 0 {
            Some(format!("Tr S(S(u,v)u,v) = {val} < 0"))
        } else if val.is_zero() != s.is_zero() {
            Some(format!("Tr S(S(u,v)u,v) = {val} but S(u,v) zero = {}", s.is_zero()))
        } else {
            None
        }
    };
    let mut failure = None;
    'outer: for a in 0..d {
        for b in 0..d {
            if let Some(msg) = judge(&unit_vec(d, a), &unit_vec(d, b)) {
                failure = Some((vec![a, b], msg));
                break 'outer;
            }
        }
    }
    let zero = vec![Rational::ZERO; d];
    if failure.is_none() {
        if let Some(msg) = judge(&zero, &zero) {
            failure = Some((vec![], msg));
        }
    }
    r.push(match failure {
        None => Check::pass("backes-basis", (d * d + 1) as u64, Coverage::Exhaustive),
        Some((t, m)) => Check::fail("backes-basis", (d * d + 1) as u64, Coverage::Exhaustive, t, m),
    });

    let mut rng = sampling::rng(seed);
    let mut failure = None;
    for s in 0..samples {
        let u = sampling::rational_vec(&mut rng, d, 3);
        let v = sampling::rational_vec(&mut rng, d, 3);
        if let Some(msg) = judge(&u, &v) {
            failure = Some((vec![s], msg));
            break;
        }
    }
    r.push(match failure {
        None => Check::pass("backes-sampled", samples as u64, Coverage::Sampled),
        Some((t, m)) => Check::fail("backes-sampled", samples as u64, Coverage::Sampled, t, m),
    });
    r
}

/// Trace form of the sub-JTS on an invariant subspace.
pub fn sub_jts_positive(j: &TripleTensor, sub: &Subspace) -> Result<Inertia> {
    let t = j.restrict(sub)?;
    congruent_diagonalize(&t.trace_form())
}

/// Full-rank trace form and no basis element with `T(x, V, x) = 0`.
pub fn check_nondegenerate(p: &JordanPair) -> bool {
    let g = trace_form(p);
    let (dp, dm) = (p.dim(Side::Plus), p.dim(Side::Minus));
    if dp != dm || rank(&g) != dp {
        return false;
    }
    [Side::Plus, Side::Minus].into_iter().all(|side| {
        let t = p.tensor(side);
        (0..p.dim(side)).all(|x| (0..p.dim(side.opposite())).any(|y| !t.entry(x, y, x).is_empty()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Field;

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    #[test]
    fn trace_form_examples() {
        let p = JordanPair::rect(1, 1, Field::Real);
        assert_eq!(trace_form(&p), QMatrix::from_ints(&[&[2]]));
        // rect(p,q,R): ⟨u,v⟩ = (p+q) tr(uv)
        let p = JordanPair::rect(2, 3, Field::Real);
        let g = trace_form(&p);
        let (sp, sm) = (p.space(Side::Plus).unwrap(), p.space(Side::Minus).unwrap());
        for i in 0..6 {
            for j in 0..6 {
                let tr = (&sp.basis_element(i) * &sm.basis_element(j)).trace();
                assert_eq!(g.get(i, j), &(tr.re() * &q(5)));
            }
        }
    }

    #[test]
    fn trace_form_invariance_on_sym2() {
        let p = JordanPair::parse("sym:R:2").unwrap();
        let g = trace_form(&p);
        let t = p.tensor(Side::Plus);
        let tm = p.tensor(Side::Minus);
        let e = |i| unit_vec(3, i);
        for x in 0..3 {
            for y in 0..3 {
                for u in 0..3 {
                    for v in 0..3 {
                        let lhs = crate::exactalg::linalg::dot(&t.eval(&e(x), &e(y), &e(u)), &g.mul_vec(&e(v)));
                        let rhs = crate::exactalg::linalg::dot(&e(u), &g.mul_vec(&tm.eval(&e(y), &e(x), &e(v))));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_certificates() {
        let p = JordanPair::rect(2, 2, Field::Complex);
        let c = cartan_involution(&p).unwrap();
        assert_eq!(c.inertia.signature(), (8, 0, 0));
        let a = JordanPair::parse("asym:R:3").unwrap();
        assert!(cartan_involution(&a).is_ok());
        // spin(p,q): Gram = n · standard dot product
        let s = JordanPair::parse("spin:2,1").unwrap();
        let c = cartan_involution(&s).unwrap();
        assert_eq!(c.jts_gram, QMatrix::diag(&[q(3), q(3), q(3)]));
    }

    #[test]
    fn spin_with_general_form_gets_positive_cartan() {
        let g = QMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]);
        let p = JordanPair::spin_with_form(&g, "spin:G").unwrap();
        assert_eq!(p.kind, super::super::PairKind::Spin { p: 2, q: 1 });
        assert!(cartan_involution(&p).is_ok());
    }

    #[test]
    fn backes_examples() {
        let p = JordanPair::parse("sym:R:2").unwrap();
        let j = cartan_jts(&p).unwrap();
        let (v, _) = backes_value(&j, &unit_vec(3, 0), &unit_vec(3, 0));
        assert!(v.signum() > 0);
        assert!(check_positive_and_backes(&j, 10, 1).passed());
        let (z, s) = backes_value(&j, &[q(0), q(0), q(0)], &[q(0), q(0), q(0)]);
        assert!(z.is_zero() && s.is_zero());

        let p = JordanPair::rect(1, 2, Field::Real);
        let j = cartan_jts(&p).unwrap();
        let (v, s) = backes_value(&j, &unit_vec(2, 0), &unit_vec(2, 1));
        assert!(v.signum() >= 0);
        assert_eq!(v.is_zero(), s.is_zero());
    }

    #[test]
    fn nondegeneracy() {
        for s in ["rect:R:2x3", "sym:C:2", "asym:R:3", "hermC:2", "hermH:2", "spin:1,1", "spin:2,1"] {
            assert!(check_nondegenerate(&JordanPair::parse(s).unwrap()), "{s}");
        }
        let d = JordanPair::direct_sum(&JordanPair::rect(1, 1, Field::Real), &JordanPair::zero_product(1));
        assert!(!check_nondegenerate(&d));
    }
}
