//! The polarized pair `(V⁺ ⊕ V⁻, V⁻ ⊕ V⁺)` and embedded structural endomorphisms.

use crate::error::{shape_err, Result};
use crate::exactalg::{QMatrix, Rational};
use crate::jordan::{JordanPair, Side};

/// `V ⊕ V^op`; its `W⁺ = V⁺ ⊕ V⁻` and `W⁻ = V⁻ ⊕ V⁺`.
pub fn polarized_pair(p: &JordanPair) -> JordanPair {
    let mut w = JordanPair::direct_sum(p, &p.opposite());
    w.label = format!("polar({})", p.label);
    w
}

/// The exchange `(x, x′) ↦ (x′, x)`.
pub fn exchange_map(p: &JordanPair) -> QMatrix {
    embed_structural(p, &QMatrix::identity(p.dim(Side::Plus)), &QMatrix::identity(p.dim(Side::Minus))).expect("square identities")
}

/// `α(u, v) = (g v, f u)` on the polarized pair, for `f: V⁺ → V⁺`, `g: V⁻ → V⁻`.
pub fn embed_structural(p: &JordanPair, f: &QMatrix, g: &QMatrix) -> Result<QMatrix> {
    let (dp, dm) = (p.dim(Side::Plus), p.dim(Side::Minus));
    if f.shape() != (dp, dp) {
        return Err(shape_err(format!("f: {dp}x{dp}"), format!("{:?}", f.shape())));
    }
    if g.shape() != (dm, dm) {
        return Err(shape_err(format!("g: {dm}x{dm}"), format!("{:?}", g.shape())));
    }
    Ok(QMatrix::from_fn(dm + dp, dp + dm, |r, c| match (r < dm, c < dp) {
        (true, false) => g.get(r, c - dp).clone(),
        (false, true) => f.get(r - dm, c).clone(),
        _ => Rational::ZERO,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{ExactMatrix, Field};
    use crate::jordan::{check_pair_axioms, AxiomPolicy};
    use crate::svar::{structural_check, svar_membership, StructuralPair};

    fn endo(p: &JordanPair, side: Side, f: impl Fn(&ExactMatrix) -> ExactMatrix) -> QMatrix {
        let s = p.space(side).unwrap();
        let cols: Vec<_> = s.basis().iter().map(|b| s.coords(&f(b)).unwrap()).collect();
        QMatrix::from_cols(s.dim(), &cols)
    }

    #[test]
    fn polarized_pair_is_a_pair() {
        let p = JordanPair::parse("rect:R:1x2").unwrap();
        let w = polarized_pair(&p);
        assert_eq!((w.dim(Side::Plus), w.dim(Side::Minus)), (4, 4));
        assert!(check_pair_axioms(&w, &AxiomPolicy::default()).passed());
    }

    #[test]
    fn structural_endomorphisms_embed_as_members() {
        let p = JordanPair::parse("rect:R:2x2").unwrap();
        let a = ExactMatrix::from_ints_in(Field::Real, &[&[1, 2], &[0, 1]]);
        let b = ExactMatrix::from_ints_in(Field::Real, &[&[3, 0], &[1, -1]]);
        // X ↦ A X B on V⁺ with Y ↦ B Y A on V⁻
        let f = endo(&p, Side::Plus, |x| &(&a * x) * &b);
        let g = endo(&p, Side::Minus, |y| &(&b * y) * &a);
        assert!(structural_check(&p, &p, &StructuralPair { g: f.clone(), h: g.clone() }).unwrap().structural);
        let w = polarized_pair(&p);
        let alpha = embed_structural(&p, &f, &g).unwrap();
        assert!(svar_membership(&w, &alpha).unwrap().member);

        // a non-structural pair embeds as a non-member
        let g2 = endo(&p, Side::Minus, |y| &(&a * y) * &b);
        assert!(!structural_check(&p, &p, &StructuralPair { g: f.clone(), h: g2.clone() }).unwrap().structural);
        assert!(!svar_membership(&w, &embed_structural(&p, &f, &g2).unwrap()).unwrap().member);
        assert!(embed_structural(&p, &g2, &QMatrix::identity(3)).is_err());
    }

    #[test]
    fn exchange_is_a_member() {
        let p = JordanPair::parse("sym:R:2").unwrap();
        let w = polarized_pair(&p);
        assert!(svar_membership(&w, &exchange_map(&p)).unwrap().member);
    }
}
