//! Property tests for invariants that cut across modules.

use proptest::prelude::*;

use homotope_core::families::{family_alpha, family_matrix, family_row, row_pair, sample_params, structural_endo_family, StructuralParams};
use homotope_core::ideals::{cartan_chart, image_ideal, inner_ideal_check, kern, kern_is_orthocomplement};
use homotope_core::jordan::{cartan_involution, trace_form};
use homotope_core::regularity::{improve, is_idempotent, pseudo_inverse};
use homotope_core::sampling::rng;
use homotope_core::svar::{
    assoc_svar_membership, check_triple_axioms, homotope_jts, homotope_lts, svar_membership, svar_membership_quadratic, svar_minus_membership,
    trace_form_symmetric, transfer, AssocMode, AssocPair, TripleKind,
};
use homotope_core::{ExactMatrix, Field, JordanPair, PairKind, QMatrix, Rational, Scalar, Side};

/// Rows with a small pair each, so every case stays cheap.
const ROWS: &[(&str, Field, usize, usize)] = &[
    ("1.a", Field::Real, 2, 3),
    ("1.b", Field::Real, 2, 2),
    ("1.b", Field::Complex, 1, 2),
    ("1.A", Field::Complex, 2, 2),
    ("2.a", Field::Real, 3, 3),
    ("2.b", Field::Complex, 2, 2),
    ("3.a", Field::Real, 3, 3),
    ("3.b", Field::Real, 3, 3),
    ("3.c", Field::Real, 4, 4),
    ("4.1.a", Field::Complex, 2, 2),
    ("4.2.a", Field::Quaternion, 2, 2),
];

fn draw(row: usize, seed: u64) -> (JordanPair, QMatrix) {
    let (label, field, p, q) = ROWS[row];
    let r = family_row(label).unwrap();
    let pair = row_pair(r, field, p, q).unwrap();
    let params = sample_params(label, &pair, &mut rng(seed)).unwrap();
    let alpha = family_alpha(label, &pair, &params).unwrap().alpha.matrix;
    (pair, alpha)
}

fn int_matrix(rows: usize, cols: usize, xs: &[i64]) -> QMatrix {
    QMatrix::from_fn(rows, cols, |r, c| Rational::int(xs[(r * cols + c) % xs.len()]))
}

fn row_index() -> impl Strategy<Value = usize> {
    0..ROWS.len()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn membership_survives_scaling(row in row_index(), seed in any::<u64>(), n in -5i64..=5, d in 1i64..=4) {
        let (pair, alpha) = draw(row, seed);
        let s = Rational::new(n, d);
        prop_assert!(svar_membership(&pair, &alpha.scale(&s)).unwrap().member);
    }

    #[test]
    fn trilinear_and_quadratic_criteria_agree(xs in prop::collection::vec(-1i64..=1, 9), row in row_index(), seed in any::<u64>()) {
        let p = JordanPair::from_kind(&PairKind::Sym { n: 2, field: Field::Real }).unwrap();
        let a = int_matrix(3, 3, &xs);
        prop_assert_eq!(svar_membership(&p, &a).unwrap().member, svar_membership_quadratic(&p, &a).unwrap());
        let (pair, alpha) = draw(row, seed);
        prop_assert!(svar_membership_quadratic(&pair, &alpha).unwrap());
    }

    #[test]
    fn homotopes_of_members_are_triple_systems(row in row_index(), seed in any::<u64>()) {
        let (pair, alpha) = draw(row, seed);
        let jts = check_triple_axioms(&homotope_jts(&pair, &alpha).unwrap(), TripleKind::Jts, seed);
        prop_assert!(jts.passed(), "{:?}", jts.first_failure());
        let lts = check_triple_axioms(&homotope_lts(&pair, &alpha).unwrap(), TripleKind::Lts, seed);
        prop_assert!(lts.passed(), "{:?}", lts.first_failure());
    }

    #[test]
    fn members_are_trace_form_self_adjoint(row in row_index(), seed in any::<u64>()) {
        let (pair, alpha) = draw(row, seed);
        prop_assert!(trace_form_symmetric(&pair, &alpha));
        // Tr T⁺(x, αy, ·) = Tr T⁺(y, αx, ·) from operator traces, without the Gram matrix
        let t = pair.tensor(Side::Plus);
        let d = pair.dim(Side::Plus);
        let e = |i| homotope_core::exactalg::linalg::unit_vec(d, i);
        let tr = |x: &[Rational], y: &[Rational]| {
            let m = t.operator(x, &alpha.mul_vec(y));
            (0..d).fold(Rational::ZERO, |acc, k| &acc + m.get(k, k))
        };
        for i in 0..d {
            for j in i + 1..d {
                prop_assert_eq!(tr(&e(i), &e(j)), tr(&e(j), &e(i)));
            }
        }
    }

    #[test]
    fn transfer_along_structural_pairs(seed in any::<u64>(), xs in prop::collection::vec(-2i64..=2, 13)) {
        let (pair, alpha) = draw(1, seed);
        let a = ExactMatrix::from_fn(2, 2, |r, c| Scalar::int(Field::Real, xs[r * 2 + c]));
        let b = ExactMatrix::from_fn(2, 2, |r, c| Scalar::int(Field::Real, xs[4 + r * 2 + c]));
        let sp = structural_endo_family("1.b", &pair, &StructuralParams { a: Some(a), b: Some(b), ..Default::default() }).unwrap();
        let t = transfer(&pair, &alpha, &pair, &sp).unwrap();
        prop_assert!(t.homomorphism);
        prop_assert!(svar_membership(&pair, &t.alpha).unwrap().member);
    }

    #[test]
    fn associative_membership_implies_jordan(p in 1usize..=2, q in 1usize..=2, xs in prop::collection::vec(-1i64..=1, 16), seed in any::<u64>()) {
        let a = AssocPair::new(p, q, Field::Real);
        let d = p * q;
        let raw = int_matrix(d, d, &xs);
        let label = if seed % 2 == 0 { "1.a" } else { "1.b" };
        let table = family_matrix(label, &a.jordan, &sample_params(label, &a.jordan, &mut rng(seed)).unwrap()).unwrap();
        for alpha in [raw, table] {
            for mode in [AssocMode::Standard, AssocMode::Opposite] {
                let m = assoc_svar_membership(&a, &alpha, mode).unwrap();
                prop_assert!(!m.assoc.member || m.jordan.member);
                prop_assert_eq!(m.jordan.member, svar_membership(&a.jordan, &alpha).unwrap().member);
            }
        }
    }

    #[test]
    fn images_are_inner_with_orthogonal_kernels(row in row_index(), seed in any::<u64>()) {
        let (pair, alpha) = draw(row, seed);
        let i = image_ideal(&pair, &alpha).unwrap();
        prop_assert!(inner_ideal_check(&pair, Side::Minus, i.space.basis()).unwrap());
        let k = kern_is_orthocomplement(&pair, &i).unwrap();
        prop_assert!(k.equal && k.routes_agree);
        let chart = cartan_chart(&pair, &i).unwrap();
        let dm = pair.dim(Side::Minus);
        prop_assert_eq!(i.space.sum(&chart.kern_j).dim(), dm);
        prop_assert_eq!(i.dim() + chart.kern_j.dim(), dm);
        prop_assert_eq!(&chart.kern_i, &kern(&pair, &i));
    }

    #[test]
    fn pseudo_inverses_form_an_affine_family(row in row_index(), seed in any::<u64>(), xs in prop::collection::vec(-2i64..=2, 7)) {
        let (pair, alpha) = draw(row, seed);
        let ip = pseudo_inverse(&pair, &alpha).unwrap();
        let beta = &ip.beta;
        prop_assert!(is_idempotent(&alpha, beta));
        let (dp, dm) = (pair.dim(Side::Plus), pair.dim(Side::Minus));
        // β₂ = β + (1 − βα) X (1 − αβ) still satisfies αβ₂α = α
        let x = int_matrix(dp, dm, &xs);
        let left = &QMatrix::identity(dp) - &(beta * &alpha);
        let right = &QMatrix::identity(dm) - &(&alpha * beta);
        let beta2 = beta + &(&(&left * &x) * &right);
        prop_assert_eq!(&(&(&alpha * &beta2) * &alpha), &alpha);
        prop_assert!((&(&alpha * &(beta - &beta2)) * &alpha).is_zero());
        let improved = improve(&beta2, &alpha).unwrap();
        prop_assert!(is_idempotent(&alpha, &improved));
        let bab = &(beta * &alpha) * beta;
        prop_assert!(svar_minus_membership(&pair, &bab).unwrap().member);
    }

    #[test]
    fn cartan_involutions_are_positive(kind in prop_oneof![
        (1usize..=3, 1usize..=3).prop_map(|(p, q)| PairKind::Rect { p, q, field: Field::Complex }),
        (1usize..=3).prop_map(|n| PairKind::Sym { n, field: Field::Real }),
        (2usize..=3).prop_map(|n| PairKind::Asym { n, field: Field::Complex }),
        (1usize..=3).prop_map(|n| PairKind::HermC { n }),
        (1usize..=2).prop_map(|n| PairKind::HermH { n }),
        (1usize..=3, 0usize..=2).prop_map(|(p, q)| PairKind::Spin { p, q }),
    ]) {
        let p = JordanPair::from_kind(&kind).unwrap();
        let c = cartan_involution(&p).unwrap();
        prop_assert_eq!(c.inertia.signature(), (p.dim(Side::Plus), 0, 0));
        // Tr D⁺(x, y) = Tr D⁻(y, x): the pair trace form is symmetric across the two sides
        prop_assert_eq!(trace_form(&p), trace_form(&p.opposite()).transpose());
        prop_assert!(c.jts_gram.is_symmetric());
    }
}
