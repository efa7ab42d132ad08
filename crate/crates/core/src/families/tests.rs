use proptest::prelude::*;

use super::*;
use crate::ideals::make_inner_ideal;
use crate::sampling::rng;

fn r(rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_ints_in(Field::Real, rows)
}

fn ints(field: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| Scalar::int(field, x)).collect()
}

fn pair(s: &str) -> JordanPair {
    JordanPair::parse(s).unwrap()
}

#[test]
fn every_row_is_member_on_random_draws() {
    let mut g = rng(2024);
    for row in family_rows() {
        for &field in row.fields {
            let sizes: &[(usize, usize)] = match (row.pair, field) {
                (_, Field::Quaternion) => &[(1, 2), (2, 2)],
                (RowPair::Rect, _) => &[(1, 2), (2, 3), (3, 2)],
                (RowPair::Asym, _) => &[(3, 3)],
                _ => &[(2, 2), (3, 3)],
            };
            for &(p, q) in sizes {
                let pr = row_pair(row, field, p, q).unwrap();
                for _ in 0..3 {
                    let params = sample_params(row.label, &pr, &mut g).unwrap();
                    let inst = family_alpha(row.label, &pr, &params);
                    assert!(inst.is_ok(), "{} on {}: {:?}", row.label, pr.label, inst.err());
                }
            }
        }
    }
}

#[test]
fn type_1b_chain_on_model_elements() {
    // α T⁺(X, αY, Z) = (AXᵗB) Y (AZᵗB) + (AZᵗB) Y (AXᵗB) = T⁻(αX, Y, αZ)
    let p = pair("rect:R:2x3");
    let a = r(&[&[1, 2, 0], &[2, -1, 1], &[0, 1, 3]]);
    let b = r(&[&[2, 1], &[1, 0]]);
    let alpha = |x: &ExactMatrix| &(&a * &x.transpose()) * &b;
    let x = r(&[&[1, 0, -2], &[3, 1, 1]]);
    let y = r(&[&[1, -1, 0], &[2, 0, 1]]);
    let z = r(&[&[-1, 2, 0], &[1, 1, 2]]);
    let ay = alpha(&y);
    let left = alpha(&(&(&(&x * &ay) * &z) + &(&(&z * &ay) * &x)));
    let (ax, az) = (alpha(&x), alpha(&z));
    let chain = &(&(&ax * &y) * &az) + &(&(&az * &y) * &ax);
    assert_eq!(left, chain);
    assert_eq!(p.triple_product(Side::Minus, &ax, &y, &az).unwrap(), chain);
    let m = family_alpha("1.b", &p, &FamilyParams::ab(a.clone(), b.clone())).unwrap().alpha.matrix;
    let xs = p.coords(Side::Plus, &x).unwrap();
    assert_eq!(p.element(Side::Minus, &m.mul_vec(&xs)).unwrap(), ax);
}

#[test]
fn point_projection_example() {
    // u = e₃, A = dia(1,1,0): α(X) = X − AXA, the projection onto K_{e₃}
    let p = pair("asym:R:3");
    let a = r(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
    let params = FamilyParams::au(a.clone(), ints(Field::Real, &[0, 0, 1]));
    let inst = family_alpha("3.c", &p, &params).unwrap();
    let direct = p.realify_map(Side::Plus, Side::Minus, |x| x - &(&(&a * x) * &a)).unwrap();
    assert_eq!(inst.alpha.matrix, direct);
    assert_eq!(&inst.alpha.matrix * &inst.alpha.matrix, inst.alpha.matrix);
    let k = make_inner_ideal(&p, Side::Minus, &IdealDescriptor::Point { u: ints(Field::Real, &[0, 0, 1]) }).unwrap();
    assert_eq!(inst.image, k.space);
    assert_eq!(inst.rank, 2);
}

#[test]
fn zero_parameter_gives_zero() {
    let p = pair("rect:R:2x3");
    let inst = family_alpha("1.a", &p, &FamilyParams::a(ExactMatrix::zeros_in(Field::Real, 3, 2))).unwrap();
    assert!(inst.alpha.matrix.is_zero());
    assert_eq!(inst.rank, 0);
}

#[test]
fn schema_and_scope_errors() {
    let p = pair("rect:R:2x3");
    let nonsym = r(&[&[1, 2, 0], &[0, 1, 0], &[0, 0, 1]]);
    let b = r(&[&[1, 0], &[0, 1]]);
    assert!(matches!(family_alpha("1.b", &p, &FamilyParams::ab(nonsym, b.clone())), Err(Error::Schema(_))));
    assert!(matches!(family_alpha("1.b", &p, &FamilyParams::a(b.clone())), Err(Error::Schema(_))));
    assert!(matches!(family_alpha("1.A", &p, &FamilyParams::a(b.clone())), Err(Error::Descriptor(_))));
    assert!(matches!(family_alpha("2.a", &p, &FamilyParams::a(b.clone())), Err(Error::Descriptor(_))));
    assert!(matches!(family_row("1.3.c"), Err(Error::OutOfScopeScalar(_))));
    assert!(matches!(family_row("4.3.b'"), Err(Error::OutOfScopeScalar(_))));
    assert!(matches!(family_row("5.a"), Err(Error::UnknownRow(_))));
    assert_eq!(family_row("3.c'").unwrap().label, "3.c′");
    let cplx = ExactMatrix::from_fn(3, 2, |_, _| Scalar::unit(Field::Complex, 1));
    assert!(matches!(family_alpha("1.a", &p, &FamilyParams::a(cplx)), Err(Error::Schema(_))));
}

#[test]
fn row_table_labels_are_unique() {
    let mut seen = std::collections::HashSet::new();
    assert!(family_rows().iter().all(|r| seen.insert(r.label)));
    assert_eq!(family_rows().len(), 36);
}

/// Formulas exactly as printed for the antilinear symmetric / skew rows and
/// the quaternionic `b` rows; they are not homotopies.
#[test]
fn printed_variants_fail() {
    let i = Scalar::unit(Field::Complex, 1);
    let one = Scalar::one(Field::Complex);
    let herm = ExactMatrix::from_rows(vec![vec![Scalar::int(Field::Complex, 2), &one + &i], vec![&one - &i, Scalar::int(Field::Complex, -1)]]);

    // A X̄ A with A Hermitian on Sym(2, ℂ)
    let p = pair("sym:C:2");
    let lit = p.realify_map(Side::Plus, Side::Minus, |x| &(&herm * &x.conj()) * &herm);
    assert!(lit.map_or(true, |m| !svar_membership(&p, &m).unwrap().member));

    // A X̄ A with A ∈ i·Herm on Asym(3, ℂ)
    let p = pair("asym:C:3");
    let h3 = ExactMatrix::from_fn(3, 3, |a, b| match (a, b) {
        (0, 0) => Scalar::int(Field::Complex, 1),
        (1, 1) => Scalar::int(Field::Complex, 2),
        (0, 1) => &one + &i,
        (1, 0) => &one - &i,
        (1, 2) | (2, 1) => Scalar::int(Field::Complex, 1),
        _ => Scalar::zero(Field::Complex),
    });
    let ih = h3.mul_scalar_left(&i);
    let lit = p.realify_map(Side::Plus, Side::Minus, |x| &(&ih * &x.conj()) * &ih);
    assert!(lit.map_or(true, |m| !svar_membership(&p, &m).unwrap().member));

    // u⊗u* X̄ A + A X̄ u⊗u* with A Hermitian
    let u = ExactMatrix::from_fn(3, 1, |a, _| if a == 0 { one.clone() } else if a == 1 { i.clone() } else { Scalar::zero(Field::Complex) });
    let uu = &u * &u.conj_transpose();
    let lit = p.realify_map(Side::Plus, Side::Minus, |x| &(&(&uu * &x.conj()) * &h3) + &(&(&h3 * &x.conj()) * &uu));
    assert!(lit.map_or(true, |m| !svar_membership(&p, &m).unwrap().member));

    // A X̄ Ā with A ∈ Herm(2, ℍ)
    let p = pair("hermH:2");
    let q = |a: i64, b: i64, c: i64, d: i64| Scalar::quaternion(a.into(), b.into(), c.into(), d.into());
    let hq = ExactMatrix::from_rows(vec![vec![q(1, 0, 0, 0), q(1, 2, -1, 1)], vec![q(1, -2, 1, -1), q(-2, 0, 0, 0)]]);
    let lit = p.realify_map(Side::Plus, Side::Minus, |x| &(&hq * &x.conj()) * &hq.conj());
    assert!(lit.map_or(true, |m| !svar_membership(&p, &m).unwrap().member));
}

#[test]
fn redundancy_of_type_1b() {
    let p = pair("rect:R:2x3");
    let a = r(&[&[1, 2, 0], &[2, -1, 1], &[0, 1, 3]]);
    let b = r(&[&[2, 1], &[1, 0]]);
    let lam = Rational::new(-3, 2);
    let base = family_matrix("1.b", &p, &FamilyParams::ab(a.clone(), b.clone().scale_q(&lam))).unwrap();
    let other = family_matrix("1.b", &p, &FamilyParams::ab(a.scale_q(&lam), b)).unwrap();
    assert_eq!(base, other);
}

#[test]
fn projective_case_1a_is_1b() {
    for field in [Field::Real, Field::Complex] {
        let p = row_pair(family_row("1.a").unwrap(), field, 1, 3).unwrap();
        let a = ExactMatrix::from_fn(3, 1, |i, _| {
            let mut s = Scalar::int(field, i as i64 - 1);
            if field == Field::Complex {
                s.c[1] = Rational::int(2);
            }
            s
        });
        let lhs = family_matrix("1.a", &p, &FamilyParams::a(a.clone())).unwrap();
        let rhs = family_matrix("1.b", &p, &FamilyParams::ab(&a * &a.transpose(), ExactMatrix::identity_in(field, 1))).unwrap();
        assert_eq!(lhs, rhs);
    }
}

fn check_image(label: &str, pr: &JordanPair, params: &FamilyParams) {
    let inst = family_alpha(label, pr, params).unwrap();
    let Some(desc) = expected_image(label, pr, params).unwrap() else { return };
    let ideal = make_inner_ideal(pr, Side::Minus, &desc).unwrap();
    if matches!(desc, IdealDescriptor::Point { .. }) {
        assert!(ideal.space.contains_space(&inst.image), "{label} on {}", pr.label);
        if inst.image.dim() == ideal.dim() {
            assert_eq!(inst.image, ideal.space);
        }
    } else {
        assert_eq!(inst.image, ideal.space, "{label} on {}", pr.label);
    }
}

#[test]
fn images_are_classified_ideals() {
    let mut g = rng(77);
    for label in ["1.b", "2.a", "2.a′", "3.a", "4.1.a", "4.2.a", "3.c", "3.c′", "3.B", "3.B′"] {
        let row = family_row(label).unwrap();
        for &field in row.fields {
            for n in 2..=3 {
                if field == Field::Quaternion && n > 2 {
                    continue;
                }
                let pr = row_pair(row, field, n, n + 1).unwrap();
                for _ in 0..3 {
                    let params = sample_params(label, &pr, &mut g).unwrap();
                    check_image(label, &pr, &params);
                }
            }
        }
    }
    // rank-deficient parameters
    let p = pair("rect:R:2x3");
    let a = r(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]);
    let b = r(&[&[1, 0], &[0, 0]]);
    check_image("1.b", &p, &FamilyParams::ab(a, b));
    let p = pair("sym:R:3");
    check_image("2.a", &p, &FamilyParams::a(r(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]])));
}

#[test]
fn point_rows_fill_the_point_space() {
    let p = pair("asym:R:4");
    let a = r(&[&[1, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 0]]);
    let u = ints(Field::Real, &[0, 0, 0, 1]);
    let inst = family_alpha("3.c", &p, &FamilyParams::au(a, u.clone())).unwrap();
    let k = make_inner_ideal(&p, Side::Minus, &IdealDescriptor::Point { u }).unwrap();
    assert_eq!(inst.image, k.space);
}

proptest! {
    #[test]
    fn rank_one_sandwich_kills_skew(u in prop::collection::vec(-4i64..=4, 4), x in prop::collection::vec(-4i64..=4, 6)) {
        let uc = ExactMatrix::from_fn(4, 1, |i, _| Scalar::int(Field::Real, u[i]));
        let b = &uc * &uc.transpose();
        let s = crate::exactalg::Space::new(crate::exactalg::Model::Asym { n: 4 }, Field::Real).unwrap();
        let xm = s.element(&x.iter().map(|&v| Rational::int(v)).collect::<Vec<_>>()).unwrap();
        prop_assert!((&(&b * &xm) * &b).is_zero());
    }

    #[test]
    fn scaling_both_factors_of_1b_is_invisible(k in 1i64..=5, seed in 0u64..1000) {
        let p = pair("rect:R:2x2");
        let mut g = rng(seed);
        let params = sample_params("1.b", &p, &mut g).unwrap();
        let lam = Rational::int(k);
        let a = params.a.clone().unwrap();
        let b = params.b.clone().unwrap();
        let left = family_matrix("1.b", &p, &FamilyParams::ab(a.scale_q(&lam), b.clone())).unwrap();
        let right = family_matrix("1.b", &p, &FamilyParams::ab(a, b.scale_q(&lam))).unwrap();
        prop_assert_eq!(left, right);
    }
}
