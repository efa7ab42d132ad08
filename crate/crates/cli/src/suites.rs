//! `verify` suites: seeded sweeps over many pairs at once.

use rand::Rng;
use serde_json::{json, Value};

use homotope_core::families::{
    draw_shape, family_alpha, family_matrix, family_rows, ktwo_equivalence, rivillis_equivalence, row_pair, sample_params,
    structural_endo_family, structural_rows, RowPair, StructuralParams,
};
use homotope_core::jordan::{cartan_jts, check_positive_and_backes};
use homotope_core::liealg::{o3_brackets, standard_imbedding, verify_isomorphism, IsoId};
use homotope_core::sampling::{rng, SeededRng};
use homotope_core::svar::{assoc_svar_membership, homotope_lts, AssocMode, AssocPair};
use homotope_core::{Check, CheckReport, Coverage, Error, ExactMatrix, Field, JordanPair, PairKind, QMatrix, Rational, Scalar};

use crate::commands::CmdResult;

fn verdict(id: String, cases: u64, fail: Option<(Vec<usize>, String)>) -> Check {
    match fail {
        None => Check::pass(id, cases, Coverage::Sampled),
        Some((t, d)) => Check::fail(id, cases, Coverage::Sampled, t, d),
    }
}

/// Every table row at `draws` seeded shapes and parameters, then the two
/// completeness characterizations.
pub fn classification(max_size: usize, draws: usize, samples: usize, seed: u64) -> CmdResult {
    let mut r = CheckReport::new();
    let mut g = rng(seed);
    let mut rows = Vec::new();
    for row in family_rows() {
        for &field in row.fields {
            let mut fail = None;
            for k in 0..draws {
                let (p, q) = draw_shape(row, field, k, max_size);
                let pair = row_pair(row, field, p, q)?;
                let params = sample_params(row.label, &pair, &mut g)?;
                match family_alpha(row.label, &pair, &params) {
                    Ok(_) => {}
                    Err(Error::NotMember { triple }) => {
                        fail.get_or_insert((vec![k], format!("{} fails at {triple:?}", pair.label)));
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            r.push(verdict(format!("membership/{}/{}", row.label, field.symbol()), draws as u64, fail));
            rows.push(format!("{}/{}", row.label, field.symbol()));
        }
    }
    let k2 = ktwo_equivalence()?;
    r.push(equivalence_check("ktwo-equivalence".into(), &k2));
    let mut spins = Vec::new();
    for (p, q) in [(3, 0), (2, 1), (2, 2)] {
        if p + q > max_size.max(3) {
            continue;
        }
        let pair = JordanPair::from_kind(&PairKind::Spin { p, q })?;
        let rep = rivillis_equivalence(&pair, 1, samples, seed)?;
        r.push(equivalence_check(format!("rivillis/spin:{p},{q}"), &rep));
        spins.push(rep);
    }
    Ok((r, json!({ "rows": rows, "draws": draws, "max_size": max_size, "ktwo": k2, "rivillis": spins })))
}

fn equivalence_check(id: String, rep: &homotope_core::families::EquivalenceReport) -> Check {
    let cases = rep.grid_points + rep.samples;
    if rep.passed() {
        Check::pass(id, cases, Coverage::Exhaustive)
    } else {
        Check::fail(id, cases, Coverage::Exhaustive, vec![], format!("{} disagreements, first {:?}", rep.disagreements, rep.first_disagreement))
    }
}

fn positivity_pairs(max_size: usize) -> Vec<PairKind> {
    let mut out = Vec::new();
    for field in [Field::Real, Field::Complex, Field::Quaternion] {
        let top = if field == Field::Quaternion { max_size.min(2) } else { max_size };
        for p in 1..=top {
            for q in p..=top {
                out.push(PairKind::Rect { p, q, field });
            }
        }
        if field != Field::Quaternion {
            for n in 1..=top {
                out.push(PairKind::Sym { n, field });
            }
            for n in 2..=top {
                out.push(PairKind::Asym { n, field });
            }
        }
    }
    for n in 1..=max_size {
        out.push(PairKind::HermC { n });
    }
    for n in 1..=max_size.min(2) {
        out.push(PairKind::HermH { n });
    }
    for n in 1..=max_size {
        for q in 0..n {
            out.push(PairKind::Spin { p: n - q, q });
        }
    }
    out
}

/// Trace-form positivity and the Backes inequality on the Cartan JTS of
/// every constructor up to `max_size`.
pub fn positivity(max_size: usize, samples: usize, seed: u64) -> CmdResult {
    let mut r = CheckReport::new();
    let mut pairs = Vec::new();
    for kind in positivity_pairs(max_size) {
        let pair = JordanPair::from_kind(&kind)?;
        let j = cartan_jts(&pair)?;
        for mut c in check_positive_and_backes(&j, samples, seed).checks {
            c.id = format!("positivity/{kind}/{}", c.id);
            r.push(c);
        }
        pairs.push(kind.to_string());
    }
    Ok((r, json!({ "pairs": pairs, "samples": samples })))
}

/// The known isomorphisms and the ax+b transvection algebra.
pub fn isomorphisms() -> CmdResult {
    let mut r = CheckReport::new();
    let mut certs = Vec::new();
    for id in IsoId::ALL {
        let c = verify_isomorphism(id.as_str())?;
        let check_id = format!("iso/{id}");
        r.push(if c.passed() {
            Check::pass(check_id, c.triples_checked, Coverage::Exhaustive)
        } else {
            let why = c.failure.clone().unwrap_or_else(|| format!("signature {:?}", c.gram_signature));
            Check::fail(check_id, c.triples_checked, Coverage::Exhaustive, vec![], why)
        });
        certs.push(c);
    }
    // ax+b: rect(1,2,R), α(x) = (x₁, 0)ᵗ, in the basis (e₁, e₂, [e₁, e₂])
    let pair = JordanPair::rect(1, 2, Field::Real);
    let g = standard_imbedding(&homotope_lts(&pair, &QMatrix::from_ints(&[&[1, 0], &[0, 0]]))?)?;
    let d = g.total_dim();
    let ok = d == 3 && g.passed() && {
        let k = g.algebra.bracket_basis(0, 1).clone();
        let unit = |i| homotope_core::exactalg::linalg::unit_vec(3, i);
        let basis = QMatrix::from_cols(3, &[unit(0), unit(1), k]);
        let o = o3_brackets(&Rational::ONE, &Rational::ZERO, &Rational::ONE);
        g.algebra.in_basis(&basis, vec!["e".into(), "f".into(), "k".into()]).map(|a| a == o).unwrap_or(false)
    };
    r.push(Check::from_bool("imbed/ax+b", ok, "transvection algebra differs from o3((1,0,1))"));
    Ok((r, json!({ "certificates": certs, "ax_plus_b": { "total_dim": d, "h_dim": g.h_dim, "killing_signature": g.killing_signature } })))
}

fn random_matrix(g: &mut SeededRng, field: Field, rows: usize, cols: usize) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |_, _| {
        let c: Vec<Rational> = (0..field.dim()).map(|_| Rational::int(g.gen_range(-2..=2))).collect();
        Scalar::from_components(field, &c)
    })
}

fn structural_pairs(rp: RowPair, max_size: usize) -> Vec<PairKind> {
    let square = |lo: usize, top: usize| (lo..=top.min(3)).collect::<Vec<_>>();
    match rp {
        RowPair::Rect => [(1, 2), (2, 2), (2, 3)]
            .into_iter()
            .filter(|&(_, q)| q <= max_size)
            .flat_map(|(p, q)| [Field::Real, Field::Complex].map(|field| PairKind::Rect { p, q, field }))
            .collect(),
        RowPair::Sym => square(1, max_size).into_iter().flat_map(|n| [Field::Real, Field::Complex].map(|field| PairKind::Sym { n, field })).collect(),
        RowPair::Asym => square(2, max_size).into_iter().flat_map(|n| [Field::Real, Field::Complex].map(|field| PairKind::Asym { n, field })).collect(),
        RowPair::HermC => square(1, max_size).into_iter().map(|n| PairKind::HermC { n }).collect(),
        RowPair::HermH => square(1, max_size.min(2)).into_iter().map(|n| PairKind::HermH { n }).collect(),
    }
}

fn structural_draw(label: &str, pair: &JordanPair, g: &mut SeededRng, conjugate: bool) -> StructuralParams {
    let (p, q) = pair.space(homotope_core::Side::Plus).expect("matrix pair").shape();
    let f = pair.field();
    let (a, b) = match label {
        "1.a" => (random_matrix(g, f, p, q), Some(random_matrix(g, f, p, q))),
        "1.b" => (random_matrix(g, f, p, p), Some(random_matrix(g, f, q, q))),
        _ => (random_matrix(g, f, p, p), None),
    };
    let u = (label == "3.b").then(|| random_matrix(g, f, p, 1).col(0));
    StructuralParams { a: Some(a), b, u, conjugate }
}

/// Structural endomorphisms of the matrix pairs, embedded in the polarized pair.
pub fn polarized(max_size: usize, draws: usize, seed: u64) -> CmdResult {
    let mut r = CheckReport::new();
    let mut g = rng(seed);
    let mut cases = Vec::new();
    for row in structural_rows() {
        for &rp in row.pairs {
            for kind in structural_pairs(rp, max_size) {
                let pair = JordanPair::from_kind(&kind)?;
                let variants: &[bool] = if matches!(kind, PairKind::Rect { field: Field::Complex, .. }) { &[false, true] } else { &[false] };
                for &conj in variants {
                    let mut fail = None;
                    for k in 0..draws {
                        let params = structural_draw(row.label, &pair, &mut g, conj);
                        match structural_endo_family(row.label, &pair, &params) {
                            Ok(_) => {}
                            Err(e @ (Error::NotStructural { .. } | Error::NotMember { .. })) => {
                                fail.get_or_insert((vec![k], e.to_string()));
                            }
                            Err(e) => return Err(e.into()),
                        }
                    }
                    let id = format!("structural/{}/{kind}{}", row.label, if conj { "/conj" } else { "" });
                    r.push(verdict(id.clone(), draws as u64, fail));
                    cases.push(id);
                }
            }
        }
    }
    Ok((r, json!({ "cases": cases, "draws": draws })))
}

/// Rows 1.a/1.a′ in the standard and 1.b/1.c in the opposite associative mode.
pub fn associative(max_size: usize, draws: usize, seed: u64) -> CmdResult {
    let mut r = CheckReport::new();
    let mut g = rng(seed);
    let top = max_size.min(3);
    for (label, mode) in [("1.a", AssocMode::Standard), ("1.a′", AssocMode::Standard), ("1.b", AssocMode::Opposite), ("1.c", AssocMode::Opposite)] {
        for field in [Field::Real, Field::Complex] {
            for p in 1..=top {
                for q in 1..=top {
                    let a = AssocPair::new(p, q, field);
                    let mut fail = None;
                    for k in 0..draws {
                        let params = sample_params(label, &a.jordan, &mut g)?;
                        let alpha = family_matrix(label, &a.jordan, &params)?;
                        let m = assoc_svar_membership(&a, &alpha, mode)?;
                        if !m.assoc.member || !m.jordan.member {
                            let w = m.assoc.witness.or(m.jordan.witness).map(|t| t.to_vec()).unwrap_or_default();
                            fail.get_or_insert((vec![k], format!("assoc {} jordan {} at {w:?}", m.assoc.member, m.jordan.member)));
                        }
                    }
                    r.push(verdict(format!("associative/{label}/{}", a.jordan.kind), draws as u64, fail));
                }
            }
        }
    }
    Ok((r, Value::Null))
}
