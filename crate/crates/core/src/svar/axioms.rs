//! Axioms of Jordan and Lie triple systems on a single space.

use serde::Serialize;

use crate::exactalg::linalg::{add_vec, is_zero_vec, sub_vec, Vector};
use crate::exactalg::{QMatrix, Rational};
use crate::jordan::axioms::{basis_operator, derivation_violation};
use crate::report::{Check, CheckReport, Coverage};
use crate::sampling;
use crate::tensor::TripleTensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TripleKind {
    Jts,
    Lts,
}

/// Exhaustive on basis tuples up to this dimension.
const EXHAUSTIVE_DIM: usize = 12;
const SAMPLES: usize = 500;
const SAMPLE_SUPPORT: usize = 3;

/// Axioms of a JTS or LTS, exhaustive for `dim ≤ 12` and seeded-sampled above
/// (integer vectors with at most three nonzero coordinates).
pub fn check_triple_axioms(t: &TripleTensor, kind: TripleKind, seed: u64) -> CheckReport {
    let mut r = CheckReport::new();
    if !t.is_cubic() {
        r.push(Check::fail("shape", 1, Coverage::Exhaustive, vec![], "tensor is not V×V×V→V"));
        return r;
    }
    let d = t.dim();
    if d <= EXHAUSTIVE_DIM {
        match kind {
            TripleKind::Jts => {
                r.push(jts_symmetry(t));
                r.push(derivations(t, "JTS2", |u, v| {
                    let dm = basis_operator(t, u, v);
                    let dn = -&basis_operator(t, v, u);
                    (dm.clone(), dm.clone(), dn, dm)
                }));
            }
            TripleKind::Lts => {
                r.push(lts_alternating(t));
                r.push(lts_jacobi(t));
                r.push(derivations(t, "LTS3", |u, v| {
                    let dm = basis_operator(t, u, v);
                    (dm.clone(), dm.clone(), dm.clone(), dm)
                }));
            }
        }
    } else {
        sampled(t, kind, seed, &mut r);
    }
    r
}

fn jts_symmetry(t: &TripleTensor) -> Check {
    let d = t.dim();
    for x in 0..d {
        for y in 0..d {
            for z in x + 1..d {
                if t.entry(x, y, z) != t.entry(z, y, x) {
                    return Check::fail("JTS1", (d * d * d) as u64, Coverage::Exhaustive, vec![x, y, z], "T(x,y,z) != T(z,y,x)");
                }
            }
        }
    }
    Check::pass("JTS1", (d * d * d) as u64, Coverage::Exhaustive)
}

fn derivations(
    t: &TripleTensor,
    id: &str,
    ops: impl Fn(usize, usize) -> (QMatrix, QMatrix, QMatrix, QMatrix),
) -> Check {
    let d = t.dim();
    let cases = d.pow(5) as u64;
    for u in 0..d {
        for v in 0..d {
            let (out, d1, d2, d3) = ops(u, v);
            if let Some([x, y, z]) = derivation_violation(t, &out, &d1, &d2, &d3) {
                return Check::fail(id, cases, Coverage::Exhaustive, vec![u, v, x, y, z], "operator is not a derivation");
            }
        }
    }
    Check::pass(id, cases, Coverage::Exhaustive)
}

fn lts_alternating(t: &TripleTensor) -> Check {
    let d = t.dim();
    for x in 0..d {
        for y in x..d {
            for z in 0..d {
                let s = add_vec(&t.eval_basis(x, y, z), &t.eval_basis(y, x, z));
                if !is_zero_vec(&s) {
                    return Check::fail("LTS1", (d * d * d) as u64, Coverage::Exhaustive, vec![x, y, z], "R(x,y) != -R(y,x)");
                }
            }
        }
    }
    Check::pass("LTS1", (d * d * d) as u64, Coverage::Exhaustive)
}

fn lts_jacobi(t: &TripleTensor) -> Check {
    let d = t.dim();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let s = add_vec(&add_vec(&t.eval_basis(x, y, z), &t.eval_basis(y, z, x)), &t.eval_basis(z, x, y));
                if !is_zero_vec(&s) {
                    return Check::fail("LTS2", (d * d * d) as u64, Coverage::Exhaustive, vec![x, y, z], "cyclic sum is nonzero");
                }
            }
        }
    }
    Check::pass("LTS2", (d * d * d) as u64, Coverage::Exhaustive)
}

/// `D(T(x,y,z)) − T(Dx,y,z) − T(x,D′y,z) − T(x,y,Dz)` with `D = T(u,v,·)`.
fn derivation_residual(t: &TripleTensor, kind: TripleKind, u: &[Rational], v: &[Rational], x: &Vector, y: &Vector, z: &Vector) -> Vector {
    let dv = |w: &[Rational]| t.eval(u, v, w);
    let mid = match kind {
        TripleKind::Jts => t.eval(x, &t.eval(v, u, y), z),
        TripleKind::Lts => sub_vec(&vec![Rational::ZERO; x.len()], &t.eval(x, &dv(y), z)),
    };
    let lhs = dv(&t.eval(x, y, z));
    let rhs = sub_vec(&add_vec(&t.eval(&dv(x), y, z), &t.eval(x, y, &dv(z))), &mid);
    sub_vec(&lhs, &rhs)
}

fn sampled(t: &TripleTensor, kind: TripleKind, seed: u64, r: &mut CheckReport) {
    let d = t.dim();
    let mut rng = sampling::rng(seed);
    let ids: &[&str] = match kind {
        TripleKind::Jts => &["JTS1", "JTS2"],
        TripleKind::Lts => &["LTS1", "LTS2", "LTS3"],
    };
    let mut failed: Vec<Option<usize>> = vec![None; ids.len()];
    for s in 0..SAMPLES {
        let mut vs: Vec<Vector> = (0..5).map(|_| sampling::sparse_int_vec(&mut rng, d, SAMPLE_SUPPORT, 2)).collect();
        let (z, y, x, v, u) = (vs.pop().unwrap(), vs.pop().unwrap(), vs.pop().unwrap(), vs.pop().unwrap(), vs.pop().unwrap());
        let bad: Vec<bool> = match kind {
            TripleKind::Jts => vec![
                t.eval(&x, &y, &z) != t.eval(&z, &y, &x),
                !is_zero_vec(&derivation_residual(t, kind, &u, &v, &x, &y, &z)),
            ],
            TripleKind::Lts => vec![
                !is_zero_vec(&add_vec(&t.eval(&x, &y, &z), &t.eval(&y, &x, &z))),
                !is_zero_vec(&add_vec(&add_vec(&t.eval(&x, &y, &z), &t.eval(&y, &z, &x)), &t.eval(&z, &x, &y))),
                !is_zero_vec(&derivation_residual(t, kind, &u, &v, &x, &y, &z)),
            ],
        };
        for (slot, b) in failed.iter_mut().zip(bad) {
            if b && slot.is_none() {
                *slot = Some(s);
            }
        }
    }
    for (id, f) in ids.iter().zip(failed) {
        r.push(match f {
            None => Check::pass(*id, SAMPLES as u64, Coverage::Sampled),
            Some(s) => Check::fail(*id, SAMPLES as u64, Coverage::Sampled, vec![s], format!("fails on sample {s}")),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Field;
    use crate::jordan::{cartan_jts, JordanPair, Side};
    use crate::svar::{homotope_jts, homotope_lts};

    #[test]
    fn identity_homotopes_are_triple_systems() {
        let p = JordanPair::parse("sym:R:2").unwrap();
        let id = QMatrix::identity(3);
        assert!(check_triple_axioms(&homotope_jts(&p, &id).unwrap(), TripleKind::Jts, 1).passed());
        assert!(check_triple_axioms(&homotope_lts(&p, &id).unwrap(), TripleKind::Lts, 1).passed());
    }

    #[test]
    fn zero_tensor_is_both() {
        let z = TripleTensor::zero([3, 3, 3, 3]);
        assert!(check_triple_axioms(&z, TripleKind::Jts, 0).passed());
        assert!(check_triple_axioms(&z, TripleKind::Lts, 0).passed());
    }

    #[test]
    fn large_dimension_is_sampled() {
        let p = JordanPair::rect(2, 4, Field::Complex);
        let j = cartan_jts(&p).unwrap();
        let r = check_triple_axioms(&j, TripleKind::Jts, 3);
        assert!(r.passed());
        assert!(r.checks.iter().all(|c| c.coverage == Coverage::Sampled));
        let r = check_triple_axioms(&j.antisymmetrize(), TripleKind::Lts, 3);
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn broken_tensors_fail() {
        let p = JordanPair::parse("sym:R:2").unwrap();
        let t = p.tensor(Side::Plus).bumped(0, 0, 0, 0, &Rational::ONE);
        assert!(!check_triple_axioms(&t, TripleKind::Jts, 0).get("JTS2").unwrap().passed);
        // a plain JTS is not an LTS
        let r = check_triple_axioms(p.tensor(Side::Plus), TripleKind::Lts, 0);
        assert!(!r.get("LTS1").unwrap().passed);
        let r = check_triple_axioms(&TripleTensor::zero([2, 3, 2, 2]), TripleKind::Jts, 0);
        assert!(!r.passed());
    }
}
