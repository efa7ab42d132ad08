//! (J1)/(J2) verification for Jordan pairs.

use rand::Rng;

use super::{JordanPair, Side};
use crate::exactalg::linalg::{add_vec, sub_vec, unit_vec, Vector};
use crate::exactalg::{QMatrix, Rational};
use crate::report::{Check, CheckReport, Coverage};
use crate::sampling;
use crate::tensor::TripleTensor;

/// When (J2) is swept exhaustively and how it is sampled otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomPolicy {
    /// Exhaustive (J2) when `dim V⁺ + dim V⁻` is at most this.
    pub exhaustive_limit: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for AxiomPolicy {
    fn default() -> Self {
        AxiomPolicy { exhaustive_limit: 20, samples: 200, seed: 0x5eed }
    }
}

fn col_support(m: &QMatrix) -> Vec<Vec<(usize, Rational)>> {
    (0..m.cols())
        .map(|c| (0..m.rows()).filter(|&r| !m.get(r, c).is_zero()).map(|r| (r, m.get(r, c).clone())).collect())
        .collect()
}

/// First basis triple where `out·T(x,y,z) ≠ T(d1 x,y,z) + T(x,d2 y,z) + T(x,y,d3 z)`.
pub fn derivation_violation(
    t: &TripleTensor,
    out: &QMatrix,
    d1: &QMatrix,
    d2: &QMatrix,
    d3: &QMatrix,
) -> Option<[usize; 3]> {
    let [a, b, c, dout] = t.dims();
    let (s1, s2, s3) = (col_support(d1), col_support(d2), col_support(d3));
    let so = col_support(out);
    for x in 0..a {
        for y in 0..b {
            for z in 0..c {
                let mut acc = vec![Rational::ZERO; dout];
                for (m, v) in t.entry(x, y, z) {
                    for (r, s) in &so[*m] {
                        acc[*r] += &(v * s);
                    }
                }
                for (i, s) in &s1[x] {
                    for (m, v) in t.entry(*i, y, z) {
                        acc[*m] -= &(s * v);
                    }
                }
                for (j, s) in &s2[y] {
                    for (m, v) in t.entry(x, *j, z) {
                        acc[*m] -= &(s * v);
                    }
                }
                for (k, s) in &s3[z] {
                    for (m, v) in t.entry(x, y, *k) {
                        acc[*m] -= &(s * v);
                    }
                }
                if acc.iter().any(|v| !v.is_zero()) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

/// `z ↦ T(e_i, e_j, z)`.
pub(crate) fn basis_operator(t: &TripleTensor, i: usize, j: usize) -> QMatrix {
    let [_, _, c, d] = t.dims();
    let mut m = QMatrix::zeros(d, c);
    for k in 0..c {
        for (r, v) in t.entry(i, j, k) {
            m.set(*r, k, v.clone());
        }
    }
    m
}

fn j1(p: &JordanPair, side: Side) -> Check {
    let t = p.tensor(side);
    let [a, b, _, _] = t.dims();
    let id = format!("J1{}", sign(side));
    for i in 0..a {
        for j in 0..b {
            for k in i + 1..a {
                if t.entry(i, j, k) != t.entry(k, j, i) {
                    return Check::fail(id, (a * b * a) as u64, Coverage::Exhaustive, vec![i, j, k], format!(
                        "T({},{},{}) != T({},{},{})",
                        p.basis_label(side, i),
                        p.basis_label(side.opposite(), j),
                        p.basis_label(side, k),
                        p.basis_label(side, k),
                        p.basis_label(side.opposite(), j),
                        p.basis_label(side, i)
                    ));
                }
            }
        }
    }
    Check::pass(id, (a * b * a) as u64, Coverage::Exhaustive)
}

fn sign(side: Side) -> &'static str {
    match side {
        Side::Plus => "+",
        Side::Minus => "-",
    }
}

fn j2_exhaustive(p: &JordanPair, side: Side) -> Check {
    let t = p.tensor(side);
    let to = p.tensor(side.opposite());
    let (d, e) = (p.dim(side), p.dim(side.opposite()));
    let id = format!("J2{}", sign(side));
    let cases = (d * e * d * e * d) as u64;
    for u in 0..d {
        for v in 0..e {
            let dm = basis_operator(t, u, v);
            let dp = basis_operator(to, v, u);
            if let Some([x, y, z]) = derivation_violation(t, &dm, &dm, &(-&dp), &dm) {
                return Check::fail(id, cases, Coverage::Exhaustive, vec![u, v, x, y, z], "T(u,v,T(x,y,z)) differs");
            }
        }
    }
    Check::pass(id, cases, Coverage::Exhaustive)
}

/// Both sides of (J2) evaluated on explicit vectors.
pub(crate) fn j2_residual(t: &TripleTensor, to: &TripleTensor, u: &[Rational], v: &[Rational], x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
    let lhs = t.eval(u, v, &t.eval(x, y, z));
    let r1 = t.eval(&t.eval(u, v, x), y, z);
    let r2 = t.eval(x, &to.eval(v, u, y), z);
    let r3 = t.eval(x, y, &t.eval(u, v, z));
    sub_vec(&lhs, &add_vec(&sub_vec(&r1, &r2), &r3))
}

fn j2_sampled(p: &JordanPair, side: Side, policy: &AxiomPolicy) -> Check {
    let t = p.tensor(side);
    let to = p.tensor(side.opposite());
    let (d, e) = (p.dim(side), p.dim(side.opposite()));
    let id = format!("J2{}", sign(side));
    let mut rng = sampling::rng(policy.seed ^ if side == Side::Plus { 0 } else { 0x9e37 });
    for s in 0..policy.samples {
        // alternate between basis tuples and dense integer vectors
        let (u, v, x, y, z) = if s % 2 == 0 {
            (
                unit_vec(d, rng.gen_range(0..d)),
                unit_vec(e, rng.gen_range(0..e)),
                unit_vec(d, rng.gen_range(0..d)),
                unit_vec(e, rng.gen_range(0..e)),
                unit_vec(d, rng.gen_range(0..d)),
            )
        } else {
            (
                sampling::int_vec(&mut rng, d, 2),
                sampling::int_vec(&mut rng, e, 2),
                sampling::int_vec(&mut rng, d, 2),
                sampling::int_vec(&mut rng, e, 2),
                sampling::int_vec(&mut rng, d, 2),
            )
        };
        if j2_residual(t, to, &u, &v, &x, &y, &z).iter().any(|c| !c.is_zero()) {
            return Check::fail(id, policy.samples as u64, Coverage::Sampled, vec![s], format!("J2 fails on sample {s}"));
        }
    }
    Check::pass(id, policy.samples as u64, Coverage::Sampled)
}

/// (J1) on all basis triples and (J2) per the policy, for both signs.
pub fn check_pair_axioms(p: &JordanPair, policy: &AxiomPolicy) -> CheckReport {
    let mut r = CheckReport::new();
    let exhaustive = p.dim(Side::Plus) + p.dim(Side::Minus) <= policy.exhaustive_limit;
    for side in [Side::Plus, Side::Minus] {
        r.push(j1(p, side));
        r.push(if exhaustive { j2_exhaustive(p, side) } else { j2_sampled(p, side, policy) });
    }
    r
}
