//! The standard imbedding `𝔤 = 𝔮 ⊕ [𝔮, 𝔮]` of a Lie triple system.

use serde::Serialize;

use super::LieAlgebraTensor;
use crate::error::{Error, Result};
use crate::exactalg::linalg::{unit_vec, Subspace, Vector};
use crate::exactalg::{QMatrix, Rational};
use crate::report::{Check, CheckReport, Coverage};
use crate::svar::{check_triple_axioms, TripleKind};
use crate::tensor::TripleTensor;

/// `𝔤 = 𝔮 ⊕ 𝔥` with basis: the basis of `𝔮`, then an echelon basis of
/// `𝔥 = span R(bᵢ, bⱼ)`.
#[derive(Debug, Clone, Serialize)]
pub struct GradedImbedding {
    pub q_dim: usize,
    pub h_dim: usize,
    pub algebra: LieAlgebraTensor,
    /// `id` on `𝔥`, `−id` on `𝔮`.
    pub sigma: QMatrix,
    #[serde(skip)]
    pub h_basis: Vec<QMatrix>,
    /// Sylvester signature `(+, −, 0)` of the Killing form of `𝔤`.
    pub killing_signature: (usize, usize, usize),
    pub checks: CheckReport,
}

impl GradedImbedding {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }

    pub fn total_dim(&self) -> usize {
        self.q_dim + self.h_dim
    }
}

fn flatten(m: &QMatrix) -> Vector {
    m.entries().to_vec()
}

pub fn standard_imbedding(r: &TripleTensor) -> Result<GradedImbedding> {
    if !r.is_cubic() {
        return Err(Error::Axiom { axiom: "shape".into(), tuple: vec![] });
    }
    if let Some(c) = check_triple_axioms(r, TripleKind::Lts, 0x1e).first_failure() {
        return Err(Error::Axiom { axiom: c.id.clone(), tuple: c.witness.as_ref().map(|w| w.tuple.clone()).unwrap_or_default() });
    }
    let n = r.dim();
    let unit = |i: usize| unit_vec(n, i);
    let ops: Vec<QMatrix> = (0..n * n).map(|t| r.operator(&unit(t / n), &unit(t % n))).collect();
    let h = Subspace::span(n * n, &ops.iter().map(flatten).collect::<Vec<_>>());
    let m = h.dim();
    let h_basis: Vec<QMatrix> = h.basis().iter().map(|v| QMatrix::from_fn(n, n, |i, j| v[i * n + j].clone())).collect();
    let h_coords = |d: &QMatrix| h.coords(&flatten(d));

    let d = n + m;
    let mut escaped = None;
    let embed_h = |c: Vector| -> Vector {
        let mut v = vec![Rational::ZERO; n];
        v.extend(c);
        v
    };
    let mut names: Vec<String> = (0..n).map(|i| format!("q{}", i + 1)).collect();
    names.extend((0..m).map(|i| format!("h{}", i + 1)));
    let algebra = LieAlgebraTensor::from_fn(d, names, |i, j| match (i < n, j < n) {
        (true, true) => embed_h(h_coords(&ops[i * n + j]).expect("R(x, y) spans h")),
        (true, false) => {
            let mut v: Vector = h_basis[j - n].mul_vec(&unit(i)).iter().map(|x| -x).collect();
            v.resize(d, Rational::ZERO);
            v
        }
        (false, true) => {
            let mut v = h_basis[i - n].mul_vec(&unit(j));
            v.resize(d, Rational::ZERO);
            v
        }
        (false, false) => {
            let (a, b) = (&h_basis[i - n], &h_basis[j - n]);
            let c = &(a * b) - &(b * a);
            match h_coords(&c) {
                Some(c) => embed_h(c),
                None => {
                    escaped.get_or_insert([i, j]);
                    vec![Rational::ZERO; d]
                }
            }
        }
    });
    if let Some(t) = escaped {
        return Err(Error::Degenerate(format!("[h, h] leaves h at {t:?}")));
    }

    let mut checks = algebra.check_axioms();
    let sigma = QMatrix::from_fn(d, d, |i, j| {
        if i != j {
            Rational::ZERO
        } else if i < n {
            -Rational::ONE
        } else {
            Rational::ONE
        }
    });
    checks.push(match algebra.homomorphism_violation(&algebra, &sigma) {
        None => Check::pass("sigma-automorphism", (d * d) as u64, Coverage::Exhaustive),
        Some(t) => Check::fail("sigma-automorphism", (d * d) as u64, Coverage::Exhaustive, t.to_vec(), "grading is not respected"),
    });
    let ud = |i: usize| unit_vec(d, i);
    let mut triple_fail = None;
    'tb: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let v = algebra.bracket(&algebra.bracket(&ud(x), &ud(y)), &ud(z));
                let want = r.eval_basis(x, y, z);
                if v[..n] != want[..] || v[n..].iter().any(|c| !c.is_zero()) {
                    triple_fail = Some(vec![x, y, z]);
                    break 'tb;
                }
            }
        }
    }
    let cases = (n * n * n) as u64;
    checks.push(match triple_fail {
        None => Check::pass("triple-bracket", cases, Coverage::Exhaustive),
        Some(t) => Check::fail("triple-bracket", cases, Coverage::Exhaustive, t, "[[x,y],z] != R(x,y)z"),
    });
    let killing_signature = algebra.killing_inertia().signature();
    Ok(GradedImbedding { q_dim: n, h_dim: m, algebra, sigma, h_basis, killing_signature, checks })
}
