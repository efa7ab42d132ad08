//! Homotopies of spin factors and of `𝕂 × 𝕂`, and the characterizations
//! checked against raw membership.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::linalg::{dot, inverse, Subspace, Vector};
use crate::exactalg::{Field, QMatrix, Rational};
use crate::jordan::{JordanPair, PairKind};
use crate::sampling::{rational_vec, rng, SeededRng};
use crate::svar::{svar_membership, Homotopy};

/// Spectral data of a spin homotopy `α` with `α² = λ id`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpinDescriptor {
    /// `s (2P_E − id)` with `P_E` the β-orthogonal projection onto a
    /// nondegenerate `E = span(basis)`; `λ = s²`.
    Involution { s: Rational, basis: Vec<Vector> },
    /// `x ↦ Σ c_ij β(w_j, x) w_i` for an isotropic `span(w)` and symmetric `c`
    /// (identity when absent); `λ = 0`.
    Nilpotent { basis: Vec<Vector>, coeffs: Option<QMatrix> },
    /// `s J` with `J e_i = e_{p+i}`, `J e_{p+i} = −e_i` on `spin(p, p)`; `λ = −s²`.
    Complex { s: Rational },
}

fn spin_gram(p: &JordanPair) -> Result<&QMatrix> {
    p.spin_form().ok_or_else(|| Error::Descriptor(format!("{} is not a spin factor", p.kind)))
}

fn beta(g: &QMatrix, x: &[Rational], y: &[Rational]) -> Rational {
    dot(x, &g.mul_vec(y))
}

pub fn spin_family_alpha(p: &JordanPair, desc: &SpinDescriptor) -> Result<Homotopy> {
    let g = spin_gram(p)?;
    let n = g.rows();
    let check_len = |basis: &[Vector]| match basis.iter().find(|w| w.len() != n) {
        Some(w) => Err(Error::Descriptor(format!("vector of length {} in a {n}-dimensional spin factor", w.len()))),
        None => Ok(()),
    };
    let alpha = match desc {
        SpinDescriptor::Involution { s, basis } => {
            check_len(basis)?;
            Subspace::from_independent(n, basis)?;
            let id = QMatrix::identity(n);
            let proj = if basis.is_empty() {
                QMatrix::zeros(n, n)
            } else {
                let b = QMatrix::from_cols(n, basis);
                let m = &(&b.transpose() * g) * &b;
                let mi = inverse(&m).ok_or_else(|| Error::Degenerate("E is degenerate for beta".into()))?;
                &(&(&b * &mi) * &b.transpose()) * g
            };
            (&proj.scale(&Rational::int(2)) - &id).scale(s)
        }
        SpinDescriptor::Nilpotent { basis, coeffs } => {
            check_len(basis)?;
            for (i, x) in basis.iter().enumerate() {
                for (j, y) in basis.iter().enumerate().skip(i) {
                    let v = beta(g, x, y);
                    if !v.is_zero() {
                        return Err(Error::NotIsotropic(i, j, v.to_wire()));
                    }
                }
            }
            let k = basis.len();
            let c = coeffs.clone().unwrap_or_else(|| QMatrix::identity(k));
            if c.shape() != (k, k) || !c.is_symmetric() {
                return Err(Error::Schema(format!("coefficients must be a symmetric {k}x{k} matrix")));
            }
            if k == 0 {
                QMatrix::zeros(n, n)
            } else {
                let w = QMatrix::from_cols(n, basis);
                &(&(&w * &c) * &w.transpose()) * g
            }
        }
        SpinDescriptor::Complex { s } => {
            let half = match p.kind {
                PairKind::Spin { p: a, q: b } if a == b => a,
                PairKind::Spin { .. } => return Err(Error::Precondition("lambda < 0 needs signature (p, p)".into())),
                _ => return Err(Error::Precondition("complex structures are built on spin(p,p) only".into())),
            };
            QMatrix::from_fn(n, n, |r, c| {
                if r == c + half && c < half {
                    s.clone()
                } else if c == r + half && r < half {
                    -s
                } else {
                    Rational::ZERO
                }
            })
        }
    };
    if !rivillis_predicate(p, &alpha)? {
        return Err(Error::Degenerate("constructed map is not beta-symmetric with scalar square".into()));
    }
    if let Some(triple) = svar_membership(p, &alpha)?.witness {
        return Err(Error::NotMember { triple });
    }
    Ok(Homotopy::new(alpha))
}

/// β-symmetry of `α` and `α² ∈ 𝕂 id`.
pub fn rivillis_predicate(p: &JordanPair, alpha: &QMatrix) -> Result<bool> {
    let g = spin_gram(p)?;
    let n = g.rows();
    if alpha.shape() != (n, n) {
        return Err(crate::error::shape_err(format!("{n}x{n}"), format!("{:?}", alpha.shape())));
    }
    if !(g * alpha).is_symmetric() {
        return Ok(false);
    }
    let sq = alpha * alpha;
    let lambda = sq.get(0, 0).clone();
    Ok(sq == QMatrix::identity(n).scale(&lambda))
}

/// Raw membership for a diagonal integer form and an integer `α` (row-major),
/// evaluated in machine integers on all basis triples.
pub fn spin_member_fast(g: &[i64], a: &[i64]) -> bool {
    let n = g.len();
    assert!(n <= 8 && a.len() == n * n, "integer route covers n <= 8");
    let col = |j: usize, r: usize| a[r * n + j];
    let mut lhs = [0i64; 8];
    let mut rhs = [0i64; 8];
    for i in 0..n {
        for k in i..n {
            let bik: i64 = (0..n).map(|l| g[l] * col(i, l) * col(k, l)).sum();
            for j in 0..n {
                // α T(e_i, αe_j, e_k) = g_k a_kj αe_i + g_i a_ij αe_k − δ_ik g_i α²e_j
                // T(αe_i, e_j, αe_k) = g_j a_jk αe_i + g_j a_ji αe_k − β(αe_i, αe_k) e_j
                let (ck, ci) = (g[k] * col(j, k), g[i] * col(j, i));
                let (di, dk) = (g[j] * col(k, j), g[j] * col(i, j));
                for r in 0..n {
                    lhs[r] = ck * col(i, r) + ci * col(k, r);
                    rhs[r] = di * col(i, r) + dk * col(k, r);
                }
                if i == k {
                    for r in 0..n {
                        let sq: i64 = (0..n).map(|m| a[r * n + m] * col(j, m)).sum();
                        lhs[r] -= g[i] * sq;
                    }
                }
                rhs[j] -= bik;
                if lhs[..n] != rhs[..n] {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub pair: String,
    pub grid_points: u64,
    pub grid_members: u64,
    pub samples: u64,
    pub sample_members: u64,
    pub disagreements: u64,
    /// Integer route cross-checked against the exact sweep.
    pub cross_checked: u64,
    /// First disagreeing matrix, row-major.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_disagreement: Option<Vec<Rational>>,
    /// The characterization is claimed only in dimension at least 3.
    pub asserted: bool,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        !self.asserted || self.disagreements == 0
    }

    fn record(&mut self, member: bool, predicate: bool, alpha: &QMatrix) {
        if member != predicate {
            self.disagreements += 1;
            if self.first_disagreement.is_none() {
                self.first_disagreement = Some(alpha.entries().to_vec());
            }
        }
    }
}

fn integer_diagonal(g: &QMatrix) -> Option<Vec<i64>> {
    let n = g.rows();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && !g.get(i, j).is_zero() {
                return None;
            }
        }
        let d = g.get(i, i);
        if !d.is_integer() {
            return None;
        }
        out.push(i64::try_from(d.numer()).ok()?);
    }
    Some(out)
}

/// Reflection `x ↦ x − 2β(x,v)/β(v,v) v`; `None` for isotropic `v`.
fn reflection(g: &QMatrix, v: &[Rational]) -> Option<QMatrix> {
    let n = v.len();
    let bvv = beta(g, v, v);
    if bvv.is_zero() {
        return None;
    }
    let gv = g.mul_vec(v);
    let c = Rational::int(2) * bvv.recip();
    Some(QMatrix::from_fn(n, n, |r, k| {
        let d = if r == k { Rational::ONE } else { Rational::ZERO };
        d - &(&(&c * &v[r]) * &gv[k])
    }))
}

/// Product of up to three random rational reflections.
fn random_isometry(g: &QMatrix, rng: &mut SeededRng) -> QMatrix {
    let n = g.rows();
    let mut m = QMatrix::identity(n);
    for _ in 0..3 {
        if let Some(r) = reflection(g, &rational_vec(rng, n, 3)) {
            m = &r * &m;
        }
    }
    m
}

fn standard_isotropic(p: usize, q: usize) -> Vec<Vector> {
    let n = p + q;
    (0..p.min(q))
        .map(|i| (0..n).map(|r| if r == i || r == p + i { Rational::ONE } else { Rational::ZERO }).collect())
        .collect()
}

fn nonzero_rational(rng: &mut SeededRng) -> Rational {
    let mut k = 0;
    while k == 0 {
        k = rng.gen_range(-3..=3);
    }
    Rational::new(k, rng.gen_range(1..=3))
}

/// A random member built from random spectral data and a random isometry.
fn random_spin_member(p: &JordanPair, rng: &mut SeededRng, kind: usize) -> Option<QMatrix> {
    let g = p.spin_form()?;
    let n = g.rows();
    let (sp, sq) = match p.kind {
        PairKind::Spin { p, q } => (p, q),
        _ => return None,
    };
    let iso = random_isometry(g, rng);
    let iso_inv = inverse(&iso)?;
    let s = nonzero_rational(rng);
    let desc = match kind % 3 {
        0 => {
            let k = rng.gen_range(0..=n);
            SpinDescriptor::Involution { s, basis: (0..k).map(|_| rational_vec(rng, n, 3)).collect() }
        }
        1 if sp.min(sq) > 0 => {
            let iso_b: Vec<Vector> = standard_isotropic(sp, sq).iter().map(|w| iso.mul_vec(w)).collect();
            let k = rng.gen_range(1..=iso_b.len());
            let c = QMatrix::from_fn(k, k, |_, _| Rational::int(rng.gen_range(-2..=2)));
            SpinDescriptor::Nilpotent { basis: iso_b[..k].to_vec(), coeffs: Some(&c + &c.transpose()) }
        }
        2 if sp == sq => SpinDescriptor::Complex { s },
        _ => SpinDescriptor::Involution { s, basis: vec![rational_vec(rng, n, 3)] },
    };
    let a = spin_family_alpha(p, &desc).ok()?.matrix;
    Some(match desc {
        SpinDescriptor::Complex { .. } => &(&iso * &a) * &iso_inv,
        _ => a,
    })
}

/// Predicate against raw membership: every integer matrix with entries in
/// `[-grid, grid]`, then `samples` seeded rational samples (random matrices,
/// random members and perturbed members in turn).
pub fn rivillis_equivalence(p: &JordanPair, grid: i64, samples: usize, seed: u64) -> Result<EquivalenceReport> {
    let g = spin_gram(p)?.clone();
    let n = g.rows();
    let mut rep = EquivalenceReport {
        pair: p.label.clone(),
        grid_points: 0,
        grid_members: 0,
        samples: 0,
        sample_members: 0,
        disagreements: 0,
        cross_checked: 0,
        first_disagreement: None,
        asserted: n >= 3,
    };
    let gd = integer_diagonal(&g);
    let width = (2 * grid + 1) as u64;
    let total = width.checked_pow((n * n) as u32).ok_or_else(|| Error::Size("grid too large".into()))?;
    let mut a = vec![-grid; n * n];
    for idx in 0..total {
        if idx > 0 {
            for x in a.iter_mut() {
                if *x < grid {
                    *x += 1;
                    break;
                }
                *x = -grid;
            }
        }
        let alpha = || QMatrix::from_fn(n, n, |r, c| Rational::int(a[r * n + c]));
        let (member, predicate) = match &gd {
            Some(d) => {
                let member = spin_member_fast(d, &a);
                let predicate = int_predicate(d, &a);
                // the exact sweep confirms every positive and a thin slice of the rest
                if member || predicate || idx % 4099 == 0 {
                    let exact = svar_membership(p, &alpha())?.member;
                    rep.cross_checked += 1;
                    if exact != member {
                        return Err(Error::Degenerate(format!("integer membership route disagrees at grid point {idx}")));
                    }
                }
                (member, predicate)
            }
            None => {
                let m = alpha();
                (svar_membership(p, &m)?.member, rivillis_predicate(p, &m)?)
            }
        };
        rep.grid_points += 1;
        rep.grid_members += u64::from(member);
        if member != predicate {
            rep.record(member, predicate, &alpha());
        }
    }

    let mut r = rng(seed);
    let mut last_member: Option<QMatrix> = None;
    for i in 0..samples {
        let m = match i % 4 {
            0 => QMatrix::from_rows((0..n).map(|_| rational_vec(&mut r, n, 3)).collect()),
            3 => match &last_member {
                Some(base) => {
                    let mut m = base.clone();
                    let (x, y) = (r.gen_range(0..n), r.gen_range(0..n));
                    let v = m.get(x, y) + &nonzero_rational(&mut r);
                    m.set(x, y, v);
                    m
                }
                None => QMatrix::from_rows((0..n).map(|_| rational_vec(&mut r, n, 3)).collect()),
            },
            k => match random_spin_member(p, &mut r, i / 4 + k) {
                Some(m) => {
                    last_member = Some(m.clone());
                    m
                }
                None => QMatrix::from_rows((0..n).map(|_| rational_vec(&mut r, n, 3)).collect()),
            },
        };
        let member = svar_membership(p, &m)?.member;
        let predicate = rivillis_predicate(p, &m)?;
        rep.samples += 1;
        rep.sample_members += u64::from(member);
        rep.record(member, predicate, &m);
    }
    Ok(rep)
}

fn int_predicate(g: &[i64], a: &[i64]) -> bool {
    let n = g.len();
    for r in 0..n {
        for c in r + 1..n {
            if g[r] * a[r * n + c] != g[c] * a[c * n + r] {
                return false;
            }
        }
    }
    let sq = |r: usize, c: usize| -> i64 { (0..n).map(|m| a[r * n + m] * a[m * n + c]).sum() };
    let lambda = sq(0, 0);
    (0..n).all(|r| (0..n).all(|c| sq(r, c) == if r == c { lambda } else { 0 }))
}

/// `𝕂 × 𝕂` with `T(x, y, z) = 2xyz` componentwise, as a pair.
pub fn ktwo_pair() -> JordanPair {
    let k = JordanPair::rect(1, 1, Field::Real);
    let mut p = JordanPair::direct_sum(&k, &k);
    p.label = "K x K".into();
    p
}

/// Diagonal, or a multiple of the exchange map.
pub fn ktwo_predicate(alpha: &QMatrix) -> bool {
    let (a, b, c, d) = (alpha.get(0, 0), alpha.get(0, 1), alpha.get(1, 0), alpha.get(1, 1));
    (b.is_zero() && c.is_zero()) || (a.is_zero() && d.is_zero() && b == c)
}

/// Exhaustive comparison on all `2 × 2` integer matrices with entries in `{−2, …, 2}`.
pub fn ktwo_equivalence() -> Result<EquivalenceReport> {
    let p = ktwo_pair();
    let mut rep = EquivalenceReport {
        pair: p.label.clone(),
        grid_points: 0,
        grid_members: 0,
        samples: 0,
        sample_members: 0,
        disagreements: 0,
        cross_checked: 0,
        first_disagreement: None,
        asserted: true,
    };
    for idx in 0..625i64 {
        let e: Vec<i64> = (0..4).map(|k| (idx / 5i64.pow(k)) % 5 - 2).collect();
        let m = QMatrix::from_ints(&[&e[0..2], &e[2..4]]);
        let member = svar_membership(&p, &m)?.member;
        rep.grid_points += 1;
        rep.grid_members += u64::from(member);
        rep.record(member, ktwo_predicate(&m), &m);
    }
    Ok(rep)
}
