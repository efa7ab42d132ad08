//! Known low-dimensional isomorphisms, certified by a finite search over a
//! declared candidate set (global scalar × middle-slot twist).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::linalg::{congruent_diagonalize, Vector};
use crate::exactalg::{ExactMatrix, Field, QMatrix, Rational, Scalar, Space};
use crate::jordan::{JordanPair, PairKind, Side};
use crate::tensor::TripleTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoId {
    M13rAsym3r,
    M13cAsym3c,
    Sym2rSpin21,
    Herm2cSpin31,
    M22rSpin22,
    Asym4rSpin33,
}

impl IsoId {
    pub const ALL: [IsoId; 6] =
        [IsoId::M13rAsym3r, IsoId::M13cAsym3c, IsoId::Sym2rSpin21, IsoId::Herm2cSpin31, IsoId::M22rSpin22, IsoId::Asym4rSpin33];

    pub fn as_str(self) -> &'static str {
        match self {
            IsoId::M13rAsym3r => "m13r-asym3r",
            IsoId::M13cAsym3c => "m13c-asym3c",
            IsoId::Sym2rSpin21 => "sym2r-spin21",
            IsoId::Herm2cSpin31 => "herm2c-spin31",
            IsoId::M22rSpin22 => "m22r-spin22",
            IsoId::Asym4rSpin33 => "asym4r-spin33",
        }
    }
}

impl fmt::Display for IsoId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IsoId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IsoId::ALL.into_iter().find(|i| i.as_str() == s).ok_or_else(|| Error::UnknownIsomorphism(s.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoCertificate {
    pub id: IsoId,
    /// The verified identity, symbolically.
    pub identity: String,
    pub found: bool,
    /// Global sign or scalar of the intertwiner.
    pub scalar: Option<Rational>,
    pub twist: Option<String>,
    /// Basis triples swept per candidate.
    pub triples_checked: u64,
    /// Polarized quadratic form (spin identifications only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<QMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram_signature: Option<(usize, usize, usize)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub expected_signatures: Vec<(usize, usize)>,
    /// Coordinate map from the first space to the second.
    pub map: QMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl IsoCertificate {
    pub fn signature_ok(&self) -> bool {
        match self.gram_signature {
            None => true,
            Some((p, n, z)) => z == 0 && self.expected_signatures.contains(&(p, n)),
        }
    }

    pub fn passed(&self) -> bool {
        self.found && self.signature_ok()
    }
}

fn scalar_candidates() -> Vec<Rational> {
    [1, -1, 2, -2].iter().map(|&n| Rational::int(n)).chain([Rational::new(1, 2), Rational::new(-1, 2)]).collect()
}

/// First candidate `λ` with `lhs = λ rhs`, skipping the trivial `rhs = 0`.
fn find_scalar(lhs: &TripleTensor, rhs: &TripleTensor, candidates: &[Rational]) -> Option<Rational> {
    if rhs.is_zero() {
        return None;
    }
    candidates.iter().find(|l| lhs.first_difference(&rhs.scale(l)).is_none()).cloned()
}

fn map_between(from: &Space, to: &Space, f: impl Fn(&ExactMatrix) -> ExactMatrix) -> QMatrix {
    let cols: Vec<Vector> = from.basis().iter().map(|b| to.coords(&f(b)).expect("map lands in the target space")).collect();
    QMatrix::from_cols(to.dim(), &cols)
}

/// `x ↦ x̂` with `x̂ y = x × y` for column `y`.
fn hat(x: &ExactMatrix) -> ExactMatrix {
    let f = x.field();
    let (a, b, c) = (x.get(0, 0).clone(), x.get(0, 1).clone(), x.get(0, 2).clone());
    let z = Scalar::zero(f);
    ExactMatrix::from_rows(vec![
        vec![z.clone(), -&c, b.clone()],
        vec![c, z.clone(), -&a],
        vec![-&b, a, z],
    ])
}

fn cross_product(id: IsoId, field: Field) -> Result<IsoCertificate> {
    let proj = JordanPair::rect(1, 3, field);
    let asym = JordanPair::from_kind(&PairKind::Asym { n: 3, field })?;
    let (pp, pm) = (proj.space(Side::Plus).expect("matrix pair"), proj.space(Side::Minus).expect("matrix pair"));
    let sa = asym.space(Side::Plus).expect("matrix pair");
    let j = map_between(pp, sa, hat);
    let transpose = map_between(pp, pm, |y| y.transpose());
    let lhs = asym.tensor(Side::Plus).precompose(&j, &j, &j);
    let rhs = proj.tensor(Side::Plus).with_middle(&transpose).then(&j);
    let signs = [Rational::ONE, -Rational::ONE];
    let s = find_scalar(&lhs, &rhs, &signs);
    let d = pp.dim() as u64;
    Ok(IsoCertificate {
        id,
        identity: "T_asym(jx, jy, jz) = s j(T_proj(x, y, z)),  T_proj(x, y, z) = x y^t z + z y^t x".into(),
        found: s.is_some(),
        failure: if s.is_none() { Some("no sign in {+1, -1} intertwines".into()) } else { None },
        scalar: s,
        twist: Some("transpose".into()),
        triples_checked: d * d * d,
        gram: None,
        gram_signature: None,
        expected_signatures: vec![],
        map: j,
    })
}

fn det2(x: &ExactMatrix) -> Scalar {
    &(x.get(0, 0) * x.get(1, 1)) - &(x.get(0, 1) * x.get(1, 0))
}

fn adj2(y: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_rows(vec![vec![y.get(1, 1).clone(), -y.get(0, 1)], vec![-y.get(1, 0), y.get(0, 0).clone()]])
}

fn pfaffian4(x: &ExactMatrix) -> Scalar {
    let e = |i, j| x.get(i, j);
    &(&(e(0, 1) * e(2, 3)) - &(e(0, 2) * e(1, 3))) + &(e(0, 3) * e(1, 2))
}

/// `(⋆Y)ᵢⱼ = ½ Σ ε_{ijkl} Y_{kl}` on `Asym(4)`.
fn hodge4(y: &ExactMatrix) -> ExactMatrix {
    let f = y.field();
    let mut out = ExactMatrix::zeros_in(f, 4, 4);
    let dual = [((0, 1), (2, 3), 1), ((0, 2), (1, 3), -1), ((0, 3), (1, 2), 1), ((1, 2), (0, 3), 1), ((1, 3), (0, 2), -1), ((2, 3), (0, 1), 1)];
    for ((i, j), (k, l), s) in dual {
        let v = y.get(k, l).scale(&Rational::int(s));
        out.set(j, i, -&v);
        out.set(i, j, v);
    }
    out
}

fn spin_identification(id: IsoId) -> Result<IsoCertificate> {
    let (spec, norm, twist_name, twist, expected): (&str, fn(&ExactMatrix) -> Scalar, &str, fn(&ExactMatrix) -> ExactMatrix, Vec<(usize, usize)>) =
        match id {
            IsoId::Sym2rSpin21 => ("sym:R:2", det2, "adjugate", adj2, vec![(1, 2), (2, 1)]),
            IsoId::Herm2cSpin31 => ("hermC:2", det2, "adjugate", adj2, vec![(1, 3), (3, 1)]),
            IsoId::M22rSpin22 => ("rect:R:2x2", det2, "adjugate", adj2, vec![(2, 2)]),
            IsoId::Asym4rSpin33 => ("asym:R:4", pfaffian4, "hodge", hodge4, vec![(3, 3)]),
            _ => unreachable!("not a spin identification"),
        };
    let v = JordanPair::parse(spec)?;
    let (sp, sm) = (v.space(Side::Plus).expect("matrix pair"), v.space(Side::Minus).expect("matrix pair"));
    let basis = sp.basis();
    let d = basis.len();
    let n = |x: &ExactMatrix| -> Rational {
        let s = norm(x);
        debug_assert!(s.is_real(), "norm form is real");
        s.re().clone()
    };
    let norms: Vec<Rational> = basis.iter().map(n).collect();
    let gram = QMatrix::from_fn(d, d, |i, j| {
        if i == j {
            &norms[i] + &norms[i]
        } else {
            &(&n(&(&basis[i] + &basis[j])) - &norms[i]) - &norms[j]
        }
    });
    let inertia = congruent_diagonalize(&gram)?;
    let identity = format!("T(x, t(y), z) = l (b(y,z) x + b(y,x) z - b(x,z) y),  b = polarized {}", if id == IsoId::Asym4rSpin33 { "Pfaffian" } else { "determinant" });
    let mut cert = IsoCertificate {
        id,
        identity,
        found: false,
        scalar: None,
        twist: None,
        triples_checked: (d * d * d) as u64,
        gram: Some(gram.clone()),
        gram_signature: Some(inertia.signature()),
        expected_signatures: expected,
        map: QMatrix::identity(d),
        failure: None,
    };
    if inertia.zero > 0 {
        cert.failure = Some("polarized form is degenerate".into());
        return Ok(cert);
    }
    let spin = JordanPair::spin_with_form(&gram, id.as_str())?;
    let rhs = spin.tensor(Side::Plus);
    let twists = [("identity", map_between(sp, sm, |y| y.clone())), (twist_name, map_between(sp, sm, twist))];
    for (name, t) in &twists {
        if let Some(l) = find_scalar(&v.tensor(Side::Plus).with_middle(t), rhs, &scalar_candidates()) {
            cert.found = true;
            cert.scalar = Some(l);
            cert.twist = Some(name.to_string());
            return Ok(cert);
        }
    }
    cert.failure = Some(format!("no (twist, scalar) in {{identity, {twist_name}}} x {{±1, ±2, ±1/2}} intertwines"));
    Ok(cert)
}

/// Certificate for one of the identifiers in [`IsoId::ALL`].
pub fn verify_isomorphism(which: &str) -> Result<IsoCertificate> {
    let id: IsoId = which.parse()?;
    match id {
        IsoId::M13rAsym3r => cross_product(id, Field::Real),
        IsoId::M13cAsym3c => cross_product(id, Field::Complex),
        _ => spin_identification(id),
    }
}
