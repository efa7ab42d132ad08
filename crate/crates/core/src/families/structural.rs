//! Structural endomorphisms `(g: V⁺ → V⁺, h: V⁻ → V⁻)` of the matrix pairs.

use serde::Serialize;

use super::{normalize_label, RowPair};
use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Field, Scalar};
use crate::jordan::{JordanPair, PairKind, Side};
use crate::svar::{embed_structural, polarized_pair, structural_check, svar_membership, StructuralPair};

#[derive(Clone, Debug, Serialize)]
pub struct StructuralRow {
    pub label: &'static str,
    pub pairs: &'static [RowPair],
    pub g: &'static str,
    pub h: &'static str,
}

static ROWS: &[StructuralRow] = &[
    StructuralRow { label: "1.a", pairs: &[RowPair::Rect], g: "A X^t B", h: "A^t X'^t B^t" },
    StructuralRow { label: "1.b", pairs: &[RowPair::Rect], g: "A X B", h: "B X' A" },
    StructuralRow { label: "2", pairs: &[RowPair::Sym, RowPair::HermC, RowPair::HermH], g: "A X A^t", h: "A^t X' A" },
    StructuralRow { label: "3.a", pairs: &[RowPair::Asym], g: "A X A^t", h: "A^t X' A" },
    StructuralRow {
        label: "3.b",
        pairs: &[RowPair::Asym],
        g: "A X u u^t + u u^t X A^t",
        h: "A^t X' u u^t + u u^t X' A",
    },
];

pub fn structural_rows() -> &'static [StructuralRow] {
    ROWS
}

/// `conjugate` gives the antilinear variant `(g ∘ c, c ∘ h)`, `c` the entrywise
/// conjugation (complex pairs).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StructuralParams {
    pub a: Option<ExactMatrix>,
    pub b: Option<ExactMatrix>,
    pub u: Option<Vec<Scalar>>,
    pub conjugate: bool,
}

fn row_pair_of(kind: &PairKind) -> Option<RowPair> {
    Some(match kind {
        PairKind::Rect { .. } => RowPair::Rect,
        PairKind::Sym { .. } => RowPair::Sym,
        PairKind::Asym { .. } => RowPair::Asym,
        PairKind::HermC { .. } => RowPair::HermC,
        PairKind::HermH { .. } => RowPair::HermH,
        _ => return None,
    })
}

pub fn structural_endo_family(label: &str, pair: &JordanPair, params: &StructuralParams) -> Result<StructuralPair> {
    let l = normalize_label(label);
    let row = ROWS.iter().find(|r| r.label == l).ok_or_else(|| Error::UnknownRow(l.clone()))?;
    let rp = row_pair_of(&pair.kind).filter(|k| row.pairs.contains(k));
    let rp = rp.ok_or_else(|| Error::Descriptor(format!("structural row {l} does not apply to {}", pair.kind)))?;
    let field = pair.field();
    let schema = |m: &str| Error::Schema(format!("structural row {l}: {m}"));
    if params.conjugate && field != Field::Complex {
        return Err(schema("conjugation needs a complex pair"));
    }
    let (p, q) = pair.space(Side::Plus).expect("matrix pair").shape();
    let take = |m: &Option<ExactMatrix>, name: &str, shape: (usize, usize)| -> Result<ExactMatrix> {
        let m = m.as_ref().ok_or_else(|| schema(&format!("missing matrix {name}")))?;
        if m.shape() != shape {
            return Err(schema(&format!("{name} must be {}x{}", shape.0, shape.1)));
        }
        if m.entries().iter().any(|s| s.minimal_field() > field) {
            return Err(schema(&format!("{name} has entries outside {}", field.symbol())));
        }
        Ok(m.in_field(field))
    };
    let pre = |x: &ExactMatrix| if params.conjugate { x.conj() } else { x.clone() };
    let post = pre;
    let adj = |x: &ExactMatrix| if matches!(rp, RowPair::HermC | RowPair::HermH) { x.conj_transpose() } else { x.transpose() };
    type Map<'a> = Box<dyn Fn(&ExactMatrix) -> ExactMatrix + 'a>;
    let (g, h): (Map, Map) = match l.as_str() {
        "1.a" => {
            let (a, b) = (take(&params.a, "A", (p, q))?, take(&params.b, "B", (p, q))?);
            let (at, bt) = (a.transpose(), b.transpose());
            (
                Box::new(move |x| &(&a * &pre(x).transpose()) * &b),
                Box::new(move |y| post(&(&(&at * &y.transpose()) * &bt))),
            )
        }
        "1.b" => {
            let (a, b) = (take(&params.a, "A", (p, p))?, take(&params.b, "B", (q, q))?);
            let (a2, b2) = (a.clone(), b.clone());
            (Box::new(move |x| &(&a * &pre(x)) * &b), Box::new(move |y| post(&(&(&b2 * y) * &a2))))
        }
        "2" | "3.a" => {
            let a = take(&params.a, "A", (p, p))?;
            let at = adj(&a);
            let (a2, at2) = (a.clone(), at.clone());
            (Box::new(move |x| &(&a * &pre(x)) * &at), Box::new(move |y| post(&(&(&at2 * y) * &a2))))
        }
        _ => {
            let a = take(&params.a, "A", (p, p))?;
            let u = params.u.as_ref().ok_or_else(|| schema("missing vector u"))?;
            if u.len() != p {
                return Err(schema(&format!("u must have length {p}")));
            }
            let uc = ExactMatrix::from_fn(p, 1, |i, _| u[i].clone().with_field(field));
            let uu = &uc * &uc.transpose();
            let at = a.transpose();
            let (a2, at2, uu2) = (a.clone(), at.clone(), uu.clone());
            (
                Box::new(move |x| {
                    let x = pre(x);
                    &(&(&a * &x) * &uu) + &(&(&uu * &x) * &at)
                }),
                Box::new(move |y| post(&(&(&(&at2 * y) * &uu2) + &(&(&uu2 * y) * &a2)))),
            )
        }
    };
    let sp = StructuralPair { g: pair.realify_map(Side::Plus, Side::Plus, g)?, h: pair.realify_map(Side::Minus, Side::Minus, h)? };
    if let Some((_, triple)) = structural_check(pair, pair, &sp)?.witness {
        return Err(Error::NotStructural { triple });
    }
    let embedded = embed_structural(pair, &sp.g, &sp.h)?;
    if let Some(triple) = svar_membership(&polarized_pair(pair), &embedded)?.witness {
        return Err(Error::NotMember { triple });
    }
    Ok(sp)
}
