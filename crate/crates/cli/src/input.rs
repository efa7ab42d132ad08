//! Parsing of pair specs, scalars, matrices and parameter blocks.
//!
//! Scalars are JSON integers, `"p/q"` strings, `[re, im]` or `[a, b, c, d]`.
//! Matrices are row-major nested arrays, or the shorthand `"dia(a,b,c)"`.

use std::fs;

use serde_json::Value;

use homotope_core::families::{FamilyParams, SpinDescriptor, StructuralParams};
use homotope_core::ideals::IdealDescriptor;
use homotope_core::jordan::PairSpec;
use homotope_core::{ExactMatrix, Field, JordanPair, QMatrix, Rational, Scalar};

/// Input problems; these map to exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub type InputResult<T> = std::result::Result<T, InputError>;

fn bad<T>(msg: impl Into<String>) -> InputResult<T> {
    Err(InputError(msg.into()))
}

pub fn parse_rational(v: &Value) -> InputResult<Rational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::int(i)),
            None => bad(format!("non-integer number {n}; write fractions as \"p/q\"")),
        },
        Value::String(s) => s.parse().map_err(|e| InputError(format!("{e}"))),
        _ => bad(format!("expected a rational, found {v}")),
    }
}

pub fn parse_scalar(v: &Value) -> InputResult<Scalar> {
    match v {
        Value::Array(c) if c.len() == 2 || c.len() == 4 => {
            let comps = c.iter().map(parse_rational).collect::<InputResult<Vec<_>>>()?;
            let field = if c.len() == 2 { Field::Complex } else { Field::Quaternion };
            Ok(Scalar::from_components(field, &comps))
        }
        Value::Array(c) => bad(format!("scalar arrays have 2 or 4 components, found {}", c.len())),
        _ => Ok(Scalar::real(Field::Real, parse_rational(v)?)),
    }
}

/// The largest field any entry was written in.
fn widest(entries: &[Scalar]) -> Field {
    entries.iter().map(|s| s.field).max().unwrap_or(Field::Real)
}

pub fn parse_vector(v: &Value) -> InputResult<Vec<Scalar>> {
    let items = v.as_array().ok_or_else(|| InputError(format!("expected a vector, found {v}")))?;
    let xs = items.iter().map(parse_scalar).collect::<InputResult<Vec<_>>>()?;
    let f = widest(&xs);
    Ok(xs.into_iter().map(|s| s.with_field(f)).collect())
}

pub fn parse_rational_vector(v: &Value) -> InputResult<Vec<Rational>> {
    let items = v.as_array().ok_or_else(|| InputError(format!("expected a vector, found {v}")))?;
    items.iter().map(parse_rational).collect()
}

/// `dia(a, b, …)` as a real diagonal matrix.
pub fn parse_dia(s: &str) -> InputResult<Option<ExactMatrix>> {
    let t = s.trim();
    let Some(inner) = t.strip_prefix("dia(").and_then(|r| r.strip_suffix(')')) else {
        return Ok(None);
    };
    let d = inner
        .split(',')
        .map(|x| x.trim().parse::<Rational>().map_err(|e| InputError(format!("{e}"))))
        .collect::<InputResult<Vec<_>>>()?;
    let n = d.len();
    Ok(Some(ExactMatrix::from_fn(n, n, |i, j| Scalar::real(Field::Real, if i == j { d[i].clone() } else { Rational::ZERO }))))
}

pub fn parse_matrix(v: &Value) -> InputResult<ExactMatrix> {
    if let Value::String(s) = v {
        return parse_dia(s)?.ok_or_else(|| InputError(format!("expected a matrix or dia(...), found {s:?}")));
    }
    let rows = v.as_array().ok_or_else(|| InputError(format!("expected a matrix, found {v}")))?;
    if rows.is_empty() {
        return bad("empty matrix");
    }
    let parsed = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(|| InputError("matrix rows must be arrays".into()))?.iter().map(parse_scalar).collect())
        .collect::<InputResult<Vec<Vec<Scalar>>>>()?;
    let cols = parsed[0].len();
    if cols == 0 || parsed.iter().any(|r| r.len() != cols) {
        return bad("matrix rows must be nonempty and of equal length");
    }
    let f = widest(&parsed.concat());
    Ok(ExactMatrix::from_rows(parsed.into_iter().map(|r| r.into_iter().map(|s| s.with_field(f)).collect()).collect()))
}

pub fn parse_qmatrix(v: &Value) -> InputResult<QMatrix> {
    let m = parse_matrix(v)?;
    if m.field() != Field::Real {
        return bad("realified maps have rational entries");
    }
    Ok(QMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).re().clone()))
}

/// `--params`: JSON, or a bare `dia(...)`, `"p/q"`, `[re, im]` or `[a, b, c, d]`.
pub fn parse_params(s: &str) -> InputResult<Value> {
    if parse_dia(s)?.is_some() {
        return Ok(Value::String(s.trim().to_string()));
    }
    match serde_json::from_str(s) {
        Ok(v) => Ok(v),
        Err(_) if s.trim().parse::<Rational>().is_ok() => Ok(Value::String(s.trim().to_string())),
        Err(e) => bad(format!("--params is not JSON: {e}")),
    }
}

fn read_file(path: &str) -> InputResult<String> {
    fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {path}: {e}")))
}

pub fn parse_pair(spec: &str) -> InputResult<JordanPair> {
    let ps: PairSpec = spec.parse().map_err(|e| InputError(format!("{e}")))?;
    let p = match ps {
        PairSpec::Kind(k) => JordanPair::from_kind(&k),
        PairSpec::SpinGramFile(path) => {
            let v: Value = serde_json::from_str(&read_file(&path)?).map_err(|e| InputError(format!("{path}: {e}")))?;
            JordanPair::spin_with_form(&parse_qmatrix(&v)?, spec)
        }
    };
    p.map_err(|e| InputError(format!("{e}")))
}

fn get<'a>(obj: &'a Value, key: &str) -> Option<&'a Value> {
    obj.get(key).or_else(|| obj.get(key.to_lowercase()))
}

fn opt_matrix(obj: &Value, key: &str) -> InputResult<Option<ExactMatrix>> {
    get(obj, key).map(parse_matrix).transpose()
}

pub fn family_params(v: &Value) -> InputResult<FamilyParams> {
    if let Value::String(_) = v {
        return Ok(FamilyParams { a: Some(parse_matrix(v)?), ..Default::default() });
    }
    if !v.is_object() {
        return bad("family parameters are an object with keys A, B, u");
    }
    Ok(FamilyParams { a: opt_matrix(v, "A")?, b: opt_matrix(v, "B")?, u: get(v, "u").map(parse_vector).transpose()? })
}

pub fn structural_params(v: &Value) -> InputResult<StructuralParams> {
    let f = family_params(v)?;
    let conjugate = v.get("conjugate").and_then(Value::as_bool).unwrap_or(false);
    Ok(StructuralParams { a: f.a, b: f.b, u: f.u, conjugate })
}

fn vectors(v: &Value, key: &str) -> InputResult<Vec<Vec<Scalar>>> {
    let items = v.get(key).and_then(Value::as_array).ok_or_else(|| InputError(format!("missing array {key:?}")))?;
    items.iter().map(parse_vector).collect()
}

fn rational_vectors(v: &Value, key: &str) -> InputResult<Vec<Vec<Rational>>> {
    let items = v.get(key).and_then(Value::as_array).ok_or_else(|| InputError(format!("missing array {key:?}")))?;
    items.iter().map(parse_rational_vector).collect()
}

fn kind(v: &Value) -> InputResult<&str> {
    v.get("kind").and_then(Value::as_str).ok_or_else(|| InputError("descriptor needs a \"kind\"".into()))
}

pub fn ideal_descriptor(v: &Value) -> InputResult<IdealDescriptor> {
    Ok(match kind(v)? {
        "rect" => IdealDescriptor::Rect { a: vectors(v, "a")?, b: vectors(v, "b")? },
        "principal" => IdealDescriptor::Principal { b: vectors(v, "b")? },
        "point" => IdealDescriptor::Point { u: parse_vector(v.get("u").ok_or_else(|| InputError("missing \"u\"".into()))?)? },
        "isotropic" => IdealDescriptor::Isotropic { basis: rational_vectors(v, "basis")? },
        k => return bad(format!("unknown ideal kind {k:?}")),
    })
}

pub fn spin_descriptor(v: &Value) -> InputResult<SpinDescriptor> {
    let s = || v.get("s").map(parse_rational).unwrap_or(Ok(Rational::ONE));
    Ok(match kind(v)? {
        "involution" => SpinDescriptor::Involution { s: s()?, basis: rational_vectors(v, "basis")? },
        "nilpotent" => SpinDescriptor::Nilpotent { basis: rational_vectors(v, "basis")?, coeffs: v.get("coeffs").map(parse_qmatrix).transpose()? },
        "complex" => SpinDescriptor::Complex { s: s()? },
        k => return bad(format!("unknown spin descriptor kind {k:?}")),
    })
}

/// How `--alpha` names a homotopy.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaSource {
    Family(String),
    Zero,
    Identity,
    Matrix(QMatrix),
}

/// A realified map, optionally with the pair spec it was written for.
fn alpha_json(v: &Value, pair: &str) -> InputResult<QMatrix> {
    match v {
        Value::Object(_) => {
            if let Some(p) = v.get("pair").and_then(Value::as_str) {
                if p != pair {
                    return bad(format!("alpha was written for {p}, not {pair}"));
                }
            }
            parse_qmatrix(v.get("matrix").ok_or_else(|| InputError("alpha object needs \"matrix\"".into()))?)
        }
        _ => parse_qmatrix(v),
    }
}

pub fn parse_alpha(s: &str, pair: &str) -> InputResult<AlphaSource> {
    let s = s.trim();
    Ok(match s {
        "zero" => AlphaSource::Zero,
        "id" => AlphaSource::Identity,
        _ => {
            if let Some(label) = s.strip_prefix("family:") {
                AlphaSource::Family(label.to_string())
            } else if let Some(path) = s.strip_prefix("file:") {
                let v = serde_json::from_str(&read_file(path)?).map_err(|e| InputError(format!("{path}: {e}")))?;
                AlphaSource::Matrix(alpha_json(&v, pair)?)
            } else {
                let v = serde_json::from_str(s).map_err(|e| InputError(format!("--alpha is not JSON: {e}")))?;
                AlphaSource::Matrix(alpha_json(&v, pair)?)
            }
        }
    })
}
