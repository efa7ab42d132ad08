//! Single-pair subcommands.

use serde_json::{json, Value};

use homotope_core::families::{expected_image, family_alpha, spin_family_alpha};
use homotope_core::ideals::{
    complement_check, complement_construct, image_ideal, inner_ideal_check, kern_is_orthocomplement, make_inner_ideal,
    point_space_structure, IdealDescriptor, InnerIdeal,
};
use homotope_core::jordan::{cartan_involution, cartan_jts, check_pair_axioms, check_positive_and_backes, trace_form, AxiomPolicy};
use homotope_core::liealg::{a_gl_algebra, a_orth_algebra, efk_basis, o3_brackets, standard_imbedding, LieAlgebraTensor};
use homotope_core::regularity::fibration_report;
use homotope_core::svar::{
    check_triple_axioms, homotope_jts, homotope_lts, svar_membership, svar_membership_quadratic, trace_form_symmetric, TripleKind,
};
use homotope_core::{Check, CheckReport, Coverage, Error, JordanPair, PairKind, QMatrix, Side};

use crate::input::{self, AlphaSource};
use crate::CmdError;

pub type Output = (CheckReport, Value);
pub type CmdResult = std::result::Result<Output, CmdError>;

fn prefixed(prefix: &str, r: CheckReport) -> CheckReport {
    let mut out = CheckReport::new();
    for mut c in r.checks {
        c.id = format!("{prefix}/{}", c.id);
        out.push(c);
    }
    out
}

fn params_value(params: Option<&str>) -> Result<Value, CmdError> {
    Ok(match params {
        Some(s) => input::parse_params(s)?,
        None => Value::Null,
    })
}

/// `α` as named by `--alpha`, with the row it came from (if any).
pub fn resolve_alpha(pair: &JordanPair, spec: &str, alpha: &str, params: Option<&str>) -> Result<(QMatrix, Option<String>), CmdError> {
    let (dp, dm) = (pair.dim(Side::Plus), pair.dim(Side::Minus));
    let m = match input::parse_alpha(alpha, spec)? {
        AlphaSource::Zero => QMatrix::zeros(dm, dp),
        AlphaSource::Identity if dp == dm => QMatrix::identity(dp),
        AlphaSource::Identity => return Err(CmdError::Usage(format!("id needs dim V+ = dim V-, found {dp} and {dm}"))),
        AlphaSource::Matrix(m) => m,
        AlphaSource::Family(label) => {
            let v = params_value(params)?;
            return if matches!(pair.kind, PairKind::Spin { .. }) || pair.spin_form().is_some() {
                Ok((spin_family_alpha(pair, &input::spin_descriptor(&v)?)?.matrix, Some(label)))
            } else {
                Ok((family_alpha(&label, pair, &input::family_params(&v)?)?.alpha.matrix, Some(label)))
            };
        }
    };
    if m.shape() != (dm, dp) {
        return Err(CmdError::Usage(format!("alpha must be {dm}x{dp} for {spec}, found {}x{}", m.rows(), m.cols())));
    }
    Ok((m, None))
}

fn alpha_data(spec: &str, alpha: &QMatrix) -> Value {
    json!({ "pair": spec, "matrix": alpha })
}

pub fn axioms(pair: &JordanPair, seed: u64) -> CmdResult {
    let policy = AxiomPolicy { seed, ..AxiomPolicy::default() };
    let r = check_pair_axioms(pair, &policy);
    let data = json!({
        "dims": [pair.dim(Side::Plus), pair.dim(Side::Minus)],
        "policy": { "exhaustive_limit": policy.exhaustive_limit, "samples": policy.samples },
    });
    Ok((r, data))
}

fn membership_checks(pair: &JordanPair, alpha: &QMatrix) -> Result<CheckReport, CmdError> {
    let d = pair.dim(Side::Plus) as u64;
    let mut r = CheckReport::new();
    let m = svar_membership(pair, alpha)?;
    r.push(match m.witness {
        None => Check::pass("membership", d * d * d, Coverage::Exhaustive),
        Some(t) => Check::fail("membership", d * d * d, Coverage::Exhaustive, t.to_vec(), "alpha T+(u, alpha v, w) != T-(alpha u, v, alpha w)"),
    });
    let q = svar_membership_quadratic(pair, alpha)?;
    r.push(Check {
        id: "membership-quadratic".into(),
        passed: q,
        cases: d * d,
        coverage: Coverage::Exhaustive,
        witness: None,
    });
    if !q {
        r.checks.last_mut().expect("just pushed").witness =
            Some(homotope_core::report::Witness { tuple: vec![], detail: "Q-(alpha u) != alpha Q+(u) alpha on a polarization".into() });
    }
    Ok(r)
}

pub fn svar_check(pair: &JordanPair, spec: &str, alpha: &str, params: Option<&str>) -> CmdResult {
    let (m, row) = match resolve_alpha(pair, spec, alpha, params) {
        Err(CmdError::Core(Error::NotMember { triple })) => {
            let mut r = CheckReport::new();
            r.push(Check::fail("membership", 1, Coverage::Exhaustive, triple.to_vec(), "family map is not a member"));
            return Ok((r, json!({ "member": false })));
        }
        x => x?,
    };
    let r = membership_checks(pair, &m)?;
    Ok((r, json!({ "alpha": alpha_data(spec, &m), "row": row })))
}

/// `--alpha family:L` for one row, or every row that applies to the pair.
pub fn svar_family(pair: &JordanPair, spec: &str, alpha: Option<&str>, params: Option<&str>, draws: usize, seed: u64) -> CmdResult {
    use homotope_core::families::{family_rows, row_dims, sample_params};
    if let Some(a) = alpha {
        if !a.starts_with("family:") {
            return Err(CmdError::Usage("svar-family takes --alpha family:<row>".into()));
        }
        let label = &a["family:".len()..];
        let v = params_value(params)?;
        if pair.spin_form().is_some() {
            return svar_check(pair, spec, a, params);
        }
        let fp = input::family_params(&v)?;
        let mut r = CheckReport::new();
        let inst = match family_alpha(label, pair, &fp) {
            Ok(i) => i,
            Err(Error::NotMember { triple }) => {
                r.push(Check::fail("membership", 1, Coverage::Exhaustive, triple.to_vec(), format!("row {label} map is not a member")));
                return Ok((r, json!({ "row": label })));
            }
            Err(e) => return Err(e.into()),
        };
        r.extend(membership_checks(pair, &inst.alpha.matrix)?);
        if let Some(desc) = expected_image(label, pair, &fp)? {
            let ideal = make_inner_ideal(pair, Side::Minus, &desc)?;
            let ok = if matches!(desc, IdealDescriptor::Point { .. }) {
                ideal.space.contains_space(&inst.image) && (inst.image.dim() < ideal.dim() || inst.image == ideal.space)
            } else {
                inst.image == ideal.space
            };
            r.push(Check::from_bool("image-classified", ok, "image differs from the classified inner ideal"));
        }
        let data = json!({
            "row": inst.row,
            "rank": inst.rank,
            "linearity": inst.alpha.linearity,
            "alpha": alpha_data(spec, &inst.alpha.matrix),
            "kernel_dim": inst.kernel.dim(),
        });
        return Ok((r, data));
    }
    let mut rng = homotope_core::sampling::rng(seed);
    let mut r = CheckReport::new();
    let mut rows = Vec::new();
    for row in family_rows() {
        if row_dims(row, pair).is_err() {
            continue;
        }
        let mut fail = None;
        for k in 0..draws {
            let params = sample_params(row.label, pair, &mut rng)?;
            match family_alpha(row.label, pair, &params) {
                Ok(_) => {}
                Err(Error::NotMember { triple }) => {
                    fail.get_or_insert((k, triple));
                }
                Err(e) => return Err(e.into()),
            }
        }
        let id = format!("membership/{}", row.label);
        r.push(match fail {
            None => Check::pass(id, draws as u64, Coverage::Sampled),
            Some((k, t)) => Check::fail(id, draws as u64, Coverage::Sampled, vec![k], format!("draw {k} fails at {t:?}")),
        });
        rows.push(row.label);
    }
    if rows.is_empty() {
        return Err(CmdError::Usage(format!("no family row applies to {spec}")));
    }
    Ok((r, json!({ "rows": rows, "draws": draws })))
}

pub fn homotope(pair: &JordanPair, spec: &str, alpha: &str, params: Option<&str>, seed: u64) -> CmdResult {
    let (m, row) = resolve_alpha(pair, spec, alpha, params)?;
    let t = homotope_jts(pair, &m)?;
    let l = homotope_lts(pair, &m)?;
    let mut r = prefixed("jts", check_triple_axioms(&t, TripleKind::Jts, seed));
    r.extend(prefixed("lts", check_triple_axioms(&l, TripleKind::Lts, seed)));
    let data = json!({
        "alpha": alpha_data(spec, &m),
        "row": row,
        "dim": t.dim(),
        "rank": homotope_core::exactalg::linalg::rank(&m),
        "jts_nonzero_triples": t.nnz_triples(),
        "lts_nonzero_triples": l.nnz_triples(),
    });
    Ok((r, data))
}

fn ideal_checks(pair: &JordanPair, ideal: &InnerIdeal) -> Result<(CheckReport, Value), CmdError> {
    let mut r = CheckReport::new();
    let inner = inner_ideal_check(pair, ideal.side, ideal.space.basis())?;
    r.push(Check::from_bool("inner", inner, "T(I, V, I) is not contained in I"));
    let mut data = json!({ "dim": ideal.dim(), "side": ideal.side, "basis": ideal.space.basis() });
    if pair.cartan().is_some() {
        let k = kern_is_orthocomplement(pair, ideal)?;
        r.push(Check::from_bool("kern-equals-perp", k.equal, "Kern I != I^perp"));
        r.push(Check::from_bool("kern-routes-agree", k.routes_agree, "trilinear and quadratic Kern differ"));
        let j = complement_construct(pair, ideal)?;
        let c = complement_check(pair, ideal, &j)?;
        r.push(Check::from_bool("complement", c.passed(), "Cartan image is not a complement"));
        data["kern_dim"] = json!(k.kern.dim());
        data["kern"] = json!(k.kern.basis());
    }
    Ok((r, data))
}

pub fn ideal(pair: &JordanPair, spec: &str, params: Option<&str>, side: Side, alpha: Option<&str>) -> CmdResult {
    if let Some(a) = alpha {
        let (m, _) = resolve_alpha(pair, spec, a, if params.is_some() && a.starts_with("family:") { params } else { None })?;
        let i = image_ideal(pair, &m)?;
        let (r, mut data) = ideal_checks(pair, &i)?;
        data["source"] = json!("image");
        return Ok((r, data));
    }
    let v = params_value(params)?;
    if v.is_null() {
        return Err(CmdError::Usage("ideal needs --params <descriptor> or --alpha".into()));
    }
    let desc = input::ideal_descriptor(&v)?;
    let i = make_inner_ideal(pair, side, &desc)?;
    let (mut r, mut data) = ideal_checks(pair, &i)?;
    if let (IdealDescriptor::Point { u }, Side::Minus) = (&desc, side) {
        let p = point_space_structure(pair, u)?;
        r.push(Check::from_bool("point-proportional", p.proportional, "Q(f)g is not a multiple of f"));
        r.push(Check::from_bool("point-lines-inner", p.lines_inner, "a line in K_u is not inner"));
        if let Some(iso) = p.projective_isomorphism {
            r.push(Check::from_bool("point-projective", iso, "K_u is not isomorphic to M(1, n-1)"));
        }
    }
    data["descriptor"] = serde_json::to_value(&desc).expect("descriptor serializes");
    Ok((r, data))
}

pub fn fibration(pair: &JordanPair, spec: &str, alpha: &str, params: Option<&str>) -> CmdResult {
    let (m, row) = resolve_alpha(pair, spec, alpha, params)?;
    let f = fibration_report(pair, &m)?;
    let data = json!({
        "alpha": alpha_data(spec, &m),
        "row": row,
        "beta": f.pair.beta,
        "base_dim": f.base_dim,
        "fiber_dim": f.fiber_dim,
        "off_diagonal": f.off_diagonal,
    });
    Ok((f.checks, data))
}

pub fn traceform(pair: &JordanPair, spec: &str, alpha: Option<&str>, params: Option<&str>, samples: usize, seed: u64) -> CmdResult {
    let g = trace_form(pair);
    let mut data = json!({ "gram": g });
    let mut r = CheckReport::new();
    if pair.cartan().is_some() {
        let c = cartan_involution(pair)?;
        data["cartan_signature"] = json!(c.inertia.signature());
        r.extend(check_positive_and_backes(&cartan_jts(pair)?, samples, seed));
    }
    if let Some(a) = alpha {
        let (m, _) = resolve_alpha(pair, spec, a, params)?;
        r.push(Check::from_bool("alpha-self-adjoint", trace_form_symmetric(pair, &m), "G alpha is not symmetric"));
        data["alpha"] = alpha_data(spec, &m);
    }
    if r.checks.is_empty() {
        return Err(CmdError::Usage(format!("{spec} has no Cartan involution; pass --alpha to check self-adjointness")));
    }
    Ok((r, data))
}

pub fn imbed(pair: &JordanPair, spec: &str, alpha: &str, params: Option<&str>) -> CmdResult {
    let (m, row) = resolve_alpha(pair, spec, alpha, params)?;
    let g = standard_imbedding(&homotope_lts(pair, &m)?)?;
    let data = json!({
        "alpha": alpha_data(spec, &m),
        "row": row,
        "q_dim": g.q_dim,
        "h_dim": g.h_dim,
        "total_dim": g.total_dim(),
        "killing_signature": g.killing_signature,
        "algebra": g.algebra,
    });
    Ok((g.checks, data))
}

pub fn liealg(kind: &str, params: &str) -> CmdResult {
    let v = input::parse_params(params)?;
    let alg: LieAlgebraTensor = match kind {
        "o3" => {
            let xs = input::parse_rational_vector(&v)?;
            let [a, b, c] = xs.as_slice() else {
                return Err(CmdError::Usage("o3 takes [a, b, c]".into()));
            };
            o3_brackets(a, b, c)
        }
        "orth" => a_orth_algebra(&input::parse_matrix(&v)?)?,
        "gl" => {
            let a = input::parse_matrix(&v)?;
            a_gl_algebra(&a, a.cols(), a.rows())?
        }
        k => return Err(CmdError::Usage(format!("unknown algebra kind {k:?}"))),
    };
    let mut data = json!({
        "dim": alg.dim(),
        "algebra": alg,
        "killing_signature": alg.killing_inertia().signature(),
    });
    if kind == "orth" && alg.dim() == 3 {
        let efk = alg.in_basis(&efk_basis(), vec!["e".into(), "f".into(), "k".into()])?;
        data["efk"] = json!(efk);
    }
    Ok((alg.check_axioms(), data))
}
