//! Report assembly. JSON documents use sorted maps throughout, so a fixed
//! (config, seed) pair yields byte-identical output.

use qflag::coordring::Decision;
use qflag::flags::Grassmannian;
use qflag::pairings::{IndependenceCertificate, PairingReport};
use qflag::repbuild::{self, RepRef};
use qflag::scalar::Scalar;
use qflag::suite::Check;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub fn emit(doc: &Value, markdown: bool, csv: bool) {
    if markdown {
        println!("{}", to_markdown(doc));
    } else if csv {
        println!("{}", to_csv(doc));
    } else {
        println!("{}", serde_json::to_string_pretty(doc).unwrap());
    }
}

fn decision_json(d: &Decision) -> Value {
    json!({ "holds": d.equal, "oracle": d.oracle.to_string() })
}

fn check_json(c: &Check) -> Value {
    json!({
        "name": c.name,
        "passed": c.passed,
        "oracle": c.oracle.map(|o| o.to_string()),
        "detail": c.detail,
    })
}

pub fn checks_report(kind: &str, checks: &[Check]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
        "all_passed": checks.iter().all(|c| c.passed),
    })
}

pub fn build_rep_report(rep: &RepRef) -> Value {
    let mults: Vec<Value> = rep
        .weight_multiplicities()
        .into_iter()
        .map(|(w, m)| json!({ "weight": w.to_string(), "multiplicity": m }))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "build-rep",
        "label": rep.label(),
        "dim": rep.dim(),
        "weight_multiplicities": mults,
        "relation_checks": {
            "k_conjugation": repbuild::check_k_conjugation(rep),
            "ef_commutator": repbuild::check_ef_relation(rep),
            "serre": repbuild::check_serre(rep),
            "s_squared_ad_k2rho": repbuild::check_s_squared(rep),
            "antipode_inverse": repbuild::check_antipode_inverse(rep),
        },
    })
}

pub fn cycle_report(
    rep: &RepRef,
    proj: &str,
    chain_terms: usize,
    boundary_check: &Decision,
    normalized: &Decision,
    pairings: &[(usize, Scalar)],
) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "cycle",
        "module": rep.label(),
        "projection": proj,
        "chain_terms": chain_terms,
        "boundary_is_one_tensor_qtrace": decision_json(boundary_check),
        "boundary_normalized_zero": decision_json(normalized),
        "pairings": pairings
            .iter()
            .map(|(a, v)| json!({ "cocycle": format!("eta_{}", a + 1), "value": v.to_string() }))
            .collect::<Vec<_>>(),
    })
}

pub fn pair_json(reports: &[PairingReport]) -> Value {
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "module": r.rep_label,
                "projection": r.coeff_label,
                "detected_p": r.detected_p,
                "detected_q": r.detected_q,
                "status": if r.detected_p || r.detected_q { "detected" } else { "undetected" },
                "all_agree": r.all_agree,
                "per_root": r.per_root.iter().map(|rp| json!({
                    "root": rp.root + 1,
                    "chi": rp.chi.to_string(),
                    "chi_tilde": rp.chi_tilde.to_string(),
                    "eta_p_contraction": rp.eta_p_contraction.to_string(),
                    "eta_q_contraction": rp.eta_q_contraction.to_string(),
                    "eta_p_pipeline": rp.eta_p_pipeline.as_ref().map(|s| s.to_string()),
                    "eta_q_pipeline": rp.eta_q_pipeline.as_ref().map(|s| s.to_string()),
                    "agree": rp.agree,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "pair",
        "reports": rows,
    })
}

/// Markdown table in the layout of the worked rank-2 example: projections
/// as rows, one chi column per simple root.
pub fn pair_markdown(reports: &[PairingReport]) -> String {
    let mut out = String::new();
    if reports.is_empty() {
        return out;
    }
    let rank = reports[0].per_root.len();
    out.push_str("| projection |");
    for a in 1..=rank {
        out.push_str(&format!(" chi_{a} |"));
    }
    for a in 1..=rank {
        out.push_str(&format!(" chi~_{a} |"));
    }
    out.push_str(" agree |\n|---|");
    for _ in 0..(2 * rank + 1) {
        out.push_str("---|");
    }
    out.push('\n');
    for r in reports {
        out.push_str(&format!("| {} |", r.coeff_label));
        for rp in &r.per_root {
            out.push_str(&format!(" {} |", rp.chi));
        }
        for rp in &r.per_root {
            out.push_str(&format!(" {} |", rp.chi_tilde));
        }
        out.push_str(&format!(" {} |\n", r.all_agree));
    }
    out
}

/// The wire schema of a coordinate-ring element:
/// `{terms: [{coeff, word: [{rep, i, j, star}]}]}` with canonical scalar
/// strings and 1-based indices.
pub fn element_json(e: &qflag::coordring::CoordElement) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(w, c)| {
            json!({
                "coeff": c.to_string(),
                "word": w.0.iter().map(|a| json!({
                    "rep": a.rep.label(),
                    "i": a.row + 1,
                    "j": a.col + 1,
                    "star": a.star,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn grassmannian_report(g: &Grassmannian, checks: &[Check]) -> Value {
    let d = g.rep.dim();
    let mut entries = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let e = g.p.at(i, j);
            if !e.is_zero() {
                entries.push(json!({
                    "row": i + 1,
                    "col": j + 1,
                    "entry": format!("{e:?}"),
                    "element": element_json(e),
                }));
            }
        }
    }
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "grassmannian",
        "r": g.r,
        "n": g.n,
        "module": g.rep.label(),
        "projection_entries": entries,
        "expected_trace": g.expected_trace().to_string(),
        "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
        "all_passed": checks.iter().all(|c| c.passed),
    })
}

pub fn certificate_report(rs_type: &str, cert: &IndependenceCertificate) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "independence",
        "type": rs_type,
        "family": "n-omega1-plus-omega2",
        "cycles": cert.cycle_ids,
        "cocycles": cert.cocycle_ids,
        "pairing_matrix": cert
            .matrix
            .iter()
            .map(|row| row.iter().map(|s| s.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "verdicts": cert
            .verdicts
            .iter()
            .map(|v| json!({
                "pair": [cert.cycle_ids[v.first], cert.cycle_ids[v.second]],
                "independent": v.independent,
                "criterion": v.criterion,
                "witness": v.witness.map(|(a, b)| vec![
                    cert.cocycle_ids[a].clone(),
                    cert.cocycle_ids[b].clone()
                ]),
            }))
            .collect::<Vec<_>>(),
        "all_pairwise_independent": cert.all_pairwise_independent,
    })
}

/// Minimal generic renderers for the non-JSON formats: a two-column table
/// of flattened keys and values.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, val, rows);
            }
        }
        Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), val, rows);
            }
        }
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn to_markdown(doc: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", doc, &mut rows);
    let mut out = String::from("| field | value |\n|---|---|\n");
    for (k, v) in rows {
        out.push_str(&format!("| {k} | {} |\n", v.trim_matches('"')));
    }
    out
}

fn to_csv(doc: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", doc, &mut rows);
    let mut out = String::from("field,value\n");
    for (k, v) in rows {
        let val = v.trim_matches('"').replace('"', "\"\"");
        out.push_str(&format!("{k},\"{val}\"\n"));
    }
    out
}
