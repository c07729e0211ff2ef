//! Report documents: JSON trees for classification runs, single-cone runs
//! and gallery emissions, plus the plain-text rendering.
//!
//! Verdicts are the strings `"YES"`, `"NO"` and `"UNKNOWN"`; every NO
//! carries its certificate in the same matrix encoding the input uses.
//! Wall-clock fields (`wall_ms`) are the only non-deterministic content of
//! a JSON report; the text rendering omits them entirely.

use serde_json::{json, Map, Value};

use conelab_core::classify::{ClassificationReport, RecordedVerdict};
use conelab_core::cones::{Certificate, ConeConfig, Decision, Verdict};
use conelab_core::gallery::{GalleryEntry, GalleryObject};

use crate::doc::{matrix_to_value, vector_to_value};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn decision_str(d: Decision) -> &'static str {
    match d {
        Decision::Member => "YES",
        Decision::NotMember => "NO",
        Decision::Unknown => "UNKNOWN",
    }
}

fn config_value(config: &ConeConfig) -> Value {
    json!({
        "tol": config.tol,
        "starts": config.solver.starts,
        "seed": config.solver.seed,
        "budget_ms": config.solver.budget_ms,
        "feas_tol": config.solver.feas_tol,
        "inner_tol": config.solver.inner_tol,
        "max_outer_iters": config.solver.max_outer_iters,
        "mesh_points": config.mesh_points,
        "fit_max_terms": config.fit_max_terms,
        "fit_tol": config.fit_tol,
    })
}

fn certificate_value(cert: &Certificate) -> Value {
    match cert {
        Certificate::ProductWitness { f, g } => json!({
            "type": "product_witness",
            "f": vector_to_value(f),
            "g": vector_to_value(g),
        }),
        Certificate::SpectralWitness { v, eigenvalue } => json!({
            "type": "spectral_witness",
            "v": vector_to_value(v),
            "eigenvalue": eigenvalue,
        }),
        Certificate::PptWitnessState { rho } => json!({
            "type": "ppt_witness_state",
            "dim_a": rho.dim_a(),
            "dim_b": rho.dim_b(),
            "rho": matrix_to_value(rho.matrix()),
        }),
        Certificate::ProductDecomposition { terms } => json!({
            "type": "product_decomposition",
            "terms": terms
                .iter()
                .map(|t| json!({
                    "weight": t.weight,
                    "f": vector_to_value(&t.f),
                    "g": vector_to_value(&t.g),
                }))
                .collect::<Vec<_>>(),
        }),
        Certificate::ConeSplit { a, b } => json!({
            "type": "cone_split",
            "a": matrix_to_value(a.matrix()),
            "b": matrix_to_value(b.matrix()),
        }),
    }
}

fn verdict_value(v: &Verdict) -> Value {
    json!({
        "verdict": decision_str(v.decision),
        "certificate": v.certificate.as_ref().map(certificate_value),
        "diagnostics": {
            "min_value_found": v.diagnostics.min_value_found,
            "starts_used": v.diagnostics.starts_used,
            "iterations": v.diagnostics.iterations,
        },
    })
}

fn recorded_value(rv: &RecordedVerdict) -> Value {
    let mut obj = verdict_value(&rv.verdict);
    let map = obj.as_object_mut().expect("verdict_value builds an object");
    map.insert("heuristic".into(), Value::from(rv.heuristic));
    map.insert("wall_ms".into(), Value::from(rv.wall_ms));
    obj
}

pub fn classify_report(
    dim_in: usize,
    dim_out: usize,
    report: &ClassificationReport,
    wall_ms_total: f64,
) -> Value {
    json!({
        "artifact_version": ARTIFACT_VERSION,
        "command": "classify",
        "input": { "kind": "map", "dim_in": dim_in, "dim_out": dim_out },
        "config": config_value(&report.config),
        "tests": {
            "positive": recorded_value(&report.positive),
            "k_positive": report
                .k_positive
                .iter()
                .map(|(k, rv)| {
                    let mut obj = recorded_value(rv);
                    obj.as_object_mut()
                        .expect("recorded_value builds an object")
                        .insert("k".into(), Value::from(*k));
                    obj
                })
                .collect::<Vec<_>>(),
            "cp": recorded_value(&report.cp),
            "co_cp": recorded_value(&report.co_cp),
            "decomposable": recorded_value(&report.decomposable),
            "super_positive": recorded_value(&report.super_positive),
        },
        "notes": report.notes,
        "wall_ms_total": wall_ms_total,
    })
}

pub fn cone_report(
    dim_a: usize,
    dim_b: usize,
    cone: &str,
    verdict: &Verdict,
    config: &ConeConfig,
    wall_ms: f64,
) -> Value {
    let mut obj = verdict_value(verdict);
    let map = obj.as_object_mut().expect("verdict_value builds an object");
    map.insert("artifact_version".into(), Value::from(ARTIFACT_VERSION));
    map.insert("command".into(), Value::from("cone"));
    map.insert("cone".into(), Value::from(cone));
    map.insert(
        "input".into(),
        json!({ "kind": "operator", "dim_a": dim_a, "dim_b": dim_b }),
    );
    map.insert("config".into(), config_value(config));
    map.insert("wall_ms".into(), Value::from(wall_ms));
    obj
}

/// Emits a gallery object as a valid input document (plus a `meta` block).
pub fn gallery_document(entry: &GalleryEntry, seed: u64) -> Value {
    let mut obj = Map::new();
    match &entry.object {
        GalleryObject::Map(t) => {
            obj.insert("kind".into(), Value::from("map"));
            obj.insert("dim_in".into(), Value::from(t.dim_in()));
            obj.insert("dim_out".into(), Value::from(t.dim_out()));
            obj.insert("repr".into(), Value::from("choi"));
            obj.insert("matrix".into(), matrix_to_value(t.choi().matrix()));
        }
        GalleryObject::Operator(x) => {
            obj.insert("kind".into(), Value::from("operator"));
            obj.insert("dim_a".into(), Value::from(x.dim_a()));
            obj.insert("dim_b".into(), Value::from(x.dim_b()));
            obj.insert("repr".into(), Value::from("dense"));
            obj.insert("matrix".into(), matrix_to_value(x.matrix()));
        }
    }
    obj.insert(
        "meta".into(),
        json!({
            "artifact_version": ARTIFACT_VERSION,
            "name": entry.name,
            "parameters": entry.parameters,
            "seed": seed,
            "note": entry.note,
            "warnings": entry.warnings,
        }),
    );
    Value::Object(obj)
}

fn certificate_label(cert: &Certificate) -> String {
    match cert {
        Certificate::ProductWitness { .. } => "product witness".into(),
        Certificate::SpectralWitness { eigenvalue, .. } => {
            format!("spectral witness (eigenvalue {eigenvalue:.6e})")
        }
        Certificate::PptWitnessState { .. } => "PPT witness state".into(),
        Certificate::ProductDecomposition { terms } => {
            format!("product decomposition ({} terms)", terms.len())
        }
        Certificate::ConeSplit { .. } => "split into PSD + partial-transposed PSD".into(),
    }
}

fn text_line(label: &str, rv: &RecordedVerdict) -> String {
    let mode = match (rv.verdict.decision, rv.heuristic) {
        (Decision::Unknown, _) => "",
        (_, true) => "  (heuristic)",
        (_, false) => "  (certified)",
    };
    let mut line = format!(
        "{label:<16}{:<8}{mode}  min value {:.6e}",
        decision_str(rv.verdict.decision),
        rv.verdict.diagnostics.min_value_found
    );
    if let Some(cert) = &rv.verdict.certificate {
        line.push_str(&format!("  [{}]", certificate_label(cert)));
    }
    line
}

pub fn classify_text(dim_in: usize, dim_out: usize, report: &ClassificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("conelab classify (artifact {ARTIFACT_VERSION})\n"));
    out.push_str(&format!("map: {dim_in} -> {dim_out}\n"));
    out.push_str(&format!(
        "config: tol={:e}, starts={}, seed={}\n\n",
        report.config.tol, report.config.solver.starts, report.config.solver.seed
    ));
    out.push_str(&text_line("positive", &report.positive));
    out.push('\n');
    for (k, rv) in &report.k_positive {
        out.push_str(&text_line(&format!("{k}-positive"), rv));
        out.push('\n');
    }
    out.push_str(&text_line("cp", &report.cp));
    out.push('\n');
    out.push_str(&text_line("co_cp", &report.co_cp));
    out.push('\n');
    out.push_str(&text_line("decomposable", &report.decomposable));
    out.push('\n');
    out.push_str(&text_line("super_positive", &report.super_positive));
    out.push('\n');
    if !report.notes.is_empty() {
        out.push_str("notes:\n");
        for note in &report.notes {
            out.push_str(&format!("  - {note}\n"));
        }
    }
    out
}

pub fn cone_text(dim_a: usize, dim_b: usize, cone: &str, verdict: &Verdict) -> String {
    let mut out = String::new();
    out.push_str(&format!("conelab cone (artifact {ARTIFACT_VERSION})\n"));
    out.push_str(&format!("operator: {dim_a} x {dim_b}\n"));
    out.push_str(&format!("cone: {cone}\n"));
    out.push_str(&format!(
        "verdict: {}\n",
        decision_str(verdict.decision)
    ));
    out.push_str(&format!(
        "min value found: {:.6e}\n",
        verdict.diagnostics.min_value_found
    ));
    out.push_str(&format!(
        "effort: {} starts, {} iterations\n",
        verdict.diagnostics.starts_used, verdict.diagnostics.iterations
    ));
    if let Some(cert) = &verdict.certificate {
        out.push_str(&format!("certificate: {}\n", certificate_label(cert)));
    }
    out
}
