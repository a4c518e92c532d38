//! Serialization of classification results.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::rigidity::{Certificate, Classification};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "table" | "text-table" => Ok(ReportFormat::Table),
            other => Err(Error::Parse(format!("unknown report format {other:?}"))),
        }
    }
}

fn basis_ref(c: &Classification, index: usize) -> Value {
    json!({ "index": index, "label": c.labels[index] })
}

fn vector_terms(c: &Classification, v: &SparseVec) -> Value {
    Value::Array(
        v.iter()
            .map(|(l, x)| json!({ "index": l, "label": c.labels[l], "c": x.to_string() }))
            .collect(),
    )
}

fn vector_text(c: &Classification, v: &SparseVec) -> String {
    let terms: Vec<String> = v
        .iter()
        .map(|(l, x)| if x.is_one() { c.labels[l].clone() } else { format!("{x}*{}", c.labels[l]) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn certificate_json(c: &Classification, cert: &Certificate) -> Value {
    let mut v = match cert {
        Certificate::H2NilZero | Certificate::Abelian => json!({}),
        Certificate::CitedResult { name } => json!({ "name": name }),
        Certificate::AbelianFactor { isolated } => json!({ "isolated": isolated }),
        Certificate::GradedWitness { a1, a2, y } => json!({
            "a1": basis_ref(c, *a1),
            "a2": basis_ref(c, *a2),
            "y": vector_terms(c, y),
        }),
        Certificate::TwoStepWitness { v, w, z } => json!({
            "v": basis_ref(c, *v),
            "w": basis_ref(c, *w),
            "z": vector_terms(c, z),
        }),
    };
    v["kind"] = json!(cert.kind());
    v
}

pub fn certificate_text(c: &Classification, cert: &Certificate) -> String {
    match cert {
        Certificate::H2NilZero | Certificate::Abelian => cert.kind().into(),
        Certificate::CitedResult { name } => format!("cited({name})"),
        Certificate::AbelianFactor { isolated } => {
            let vs: Vec<String> = isolated.iter().map(|&i| format!("v{}", i + 1)).collect();
            format!("abelian_factor({})", vs.join(", "))
        }
        Certificate::GradedWitness { a1, a2, y } => {
            format!("graded_witness({}, {}, {})", c.labels[*a1], c.labels[*a2], vector_text(c, y))
        }
        Certificate::TwoStepWitness { v, w, z } => {
            format!("two_step_witness({}, {}, {})", c.labels[*v], c.labels[*w], vector_text(c, z))
        }
    }
}

pub fn classification_json(c: &Classification) -> Result<Value> {
    let mut v = json!({
        "graph6": c.graph.to_graph6()?,
        "m": c.graph.order(),
        "k": c.k,
        "dim": c.dim,
        "verdict": c.verdict.tag(),
        "certificate": c.verdict.certificate().map(|cert| certificate_json(c, cert)),
    });
    if let Some(h2) = &c.h2_nil {
        v["h2_nil"] = serde_json::to_value(h2)?;
    }
    Ok(v)
}

/// Deterministic rendering: JSON with sorted keys, or an aligned text table.
pub fn render_report(report: &[Classification], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let entries = report.iter().map(classification_json).collect::<Result<Vec<_>>>()?;
            let mut s = serde_json::to_string_pretty(&Value::Array(entries))?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Table => {
            let header = ["graph6", "m", "k", "dim", "verdict", "h2_nil", "certificate"];
            let mut rows = vec![header.map(String::from).to_vec()];
            for c in report {
                rows.push(vec![
                    c.graph.to_graph6()?,
                    c.graph.order().to_string(),
                    c.k.to_string(),
                    c.dim.to_string(),
                    c.verdict.tag().to_string(),
                    c.h2_nil.as_ref().map_or_else(|| "-".into(), |h| h.h2_dim.to_string()),
                    c.verdict.certificate().map_or_else(|| "-".into(), |cert| certificate_text(c, cert)),
                ]);
            }
            let widths: Vec<usize> =
                (0..header.len()).map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0)).collect();
            let mut out = String::new();
            for r in &rows {
                let mut line = String::new();
                for (i, cell) in r.iter().enumerate() {
                    if i + 1 == r.len() {
                        line.push_str(cell);
                    } else {
                        let _ = write!(line, "{cell:<w$}  ", w = widths[i]);
                    }
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
            Ok(out)
        }
    }
}

pub fn write_report(report: &[Classification], path: &Path, format: ReportFormat) -> Result<()> {
    std::fs::write(path, render_report(report, format)?)?;
    Ok(())
}
