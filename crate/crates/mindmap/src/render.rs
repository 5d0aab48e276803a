//! Human-readable and JSON renderings of query results and accuracy tables.

use std::fmt::Write;

use mindmap_core::extract::Polarity;
use mindmap_core::mindql::{Projection, Query, ResultSet};
use mindmap_core::resolve::AccuracyTable;
use serde::Serialize;
use serde_json::{json, Value};

fn polarity(p: Polarity) -> &'static str {
    match p {
        Polarity::Positive => "POSITIVE",
        Polarity::Negative => "NEGATIVE",
    }
}

#[derive(Serialize)]
struct Tagged<'a> {
    source: &'a str,
    #[serde(flatten)]
    result: &'a ResultSet,
}

/// A single source renders as the bare result object; several become an
/// array of objects tagged with their `source`.
pub fn results_json(results: &[(String, ResultSet)]) -> String {
    let mut s = match results {
        [(_, rs)] => serde_json::to_string(rs),
        many => {
            serde_json::to_string(&many.iter().map(|(source, result)| Tagged { source, result }).collect::<Vec<_>>())
        }
    }
    .expect("result sets serialize");
    s.push('\n');
    s
}

fn table_one(q: &Query, rs: &ResultSet, out: &mut String) {
    let mut sections = q.projections.clone();
    sections.dedup();
    for p in sections {
        let (title, lines): (&str, Vec<String>) = match p {
            Projection::Concepts => ("concepts", rs.concepts.clone()),
            Projection::Subconcepts => {
                ("sub-concepts", rs.subconcepts.iter().map(|(parent, sub)| format!("{parent} / {sub}")).collect())
            }
            Projection::Associations => (
                "associations",
                rs.associations
                    .iter()
                    .map(|a| format!("{} -[{}]-> {} ({})", a.from, a.verb, a.to, polarity(a.polarity)))
                    .collect(),
            ),
            Projection::Name => ("names", rs.names.clone()),
        };
        let _ = writeln!(out, "{title} ({})", lines.len());
        for l in lines {
            let _ = writeln!(out, "  {l}");
        }
    }
}

pub fn results_table(q: &Query, results: &[(String, ResultSet)]) -> String {
    let mut out = String::new();
    let tagged = results.len() > 1;
    for (src, rs) in results {
        if tagged {
            let _ = writeln!(out, "[{src}]");
        }
        table_one(q, rs, &mut out);
    }
    out
}

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"))
}

/// Rows in table order: pronoun, correct %, false %, ? %.
pub fn accuracy_text(table: &AccuracyTable) -> String {
    let mut out = format!("{:<10}{:>12}{:>12}{:>10}{:>8}\n", "pronoun", "correct (%)", "false (%)", "? (%)", "n");
    for r in &table.rows {
        let _ = writeln!(
            out,
            "{:<10}{:>12}{:>12}{:>10}{:>8}",
            r.pronoun,
            pct(r.correct_pct()),
            pct(r.wrong_pct()),
            pct(r.unresolved_pct()),
            r.total
        );
    }
    out
}

pub fn accuracy_json(table: &AccuracyTable) -> String {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "pronoun": r.pronoun,
                "total": r.total,
                "correct": r.correct,
                "false": r.wrong,
                "unresolved": r.unresolved,
                "correct_pct": r.correct_pct(),
                "false_pct": r.wrong_pct(),
                "unresolved_pct": r.unresolved_pct(),
            })
        })
        .collect();
    let mut s = serde_json::to_string(&json!({ "rows": rows })).expect("json");
    s.push('\n');
    s
}
