//! Plain-text rendering of reports and enumerations.

use serde_json::Value;

use fprod_core::verifier::{PartKind, PropositionReport};
use fprod_core::{Filter, SubsetMask, Topology};

fn set(m: &SubsetMask, offset: usize) -> String {
    let items: Vec<String> = m.iter().map(|i| (i + offset).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Filters on index sets are shown with 1-based labels.
pub fn filter(f: &Filter) -> String {
    if f.is_trivial() {
        "trivial".to_string()
    } else {
        format!("<{}>", set(&f.core(), 1))
    }
}

/// Topologies on factor points are shown by their opens, 0-based.
pub fn topology(t: &Topology) -> String {
    let opens: Vec<String> = t.opens().iter().map(|m| set(m, 0)).collect();
    format!("{{{}}}", opens.join(", "))
}

fn point(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(|s| s.as_str().unwrap_or("?").to_string()).collect();
            format!("({})", parts.join(","))
        }
        other => other.to_string(),
    }
}

pub fn check_details(extra: &Value) {
    if let Some(Value::Array(pair)) = extra.get("inseparable_pair") {
        let shown: Vec<String> = pair.iter().map(point).collect();
        out!("inseparable pair: {}", shown.join(" "));
    }
    if let Some(Value::Array(sets)) = extra.get("dense_sets") {
        for (k, s) in sets.iter().enumerate() {
            let pts: Vec<String> = s.as_array().into_iter().flatten().map(point).collect();
            out!("dense set {}: {{{}}}", k + 1, pts.join(", "));
        }
    }
    if let Some(Value::Array(ps)) = extra.get("projections") {
        for p in ps {
            out!("projection {}: continuous={}", p["index"].as_str().unwrap_or("?"), p["continuous"]);
        }
    }
}

pub fn report_text(r: &PropositionReport, search: bool) {
    if search {
        let verdict = match (&r.witness, r.incomplete) {
            (Some(_), _) => "counterexample found",
            (None, true) => "no counterexample before the budget ran out",
            (None, false) => "no counterexample on the grid",
        };
        out!("{}: {verdict} (checked {} {})", r.prop_id, r.checked, r.unit);
    } else {
        out!("{}", r.summary_line());
    }
    out!("claim: {}", r.claim);
    for p in &r.parts {
        let kind = match p.kind {
            PartKind::Universal => "for all",
            PartKind::Existential => "exists",
        };
        let verdict = if p.passed { "pass" } else { "fail" };
        let vacuous = if p.vacuous { " (vacuous)" } else { "" };
        out!("  [{verdict}] {} ({kind}, checked {}){vacuous}", p.name, p.checked);
        if let Some(w) = &p.witness {
            out!("    counterexample: {}", w.detail);
        }
        if let Some(w) = &p.exhibit {
            out!("    witness: {}", w.detail);
        }
    }
    for n in &r.degenerate_notes {
        out!("note: {n}");
    }
}
