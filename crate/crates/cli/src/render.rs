use std::fmt::Write as _;

use serde_json::{json, Value};
use unaware_core::{
    classify, ClaimReport, Event, Model, OperatorKind, PropertyReport, StepStatus, Verdict,
};

pub fn labels(m: &Model, e: Event) -> Value {
    json!(m.event_labels(e))
}

pub fn operator_key(kind: OperatorKind) -> &'static str {
    match kind {
        OperatorKind::StandardK => "k",
        OperatorKind::GeneralisedKPrime => "kprime",
    }
}

pub fn model_record(m: &Model, index: Option<u64>) -> Value {
    let c = classify(m);
    let mut v = json!({
        "kind": "model",
        "states": m.labels(),
        "P": m.to_json_value()["P"],
        "class": {
            "serial": c.serial,
            "reflexive": c.reflexive,
            "transitive": c.transitive,
            "euclidean": c.euclidean,
            "partitional": c.partitional,
        },
    });
    if let Some(i) = index {
        v["index"] = json!(i);
    }
    v
}

pub fn property_record(m: &Model, r: &PropertyReport) -> Value {
    let witness = r.witness.map(|w| {
        json!({
            "event": labels(m, w.event),
            "second": w.second.map(|e| labels(m, e)),
            "left": labels(m, w.left),
            "right": labels(m, w.right),
        })
    });
    json!({
        "kind": "property",
        "property": r.property.cli_name(),
        "operator": operator_key(r.operator),
        "definition": r.property.definition(),
        "holds": r.holds,
        "witness": witness,
    })
}

pub fn claim_record(m: &Model, r: &ClaimReport) -> Value {
    let steps: Vec<Value> = r
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            json!({
                "index": i + 1,
                "description": s.description,
                "status": s.status.as_str(),
                "conclusion": s.is_conclusion,
                "sets": s.sets.iter().map(|(name, e)| json!({"name": name, "value": labels(m, *e)})).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "kind": "claim",
        "claim": r.claim.as_str(),
        "summary": r.claim.summary(),
        "event": r.event.map(|e| labels(m, e)),
        "premise_holds": r.premise_holds,
        "verdict": r.verdict.as_str(),
        "first_failed_step": r.first_failed_step(),
        "steps": steps,
    })
}

pub fn witness_text(m: &Model, r: &PropertyReport) -> String {
    let Some(w) = r.witness else {
        return "-".to_string();
    };
    let (l, rt) = r.property.sides();
    let mut out = match w.second {
        Some(b) => format!(
            "E1 = {}, E2 = {}",
            m.format_event(w.event),
            m.format_event(b)
        ),
        None => format!("E = {}", m.format_event(w.event)),
    };
    let _ = write!(
        out,
        ": {l} = {}, {rt} = {}",
        m.format_event(w.left),
        m.format_event(w.right)
    );
    out
}

/// Left-aligned columns separated by two spaces; the last column is not
/// padded.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            width[i] = width[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i + 1 < cols {
                let pad = width[i] - c.chars().count();
                let _ = write!(s, "{c}{}  ", " ".repeat(pad));
            } else {
                s.push_str(c);
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn claim_text(m: &Model, r: &ClaimReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "claim: {}", r.claim);
    let _ = writeln!(out, "  {}", r.claim.summary());
    if let Some(e) = r.event {
        let _ = writeln!(out, "event: {}", m.format_event(e));
    }
    for (i, s) in r.steps.iter().enumerate() {
        let status = match s.status {
            StepStatus::Holds => "holds",
            StepStatus::Fails => "FAILS",
            StepStatus::NotApplicable => "info",
        };
        let concl = if s.is_conclusion { "conclusion: " } else { "" };
        let _ = writeln!(out, "{:>3}. [{status}] {concl}{}", i + 1, s.description);
        for (name, e) in &s.sets {
            let _ = writeln!(out, "       {name} = {}", m.format_event(*e));
        }
    }
    let _ = match (r.verdict, r.first_failed_step()) {
        (Verdict::RefutedStep | Verdict::VerifiedConclusion, Some(i)) => writeln!(
            out,
            "verdict: {} (first failing step {i}: {})",
            r.verdict,
            r.steps[i - 1].description
        ),
        _ => writeln!(out, "verdict: {}", r.verdict),
    };
    out
}

pub fn correspondence_text(m: &Model) -> String {
    m.labels()
        .iter()
        .enumerate()
        .map(|(s, l)| format!("P({l}) = {}", m.format_event(m.possibility(s))))
        .collect::<Vec<_>>()
        .join(", ")
}
