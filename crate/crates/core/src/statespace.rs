//! Finite state spaces and possibility correspondences.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::{Event, MAX_UNIVERSE};

/// Size limits applied when loading and analysing models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest model accepted by the parsers.
    pub max_states: usize,
    /// Largest model for which operations that range over every event
    /// (global unawareness, the generalised operator, property checks) run.
    pub max_global_states: usize,
    /// Largest state count the explorer enumerates.
    pub max_enumeration_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 16,
            max_global_states: 10,
            max_enumeration_states: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateId<'m> {
    pub index: usize,
    pub label: &'m str,
}

/// Labels follow `[A-Za-z_][A-Za-z0-9_]*`, the same class as formula identifiers.
pub fn is_valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite state space with a possibility correspondence.
#[derive(Clone, PartialEq, Eq)]
pub struct Model {
    labels: Arc<[String]>,
    possibility: Vec<Event>,
}

impl std::fmt::Debug for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut map = f.debug_map();
        for s in 0..self.len() {
            map.entry(&self.labels[s], &self.format_event(self.possibility[s]));
        }
        map.finish()
    }
}

impl Model {
    pub fn new(labels: Vec<String>, possibility: Vec<Event>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyStateSpace);
        }
        if n > MAX_UNIVERSE {
            return Err(Error::ModelTooLarge {
                n,
                cap: MAX_UNIVERSE,
            });
        }
        let mut seen = HashMap::with_capacity(n);
        for label in &labels {
            if !is_valid_label(label) {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        if possibility.len() != n {
            return Err(Error::CorrespondenceLength {
                expected: n,
                got: possibility.len(),
            });
        }
        if let Some(bad) = possibility.iter().find(|e| e.universe_size() != n) {
            return Err(Error::UniverseMismatch {
                left: n,
                right: bad.universe_size(),
            });
        }
        Ok(Model {
            labels: labels.into(),
            possibility,
        })
    }

    /// Builds a model from per-state membership words.
    pub fn from_bits(labels: Vec<String>, possibility: &[u64]) -> Result<Self> {
        let n = labels.len();
        let p = possibility
            .iter()
            .map(|&b| Event::from_bits(n.max(1), b))
            .collect();
        Self::new(labels, p)
    }

    /// Labels `s0 … s{n-1}`.
    pub fn canonical_labels(n: usize) -> Arc<[String]> {
        (0..n).map(|i| format!("s{i}")).collect()
    }

    /// Fast constructor for enumerated models sharing one label table.
    pub(crate) fn with_shared_labels(labels: Arc<[String]>, possibility: Vec<Event>) -> Self {
        debug_assert_eq!(labels.len(), possibility.len());
        Model {
            labels,
            possibility,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn states(&self) -> impl Iterator<Item = StateId<'_>> {
        self.labels
            .iter()
            .enumerate()
            .map(|(index, label)| StateId { index, label })
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// P(s).
    #[inline]
    pub fn possibility(&self, state: usize) -> Event {
        self.possibility[state]
    }

    pub fn correspondence(&self) -> &[Event] {
        &self.possibility
    }

    pub fn omega(&self) -> Event {
        Event::full(self.len())
    }

    pub fn empty_event(&self) -> Event {
        Event::empty(self.len())
    }

    pub fn event<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<Event> {
        let mut bits = 0u64;
        for l in labels {
            let i = self
                .state_index(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            bits |= 1 << i;
        }
        Ok(Event::from_bits(self.len(), bits))
    }

    /// Renders an event as `{a, b}` with labels in declaration order.
    pub fn format_event(&self, e: Event) -> String {
        let mut out = String::from("{");
        for (i, s) in e.states().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&self.labels[s]);
        }
        out.push('}');
        out
    }

    pub fn event_labels(&self, e: Event) -> Vec<String> {
        e.states().map(|s| self.labels[s].clone()).collect()
    }

    /// Text form accepted by [`parse_model`].
    pub fn to_text(&self) -> String {
        let mut out = String::from("states:");
        for l in self.labels.iter() {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
        for (s, label) in self.labels.iter().enumerate() {
            let _ = write!(out, "P({label}):");
            for t in self.possibility[s].states() {
                out.push(' ');
                out.push_str(&self.labels[t]);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = JsonModel {
            states: self.labels.to_vec(),
            p: self
                .labels
                .iter()
                .enumerate()
                .map(|(s, l)| (l.clone(), self.event_labels(self.possibility[s])))
                .collect(),
        };
        serde_json::to_value(doc).expect("model serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonModel {
    states: Vec<String>,
    #[serde(rename = "P")]
    p: BTreeMap<String, Vec<String>>,
}

/// Parses either the line-oriented text format or its JSON alternative,
/// chosen by the first non-blank byte.
pub fn parse_model(text: &str) -> Result<Model> {
    parse_model_with(text, &Limits::default())
}

pub fn parse_model_with(text: &str, limits: &Limits) -> Result<Model> {
    let model = if text.trim_start().starts_with('{') {
        parse_json(text)?
    } else {
        parse_text(text)?
    };
    if model.len() > limits.max_states {
        return Err(Error::ModelTooLarge {
            n: model.len(),
            cap: limits.max_states,
        });
    }
    Ok(model)
}

fn parse_json(text: &str) -> Result<Model> {
    let doc: JsonModel = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let labels = doc.states;
    check_labels(&labels)?;
    for key in doc.p.keys() {
        if !labels.contains(key) {
            return Err(Error::UnknownLabel(key.clone()));
        }
    }
    let mut possibility = Vec::with_capacity(labels.len());
    for label in &labels {
        let targets = doc
            .p
            .get(label)
            .ok_or_else(|| Error::MissingPossibility(label.clone()))?;
        possibility.push(resolve(&labels, targets.iter().map(String::as_str))?);
    }
    Model::new(labels, possibility)
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::EmptyStateSpace);
    }
    if labels.len() > MAX_UNIVERSE {
        return Err(Error::ModelTooLarge {
            n: labels.len(),
            cap: MAX_UNIVERSE,
        });
    }
    for (i, l) in labels.iter().enumerate() {
        if !is_valid_label(l) {
            return Err(Error::InvalidLabel(l.clone()));
        }
        if labels[..i].contains(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn resolve<'a>(labels: &[String], targets: impl Iterator<Item = &'a str>) -> Result<Event> {
    let mut bits = 0u64;
    for t in targets {
        let i = labels
            .iter()
            .position(|l| l == t)
            .ok_or_else(|| Error::UnknownLabel(t.to_string()))?;
        bits |= 1 << i;
    }
    Ok(Event::from_bits(labels.len(), bits))
}

fn parse_text(text: &str) -> Result<Model> {
    let mut labels: Option<Vec<String>> = None;
    let mut entries: Vec<Option<Event>> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("states:") {
            if labels.is_some() {
                return Err(Error::ModelSyntax {
                    line: line_no,
                    message: "repeated `states:` header".into(),
                });
            }
            let ls: Vec<String> = split_labels(rest).map(str::to_string).collect();
            check_labels(&ls)?;
            entries = vec![None; ls.len()];
            labels = Some(ls);
            continue;
        }
        let Some(rest) = line.strip_prefix("P(") else {
            if labels.is_none() {
                return Err(Error::MissingStatesHeader);
            }
            return Err(Error::ModelSyntax {
                line: line_no,
                message: format!("expected `P(<label>): ...`, found `{line}`"),
            });
        };
        let Some(labels) = labels.as_ref() else {
            return Err(Error::MissingStatesHeader);
        };
        let (state, rhs) = rest
            .split_once(')')
            .and_then(|(s, r)| Some((s.trim(), r.trim_start().strip_prefix(':')?)))
            .ok_or_else(|| Error::ModelSyntax {
                line: line_no,
                message: format!("malformed possibility line `{line}`"),
            })?;
        let idx = labels
            .iter()
            .position(|l| l == state)
            .ok_or_else(|| Error::UnknownLabel(state.to_string()))?;
        if entries[idx].is_some() {
            return Err(Error::DuplicatePossibility(state.to_string()));
        }
        entries[idx] = Some(resolve(labels, split_labels(rhs))?);
    }

    let labels = labels.ok_or(Error::MissingStatesHeader)?;
    let possibility = entries
        .into_iter()
        .zip(&labels)
        .map(|(e, l)| e.ok_or_else(|| Error::MissingPossibility(l.clone())))
        .collect::<Result<Vec<_>>>()?;
    Model::new(labels, possibility)
}

fn split_labels(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
}

/// Structural flags of a possibility correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelClass {
    pub serial: bool,
    pub reflexive: bool,
    pub transitive: bool,
    pub euclidean: bool,
    pub partitional: bool,
}

pub fn classify(m: &Model) -> ModelClass {
    let n = m.len();
    let p = m.correspondence();
    let serial = p.iter().all(|e| !e.is_empty());
    let reflexive = (0..n).all(|s| p[s].contains(s));
    let transitive = (0..n).all(|s| p[s].states().all(|t| p[t].le(p[s])));
    let euclidean = (0..n).all(|s| p[s].states().all(|t| p[s].le(p[t])));
    let disjoint_or_equal =
        (0..n).all(|s| (0..n).all(|t| p[s] == p[t] || (p[s] & p[t]).is_empty()));
    ModelClass {
        serial,
        reflexive,
        transitive,
        euclidean,
        partitional: reflexive && disjoint_or_equal,
    }
}
