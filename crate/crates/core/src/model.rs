//! Node-level domain types of the argument network.
//!
//! The network follows the AIF split between information nodes (`I`) and
//! scheme application nodes (`RA`, `CA`, `PA`). Scheme applications link a
//! list of premise I-nodes to a single conclusion, which may itself be a
//! scheme application (a conflict can target an inference).

use std::fmt;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Opaque node identifier, unique within a network.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(value: impl Into<String>) -> Result<Self, ModelError> {
        let value = value.into();
        if value.trim().is_empty() {
            return Err(ModelError::EmptyId);
        }
        Ok(NodeId(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId(s.to_string())
    }
}

/// User-assigned degree of belief.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    VeryLow,
    Low,
    #[default]
    Average,
    High,
    VeryHigh,
}

impl Certainty {
    pub const ALL: [Certainty; 5] = [
        Certainty::VeryLow,
        Certainty::Low,
        Certainty::Average,
        Certainty::High,
        Certainty::VeryHigh,
    ];

    /// Numeric value used by the credibility function.
    pub fn value(self) -> f64 {
        match self {
            Certainty::VeryLow => 1.0,
            Certainty::Low => 2.0,
            Certainty::Average => 5.0,
            Certainty::High => 7.0,
            Certainty::VeryHigh => 9.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Certainty::VeryLow => "very_low",
            Certainty::Low => "low",
            Certainty::Average => "average",
            Certainty::High => "high",
            Certainty::VeryHigh => "very_high",
        }
    }
}

impl std::str::FromStr for Certainty {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace([' ', '-'], "_");
        Certainty::ALL
            .into_iter()
            .find(|c| c.as_str() == norm)
            .ok_or_else(|| ModelError::UnknownCertainty(s.to_string()))
    }
}

/// A weighted vocabulary term, e.g. `(0.8, foaf:topic)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextTerm {
    pub term: String,
    pub weight: f64,
}

impl ContextTerm {
    pub fn new(term: impl Into<String>, weight: f64) -> Result<Self, ModelError> {
        let t = ContextTerm {
            term: term.into(),
            weight,
        };
        t.check()?;
        Ok(t)
    }

    pub(crate) fn check(&self) -> Result<(), ModelError> {
        if self.term.trim().is_empty() {
            return Err(ModelError::EmptyContextTerm);
        }
        if !(0.0..=1.0).contains(&self.weight) {
            return Err(ModelError::InvalidContextWeight {
                term: self.term.clone(),
                weight: self.weight,
            });
        }
        Ok(())
    }
}

impl std::str::FromStr for ContextTerm {
    type Err = ModelError;

    /// Parses `weight:term`, e.g. `0.8:foaf:topic`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (w, term) = s
            .split_once(':')
            .ok_or_else(|| ModelError::MalformedContextTerm(s.to_string()))?;
        let weight: f64 = w
            .trim()
            .parse()
            .map_err(|_| ModelError::MalformedContextTerm(s.to_string()))?;
        ContextTerm::new(term.trim(), weight)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    I,
    RA,
    CA,
    PA,
}

impl NodeKind {
    pub fn is_scheme(self) -> bool {
        !matches!(self, NodeKind::I)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::I => "I",
            NodeKind::RA => "RA",
            NodeKind::CA => "CA",
            NodeKind::PA => "PA",
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for NodeKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" => Ok(NodeKind::I),
            "RA" => Ok(NodeKind::RA),
            "CA" => Ok(NodeKind::CA),
            "PA" => Ok(NodeKind::PA),
            _ => Err(ModelError::UnknownKind(s.to_string())),
        }
    }
}

/// One vertex of the argument network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub summary: String,
    #[serde(default)]
    pub text: String,
    #[serde(default)]
    pub certainty: Certainty,
    #[serde(default)]
    pub support_url: Option<String>,
    #[serde(default)]
    pub context: Vec<ContextTerm>,
    #[serde(default)]
    pub topic: Vec<ContextTerm>,
    pub author: String,
    #[serde(with = "crate::timestamp")]
    pub created_at: DateTime<Utc>,
    #[serde(default)]
    pub premises: Vec<NodeId>,
    #[serde(default)]
    pub conclusion: Option<NodeId>,
    #[serde(default)]
    pub scheme: Option<String>,
    #[serde(default)]
    pub default_form: Option<String>,
}

impl Node {
    pub fn is_scheme(&self) -> bool {
        self.kind.is_scheme()
    }

    /// Premises without repeats, in ascending id order.
    pub fn distinct_premises(&self) -> Vec<&NodeId> {
        let mut p: Vec<&NodeId> = self.premises.iter().collect();
        p.sort();
        p.dedup();
        p
    }
}

/// Caller-supplied fields for a new information node.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct INodeDraft {
    pub summary: String,
    #[serde(default)]
    pub certainty: Option<Certainty>,
    #[serde(default)]
    pub text: String,
    #[serde(default)]
    pub support_url: Option<String>,
    #[serde(default)]
    pub context: Vec<ContextTerm>,
    pub author: String,
}

impl INodeDraft {
    pub fn new(summary: impl Into<String>, author: impl Into<String>) -> Self {
        INodeDraft {
            summary: summary.into(),
            author: author.into(),
            ..Default::default()
        }
    }

    pub fn certainty(mut self, c: Certainty) -> Self {
        self.certainty = Some(c);
        self
    }

    pub fn text(mut self, t: impl Into<String>) -> Self {
        self.text = t.into();
        self
    }

    pub fn support_url(mut self, u: impl Into<String>) -> Self {
        self.support_url = Some(u.into());
        self
    }

    pub fn context(mut self, ctx: Vec<ContextTerm>) -> Self {
        self.context = ctx;
        self
    }
}

/// Caller-supplied fields for a new scheme application node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SNodeDraft {
    pub kind: NodeKind,
    pub summary: String,
    #[serde(default)]
    pub certainty: Option<Certainty>,
    pub premises: Vec<NodeId>,
    pub conclusion: NodeId,
    pub scheme: String,
    #[serde(default)]
    pub topic: Vec<ContextTerm>,
    #[serde(default)]
    pub support_url: Option<String>,
    #[serde(default)]
    pub default_form: Option<String>,
    #[serde(default)]
    pub text: String,
    pub author: String,
}

impl SNodeDraft {
    pub fn new(
        kind: NodeKind,
        summary: impl Into<String>,
        premises: Vec<NodeId>,
        conclusion: NodeId,
        scheme: impl Into<String>,
        author: impl Into<String>,
    ) -> Self {
        SNodeDraft {
            kind,
            summary: summary.into(),
            certainty: None,
            premises,
            conclusion,
            scheme: scheme.into(),
            topic: Vec::new(),
            support_url: None,
            default_form: None,
            text: String::new(),
            author: author.into(),
        }
    }

    pub fn certainty(mut self, c: Certainty) -> Self {
        self.certainty = Some(c);
        self
    }

    pub fn topic(mut self, topic: Vec<ContextTerm>) -> Self {
        self.topic = topic;
        self
    }

    pub fn support_url(mut self, u: impl Into<String>) -> Self {
        self.support_url = Some(u.into());
        self
    }

    pub fn default_form(mut self, f: impl Into<String>) -> Self {
        self.default_form = Some(f.into());
        self
    }
}
