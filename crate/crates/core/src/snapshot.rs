//! Immutable network views and structural validation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::model::{Node, NodeId, NodeKind};
use crate::query::Taxonomy;
use crate::scheme::{CqInstance, SchemeRegistry};

/// A structural invariant breach. Violations are data, never errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Violation {
    DanglingReference {
        node: NodeId,
        field: String,
        target: NodeId,
    },
    KindConstraint {
        node: NodeId,
        detail: String,
    },
    DuplicateId {
        node: NodeId,
    },
    EmptySummary {
        node: NodeId,
    },
    InvalidContextWeight {
        node: NodeId,
        term: String,
        weight: f64,
    },
    PremiseNotINode {
        node: NodeId,
        premise: NodeId,
    },
    SelfReference {
        node: NodeId,
    },
    UnknownScheme {
        node: NodeId,
        scheme: String,
    },
    SchemeKindMismatch {
        node: NodeId,
        scheme: String,
    },
    InvalidCqInstance {
        instance: String,
        detail: String,
    },
}

/// Immutable view of the whole network plus derived indices.
#[derive(Debug, Clone)]
pub struct NetworkSnapshot {
    version: u64,
    nodes: BTreeMap<NodeId, Node>,
    schemes: SchemeRegistry,
    cq_instances: BTreeMap<String, CqInstance>,
    taxonomy: Taxonomy,
    incoming_by_conclusion: BTreeMap<NodeId, Vec<NodeId>>,
    usage_index: BTreeMap<NodeId, u32>,
    blocked: BTreeSet<NodeId>,
    warnings: BTreeMap<NodeId, Vec<String>>,
}

// Structural equality; the version counter is bookkeeping and ignored.
impl PartialEq for NetworkSnapshot {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && self.schemes == other.schemes
            && self.cq_instances == other.cq_instances
            && self.taxonomy == other.taxonomy
            && self.incoming_by_conclusion == other.incoming_by_conclusion
            && self.usage_index == other.usage_index
            && self.blocked == other.blocked
            && self.warnings == other.warnings
    }
}

impl NetworkSnapshot {
    /// Builds a snapshot and its indices. Dangling references are tolerated
    /// here and reported by [`validate_network`].
    pub fn build(
        version: u64,
        nodes: BTreeMap<NodeId, Node>,
        schemes: SchemeRegistry,
        cq_instances: BTreeMap<String, CqInstance>,
        taxonomy: Taxonomy,
    ) -> Self {
        let mut incoming: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        let mut usage: BTreeMap<NodeId, u32> = nodes.keys().map(|k| (k.clone(), 0)).collect();
        let mut warnings: BTreeMap<NodeId, Vec<String>> = BTreeMap::new();

        for node in nodes.values().filter(|n| n.is_scheme()) {
            // Participation as a premise always counts; as a conclusion only
            // for inference nodes, since PA/CA conclusions are subtracted.
            for p in node.distinct_premises() {
                if let Some(u) = usage.get_mut(p) {
                    *u += 1;
                }
            }
            if let Some(c) = &node.conclusion {
                if node.kind == NodeKind::RA {
                    if let Some(u) = usage.get_mut(c) {
                        *u += 1;
                    }
                }
                if nodes.contains_key(c) {
                    incoming.entry(c.clone()).or_default().push(node.id.clone());
                }
            }
            if let Some(d) = node.scheme.as_deref().and_then(|s| schemes.get(s)) {
                if d.premise_descriptors.len() != node.premises.len() {
                    warnings.entry(node.id.clone()).or_default().push(format!(
                        "scheme `{}` expects {} premises, node has {}",
                        d.id,
                        d.premise_descriptors.len(),
                        node.premises.len()
                    ));
                }
            }
        }
        for list in incoming.values_mut() {
            list.sort();
        }

        let blocked = cq_instances
            .values()
            .filter(|cq| cq.is_open())
            .filter(|cq| nodes.get(&cq.target).is_some_and(|n| n.is_scheme()))
            .map(|cq| cq.target.clone())
            .collect();

        NetworkSnapshot {
            version,
            nodes,
            schemes,
            cq_instances,
            taxonomy,
            incoming_by_conclusion: incoming,
            usage_index: usage,
            blocked,
            warnings,
        }
    }

    pub fn empty() -> Self {
        NetworkSnapshot::build(
            0,
            BTreeMap::new(),
            SchemeRegistry::with_builtins(),
            BTreeMap::new(),
            Taxonomy::empty(),
        )
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn node(&self, id: &NodeId) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn contains(&self, id: &NodeId) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.values()
    }

    pub fn node_map(&self) -> &BTreeMap<NodeId, Node> {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn schemes(&self) -> &SchemeRegistry {
        &self.schemes
    }

    pub fn cq_instances(&self) -> impl Iterator<Item = &CqInstance> {
        self.cq_instances.values()
    }

    pub fn cq_instance(&self, id: &str) -> Option<&CqInstance> {
        self.cq_instances.get(id)
    }

    pub fn taxonomy(&self) -> &Taxonomy {
        &self.taxonomy
    }

    /// Scheme nodes whose conclusion is `id`, ascending, blocked ones included.
    pub fn incoming(&self, id: &NodeId) -> &[NodeId] {
        self.incoming_by_conclusion
            .get(id)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn usage(&self, id: &NodeId) -> u32 {
        self.usage_index.get(id).copied().unwrap_or(0)
    }

    pub fn usage_index(&self) -> &BTreeMap<NodeId, u32> {
        &self.usage_index
    }

    pub fn is_blocked(&self, id: &NodeId) -> bool {
        self.blocked.contains(id)
    }

    pub fn blocked(&self) -> &BTreeSet<NodeId> {
        &self.blocked
    }

    pub fn warnings(&self, id: &NodeId) -> &[String] {
        self.warnings.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Tree children of `id`: its resolvable premises (scheme nodes only)
    /// and every non-blocked scheme node concluding at it; ascending, distinct.
    pub fn tree_children(&self, id: &NodeId) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = Vec::new();
        if let Some(node) = self.nodes.get(id) {
            if node.is_scheme() {
                out.extend(
                    node.premises
                        .iter()
                        .filter(|p| self.nodes.contains_key(*p))
                        .cloned(),
                );
            }
        }
        out.extend(
            self.incoming(id)
                .iter()
                .filter(|s| !self.blocked.contains(*s))
                .cloned(),
        );
        out.sort();
        out.dedup();
        out
    }

    pub(crate) fn into_parts(
        self,
    ) -> (
        BTreeMap<NodeId, Node>,
        SchemeRegistry,
        BTreeMap<String, CqInstance>,
        Taxonomy,
    ) {
        (self.nodes, self.schemes, self.cq_instances, self.taxonomy)
    }
}

/// Checks every structural invariant and reports each breach.
pub fn validate_network(snapshot: &NetworkSnapshot) -> Vec<Violation> {
    let mut out = Vec::new();
    for node in snapshot.nodes() {
        check_node(&snapshot.nodes, &snapshot.schemes, node, &mut out);
    }
    for cq in snapshot.cq_instances() {
        let detail = match snapshot.node(&cq.target) {
            None => Some(format!("target `{}` does not exist", cq.target)),
            Some(n) if !n.is_scheme() => Some(format!("target `{}` is not a scheme node", cq.target)),
            Some(n) => {
                let len = n
                    .scheme
                    .as_deref()
                    .and_then(|s| snapshot.schemes().get(s))
                    .map(|d| d.critical_questions.len());
                match len {
                    Some(len) if cq.cq_index >= len => {
                        Some(format!("cq_index {} out of range ({len})", cq.cq_index))
                    }
                    _ => None,
                }
            }
        };
        if cq.status == crate::scheme::CqStatus::Open && cq.resolution_text.is_some() {
            out.push(Violation::InvalidCqInstance {
                instance: cq.id.clone(),
                detail: "open instance carries a resolution".into(),
            });
        }
        if let Some(detail) = detail {
            out.push(Violation::InvalidCqInstance {
                instance: cq.id.clone(),
                detail,
            });
        }
    }
    out
}

pub(crate) fn check_node(
    nodes: &BTreeMap<NodeId, Node>,
    schemes: &SchemeRegistry,
    node: &Node,
    out: &mut Vec<Violation>,
) {
    let id = &node.id;
    if node.summary.trim().is_empty() {
        out.push(Violation::EmptySummary { node: id.clone() });
    }
    for t in node.context.iter().chain(&node.topic) {
        if t.check().is_err() {
            out.push(Violation::InvalidContextWeight {
                node: id.clone(),
                term: t.term.clone(),
                weight: t.weight,
            });
        }
    }

    if node.kind == NodeKind::I {
        let mut extra = Vec::new();
        if !node.premises.is_empty() {
            extra.push("premises");
        }
        if node.conclusion.is_some() {
            extra.push("conclusion");
        }
        if node.scheme.is_some() {
            extra.push("scheme");
        }
        if !extra.is_empty() {
            out.push(Violation::KindConstraint {
                node: id.clone(),
                detail: format!("I-node must not carry {}", extra.join(", ")),
            });
        }
        return;
    }

    let mut missing = Vec::new();
    if node.premises.is_empty() {
        missing.push("premises");
    }
    if node.conclusion.is_none() {
        missing.push("conclusion");
    }
    if node.scheme.is_none() {
        missing.push("scheme");
    }
    if !missing.is_empty() {
        out.push(Violation::KindConstraint {
            node: id.clone(),
            detail: format!("{} node is missing {}", node.kind, missing.join(", ")),
        });
    }

    let circular = node
        .conclusion
        .as_ref()
        .is_some_and(|c| c == id || node.premises.contains(c));
    if circular || node.premises.contains(id) {
        out.push(Violation::SelfReference { node: id.clone() });
    }
    for p in node.distinct_premises() {
        if p == id {
            continue;
        }
        match nodes.get(p) {
            None => out.push(Violation::DanglingReference {
                node: id.clone(),
                field: "premises".into(),
                target: p.clone(),
            }),
            Some(pn) if pn.kind != NodeKind::I => out.push(Violation::PremiseNotINode {
                node: id.clone(),
                premise: p.clone(),
            }),
            Some(_) => {}
        }
    }
    if let Some(c) = &node.conclusion {
        if c != id && !nodes.contains_key(c) {
            out.push(Violation::DanglingReference {
                node: id.clone(),
                field: "conclusion".into(),
                target: c.clone(),
            });
        }
    }
    if let Some(s) = &node.scheme {
        match schemes.get(s) {
            None => out.push(Violation::UnknownScheme {
                node: id.clone(),
                scheme: s.clone(),
            }),
            Some(d) if d.scheme_kind.node_kind() != node.kind => {
                out.push(Violation::SchemeKindMismatch {
                    node: id.clone(),
                    scheme: s.clone(),
                })
            }
            Some(_) => {}
        }
    }
}
