//! Operations shared by the CLI and the HTTP API. Reads take a snapshot and a
//! config; writes go through a [`Store`].

use argnet_core::eval::{scope_all, scope_topic, CredibilityConfig, Evaluator};
use argnet_core::interchange::{export_document, export_dot, ExportOptions, InterchangeDocument};
use argnet_core::{
    argument_tree, Applied, CqInstance, CredibilityBreakdown, Explanation, INodeDraft, Network, NetworkError,
    NetworkSnapshot, Node, NodeId, QueryResult, QuerySpec, SNodeDraft, SchemeDescriptor,
};
use serde::{Deserialize, Serialize};

use crate::error::ServiceError;
use crate::store::Store;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CredibilityReport {
    pub node: NodeId,
    pub breakdown: CredibilityBreakdown,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub node: NodeId,
    pub valid: bool,
    pub credibility: f64,
    pub balance_point: f64,
    pub status: String,
    pub breakdown: CredibilityBreakdown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContradictionReport {
    /// `simple` or `weighted`.
    pub measure: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topic: Option<String>,
    pub scope_size: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RaiseCq {
    pub target: NodeId,
    pub cq_index: usize,
    #[serde(default)]
    pub challenge_text: String,
    pub raised_by: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolveCq {
    #[serde(default)]
    pub resolution_text: String,
}

/// A node that exists only for the duration of a what-if request. S-node
/// premises and conclusions may name an earlier hypothetical node as `@k`,
/// its position in the request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Hypothetical {
    I(INodeDraft),
    S(SNodeDraft),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WhatIfRequest {
    pub target: NodeId,
    #[serde(default)]
    pub nodes: Vec<Hypothetical>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WhatIfReport {
    pub target: NodeId,
    /// Ids the hypothetical nodes received in the overlay.
    pub created: Vec<NodeId>,
    pub before: CredibilityBreakdown,
    pub after: CredibilityBreakdown,
    /// `after - before`, factor by factor.
    pub delta: Delta,
    pub valid_before: bool,
    pub valid_after: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Delta {
    pub c: f64,
    pub u: i64,
    pub m: f64,
    pub a: f64,
    pub p: f64,
    pub s: f64,
    pub total: f64,
}

impl Delta {
    fn between(before: &CredibilityBreakdown, after: &CredibilityBreakdown) -> Self {
        Delta {
            c: after.c - before.c,
            u: after.u as i64 - before.u as i64,
            m: after.m - before.m,
            a: after.a - before.a,
            p: after.p - before.p,
            s: after.s - before.s,
            total: after.total - before.total,
        }
    }
}

fn applied_node(store: &Store, applied: Applied) -> Node {
    match applied {
        Applied::Node(id) => store.network().node(&id).cloned().expect("committed node exists"),
        other => unreachable!("node event produced {other:?}"),
    }
}

fn applied_cq(store: &Store, id: &str) -> CqInstance {
    store
        .snapshot()
        .cq_instance(id)
        .cloned()
        .expect("committed instance exists")
}

pub fn add_i_node(store: &mut Store, draft: INodeDraft) -> Result<Node, ServiceError> {
    let ev = store.network().plan_i_node(draft)?;
    let applied = store.commit(ev)?;
    Ok(applied_node(store, applied))
}

pub fn add_s_node(store: &mut Store, draft: SNodeDraft) -> Result<Node, ServiceError> {
    let ev = store.network().plan_s_node(draft)?;
    let applied = store.commit(ev)?;
    Ok(applied_node(store, applied))
}

pub fn add_scheme(store: &mut Store, descriptor: SchemeDescriptor) -> Result<SchemeDescriptor, ServiceError> {
    let ev = store.network().plan_register_scheme(descriptor)?;
    match store.commit(ev)? {
        Applied::Scheme(id) => Ok(store.network().schemes().get(&id).cloned().expect("registered")),
        other => unreachable!("scheme event produced {other:?}"),
    }
}

pub fn raise_cq(store: &mut Store, req: RaiseCq) -> Result<CqInstance, ServiceError> {
    let ev = store
        .network()
        .plan_raise_cq(&req.target, req.cq_index, req.challenge_text, req.raised_by)?;
    match store.commit(ev)? {
        Applied::Cq(cq) => Ok(cq),
        other => unreachable!("raise event produced {other:?}"),
    }
}

pub fn resolve_cq(store: &mut Store, id: &str, req: ResolveCq) -> Result<CqInstance, ServiceError> {
    let ev = store.network().plan_resolve_cq(id, req.resolution_text)?;
    store.commit(ev)?;
    Ok(applied_cq(store, id))
}

/// Merges `document` into the stored network; returns the number of new nodes.
pub fn import(store: &mut Store, document: InterchangeDocument) -> Result<usize, ServiceError> {
    let before = store.network().len();
    let ev = store.network().plan_import(document)?;
    store.commit(ev)?;
    Ok(store.network().len() - before)
}

pub fn node(snapshot: &NetworkSnapshot, id: &NodeId) -> Result<Node, ServiceError> {
    snapshot
        .node(id)
        .cloned()
        .ok_or_else(|| NetworkError::UnknownNode(id.clone()).into())
}

pub fn credibility(
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
    id: &NodeId,
) -> Result<CredibilityReport, ServiceError> {
    let eval = Evaluator::new(snapshot, config)?.evaluate_root(id)?;
    Ok(CredibilityReport {
        node: id.clone(),
        breakdown: *eval.root(),
        warnings: eval.warnings().iter().cloned().collect(),
    })
}

pub fn validity(
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
    id: &NodeId,
) -> Result<ValidityReport, ServiceError> {
    let ev = Evaluator::new(snapshot, config)?;
    let verdict = ev.validity(id)?;
    let breakdown = ev.credibility(id)?;
    let summary = &node(snapshot, id)?.summary;
    Ok(ValidityReport {
        node: id.clone(),
        valid: verdict.valid,
        credibility: verdict.credibility,
        balance_point: verdict.balance_point,
        status: verdict.status_text(summary),
        breakdown,
    })
}

pub fn explanation(
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
    id: &NodeId,
) -> Result<Explanation, ServiceError> {
    Ok(Evaluator::new(snapshot, config)?.explanation(id)?)
}

pub fn tree_dot(snapshot: &NetworkSnapshot, config: &CredibilityConfig, root: &NodeId) -> Result<String, ServiceError> {
    let tree = argument_tree(root, snapshot)?;
    Ok(export_dot(&tree, snapshot, config)?)
}

pub fn contradiction(
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
    topic: Option<&str>,
    weighted: bool,
) -> Result<ContradictionReport, ServiceError> {
    let scope = match topic {
        Some(t) => scope_topic(snapshot, t),
        None => scope_all(snapshot),
    };
    let value = if weighted {
        argnet_core::contradiction_degree_weighted(&scope, snapshot, config)?
    } else {
        argnet_core::contradiction_degree_simple(&scope, snapshot)?
    };
    Ok(ContradictionReport {
        measure: if weighted { "weighted" } else { "simple" }.into(),
        topic: topic.map(String::from),
        scope_size: scope.len(),
        value,
    })
}

pub fn query(snapshot: &NetworkSnapshot, config: &CredibilityConfig, spec: &QuerySpec) -> Result<QueryResult, ServiceError> {
    Ok(argnet_core::run_query(spec, snapshot, config)?)
}

pub fn document(snapshot: &NetworkSnapshot, config: &CredibilityConfig) -> InterchangeDocument {
    export_document(snapshot, &ExportOptions::with_config(config.clone()))
}

fn resolve_ref(id: &NodeId, created: &[NodeId]) -> Result<NodeId, ServiceError> {
    match id.as_str().strip_prefix('@') {
        Some(k) => {
            let k: usize = k
                .parse()
                .map_err(|_| ServiceError::BadRequest(format!("malformed reference `{id}`")))?;
            created
                .get(k)
                .cloned()
                .ok_or_else(|| ServiceError::BadRequest(format!("reference `{id}` points past earlier nodes")))
        }
        None => Ok(id.clone()),
    }
}

/// Evaluates `target` before and after adding the hypothetical nodes to a
/// private copy of the network. Nothing is committed.
pub fn what_if(
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
    req: WhatIfRequest,
) -> Result<WhatIfReport, ServiceError> {
    let before_ev = Evaluator::new(snapshot, config)?;
    let before = before_ev.credibility(&req.target)?;
    let valid_before = before_ev.validity(&req.target)?.valid;

    let mut overlay = Network::from_snapshot(snapshot.clone());
    let mut created = Vec::new();
    for h in req.nodes {
        let id = match h {
            Hypothetical::I(d) => overlay.create_i_node(d)?,
            Hypothetical::S(mut d) => {
                d.premises = d
                    .premises
                    .iter()
                    .map(|p| resolve_ref(p, &created))
                    .collect::<Result<_, _>>()?;
                d.conclusion = resolve_ref(&d.conclusion, &created)?;
                overlay.create_s_node(d)?
            }
        };
        created.push(id);
    }
    let after_snap = overlay.snapshot();
    let after_ev = Evaluator::new(&after_snap, config)?;
    let after = after_ev.credibility(&req.target)?;
    let valid_after = after_ev.validity(&req.target)?.valid;
    Ok(WhatIfReport {
        target: req.target,
        created,
        delta: Delta::between(&before, &after),
        before,
        after,
        valid_before,
        valid_after,
    })
}
