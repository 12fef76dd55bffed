use std::collections::BTreeSet;

use crate::error::EvalError;
use crate::model::{NodeId, NodeKind};
use crate::snapshot::NetworkSnapshot;

use super::strategy::ContradictionMeasure;
use super::Evaluator;

/// Every scheme node in the snapshot, ascending.
pub fn scope_all(snapshot: &NetworkSnapshot) -> Vec<NodeId> {
    snapshot
        .nodes()
        .filter(|n| n.is_scheme())
        .map(|n| n.id.clone())
        .collect()
}

/// Scheme nodes with a topic term equal to, or below, `term` in the snapshot's taxonomy.
pub fn scope_topic(snapshot: &NetworkSnapshot, term: &str) -> Vec<NodeId> {
    let tax = snapshot.taxonomy();
    snapshot
        .nodes()
        .filter(|n| n.is_scheme())
        .filter(|n| n.topic.iter().any(|t| tax.subsumed_by(&t.term, term)))
        .map(|n| n.id.clone())
        .collect()
}

fn classified(
    scope: &[NodeId],
    snapshot: &NetworkSnapshot,
) -> Result<Vec<(NodeId, NodeKind)>, EvalError> {
    let distinct: BTreeSet<&NodeId> = scope.iter().collect();
    distinct
        .into_iter()
        .map(|id| {
            let node = snapshot
                .node(id)
                .ok_or_else(|| EvalError::UnknownNode(id.clone()))?;
            if !node.is_scheme() {
                return Err(EvalError::NotSchemeNode(id.clone()));
            }
            Ok((id.clone(), node.kind))
        })
        .collect()
}

pub(super) fn count_ratio(scope: &[NodeId], snapshot: &NetworkSnapshot) -> Result<f64, EvalError> {
    let nodes = classified(scope, snapshot)?;
    let count = |k: NodeKind| nodes.iter().filter(|(_, nk)| *nk == k).count();
    let denom = count(NodeKind::RA) + count(NodeKind::PA);
    if denom == 0 {
        return Err(EvalError::EmptyDenominator);
    }
    Ok(count(NodeKind::CA) as f64 / denom as f64)
}

pub(super) fn weighted_ratio(scope: &[NodeId], ev: &Evaluator<'_>) -> Result<f64, EvalError> {
    let nodes = classified(scope, ev.snapshot())?;
    if !nodes.iter().any(|(_, k)| matches!(k, NodeKind::RA | NodeKind::PA)) {
        return Err(EvalError::EmptyDenominator);
    }
    let (mut conflict, mut rule, mut pref) = (0.0, 0.0, 0.0);
    for (id, kind) in &nodes {
        let cred = ev.credibility(id)?.total;
        match kind {
            NodeKind::CA => conflict += cred,
            NodeKind::RA => rule += cred,
            NodeKind::PA => pref += cred,
            NodeKind::I => unreachable!("filtered by classified"),
        }
    }
    let denom = rule + pref;
    if denom == 0.0 {
        return Err(EvalError::ZeroDenominator);
    }
    Ok(conflict / denom)
}

/// Conflict count over rule-plus-preference count.
#[derive(Debug, Clone, Copy, Default)]
pub struct CountRatio;

impl ContradictionMeasure for CountRatio {
    fn name(&self) -> &str {
        "simple"
    }

    fn degree(&self, scope: &[NodeId], evaluator: &Evaluator<'_>) -> Result<f64, EvalError> {
        count_ratio(scope, evaluator.snapshot())
    }
}

/// Conflict credibility mass over rule-plus-preference credibility mass.
#[derive(Debug, Clone, Copy, Default)]
pub struct WeightedRatio;

impl ContradictionMeasure for WeightedRatio {
    fn name(&self) -> &str {
        "weighted"
    }

    fn degree(&self, scope: &[NodeId], evaluator: &Evaluator<'_>) -> Result<f64, EvalError> {
        weighted_ratio(scope, evaluator)
    }
}
