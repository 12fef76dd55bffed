//! Credibility evaluation, validity verdicts, explanations and contradiction degree.
//!
//! Credibility is computed bottom-up over an [`ArgumentTree`]:
//!
//! * `c` numeric certainty of the node;
//! * `u` usage, taken from the snapshot's network-wide participation index;
//! * `m` minimum support: the weakest premise of a scheme node, or the
//!   weakest RA-node concluding at an I-node (0 when there is none);
//! * `a` attack factor over the CA-nodes concluding at the node;
//! * `p` preference factor over the PA-nodes concluding at the node;
//! * `s` scheme weight of a scheme node (0 for I-nodes).
//!
//! Children removed by the cycle guard or blocked by an open critical
//! question are absent from the tree and contribute nothing.

mod config;
mod contradiction;
mod explain;
mod strategy;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::EvalError;
use crate::model::{NodeId, NodeKind};
use crate::snapshot::NetworkSnapshot;
use crate::tree::{argument_tree, ArgumentTree, TreeIndex};

pub use config::{CredibilityConfig, SCENARIO_2010};
pub use contradiction::{scope_all, scope_topic, CountRatio, WeightedRatio};
pub use explain::Explanation;
pub use strategy::{ContradictionMeasure, Count, CredibilitySum, FactorStrategy, StrategyRegistry};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CredibilityBreakdown {
    pub c: f64,
    pub u: u32,
    pub m: f64,
    pub a: f64,
    pub p: f64,
    pub s: f64,
    pub total: f64,
}

impl CredibilityBreakdown {
    pub fn new(c: f64, u: u32, m: f64, a: f64, p: f64, s: f64, config: &CredibilityConfig) -> Self {
        let total = config.w_cert * c
            + config.w_usage * f64::from(u)
            + config.w_minsup * m
            + config.w_conflict * a
            + config.w_pref * p
            + config.w_scheme * s;
        CredibilityBreakdown {
            c,
            u,
            m,
            a,
            p,
            s,
            total,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityVerdict {
    pub node: NodeId,
    pub credibility: f64,
    pub valid: bool,
    pub balance_point: f64,
}

impl ValidityVerdict {
    /// One-line status in the style `The fact that X is (not) sufficiently supported.`
    pub fn status_text(&self, summary: &str) -> String {
        let neg = if self.valid { "" } else { "not " };
        format!("The fact that {summary} is {neg}sufficiently supported.")
    }
}

/// Breakdowns for every position of an evaluated tree.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeEvaluation {
    tree: ArgumentTree,
    breakdowns: Vec<CredibilityBreakdown>,
    warnings: BTreeSet<String>,
}

impl TreeEvaluation {
    pub fn tree(&self) -> &ArgumentTree {
        &self.tree
    }

    pub fn root(&self) -> &CredibilityBreakdown {
        &self.breakdowns[0]
    }

    pub fn at(&self, idx: TreeIndex) -> &CredibilityBreakdown {
        &self.breakdowns[idx]
    }

    /// Breakdown at the first preorder position of `id`.
    pub fn of(&self, id: &NodeId) -> Option<&CredibilityBreakdown> {
        self.tree.position(id).map(|i| &self.breakdowns[i])
    }

    pub fn breakdowns(&self) -> &[CredibilityBreakdown] {
        &self.breakdowns
    }

    pub fn warnings(&self) -> &BTreeSet<String> {
        &self.warnings
    }
}

/// Evaluates nodes of one snapshot under one configuration.
pub struct Evaluator<'a> {
    snapshot: &'a NetworkSnapshot,
    config: &'a CredibilityConfig,
    registry: &'a StrategyRegistry,
    attack: Arc<dyn FactorStrategy>,
    preference: Arc<dyn FactorStrategy>,
}

impl<'a> Evaluator<'a> {
    pub fn new(snapshot: &'a NetworkSnapshot, config: &'a CredibilityConfig) -> Result<Self, EvalError> {
        Evaluator::with_registry(snapshot, config, StrategyRegistry::builtin())
    }

    pub fn with_registry(
        snapshot: &'a NetworkSnapshot,
        config: &'a CredibilityConfig,
        registry: &'a StrategyRegistry,
    ) -> Result<Self, EvalError> {
        Ok(Evaluator {
            snapshot,
            config,
            registry,
            attack: registry.attack(&config.attack_mode)?,
            preference: registry.preference(&config.preference_mode)?,
        })
    }

    pub fn snapshot(&self) -> &NetworkSnapshot {
        self.snapshot
    }

    pub fn config(&self) -> &CredibilityConfig {
        self.config
    }

    pub fn evaluate(&self, tree: ArgumentTree) -> TreeEvaluation {
        let mut breakdowns = vec![None; tree.len()];
        let mut warnings = BTreeSet::new();
        let mut attackers = Vec::new();
        let mut supporters = Vec::new();

        // Preorder storage: children always sit after their parent.
        for idx in (0..tree.len()).rev() {
            let pos = tree.get(idx);
            let node = self
                .snapshot
                .node(&pos.node)
                .expect("tree positions resolve in their snapshot");
            attackers.clear();
            supporters.clear();
            let mut minsup: Option<f64> = None;

            for &ci in &pos.children {
                let child = self
                    .snapshot
                    .node(&tree.get(ci).node)
                    .expect("tree positions resolve in their snapshot");
                let cred = breakdowns[ci]
                    .as_ref()
                    .map(|b: &CredibilityBreakdown| b.total)
                    .expect("children evaluated first");
                if child.is_scheme() && child.conclusion.as_ref() == Some(&node.id) {
                    match child.kind {
                        NodeKind::RA if node.kind == NodeKind::I => {
                            minsup = Some(minsup.map_or(cred, |m| m.min(cred)));
                        }
                        NodeKind::CA => attackers.push(cred),
                        NodeKind::PA => supporters.push(cred),
                        _ => {}
                    }
                } else if node.is_scheme() {
                    minsup = Some(minsup.map_or(cred, |m| m.min(cred)));
                }
            }

            let s = match node.scheme.as_deref() {
                Some(scheme) if node.is_scheme() => match self.config.scheme_weight(scheme) {
                    Some(w) => w,
                    None => {
                        let msg = format!("no weight configured for scheme `{scheme}`, using 0");
                        if warnings.insert(msg.clone()) {
                            log::warn!("{msg}");
                        }
                        0.0
                    }
                },
                _ => 0.0,
            };

            breakdowns[idx] = Some(CredibilityBreakdown::new(
                node.certainty.value(),
                self.snapshot.usage(&node.id),
                minsup.unwrap_or(0.0),
                self.attack.combine(&attackers),
                self.preference.combine(&supporters),
                s,
                self.config,
            ));
        }

        TreeEvaluation {
            tree,
            breakdowns: breakdowns.into_iter().map(|b| b.expect("all positions evaluated")).collect(),
            warnings,
        }
    }

    pub fn evaluate_root(&self, root: &NodeId) -> Result<TreeEvaluation, EvalError> {
        Ok(self.evaluate(argument_tree(root, self.snapshot)?))
    }

    /// Credibility of `node` with its own argument tree as context.
    pub fn credibility(&self, node: &NodeId) -> Result<CredibilityBreakdown, EvalError> {
        Ok(*self.evaluate_root(node)?.root())
    }

    /// Credibility of `node` at its first position inside `tree`.
    pub fn credibility_in(
        &self,
        node: &NodeId,
        tree: &ArgumentTree,
    ) -> Result<CredibilityBreakdown, EvalError> {
        let idx = tree
            .position(node)
            .ok_or_else(|| EvalError::NodeNotInTree(node.clone()))?;
        Ok(*self.evaluate(tree.clone()).at(idx))
    }

    pub fn validity(&self, node: &NodeId) -> Result<ValidityVerdict, EvalError> {
        let credibility = self.credibility(node)?.total;
        Ok(ValidityVerdict {
            node: node.clone(),
            credibility,
            valid: credibility > self.config.balance_point,
            balance_point: self.config.balance_point,
        })
    }

    pub fn explanation(&self, node: &NodeId) -> Result<Explanation, EvalError> {
        let eval = self.evaluate_root(node)?;
        Ok(explain::best_explanation(&eval, self.snapshot))
    }

    /// Contradiction degree of `scope` under the named measure.
    pub fn contradiction(&self, measure: &str, scope: &[NodeId]) -> Result<f64, EvalError> {
        self.registry.contradiction(measure)?.degree(scope, self)
    }
}

pub fn credibility(
    node: &NodeId,
    tree: &ArgumentTree,
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
) -> Result<CredibilityBreakdown, EvalError> {
    Evaluator::new(snapshot, config)?.credibility_in(node, tree)
}

pub fn validity(
    node: &NodeId,
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
) -> Result<ValidityVerdict, EvalError> {
    Evaluator::new(snapshot, config)?.validity(node)
}

pub fn explanation(
    node: &NodeId,
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
) -> Result<Explanation, EvalError> {
    Evaluator::new(snapshot, config)?.explanation(node)
}

/// `#CA / (#RA + #PA)` over the scope.
pub fn contradiction_degree_simple(
    scope: &[NodeId],
    snapshot: &NetworkSnapshot,
) -> Result<f64, EvalError> {
    contradiction::count_ratio(scope, snapshot)
}

/// `Σ cred(CA) / (Σ cred(RA) + Σ cred(PA))`, each node evaluated as its own root.
pub fn contradiction_degree_weighted(
    scope: &[NodeId],
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
) -> Result<f64, EvalError> {
    let ev = Evaluator::new(snapshot, config)?;
    contradiction::weighted_ratio(scope, &ev)
}
