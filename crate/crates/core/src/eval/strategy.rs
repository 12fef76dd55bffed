//! Pluggable evaluation strategies, registered by name.
//!
//! Two families shape the credibility function: how the credibilities of
//! attacking CA-nodes fold into the attack factor, and how supporting PA-nodes
//! fold into the preference factor. A third family measures how contradictory
//! a scope of scheme nodes is. [`CredibilityConfig`](super::CredibilityConfig)
//! selects factor strategies by name; callers pick a contradiction measure.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::EvalError;
use crate::model::NodeId;

use super::contradiction::{CountRatio, WeightedRatio};
use super::Evaluator;

/// Folds the credibilities of the CA- or PA-nodes concluding at a node into one factor value.
pub trait FactorStrategy: Send + Sync {
    fn name(&self) -> &str;
    fn combine(&self, credibilities: &[f64]) -> f64;
}

/// Number of contributing nodes, ignoring their credibility.
#[derive(Debug, Clone, Copy, Default)]
pub struct Count;

impl FactorStrategy for Count {
    fn name(&self) -> &str {
        "count"
    }

    fn combine(&self, credibilities: &[f64]) -> f64 {
        credibilities.len() as f64
    }
}

/// Sum of contributing nodes' credibilities, in ascending node-id order.
#[derive(Debug, Clone, Copy, Default)]
pub struct CredibilitySum;

impl FactorStrategy for CredibilitySum {
    fn name(&self) -> &str {
        "credibility_sum"
    }

    fn combine(&self, credibilities: &[f64]) -> f64 {
        credibilities.iter().sum()
    }
}

/// Degree of contradiction over a scope of scheme nodes.
pub trait ContradictionMeasure: Send + Sync {
    fn name(&self) -> &str;
    fn degree(&self, scope: &[NodeId], evaluator: &Evaluator<'_>) -> Result<f64, EvalError>;
}

#[derive(Clone, Default)]
pub struct StrategyRegistry {
    attack: BTreeMap<String, Arc<dyn FactorStrategy>>,
    preference: BTreeMap<String, Arc<dyn FactorStrategy>>,
    contradiction: BTreeMap<String, Arc<dyn ContradictionMeasure>>,
}

impl fmt::Debug for StrategyRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StrategyRegistry")
            .field("attack", &self.attack.keys().collect::<Vec<_>>())
            .field("preference", &self.preference.keys().collect::<Vec<_>>())
            .field("contradiction", &self.contradiction.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry::default()
    }

    /// `count` and `credibility_sum` for both factor families; `simple` and
    /// `weighted` contradiction measures.
    pub fn with_builtins() -> Self {
        let mut r = StrategyRegistry::empty();
        r.register_attack(Count);
        r.register_attack(CredibilitySum);
        r.register_preference(Count);
        r.register_preference(CredibilitySum);
        r.register_contradiction(CountRatio);
        r.register_contradiction(WeightedRatio);
        r
    }

    /// Process-wide registry holding the built-ins.
    pub fn builtin() -> &'static StrategyRegistry {
        static BUILTIN: OnceLock<StrategyRegistry> = OnceLock::new();
        BUILTIN.get_or_init(StrategyRegistry::with_builtins)
    }

    pub fn register_attack<S: FactorStrategy + 'static>(&mut self, s: S) {
        self.attack.insert(s.name().to_string(), Arc::new(s));
    }

    pub fn register_preference<S: FactorStrategy + 'static>(&mut self, s: S) {
        self.preference.insert(s.name().to_string(), Arc::new(s));
    }

    pub fn register_contradiction<M: ContradictionMeasure + 'static>(&mut self, m: M) {
        self.contradiction.insert(m.name().to_string(), Arc::new(m));
    }

    pub fn attack(&self, name: &str) -> Result<Arc<dyn FactorStrategy>, EvalError> {
        self.attack.get(name).cloned().ok_or_else(|| EvalError::UnknownStrategy {
            family: "attack",
            name: name.to_string(),
        })
    }

    pub fn preference(&self, name: &str) -> Result<Arc<dyn FactorStrategy>, EvalError> {
        self.preference
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::UnknownStrategy {
                family: "preference",
                name: name.to_string(),
            })
    }

    pub fn contradiction(&self, name: &str) -> Result<Arc<dyn ContradictionMeasure>, EvalError> {
        self.contradiction
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::UnknownStrategy {
                family: "contradiction",
                name: name.to_string(),
            })
    }

    pub fn attack_names(&self) -> impl Iterator<Item = &str> {
        self.attack.keys().map(String::as_str)
    }

    pub fn preference_names(&self) -> impl Iterator<Item = &str> {
        self.preference.keys().map(String::as_str)
    }

    pub fn contradiction_names(&self) -> impl Iterator<Item = &str> {
        self.contradiction.keys().map(String::as_str)
    }
}
