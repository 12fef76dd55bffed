use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Factor weights for the credibility function.
///
/// `total = w_cert*c + w_usage*u + w_minsup*m + w_conflict*a + w_pref*p + w_scheme*s`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CredibilityConfig {
    pub w_cert: f64,
    pub w_usage: f64,
    pub w_minsup: f64,
    /// Conventionally negative.
    pub w_conflict: f64,
    pub w_pref: f64,
    pub w_scheme: f64,
    #[serde(default)]
    pub scheme_weights: BTreeMap<String, f64>,
    #[serde(default)]
    pub balance_point: f64,
    /// Name of the registered attack-factor strategy.
    #[serde(default = "default_attack_mode")]
    pub attack_mode: String,
    /// Name of the registered preference-factor strategy.
    #[serde(default = "default_preference_mode")]
    pub preference_mode: String,
}

fn default_attack_mode() -> String {
    "count".into()
}

fn default_preference_mode() -> String {
    "credibility_sum".into()
}

pub const SCENARIO_2010: &str = "scenario-2010";

impl CredibilityConfig {
    /// Weights of the worked software-cost debate: certainty 0.02, usage 0.7,
    /// preference 1.5, conflict -1.5, minimum support 0.18, scheme 0.1.
    pub fn scenario_2010() -> Self {
        CredibilityConfig {
            w_cert: 0.02,
            w_usage: 0.7,
            w_minsup: 0.18,
            w_conflict: -1.5,
            w_pref: 1.5,
            w_scheme: 0.1,
            scheme_weights: BTreeMap::from([
                ("argument_from_example".to_string(), 2.0),
                ("argument_from_sign".to_string(), 3.0),
                ("argument_from_position_to_know".to_string(), 4.0),
                ("preference".to_string(), 3.0),
                ("conflict".to_string(), 3.0),
            ]),
            balance_point: 0.0,
            attack_mode: default_attack_mode(),
            preference_mode: default_preference_mode(),
        }
    }

    /// Every factor weighted 1 (conflict -1), every built-in scheme weighted 1.
    pub fn uniform() -> Self {
        CredibilityConfig {
            w_cert: 1.0,
            w_usage: 1.0,
            w_minsup: 1.0,
            w_conflict: -1.0,
            w_pref: 1.0,
            w_scheme: 1.0,
            scheme_weights: crate::scheme::builtin_schemes()
                .into_iter()
                .map(|d| (d.id, 1.0))
                .collect(),
            balance_point: 0.0,
            attack_mode: default_attack_mode(),
            preference_mode: default_preference_mode(),
        }
    }

    pub fn preset_names() -> &'static [&'static str] {
        &[SCENARIO_2010, "uniform"]
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            SCENARIO_2010 => Some(Self::scenario_2010()),
            "uniform" => Some(Self::uniform()),
            _ => None,
        }
    }

    pub fn with_attack_mode(mut self, mode: impl Into<String>) -> Self {
        self.attack_mode = mode.into();
        self
    }

    /// Weight of `scheme`; `None` when no entry exists (evaluated as 0).
    pub fn scheme_weight(&self, scheme: &str) -> Option<f64> {
        self.scheme_weights.get(scheme).copied()
    }
}

impl Default for CredibilityConfig {
    fn default() -> Self {
        CredibilityConfig::scenario_2010()
    }
}
