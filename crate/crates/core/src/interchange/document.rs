use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{InterchangeError, NetworkError};
use crate::eval::CredibilityConfig;
use crate::model::Node;
use crate::query::Taxonomy;
use crate::scheme::{builtin_schemes, CqInstance, SchemeDescriptor, SchemeRegistry};
use crate::snapshot::{validate_network, NetworkSnapshot, Violation};

pub const FORMAT_VERSION: &str = "argnet-aif/1";

/// Self-contained AIF-JSON document: nodes, schemes, critical-question
/// instances, and optionally a credibility config and taxonomy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterchangeDocument {
    pub version: String,
    #[serde(default)]
    pub nodes: Vec<Node>,
    #[serde(default)]
    pub schemes: Vec<SchemeDescriptor>,
    #[serde(default)]
    pub cq_instances: Vec<CqInstance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<CredibilityConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taxonomy: Option<Taxonomy>,
}

impl InterchangeDocument {
    pub fn empty() -> Self {
        InterchangeDocument {
            version: FORMAT_VERSION.to_string(),
            nodes: Vec::new(),
            schemes: Vec::new(),
            cq_instances: Vec::new(),
            config: None,
            taxonomy: None,
        }
    }

    /// Pretty-printed JSON with a trailing newline. Field order is fixed and
    /// every list is id-sorted, so equal documents give identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, InterchangeError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, Default)]
pub struct ExportOptions {
    pub config: Option<CredibilityConfig>,
    /// Include the snapshot's taxonomy even when it is empty.
    pub always_taxonomy: bool,
}

impl ExportOptions {
    pub fn with_config(config: CredibilityConfig) -> Self {
        ExportOptions {
            config: Some(config),
            ..ExportOptions::default()
        }
    }
}

pub fn export_document(snapshot: &NetworkSnapshot, options: &ExportOptions) -> InterchangeDocument {
    let taxonomy = snapshot.taxonomy();
    InterchangeDocument {
        version: FORMAT_VERSION.to_string(),
        nodes: snapshot.nodes().cloned().collect(),
        schemes: snapshot.schemes().iter().cloned().collect(),
        cq_instances: snapshot.cq_instances().cloned().collect(),
        config: options.config.clone(),
        taxonomy: (options.always_taxonomy || !taxonomy.is_empty()).then(|| taxonomy.clone()),
    }
}

/// Builds a snapshot from `document`, failing atomically on any violation.
///
/// Schemes defined in the document take precedence; built-in schemes fill in
/// the remaining ids.
pub fn import_document(document: &InterchangeDocument) -> Result<NetworkSnapshot, InterchangeError> {
    if document.version != FORMAT_VERSION {
        return Err(InterchangeError::UnsupportedVersion(document.version.clone()));
    }
    let mut violations = Vec::new();

    let mut nodes = BTreeMap::new();
    for n in &document.nodes {
        if nodes.insert(n.id.clone(), n.clone()).is_some() {
            violations.push(Violation::DuplicateId { node: n.id.clone() });
        }
    }
    let mut cqs = BTreeMap::new();
    for cq in &document.cq_instances {
        if cqs.insert(cq.id.clone(), cq.clone()).is_some() {
            violations.push(Violation::InvalidCqInstance {
                instance: cq.id.clone(),
                detail: "duplicate instance id".into(),
            });
        }
    }

    let mut schemes = SchemeRegistry::empty();
    for d in &document.schemes {
        schemes.register(d.clone()).map_err(NetworkError::from)?;
    }
    for d in builtin_schemes() {
        if !schemes.contains(&d.id) {
            // A document scheme may reuse a built-in's display name under another id.
            let _ = schemes.register(d);
        }
    }

    let taxonomy = document.taxonomy.clone().unwrap_or_else(Taxonomy::empty);
    let snapshot = NetworkSnapshot::build(0, nodes, schemes, cqs, taxonomy);
    violations.extend(validate_network(&snapshot));
    if !violations.is_empty() {
        return Err(InterchangeError::ValidationFailed(violations));
    }
    for (id, w) in snapshot.nodes().flat_map(|n| snapshot.warnings(&n.id).iter().map(move |w| (&n.id, w))) {
        log::warn!("{id}: {w}");
    }
    if let Some(config) = &document.config {
        for n in snapshot.nodes().filter(|n| n.is_scheme()) {
            if let Some(s) = &n.scheme {
                if config.scheme_weight(s).is_none() {
                    log::warn!("{}: no weight configured for scheme `{s}`, using 0", n.id);
                }
            }
        }
    }
    Ok(snapshot)
}
