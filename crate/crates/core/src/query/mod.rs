//! Query families over a snapshot: node kind, scheme, authoring metadata,
//! domain subsumption, degree of support, weighted context, and target tree.

mod taxonomy;

use std::collections::BTreeSet;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{QueryError, TaxonomyError};
use crate::eval::{CredibilityConfig, Evaluator};
use crate::model::{ContextTerm, Node, NodeId, NodeKind};
use crate::snapshot::NetworkSnapshot;
use crate::tree::argument_tree;

pub use taxonomy::{Taxonomy, TaxonomyEdge};

/// Parses a `child<TAB>parent` taxonomy file.
pub fn load_taxonomy(text: &str) -> Result<Taxonomy, TaxonomyError> {
    Taxonomy::parse_tsv(text)
}

pub const DEFAULT_CONTEXT_THRESHOLD: f64 = 0.5;

/// Half-open creation-time window `[from, to)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DateRange {
    #[serde(with = "crate::timestamp")]
    pub from: DateTime<Utc>,
    #[serde(with = "crate::timestamp")]
    pub to: DateTime<Utc>,
}

impl DateRange {
    pub fn contains(&self, t: &DateTime<Utc>) -> bool {
        &self.from <= t && t < &self.to
    }
}

/// Conjunction of optional filters; at least one must be present.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct QuerySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind_filter: Option<BTreeSet<NodeKind>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme_filter: Option<BTreeSet<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub author_filter: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub date_range: Option<DateRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain_term: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_support: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<Vec<ContextTerm>>,
    /// Match threshold for `context`; defaults to 0.5.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<NodeId>,
}

impl QuerySpec {
    pub fn validate(&self) -> Result<(), QueryError> {
        let any = self.kind_filter.is_some()
            || self.scheme_filter.is_some()
            || self.author_filter.is_some()
            || self.date_range.is_some()
            || self.domain_term.is_some()
            || self.min_support.is_some()
            || self.context.is_some()
            || self.target.is_some();
        if !any {
            return Err(QueryError::InvalidSpec("at least one filter is required".into()));
        }
        if let Some(r) = &self.date_range {
            if r.from > r.to {
                return Err(QueryError::InvalidSpec("date range starts after it ends".into()));
            }
        }
        if let Some(t) = self.min_support {
            if !t.is_finite() {
                return Err(QueryError::InvalidSpec("min_support must be finite".into()));
            }
        }
        if let Some(ctx) = &self.context {
            for t in ctx {
                t.check()
                    .map_err(|e| QueryError::InvalidSpec(e.to_string()))?;
            }
        }
        if let Some(th) = self.context_threshold {
            if !th.is_finite() {
                return Err(QueryError::InvalidSpec("context threshold must be finite".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryHit {
    pub node: NodeId,
    pub credibility: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct QueryResult {
    /// Ordered by descending credibility, then ascending id.
    pub hits: Vec<QueryHit>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl QueryResult {
    pub fn ids(&self) -> Vec<NodeId> {
        self.hits.iter().map(|h| h.node.clone()).collect()
    }
}

/// Σ over shared terms of `query weight × node weight`, exact terms only.
pub fn match_context(query: &[ContextTerm], node: &[ContextTerm]) -> f64 {
    match_context_with(query, node, &Taxonomy::empty())
}

/// Like [`match_context`], but a node term below a query term in `taxonomy`
/// counts as that term. When several node entries match one query term, the
/// heaviest is used.
pub fn match_context_with(query: &[ContextTerm], node: &[ContextTerm], taxonomy: &Taxonomy) -> f64 {
    query
        .iter()
        .map(|q| {
            node.iter()
                .filter(|n| taxonomy.subsumed_by(&n.term, &q.term))
                .map(|n| n.weight)
                .fold(None, |best: Option<f64>, w| Some(best.map_or(w, |b| b.max(w))))
                .map_or(0.0, |w| q.weight * w)
        })
        .sum()
}

fn in_domain(node: &Node, term: &str, taxonomy: &Taxonomy) -> bool {
    node.topic
        .iter()
        .chain(&node.context)
        .any(|t| taxonomy.subsumed_by(&t.term, term))
}

/// Runs `spec` against `snapshot`, evaluating credibility under `config`.
/// The taxonomy is the snapshot's own unless `taxonomy` overrides it.
pub fn run_query(
    spec: &QuerySpec,
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
) -> Result<QueryResult, QueryError> {
    run_query_with(spec, snapshot, config, snapshot.taxonomy())
}

pub fn run_query_with(
    spec: &QuerySpec,
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
    taxonomy: &Taxonomy,
) -> Result<QueryResult, QueryError> {
    spec.validate()?;

    if let Some(term) = &spec.domain_term {
        if !taxonomy.contains(term) {
            let msg = format!("domain term `{term}` is not in the taxonomy");
            log::warn!("{msg}");
            return Ok(QueryResult {
                hits: Vec::new(),
                warnings: vec![msg],
            });
        }
    }

    let in_target: Option<BTreeSet<NodeId>> = match &spec.target {
        Some(t) => Some(argument_tree(t, snapshot)?.node_ids()),
        None => None,
    };
    let threshold = spec.context_threshold.unwrap_or(DEFAULT_CONTEXT_THRESHOLD);
    let ev = Evaluator::new(snapshot, config)?;

    let mut hits = Vec::new();
    for node in snapshot.nodes() {
        if let Some(kinds) = &spec.kind_filter {
            if !kinds.contains(&node.kind) {
                continue;
            }
        }
        if let Some(schemes) = &spec.scheme_filter {
            match &node.scheme {
                Some(s) if node.is_scheme() && schemes.contains(s) => {}
                _ => continue,
            }
        }
        if let Some(author) = &spec.author_filter {
            if &node.author != author {
                continue;
            }
        }
        if let Some(range) = &spec.date_range {
            if !range.contains(&node.created_at) {
                continue;
            }
        }
        if let Some(term) = &spec.domain_term {
            if !in_domain(node, term, taxonomy) {
                continue;
            }
        }
        if let Some(ctx) = &spec.context {
            if match_context_with(ctx, &node.context, taxonomy) < threshold {
                continue;
            }
        }
        if let Some(ids) = &in_target {
            if !ids.contains(&node.id) {
                continue;
            }
        }
        let cred = ev.credibility(&node.id)?.total;
        if let Some(min) = spec.min_support {
            if cred < min {
                continue;
            }
        }
        hits.push(QueryHit {
            node: node.id.clone(),
            credibility: cred,
        });
    }
    hits.sort_by(|a, b| {
        b.credibility
            .total_cmp(&a.credibility)
            .then_with(|| a.node.cmp(&b.node))
    });
    Ok(QueryResult {
        hits,
        warnings: Vec::new(),
    })
}
