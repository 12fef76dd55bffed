//! The append-only, single-writer argument network.
//!
//! Every mutation is expressed as an [`Event`]. Callers that need durability
//! plan the event first (`plan_*`), persist it, and only then [`Network::apply`]
//! it; the convenience `create_*` methods do both steps in memory.

use std::collections::BTreeMap;

use chrono::{DateTime, Utc};

use crate::error::{ModelError, NetworkError, SchemeError};
use crate::interchange::InterchangeDocument;
use crate::model::{INodeDraft, Node, NodeId, NodeKind, SNodeDraft};
use crate::query::Taxonomy;
use crate::scheme::{CqInstance, CqStatus, SchemeDescriptor, SchemeRegistry};
use crate::snapshot::{check_node, validate_network, NetworkSnapshot, Violation};
use crate::timestamp;

/// A single state transition of the network.
#[derive(Debug, Clone, PartialEq)]
pub enum Event {
    CreateNode(Node),
    RegisterScheme(SchemeDescriptor),
    RaiseCq(CqInstance),
    ResolveCq { id: String, resolution_text: String },
    Import(Box<InterchangeDocument>),
}

/// What an applied event produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Applied {
    Node(NodeId),
    Scheme(String),
    Cq(CqInstance),
    Imported { nodes: usize },
}

#[derive(Debug, Clone)]
pub struct Network {
    nodes: BTreeMap<NodeId, Node>,
    schemes: SchemeRegistry,
    cqs: BTreeMap<String, CqInstance>,
    taxonomy: Taxonomy,
    version: u64,
    clock: fn() -> DateTime<Utc>,
}

impl Default for Network {
    fn default() -> Self {
        Network::new()
    }
}

impl Network {
    /// Empty network with the built-in schemes registered.
    pub fn new() -> Self {
        Network::with_registry(SchemeRegistry::with_builtins())
    }

    pub fn with_registry(schemes: SchemeRegistry) -> Self {
        Network {
            nodes: BTreeMap::new(),
            schemes,
            cqs: BTreeMap::new(),
            taxonomy: Taxonomy::empty(),
            version: 0,
            clock: timestamp::now,
        }
    }

    /// Replaces the timestamp source used for new nodes.
    pub fn with_clock(mut self, clock: fn() -> DateTime<Utc>) -> Self {
        self.clock = clock;
        self
    }

    pub fn from_snapshot(snapshot: NetworkSnapshot) -> Self {
        let version = snapshot.version();
        let (nodes, schemes, cqs, taxonomy) = snapshot.into_parts();
        Network {
            nodes,
            schemes,
            cqs,
            taxonomy,
            version,
            clock: timestamp::now,
        }
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: &NodeId) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn schemes(&self) -> &SchemeRegistry {
        &self.schemes
    }

    pub fn snapshot(&self) -> NetworkSnapshot {
        NetworkSnapshot::build(
            self.version,
            self.nodes.clone(),
            self.schemes.clone(),
            self.cqs.clone(),
            self.taxonomy.clone(),
        )
    }

    fn fresh_node_id(&self) -> NodeId {
        let mut n = self.nodes.len() + 1;
        loop {
            let id = NodeId::from(format!("n{n:04}").as_str());
            if !self.nodes.contains_key(&id) {
                return id;
            }
            n += 1;
        }
    }

    fn fresh_cq_id(&self) -> String {
        let mut n = self.cqs.len() + 1;
        loop {
            let id = format!("cq{n:04}");
            if !self.cqs.contains_key(&id) {
                return id;
            }
            n += 1;
        }
    }

    pub fn plan_i_node(&self, draft: INodeDraft) -> Result<Event, NetworkError> {
        let node = Node {
            id: self.fresh_node_id(),
            kind: NodeKind::I,
            summary: draft.summary,
            text: draft.text,
            certainty: draft.certainty.unwrap_or_default(),
            support_url: draft.support_url,
            context: draft.context,
            topic: Vec::new(),
            author: draft.author,
            created_at: (self.clock)(),
            premises: Vec::new(),
            conclusion: None,
            scheme: None,
            default_form: None,
        };
        self.check_new_node(&node)?;
        Ok(Event::CreateNode(node))
    }

    pub fn plan_s_node(&self, draft: SNodeDraft) -> Result<Event, NetworkError> {
        if draft.kind == NodeKind::I {
            return Err(NetworkError::KindConstraint(
                self.fresh_node_id(),
                "I is not a scheme application kind".into(),
            ));
        }
        if draft.premises.is_empty() {
            return Err(NetworkError::NoPremises);
        }
        let scheme = self.schemes.resolve(&draft.scheme)?.id.clone();
        let node = Node {
            id: self.fresh_node_id(),
            kind: draft.kind,
            summary: draft.summary,
            text: draft.text,
            certainty: draft.certainty.unwrap_or_default(),
            support_url: draft.support_url,
            context: Vec::new(),
            topic: draft.topic,
            author: draft.author,
            created_at: (self.clock)(),
            premises: draft.premises,
            conclusion: Some(draft.conclusion),
            scheme: Some(scheme),
            default_form: draft.default_form,
        };
        self.check_new_node(&node)?;
        Ok(Event::CreateNode(node))
    }

    pub fn plan_register_scheme(&self, descriptor: SchemeDescriptor) -> Result<Event, NetworkError> {
        // Dry run against a copy to surface naming errors before logging.
        let mut probe = self.schemes.clone();
        let id = probe.register(descriptor.clone())?;
        Ok(Event::RegisterScheme(SchemeDescriptor { id, ..descriptor }))
    }

    pub fn plan_raise_cq(
        &self,
        target: &NodeId,
        cq_index: usize,
        challenge_text: impl Into<String>,
        raised_by: impl Into<String>,
    ) -> Result<Event, NetworkError> {
        let cq = CqInstance {
            id: self.fresh_cq_id(),
            target: target.clone(),
            cq_index,
            challenge_text: challenge_text.into(),
            status: CqStatus::Open,
            raised_by: raised_by.into(),
            resolution_text: None,
        };
        self.check_cq(&cq)?;
        Ok(Event::RaiseCq(cq))
    }

    pub fn plan_resolve_cq(
        &self,
        id: &str,
        resolution_text: impl Into<String>,
    ) -> Result<Event, NetworkError> {
        self.check_resolvable(id)?;
        Ok(Event::ResolveCq {
            id: id.to_string(),
            resolution_text: resolution_text.into(),
        })
    }

    pub fn plan_import(&self, document: InterchangeDocument) -> Result<Event, NetworkError> {
        self.merged(&document)?;
        Ok(Event::Import(Box::new(document)))
    }

    /// Applies an event after re-validating it against the current state.
    pub fn apply(&mut self, event: Event) -> Result<Applied, NetworkError> {
        let applied = match event {
            Event::CreateNode(node) => {
                self.check_new_node(&node)?;
                let id = node.id.clone();
                self.nodes.insert(id.clone(), node);
                Applied::Node(id)
            }
            Event::RegisterScheme(d) => Applied::Scheme(self.schemes.register(d)?),
            Event::RaiseCq(cq) => {
                self.check_cq(&cq)?;
                if cq.status != CqStatus::Open {
                    return Err(NetworkError::AlreadyResolved(cq.id));
                }
                self.cqs.insert(cq.id.clone(), cq.clone());
                Applied::Cq(cq)
            }
            Event::ResolveCq { id, resolution_text } => {
                self.check_resolvable(&id)?;
                let cq = self.cqs.get_mut(&id).expect("checked above");
                cq.status = CqStatus::Resolved;
                cq.resolution_text = Some(resolution_text);
                Applied::Cq(cq.clone())
            }
            Event::Import(doc) => {
                let (nodes, schemes, cqs, taxonomy) = self.merged(&doc)?;
                let added = nodes.len() - self.nodes.len();
                self.nodes = nodes;
                self.schemes = schemes;
                self.cqs = cqs;
                self.taxonomy = taxonomy;
                Applied::Imported { nodes: added }
            }
        };
        self.version += 1;
        Ok(applied)
    }

    pub fn create_i_node(&mut self, draft: INodeDraft) -> Result<NodeId, NetworkError> {
        let ev = self.plan_i_node(draft)?;
        match self.apply(ev)? {
            Applied::Node(id) => Ok(id),
            _ => unreachable!("node event yields a node"),
        }
    }

    pub fn create_s_node(&mut self, draft: SNodeDraft) -> Result<NodeId, NetworkError> {
        let ev = self.plan_s_node(draft)?;
        match self.apply(ev)? {
            Applied::Node(id) => Ok(id),
            _ => unreachable!("node event yields a node"),
        }
    }

    pub fn register_scheme(&mut self, descriptor: SchemeDescriptor) -> Result<String, NetworkError> {
        let ev = self.plan_register_scheme(descriptor)?;
        match self.apply(ev)? {
            Applied::Scheme(id) => Ok(id),
            _ => unreachable!("scheme event yields a scheme"),
        }
    }

    pub fn raise_critical_question(
        &mut self,
        target: &NodeId,
        cq_index: usize,
        challenge_text: impl Into<String>,
        raised_by: impl Into<String>,
    ) -> Result<String, NetworkError> {
        let ev = self.plan_raise_cq(target, cq_index, challenge_text, raised_by)?;
        match self.apply(ev)? {
            Applied::Cq(cq) => Ok(cq.id),
            _ => unreachable!("cq event yields an instance"),
        }
    }

    pub fn resolve_critical_question(
        &mut self,
        id: &str,
        resolution_text: impl Into<String>,
    ) -> Result<CqInstance, NetworkError> {
        let ev = self.plan_resolve_cq(id, resolution_text)?;
        match self.apply(ev)? {
            Applied::Cq(cq) => Ok(cq),
            _ => unreachable!("cq event yields an instance"),
        }
    }

    pub fn import(&mut self, document: InterchangeDocument) -> Result<usize, NetworkError> {
        let ev = self.plan_import(document)?;
        match self.apply(ev)? {
            Applied::Imported { nodes } => Ok(nodes),
            _ => unreachable!("import event yields a count"),
        }
    }

    fn check_new_node(&self, node: &Node) -> Result<(), NetworkError> {
        if self.nodes.contains_key(&node.id) {
            return Err(NetworkError::DuplicateId(node.id.clone()));
        }
        let mut found = Vec::new();
        check_node(&self.nodes, &self.schemes, node, &mut found);
        match found.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(violation_error(v, &self.schemes)),
        }
    }

    fn check_cq(&self, cq: &CqInstance) -> Result<(), NetworkError> {
        if self.cqs.contains_key(&cq.id) {
            return Err(NetworkError::DuplicateInstance(cq.id.clone()));
        }
        let node = self
            .nodes
            .get(&cq.target)
            .ok_or_else(|| NetworkError::UnknownNode(cq.target.clone()))?;
        if !node.is_scheme() {
            return Err(NetworkError::NotSchemeNode(cq.target.clone()));
        }
        let scheme = node.scheme.as_deref().unwrap_or_default();
        let len = self
            .schemes
            .get(scheme)
            .ok_or_else(|| SchemeError::UnknownScheme(scheme.to_string()))?
            .critical_questions
            .len();
        if cq.cq_index >= len {
            return Err(NetworkError::CqIndexOutOfRange {
                index: cq.cq_index,
                len,
            });
        }
        Ok(())
    }

    fn check_resolvable(&self, id: &str) -> Result<(), NetworkError> {
        match self.cqs.get(id) {
            None => Err(NetworkError::UnknownInstance(id.to_string())),
            Some(cq) if !cq.is_open() => Err(NetworkError::AlreadyResolved(id.to_string())),
            Some(_) => Ok(()),
        }
    }

    #[allow(clippy::type_complexity)]
    fn merged(
        &self,
        doc: &InterchangeDocument,
    ) -> Result<
        (
            BTreeMap<NodeId, Node>,
            SchemeRegistry,
            BTreeMap<String, CqInstance>,
            Taxonomy,
        ),
        NetworkError,
    > {
        let mut schemes = self.schemes.clone();
        for d in &doc.schemes {
            match schemes.get(&d.id) {
                Some(existing) if existing == d => {}
                _ => {
                    schemes.register(d.clone())?;
                }
            }
        }
        let mut nodes = self.nodes.clone();
        for n in &doc.nodes {
            if nodes.insert(n.id.clone(), n.clone()).is_some() {
                return Err(NetworkError::DuplicateId(n.id.clone()));
            }
        }
        let mut cqs = self.cqs.clone();
        for cq in &doc.cq_instances {
            if cqs.insert(cq.id.clone(), cq.clone()).is_some() {
                return Err(NetworkError::DuplicateInstance(cq.id.clone()));
            }
        }
        let taxonomy = match &doc.taxonomy {
            None => self.taxonomy.clone(),
            Some(t) if self.taxonomy.is_empty() => t.clone(),
            Some(t) => {
                let mut edges: BTreeMap<String, String> = self
                    .taxonomy
                    .edges()
                    .into_iter()
                    .map(|e| (e.child, e.parent))
                    .collect();
                for e in t.edges() {
                    if let Some(prev) = edges.insert(e.child.clone(), e.parent.clone()) {
                        if prev != e.parent {
                            return Err(NetworkError::ValidationFailed(vec![
                                Violation::KindConstraint {
                                    node: NodeId::from(e.child.as_str()),
                                    detail: "taxonomy term already has a different parent".into(),
                                },
                            ]));
                        }
                    }
                }
                Taxonomy::from_edges(edges).map_err(|e| {
                    NetworkError::ValidationFailed(vec![Violation::KindConstraint {
                        node: NodeId::from("taxonomy"),
                        detail: e.to_string(),
                    }])
                })?
            }
        };
        let probe = NetworkSnapshot::build(0, nodes, schemes, cqs, taxonomy);
        let violations = validate_network(&probe);
        if !violations.is_empty() {
            return Err(NetworkError::ValidationFailed(violations));
        }
        let (nodes, schemes, cqs, taxonomy) = probe.into_parts();
        Ok((nodes, schemes, cqs, taxonomy))
    }
}

fn violation_error(v: Violation, schemes: &SchemeRegistry) -> NetworkError {
    match v {
        Violation::EmptySummary { .. } => NetworkError::EmptySummary,
        Violation::InvalidContextWeight { term, weight, .. } => {
            NetworkError::Model(ModelError::InvalidContextWeight { term, weight })
        }
        Violation::DanglingReference { target, .. } => NetworkError::UnknownNode(target),
        Violation::PremiseNotINode { premise, .. } => NetworkError::PremiseNotINode(premise),
        Violation::SelfReference { node } => NetworkError::SelfReference(node),
        Violation::UnknownScheme { scheme, .. } => {
            NetworkError::Scheme(SchemeError::UnknownScheme(scheme))
        }
        Violation::SchemeKindMismatch { node: _, scheme } => {
            let d = schemes.get(&scheme);
            NetworkError::SchemeKindMismatch {
                kind: d.map(|d| d.scheme_kind.node_kind()).unwrap_or(NodeKind::RA),
                scheme_kind: d.map(|d| d.scheme_kind.as_str()).unwrap_or("unknown"),
                scheme,
            }
        }
        Violation::KindConstraint { node, detail } => NetworkError::KindConstraint(node, detail),
        Violation::DuplicateId { node } => NetworkError::DuplicateId(node),
        Violation::InvalidCqInstance { instance, .. } => NetworkError::UnknownInstance(instance),
    }
}
