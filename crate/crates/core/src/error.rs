use thiserror::Error;

use crate::model::{NodeId, NodeKind};
use crate::snapshot::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("node id must not be empty")]
    EmptyId,
    #[error("unknown certainty level `{0}`")]
    UnknownCertainty(String),
    #[error("unknown node kind `{0}`")]
    UnknownKind(String),
    #[error("context term must not be empty")]
    EmptyContextTerm,
    #[error("context weight {weight} for `{term}` is outside [0, 1]")]
    InvalidContextWeight { term: String, weight: f64 },
    #[error("malformed context term `{0}`, expected weight:term")]
    MalformedContextTerm(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemeError {
    #[error("a scheme named `{0}` is already registered")]
    DuplicateName(String),
    #[error("scheme name must not be empty")]
    EmptyName,
    #[error("conclusion descriptor must not be empty")]
    EmptyConclusionDescriptor,
    #[error("inference scheme `{0}` needs at least one premise descriptor")]
    NoPremiseDescriptors(String),
    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),
    #[error("malformed scheme data: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("summary must not be empty")]
    EmptySummary,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("unknown node `{0}`")]
    UnknownNode(NodeId),
    #[error("node `{0}` already exists")]
    DuplicateId(NodeId),
    #[error("premise `{0}` is not an I-node")]
    PremiseNotINode(NodeId),
    #[error("node `{0}` references itself")]
    SelfReference(NodeId),
    #[error("scheme application needs at least one premise")]
    NoPremises,
    #[error("{kind} node cannot use {scheme_kind} scheme `{scheme}`")]
    SchemeKindMismatch {
        kind: NodeKind,
        scheme: String,
        scheme_kind: &'static str,
    },
    #[error("node `{0}` violates its kind constraints: {1}")]
    KindConstraint(NodeId, String),
    #[error("node `{0}` is not a scheme application")]
    NotSchemeNode(NodeId),
    #[error("critical question index {index} out of range (scheme has {len})")]
    CqIndexOutOfRange { index: usize, len: usize },
    #[error("unknown critical question instance `{0}`")]
    UnknownInstance(String),
    #[error("critical question instance `{0}` is already resolved")]
    AlreadyResolved(String),
    #[error("critical question instance `{0}` already exists")]
    DuplicateInstance(String),
    #[error("merged network fails validation ({} violations)", .0.len())]
    ValidationFailed(Vec<Violation>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unknown node `{0}`")]
    UnknownNode(NodeId),
    #[error("node `{0}` is not in the argument tree")]
    NodeNotInTree(NodeId),
    #[error("no {family} strategy named `{name}`")]
    UnknownStrategy { family: &'static str, name: String },
    #[error("contradiction scope must contain only scheme nodes, `{0}` is an I-node")]
    NotSchemeNode(NodeId),
    #[error("contradiction degree undefined: scope has no RA or PA nodes")]
    EmptyDenominator,
    #[error("contradiction degree undefined: RA and PA credibilities sum to zero")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TaxonomyError {
    #[error("taxonomy contains a cycle through `{0}`")]
    CycleDetected(String),
    #[error("term `{0}` appears more than once as a child")]
    DuplicateChild(String),
    #[error("malformed taxonomy line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QueryError {
    #[error("invalid query: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Error)]
pub enum InterchangeError {
    #[error("unsupported document version `{0}`")]
    UnsupportedVersion(String),
    #[error("document fails validation ({} violations)", .0.len())]
    ValidationFailed(Vec<Violation>),
    #[error("corrupt event log at line {line}: {reason}")]
    CorruptLog { line: usize, reason: String },
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
