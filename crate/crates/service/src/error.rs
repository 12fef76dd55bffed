use std::io;
use std::path::PathBuf;

use argnet_core::{EvalError, InterchangeError, NetworkError, QueryError, TaxonomyError, Violation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error(transparent)]
    Interchange(#[from] InterchangeError),
    #[error(transparent)]
    Taxonomy(#[from] TaxonomyError),
    #[error("unknown config preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("invalid request: {0}")]
    BadRequest(String),
    #[error("data directory {} is not writable: {source}", path.display())]
    DataDirUnwritable { path: PathBuf, source: io::Error },
    #[error("address {0} is already in use")]
    AddressInUse(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Coarse error family; each maps to one process exit code and one HTTP status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    UnknownNode,
    NotFound,
    Invalid,
    Conflict,
    Scheme,
    CriticalQuestion,
    Evaluation,
    Query,
    Interchange,
    Config,
    Storage,
    Address,
}

impl Family {
    /// Exit code for the CLI. 1 is left for unexpected failures and 2 for
    /// argument errors reported by the parser.
    pub fn exit_code(self) -> i32 {
        match self {
            Family::UnknownNode => 3,
            Family::NotFound => 4,
            Family::Invalid => 5,
            Family::Conflict => 6,
            Family::Scheme => 7,
            Family::CriticalQuestion => 8,
            Family::Evaluation => 9,
            Family::Query => 10,
            Family::Interchange => 11,
            Family::Config => 12,
            Family::Storage => 13,
            Family::Address => 14,
        }
    }

    pub fn http_status(self) -> u16 {
        match self {
            Family::UnknownNode | Family::NotFound => 404,
            Family::Conflict => 409,
            Family::Invalid | Family::Scheme | Family::CriticalQuestion | Family::Evaluation => 422,
            Family::Query | Family::Interchange | Family::Config => 400,
            Family::Storage | Family::Address => 500,
        }
    }
}

fn network_code(e: &NetworkError) -> (&'static str, Family) {
    use NetworkError::*;
    match e {
        EmptySummary => ("EmptySummary", Family::Invalid),
        Model(_) => ("InvalidField", Family::Invalid),
        Scheme(argnet_core::SchemeError::UnknownScheme(_)) => ("UnknownScheme", Family::Scheme),
        Scheme(argnet_core::SchemeError::DuplicateName(_)) => ("DuplicateScheme", Family::Conflict),
        Scheme(_) => ("InvalidScheme", Family::Scheme),
        UnknownNode(_) => ("UnknownNode", Family::UnknownNode),
        DuplicateId(_) => ("DuplicateId", Family::Conflict),
        PremiseNotINode(_) => ("PremiseNotINode", Family::Invalid),
        SelfReference(_) => ("SelfReference", Family::Invalid),
        NoPremises => ("NoPremises", Family::Invalid),
        SchemeKindMismatch { .. } => ("SchemeKindMismatch", Family::Invalid),
        KindConstraint(..) => ("KindConstraint", Family::Invalid),
        NotSchemeNode(_) => ("NotSchemeNode", Family::CriticalQuestion),
        CqIndexOutOfRange { .. } => ("CqIndexOutOfRange", Family::CriticalQuestion),
        UnknownInstance(_) => ("UnknownInstance", Family::NotFound),
        AlreadyResolved(_) => ("AlreadyResolved", Family::Conflict),
        DuplicateInstance(_) => ("DuplicateInstance", Family::Conflict),
        ValidationFailed(_) => ("ValidationFailed", Family::Invalid),
    }
}

fn eval_code(e: &EvalError) -> (&'static str, Family) {
    use EvalError::*;
    match e {
        UnknownNode(_) => ("UnknownNode", Family::UnknownNode),
        NodeNotInTree(_) => ("NodeNotInTree", Family::Evaluation),
        UnknownStrategy { .. } => ("UnknownStrategy", Family::Config),
        NotSchemeNode(_) => ("NotSchemeNode", Family::Evaluation),
        EmptyDenominator => ("EmptyDenominator", Family::Evaluation),
        ZeroDenominator => ("ZeroDenominator", Family::Evaluation),
    }
}

impl ServiceError {
    /// Stable machine-readable code plus its family.
    pub fn classify(&self) -> (&'static str, Family) {
        match self {
            ServiceError::Network(e) => network_code(e),
            ServiceError::Eval(e) => eval_code(e),
            ServiceError::Query(QueryError::Eval(e)) => eval_code(e),
            ServiceError::Query(QueryError::InvalidSpec(_)) => ("InvalidQuery", Family::Query),
            ServiceError::Interchange(e) => match e {
                InterchangeError::Network(n) => network_code(n),
                InterchangeError::UnsupportedVersion(_) => ("UnsupportedVersion", Family::Interchange),
                InterchangeError::ValidationFailed(_) => ("ValidationFailed", Family::Invalid),
                InterchangeError::CorruptLog { .. } => ("CorruptLog", Family::Storage),
                InterchangeError::Json(_) => ("MalformedDocument", Family::Interchange),
                InterchangeError::Io(_) => ("Io", Family::Storage),
            },
            ServiceError::Taxonomy(_) => ("InvalidTaxonomy", Family::Interchange),
            ServiceError::UnknownPreset(_) => ("UnknownPreset", Family::Config),
            ServiceError::InvalidConfig(_) => ("InvalidConfig", Family::Config),
            ServiceError::BadRequest(_) => ("BadRequest", Family::Query),
            ServiceError::DataDirUnwritable { .. } => ("DataDirUnwritable", Family::Storage),
            ServiceError::AddressInUse(_) => ("AddressInUse", Family::Address),
            ServiceError::Io(_) => ("Io", Family::Storage),
        }
    }

    pub fn code(&self) -> &'static str {
        self.classify().0
    }

    pub fn exit_code(&self) -> i32 {
        self.classify().1.exit_code()
    }

    pub fn violations(&self) -> Option<&[Violation]> {
        match self {
            ServiceError::Network(NetworkError::ValidationFailed(v))
            | ServiceError::Interchange(InterchangeError::ValidationFailed(v))
            | ServiceError::Interchange(InterchangeError::Network(NetworkError::ValidationFailed(v))) => Some(v),
            _ => None,
        }
    }
}
