//! Argument networks in the AIF style: information nodes linked by scheme
//! applications (inference, conflict, preference), with critical questions,
//! credibility propagation over argument trees, validity and explanations,
//! contradiction degree, querying, and interchange.

pub mod error;
pub mod eval;
pub mod interchange;
pub mod model;
pub mod network;
pub mod query;
pub mod scenario;
pub mod scheme;
pub mod snapshot;
pub mod timestamp;
pub mod tree;

pub use error::{EvalError, InterchangeError, ModelError, NetworkError, QueryError, SchemeError, TaxonomyError};
pub use eval::{
    contradiction_degree_simple, contradiction_degree_weighted, credibility, explanation, validity,
    CredibilityBreakdown, CredibilityConfig, Evaluator, Explanation, ValidityVerdict,
};
pub use model::{Certainty, ContextTerm, INodeDraft, Node, NodeId, NodeKind, SNodeDraft};
pub use network::{Applied, Event, Network};
pub use query::{match_context, run_query, QueryResult, QuerySpec, Taxonomy};
pub use scheme::{CqInstance, CqStatus, SchemeDescriptor, SchemeKind, SchemeRegistry};
pub use snapshot::{validate_network, NetworkSnapshot, Violation};
pub use tree::{argument_tree, ArgumentTree};
