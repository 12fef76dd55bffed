//! Persistence and exchange: AIF-JSON documents, the append-only event log,
//! and DOT rendering of argument trees.

mod document;
mod dot;
mod eventlog;

pub use document::{export_document, import_document, ExportOptions, InterchangeDocument, FORMAT_VERSION};
pub use dot::{export_dot, fill_color, LABEL_LIMIT};
pub use eventlog::{read_records, replay_events, replay_onto, EventLog, EventRecord};
