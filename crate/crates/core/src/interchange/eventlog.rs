use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::InterchangeError;
use crate::model::Node;
use crate::network::{Event, Network};
use crate::scheme::{CqInstance, SchemeDescriptor};
use crate::snapshot::NetworkSnapshot;
use crate::timestamp;

use super::InterchangeDocument;

/// One line of the event log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub seq: u64,
    #[serde(with = "crate::timestamp")]
    pub timestamp: DateTime<Utc>,
    pub event_type: String,
    pub payload: Value,
}

#[derive(Serialize, Deserialize)]
struct ResolvePayload {
    id: String,
    resolution_text: String,
}

impl EventRecord {
    pub fn new(seq: u64, event: &Event) -> Self {
        let (event_type, payload) = match event {
            Event::CreateNode(n) => ("create_node", serde_json::to_value(n)),
            Event::RegisterScheme(d) => ("register_scheme", serde_json::to_value(d)),
            Event::RaiseCq(cq) => ("raise_cq", serde_json::to_value(cq)),
            Event::ResolveCq { id, resolution_text } => (
                "resolve_cq",
                serde_json::to_value(ResolvePayload {
                    id: id.clone(),
                    resolution_text: resolution_text.clone(),
                }),
            ),
            Event::Import(doc) => ("import", serde_json::to_value(doc.as_ref())),
        };
        EventRecord {
            seq,
            timestamp: timestamp::now(),
            event_type: event_type.to_string(),
            payload: payload.expect("event payloads serialize"),
        }
    }

    pub fn event(&self) -> Result<Event, serde_json::Error> {
        let p = self.payload.clone();
        Ok(match self.event_type.as_str() {
            "create_node" => Event::CreateNode(serde_json::from_value::<Node>(p)?),
            "register_scheme" => Event::RegisterScheme(serde_json::from_value::<SchemeDescriptor>(p)?),
            "raise_cq" => Event::RaiseCq(serde_json::from_value::<CqInstance>(p)?),
            "resolve_cq" => {
                let r: ResolvePayload = serde_json::from_value(p)?;
                Event::ResolveCq {
                    id: r.id,
                    resolution_text: r.resolution_text,
                }
            }
            "import" => Event::Import(Box::new(serde_json::from_value::<InterchangeDocument>(p)?)),
            other => {
                return Err(serde::de::Error::custom(format!("unknown event type `{other}`")));
            }
        })
    }
}

/// Parses and sequence-checks every record in `reader`. Sequence numbers must
/// start at 1 and increase by exactly 1.
pub fn read_records(reader: impl BufRead) -> Result<Vec<EventRecord>, InterchangeError> {
    let mut out: Vec<EventRecord> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: EventRecord = serde_json::from_str(&line).map_err(|e| InterchangeError::CorruptLog {
            line: line_no,
            reason: e.to_string(),
        })?;
        let expected = out.last().map_or(1, |r| r.seq + 1);
        if rec.seq != expected {
            return Err(InterchangeError::CorruptLog {
                line: line_no,
                reason: format!("expected sequence {expected}, found {}", rec.seq),
            });
        }
        out.push(rec);
    }
    Ok(out)
}

/// Applies every record with `seq > after` to `network`, in order.
pub fn replay_onto(network: &mut Network, records: &[EventRecord], after: u64) -> Result<(), InterchangeError> {
    for (i, rec) in records.iter().enumerate().filter(|(_, r)| r.seq > after) {
        let event = rec.event().map_err(|e| InterchangeError::CorruptLog {
            line: i + 1,
            reason: e.to_string(),
        })?;
        network.apply(event)?;
    }
    Ok(())
}

/// Rebuilds a snapshot from an event log, starting from an empty network with
/// the built-in schemes.
pub fn replay_events(reader: impl BufRead) -> Result<NetworkSnapshot, InterchangeError> {
    let records = read_records(reader)?;
    let mut network = Network::new();
    replay_onto(&mut network, &records, 0)?;
    Ok(network.snapshot())
}

/// Append-only, file-backed event log. Each append is flushed and synced
/// before returning.
#[derive(Debug)]
pub struct EventLog {
    path: PathBuf,
    file: File,
    last_seq: u64,
}

impl EventLog {
    /// Opens or creates the log at `path`, validating existing records.
    pub fn open(path: impl AsRef<Path>) -> Result<(Self, Vec<EventRecord>), InterchangeError> {
        let path = path.as_ref().to_path_buf();
        let records = match File::open(&path) {
            Ok(f) => read_records(BufReader::new(f))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        let last_seq = records.last().map_or(0, |r| r.seq);
        Ok((EventLog { path, file, last_seq }, records))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn last_seq(&self) -> u64 {
        self.last_seq
    }

    pub fn append(&mut self, event: &Event) -> Result<u64, InterchangeError> {
        let rec = EventRecord::new(self.last_seq + 1, event);
        let mut line = serde_json::to_string(&rec)?;
        line.push('\n');
        self.file.write_all(line.as_bytes())?;
        self.file.flush()?;
        self.file.sync_data()?;
        self.last_seq = rec.seq;
        Ok(rec.seq)
    }
}
