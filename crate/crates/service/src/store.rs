//! Durable network state in a data directory:
//!
//! - `events.ndjson`: the append-only event log, the source of truth
//! - `checkpoint.json`: a full document plus the last sequence number it covers
//! - `config.json`: the active credibility config
//!
//! Opening a store loads the checkpoint and replays only the newer events.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use argnet_core::eval::{CredibilityConfig, Evaluator};
use argnet_core::interchange::{export_document, import_document, replay_onto, EventLog, ExportOptions, InterchangeDocument};
use argnet_core::{Applied, Event, Network, NetworkSnapshot};
use serde::{Deserialize, Serialize};

use crate::error::ServiceError;

pub const EVENTS_FILE: &str = "events.ndjson";
pub const CHECKPOINT_FILE: &str = "checkpoint.json";
pub const CONFIG_FILE: &str = "config.json";

/// Events between full-document checkpoints.
pub const CHECKPOINT_EVERY: u64 = 64;

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    seq: u64,
    document: InterchangeDocument,
}

#[derive(Debug)]
pub struct Store {
    dir: PathBuf,
    log: EventLog,
    network: Network,
    config: CredibilityConfig,
    checkpoint_seq: u64,
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), ServiceError> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn ensure_writable(dir: &Path) -> Result<(), ServiceError> {
    let unwritable = |source| ServiceError::DataDirUnwritable {
        path: dir.to_path_buf(),
        source,
    };
    fs::create_dir_all(dir).map_err(unwritable)?;
    let probe = dir.join(".write-probe");
    fs::write(&probe, b"").map_err(unwritable)?;
    fs::remove_file(&probe).map_err(unwritable)?;
    Ok(())
}

/// Rejects configs the evaluator cannot run: non-finite weights or unknown
/// strategy names.
pub fn check_config(config: &CredibilityConfig) -> Result<(), ServiceError> {
    let weights = [
        config.w_cert,
        config.w_usage,
        config.w_minsup,
        config.w_conflict,
        config.w_pref,
        config.w_scheme,
        config.balance_point,
    ];
    if weights.iter().chain(config.scheme_weights.values()).any(|w| !w.is_finite()) {
        return Err(ServiceError::InvalidConfig("weights must be finite".into()));
    }
    let empty = NetworkSnapshot::empty();
    Evaluator::new(&empty, config)?;
    Ok(())
}

impl Store {
    /// Opens or initializes the store in `dir`. `preset` seeds `config.json`
    /// when none exists yet.
    pub fn open(dir: impl AsRef<Path>, preset: &str) -> Result<Self, ServiceError> {
        let dir = dir.as_ref().to_path_buf();
        ensure_writable(&dir)?;

        let config_path = dir.join(CONFIG_FILE);
        let config = if config_path.exists() {
            let c: CredibilityConfig = serde_json::from_str(&fs::read_to_string(&config_path)?)
                .map_err(|e| ServiceError::InvalidConfig(e.to_string()))?;
            check_config(&c)?;
            c
        } else {
            let c = CredibilityConfig::preset(preset).ok_or_else(|| ServiceError::UnknownPreset(preset.into()))?;
            write_atomic(&config_path, &config_json(&c))?;
            c
        };

        let checkpoint_path = dir.join(CHECKPOINT_FILE);
        let (mut network, checkpoint_seq) = if checkpoint_path.exists() {
            let cp: Checkpoint = serde_json::from_str(&fs::read_to_string(&checkpoint_path)?)
                .map_err(argnet_core::InterchangeError::from)?;
            (Network::from_snapshot(import_document(&cp.document)?), cp.seq)
        } else {
            (Network::new(), 0)
        };

        let (log, records) = EventLog::open(dir.join(EVENTS_FILE))?;
        if log.last_seq() < checkpoint_seq {
            return Err(argnet_core::InterchangeError::CorruptLog {
                line: records.len(),
                reason: format!("checkpoint covers sequence {checkpoint_seq} but the log ends at {}", log.last_seq()),
            }
            .into());
        }
        replay_onto(&mut network, &records, checkpoint_seq)?;
        log::info!(
            "opened {} with {} nodes ({} events, checkpoint at {checkpoint_seq})",
            dir.display(),
            network.len(),
            log.last_seq()
        );
        Ok(Store {
            dir,
            log,
            network,
            config,
            checkpoint_seq,
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn snapshot(&self) -> NetworkSnapshot {
        self.network.snapshot()
    }

    pub fn config(&self) -> &CredibilityConfig {
        &self.config
    }

    pub fn last_seq(&self) -> u64 {
        self.log.last_seq()
    }

    pub fn set_config(&mut self, config: CredibilityConfig) -> Result<(), ServiceError> {
        check_config(&config)?;
        write_atomic(&self.dir.join(CONFIG_FILE), &config_json(&config))?;
        self.config = config;
        Ok(())
    }

    /// Applies `event` to a copy of the network first, so a rejected event
    /// never reaches the log, then logs it durably and publishes the copy.
    pub fn commit(&mut self, event: Event) -> Result<Applied, ServiceError> {
        let mut next = self.network.clone();
        let applied = next.apply(event.clone())?;
        self.log.append(&event)?;
        self.network = next;
        if self.log.last_seq() - self.checkpoint_seq >= CHECKPOINT_EVERY {
            self.checkpoint()?;
        }
        Ok(applied)
    }

    pub fn checkpoint(&mut self) -> Result<(), ServiceError> {
        let cp = Checkpoint {
            seq: self.log.last_seq(),
            document: export_document(&self.network.snapshot(), &ExportOptions::default()),
        };
        let text = serde_json::to_string(&cp).map_err(argnet_core::InterchangeError::from)?;
        write_atomic(&self.dir.join(CHECKPOINT_FILE), &text)?;
        self.checkpoint_seq = cp.seq;
        log::debug!("checkpoint at sequence {}", cp.seq);
        Ok(())
    }
}

fn config_json(c: &CredibilityConfig) -> String {
    let mut s = serde_json::to_string_pretty(c).expect("config serializes");
    s.push('\n');
    s
}
