//! Argumentation scheme descriptors and critical-question records.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SchemeError;
use crate::model::{NodeId, NodeKind};

const BUILTIN_SCHEMES: &str = include_str!("../data/builtin_schemes.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    Inference,
    Conflict,
    Preference,
}

impl SchemeKind {
    /// The node kind a scheme of this kind may be applied as.
    pub fn node_kind(self) -> NodeKind {
        match self {
            SchemeKind::Inference => NodeKind::RA,
            SchemeKind::Conflict => NodeKind::CA,
            SchemeKind::Preference => NodeKind::PA,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SchemeKind::Inference => "inference",
            SchemeKind::Conflict => "conflict",
            SchemeKind::Preference => "preference",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeDescriptor {
    /// Stable identifier; derived from the name when left empty at registration.
    #[serde(default)]
    pub id: String,
    pub name: String,
    pub premise_descriptors: Vec<String>,
    pub conclusion_descriptor: String,
    #[serde(default)]
    pub critical_questions: Vec<String>,
    pub scheme_kind: SchemeKind,
}

impl SchemeDescriptor {
    pub fn check(&self) -> Result<(), SchemeError> {
        if self.name.trim().is_empty() {
            return Err(SchemeError::EmptyName);
        }
        if self.conclusion_descriptor.trim().is_empty() {
            return Err(SchemeError::EmptyConclusionDescriptor);
        }
        if self.scheme_kind == SchemeKind::Inference && self.premise_descriptors.is_empty() {
            return Err(SchemeError::NoPremiseDescriptors(self.name.clone()));
        }
        Ok(())
    }
}

/// Lower-case identifier form of a scheme name: `Argument from sign` -> `argument_from_sign`.
pub fn slug(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    let mut gap = false;
    for ch in name.trim().chars() {
        if ch.is_alphanumeric() {
            if gap && !out.is_empty() {
                out.push('_');
            }
            gap = false;
            out.extend(ch.to_lowercase());
        } else {
            gap = true;
        }
    }
    out
}

/// The shipped Walton schemes plus the structural conflict and preference descriptors.
pub fn builtin_schemes() -> Vec<SchemeDescriptor> {
    crate::interchange::InterchangeDocument::from_json(BUILTIN_SCHEMES)
        .expect("bundled scheme file is valid")
        .schemes
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SchemeRegistry {
    schemes: BTreeMap<String, SchemeDescriptor>,
}

impl SchemeRegistry {
    pub fn empty() -> Self {
        SchemeRegistry::default()
    }

    pub fn with_builtins() -> Self {
        let mut reg = SchemeRegistry::empty();
        for d in builtin_schemes() {
            reg.register(d).expect("bundled schemes are distinct");
        }
        reg
    }

    pub fn register(&mut self, mut descriptor: SchemeDescriptor) -> Result<String, SchemeError> {
        descriptor.check()?;
        if descriptor.id.trim().is_empty() {
            descriptor.id = slug(&descriptor.name);
        }
        let name_key = slug(&descriptor.name);
        let clash = self.schemes.contains_key(&descriptor.id)
            || self.schemes.values().any(|d| slug(&d.name) == name_key);
        if clash {
            return Err(SchemeError::DuplicateName(descriptor.name));
        }
        let id = descriptor.id.clone();
        self.schemes.insert(id.clone(), descriptor);
        Ok(id)
    }

    pub fn get(&self, id: &str) -> Option<&SchemeDescriptor> {
        self.schemes.get(id)
    }

    /// Looks a scheme up by id, then by display name.
    pub fn resolve(&self, id_or_name: &str) -> Result<&SchemeDescriptor, SchemeError> {
        if let Some(d) = self.schemes.get(id_or_name) {
            return Ok(d);
        }
        let key = slug(id_or_name);
        self.schemes
            .get(&key)
            .or_else(|| self.schemes.values().find(|d| slug(&d.name) == key))
            .ok_or_else(|| SchemeError::UnknownScheme(id_or_name.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.schemes.contains_key(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &SchemeDescriptor> {
        self.schemes.values()
    }

    pub fn len(&self) -> usize {
        self.schemes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemes.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CqStatus {
    Open,
    Resolved,
}

/// A critical question raised against one scheme application.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CqInstance {
    pub id: String,
    pub target: NodeId,
    pub cq_index: usize,
    pub challenge_text: String,
    pub status: CqStatus,
    pub raised_by: String,
    #[serde(default)]
    pub resolution_text: Option<String>,
}

impl CqInstance {
    pub fn is_open(&self) -> bool {
        self.status == CqStatus::Open
    }
}
