//! Single-parent term forest used for domain subsumption (`Football` under `Sport`).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::TaxonomyError;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TaxonomyEdge {
    pub child: String,
    pub parent: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Taxonomy {
    parents: BTreeMap<String, String>,
}

impl Taxonomy {
    pub fn empty() -> Self {
        Taxonomy::default()
    }

    pub fn from_edges<I, C, P>(edges: I) -> Result<Self, TaxonomyError>
    where
        I: IntoIterator<Item = (C, P)>,
        C: Into<String>,
        P: Into<String>,
    {
        let mut parents = BTreeMap::new();
        for (child, parent) in edges {
            let child = child.into();
            if parents.contains_key(&child) {
                return Err(TaxonomyError::DuplicateChild(child));
            }
            parents.insert(child, parent.into());
        }
        let tax = Taxonomy { parents };
        tax.check_acyclic()?;
        Ok(tax)
    }

    /// Parses line-oriented `child<TAB>parent` text. Blank lines and `#` comments are skipped.
    pub fn parse_tsv(text: &str) -> Result<Self, TaxonomyError> {
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (child, parent) = line.split_once('\t').ok_or_else(|| TaxonomyError::Malformed {
                line: i + 1,
                reason: "expected child<TAB>parent".into(),
            })?;
            let (child, parent) = (child.trim(), parent.trim());
            if child.is_empty() || parent.is_empty() || parent.contains('\t') {
                return Err(TaxonomyError::Malformed {
                    line: i + 1,
                    reason: "expected exactly two non-empty fields".into(),
                });
            }
            edges.push((child.to_string(), parent.to_string()));
        }
        Taxonomy::from_edges(edges)
    }

    pub fn to_tsv(&self) -> String {
        self.parents
            .iter()
            .map(|(c, p)| format!("{c}\t{p}\n"))
            .collect()
    }

    fn check_acyclic(&self) -> Result<(), TaxonomyError> {
        let mut cleared: BTreeSet<&str> = BTreeSet::new();
        for start in self.parents.keys() {
            let mut seen: BTreeSet<&str> = BTreeSet::new();
            let mut cur = start.as_str();
            loop {
                if cleared.contains(cur) {
                    break;
                }
                if !seen.insert(cur) {
                    return Err(TaxonomyError::CycleDetected(cur.to_string()));
                }
                match self.parents.get(cur) {
                    Some(p) => cur = p,
                    None => break,
                }
            }
            cleared.extend(seen);
        }
        Ok(())
    }

    pub fn parent(&self, term: &str) -> Option<&str> {
        self.parents.get(term).map(String::as_str)
    }

    /// Proper ancestors of `term`, nearest first.
    pub fn ancestors<'a>(&'a self, term: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        std::iter::successors(self.parent(term), move |t| self.parent(t))
    }

    /// True when `ancestor` is a proper ancestor of `term`. A term is not its own descendant.
    pub fn is_descendant(&self, term: &str, ancestor: &str) -> bool {
        self.ancestors(term).any(|a| a == ancestor)
    }

    /// Equal to, or a descendant of, `ancestor`.
    pub fn subsumed_by(&self, term: &str, ancestor: &str) -> bool {
        term == ancestor || self.is_descendant(term, ancestor)
    }

    pub fn contains(&self, term: &str) -> bool {
        self.parents.contains_key(term) || self.parents.values().any(|p| p == term)
    }

    pub fn roots(&self) -> BTreeSet<&str> {
        self.parents
            .values()
            .map(String::as_str)
            .filter(|p| !self.parents.contains_key(*p))
            .collect()
    }

    pub fn edges(&self) -> Vec<TaxonomyEdge> {
        self.parents
            .iter()
            .map(|(c, p)| TaxonomyEdge {
                child: c.clone(),
                parent: p.clone(),
            })
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }
}

impl Serialize for Taxonomy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.edges().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Taxonomy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let edges = Vec::<TaxonomyEdge>::deserialize(d)?;
        Taxonomy::from_edges(edges.into_iter().map(|e| (e.child, e.parent)))
            .map_err(serde::de::Error::custom)
    }
}
