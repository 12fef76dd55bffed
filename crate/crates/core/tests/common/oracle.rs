//! Second, deliberately naive evaluator. It reads only the raw node map and
//! critical-question list, recomputes every index itself, and recurses
//! directly instead of building a tree.

use std::collections::{BTreeMap, BTreeSet};

use argnet_core::eval::CredibilityConfig;
use argnet_core::{CqStatus, Node, NodeId, NodeKind, NetworkSnapshot};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factors {
    pub c: f64,
    pub u: u32,
    pub m: f64,
    pub a: f64,
    pub p: f64,
    pub s: f64,
    pub total: f64,
}

pub struct Oracle<'a> {
    nodes: &'a BTreeMap<NodeId, Node>,
    blocked: BTreeSet<NodeId>,
    config: &'a CredibilityConfig,
}

fn certainty_value(node: &Node) -> f64 {
    match node.certainty.as_str() {
        "very_low" => 1.0,
        "low" => 2.0,
        "average" => 5.0,
        "high" => 7.0,
        "very_high" => 9.0,
        other => panic!("unexpected certainty {other}"),
    }
}

impl<'a> Oracle<'a> {
    pub fn new(snapshot: &'a NetworkSnapshot, config: &'a CredibilityConfig) -> Self {
        let nodes = snapshot.node_map();
        let blocked = snapshot
            .cq_instances()
            .filter(|cq| cq.status == CqStatus::Open)
            .filter(|cq| nodes.get(&cq.target).map(|n| n.kind != NodeKind::I).unwrap_or(false))
            .map(|cq| cq.target.clone())
            .collect();
        Oracle { nodes, blocked, config }
    }

    /// Participation count: +1 per distinct S-node using the node as a premise,
    /// +1 per S-node concluding at it, -1 for each of those that is a CA or PA.
    pub fn usage(&self, id: &NodeId) -> u32 {
        let mut u: i64 = 0;
        for s in self.nodes.values().filter(|n| n.kind != NodeKind::I) {
            let mut premises: Vec<&NodeId> = s.premises.iter().collect();
            premises.sort();
            premises.dedup();
            if premises.contains(&id) {
                u += 1;
            }
            if s.conclusion.as_ref() == Some(id) {
                u += 1;
                if matches!(s.kind, NodeKind::CA | NodeKind::PA) {
                    u -= 1;
                }
            }
        }
        assert!(u >= 0);
        u as u32
    }

    fn concluding_at(&self, id: &NodeId, kind: NodeKind) -> Vec<&'a Node> {
        let mut v: Vec<&Node> = self
            .nodes
            .values()
            .filter(|n| n.kind == kind && n.conclusion.as_ref() == Some(id))
            .filter(|n| !self.blocked.contains(&n.id))
            .collect();
        v.sort_by(|a, b| a.id.cmp(&b.id));
        v
    }

    /// Credibility of `id` reached along `path` (ancestors, root first).
    pub fn eval(&self, id: &NodeId, path: &[NodeId]) -> Factors {
        let node = &self.nodes[id];
        let mut here: Vec<NodeId> = path.to_vec();
        here.push(id.clone());
        let visible = |n: &NodeId| !here.contains(n);

        let c = certainty_value(node);
        let u = self.usage(id);

        let m = if node.kind == NodeKind::I {
            let vals: Vec<f64> = self
                .concluding_at(id, NodeKind::RA)
                .into_iter()
                .filter(|n| visible(&n.id))
                .map(|n| self.eval(&n.id, &here).total)
                .collect();
            vals.into_iter().reduce(f64::min).unwrap_or(0.0)
        } else {
            let mut premises: Vec<&NodeId> = node.premises.iter().collect();
            premises.sort();
            premises.dedup();
            premises
                .into_iter()
                .filter(|p| visible(p))
                .map(|p| self.eval(p, &here).total)
                .reduce(f64::min)
                .unwrap_or(0.0)
        };

        let attackers: Vec<f64> = self
            .concluding_at(id, NodeKind::CA)
            .into_iter()
            .filter(|n| visible(&n.id))
            .map(|n| self.eval(&n.id, &here).total)
            .collect();
        let a = match self.config.attack_mode.as_str() {
            "count" => attackers.len() as f64,
            "credibility_sum" => attackers.iter().sum(),
            other => panic!("oracle knows no attack mode {other}"),
        };
        let supporters: Vec<f64> = self
            .concluding_at(id, NodeKind::PA)
            .into_iter()
            .filter(|n| visible(&n.id))
            .map(|n| self.eval(&n.id, &here).total)
            .collect();
        let p = match self.config.preference_mode.as_str() {
            "count" => supporters.len() as f64,
            "credibility_sum" => supporters.iter().sum(),
            other => panic!("oracle knows no preference mode {other}"),
        };

        let s = match (&node.kind, &node.scheme) {
            (NodeKind::I, _) => 0.0,
            (_, Some(scheme)) => self.config.scheme_weights.get(scheme).copied().unwrap_or(0.0),
            (_, None) => 0.0,
        };
        let k = self.config;
        let total = k.w_cert * c
            + k.w_usage * u as f64
            + k.w_minsup * m
            + k.w_conflict * a
            + k.w_pref * p
            + k.w_scheme * s;
        Factors { c, u, m, a, p, s, total }
    }

    pub fn root(&self, id: &NodeId) -> Factors {
        self.eval(id, &[])
    }

    /// Tree children of `id` below `path`, ascending, excluding pruned ones.
    pub fn children(&self, id: &NodeId, path: &[NodeId]) -> Vec<NodeId> {
        let node = &self.nodes[id];
        let mut out: BTreeSet<NodeId> = BTreeSet::new();
        if node.kind != NodeKind::I {
            out.extend(node.premises.iter().cloned());
        }
        for n in self.nodes.values() {
            if n.kind != NodeKind::I && n.conclusion.as_ref() == Some(id) && !self.blocked.contains(&n.id) {
                out.insert(n.id.clone());
            }
        }
        out.into_iter()
            .filter(|c| c != id && !path.contains(c))
            .collect()
    }

    /// Greedy explanation path re-derived from scratch at every depth.
    pub fn greedy_path(&self, root: &NodeId) -> Vec<NodeId> {
        let mut path = vec![root.clone()];
        loop {
            let cur = path.last().unwrap().clone();
            let ancestors = &path[..path.len() - 1];
            let kids = self.children(&cur, ancestors);
            let mut best: Option<(f64, NodeId)> = None;
            for k in kids {
                let v = self.eval(&k, &path).total;
                best = match best {
                    None => Some((v, k)),
                    Some((bv, bk)) => {
                        if v > bv || (v == bv && k < bk) {
                            Some((v, k))
                        } else {
                            Some((bv, bk))
                        }
                    }
                };
            }
            match best {
                Some((_, k)) => path.push(k),
                None => return path,
            }
        }
    }
}
