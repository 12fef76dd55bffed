use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::error::EvalError;
use crate::eval::{CredibilityConfig, Evaluator};
use crate::model::{NodeId, NodeKind};
use crate::snapshot::NetworkSnapshot;
use crate::tree::ArgumentTree;

pub const LABEL_LIMIT: usize = 40;

pub fn fill_color(kind: NodeKind) -> &'static str {
    match kind {
        NodeKind::I => "white",
        NodeKind::RA => "green",
        NodeKind::CA => "red",
        NodeKind::PA => "blue",
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' | '\r' => out.push(' '),
            c => out.push(c),
        }
    }
    out
}

fn truncated(summary: &str) -> String {
    let mut chars = summary.chars();
    let head: String = chars.by_ref().take(LABEL_LIMIT).collect();
    if chars.next().is_some() {
        head + "..."
    } else {
        head
    }
}

/// Renders `tree` as a DOT digraph. Each network node appears once; edges
/// point from premise to scheme node and from scheme node to conclusion.
/// Edges cut during cycle pruning are drawn dashed.
pub fn export_dot(
    tree: &ArgumentTree,
    snapshot: &NetworkSnapshot,
    config: &CredibilityConfig,
) -> Result<String, EvalError> {
    let eval = Evaluator::new(snapshot, config)?.evaluate(tree.clone());

    let mut out = String::from("digraph argument {\n");
    out.push_str("  node [style=filled, fontname=\"Helvetica\"];\n");

    let mut seen: BTreeMap<&NodeId, f64> = BTreeMap::new();
    for (idx, pos) in tree.positions().iter().enumerate() {
        seen.entry(&pos.node).or_insert(eval.at(idx).total);
    }
    // Preorder emission, first occurrence only.
    let mut emitted = BTreeSet::new();
    for pos in tree.positions() {
        if !emitted.insert(&pos.node) {
            continue;
        }
        let node = snapshot.node(&pos.node).ok_or_else(|| EvalError::UnknownNode(pos.node.clone()))?;
        let shape = if node.is_scheme() { "diamond" } else { "box" };
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{}\\n{:.2}\", shape={shape}, fillcolor={}];",
            escape(node.id.as_str()),
            escape(&truncated(&node.summary)),
            seen[&pos.node],
            fill_color(node.kind),
        );
    }

    // Every tree edge links a node to a child that feeds it, so the data flow
    // runs child to parent.
    let mut solid = BTreeSet::new();
    for (parent, child) in tree.edges() {
        if solid.insert((child.clone(), parent.clone())) {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", escape(child.as_str()), escape(parent.as_str()));
        }
    }
    let mut dashed = BTreeSet::new();
    for (parent, child) in tree.pruned_edges() {
        let key = (child.clone(), parent.clone());
        if !solid.contains(&key) && dashed.insert(key) {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [style=dashed];",
                escape(child.as_str()),
                escape(parent.as_str())
            );
        }
    }
    out.push_str("}\n");
    Ok(out)
}
