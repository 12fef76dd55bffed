//! Best-explanation generation: greedy descent along the most credible child.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::{Node, NodeId, NodeKind};
use crate::snapshot::NetworkSnapshot;

use super::TreeEvaluation;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Explanation {
    /// Root first, ending at a childless tree position.
    pub path: Vec<NodeId>,
    pub text: String,
    pub path_credibilities: Vec<f64>,
    /// Every node whose summary appears in `text`, ascending.
    pub cited: Vec<NodeId>,
}

pub(super) fn best_explanation(eval: &TreeEvaluation, snapshot: &NetworkSnapshot) -> Explanation {
    let tree = eval.tree();
    let mut idx = 0;
    let mut path = vec![tree.get(0).node.clone()];
    let mut creds = vec![eval.at(0).total];
    loop {
        let best = tree.children(idx).max_by(|(a, a_id), (b, b_id)| {
            // Higher credibility wins; on exact ties the smaller id wins.
            eval.at(*a)
                .total
                .partial_cmp(&eval.at(*b).total)
                .unwrap_or(Ordering::Equal)
                .then_with(|| b_id.cmp(a_id))
        });
        match best {
            Some((next, id)) => {
                path.push(id.clone());
                creds.push(eval.at(next).total);
                idx = next;
            }
            None => break,
        }
    }
    let (text, cited) = render(&path, snapshot);
    Explanation {
        path,
        text,
        path_credibilities: creds,
        cited,
    }
}

fn clean(summary: &str) -> &str {
    summary.trim().trim_end_matches('.')
}

fn facts(nodes: &[&Node]) -> String {
    let lead = if nodes.len() == 1 { "the fact that " } else { "the facts that " };
    let body: Vec<&str> = nodes.iter().map(|n| clean(&n.summary)).collect();
    format!("{lead}{}", body.join(" and that "))
}

fn verb(kind: NodeKind, plural: bool) -> &'static str {
    match (kind, plural) {
        (NodeKind::RA, false) => "indicates",
        (NodeKind::RA, true) => "indicate",
        (NodeKind::PA, false) => "supports",
        (NodeKind::PA, true) => "support",
        (NodeKind::CA, false) => "is in conflict with",
        (NodeKind::CA, true) => "are in conflict with",
        (NodeKind::I, _) => "",
    }
}

fn object(kind: NodeKind, target: &Node, root: &NodeId) -> String {
    if kind == NodeKind::CA {
        let about_root =
            &target.id == root || (target.is_scheme() && target.conclusion.as_ref() == Some(root));
        if about_root {
            return "the current argumentation claim".into();
        }
        if !target.is_scheme() {
            return format!("the fact that {}", clean(&target.summary));
        }
    }
    if target.is_scheme() {
        format!("the argument that {}", clean(&target.summary))
    } else {
        format!("that {}", clean(&target.summary))
    }
}

/// Summaries of path nodes, leaf first, chained with connectives per hop.
fn render(path: &[NodeId], snapshot: &NetworkSnapshot) -> (String, Vec<NodeId>) {
    let get = |id: &NodeId| snapshot.node(id).expect("path nodes resolve");
    let root = &path[0];
    let mut cited: BTreeSet<NodeId> = BTreeSet::new();
    if path.len() == 1 {
        cited.insert(root.clone());
        return (clean(&get(root).summary).to_string() + ".", cited.into_iter().collect());
    }

    let mut sentences: Vec<String> = Vec::new();
    let mut open: Option<String> = None;
    let mut asserted: Option<&NodeId> = None;

    for i in (1..path.len()).rev() {
        let node = get(&path[i]);
        if !node.is_scheme() {
            continue;
        }
        let below = path.get(i + 1);
        let via_premise = below.is_some_and(|b| node.premises.contains(b));
        if below.is_some() && !via_premise {
            // Reached through an attacker or supporter already described.
            continue;
        }
        let target = get(&path[i - 1]);
        let premises: Vec<&Node> = node
            .distinct_premises()
            .into_iter()
            .filter_map(|p| snapshot.node(p))
            .collect();
        cited.extend(premises.iter().map(|p| p.id.clone()));
        cited.insert(target.id.clone());
        let obj = object(node.kind, target, root);

        let continues = via_premise && open.is_some() && asserted == below;
        if continues {
            let others: Vec<&Node> = premises
                .iter()
                .copied()
                .filter(|p| Some(&p.id) != below)
                .collect();
            let clause = if others.is_empty() {
                format!(", which {} {obj}", verb(node.kind, false))
            } else {
                format!(
                    ", which together with {} {} {obj}",
                    facts(&others),
                    verb(node.kind, false)
                )
            };
            open.as_mut().expect("continuing an open sentence").push_str(&clause);
        } else {
            if let Some(s) = open.take() {
                sentences.push(s + ".");
            }
            let lead = facts(&premises);
            let mut s = format!("{} {} {obj}", lead, verb(node.kind, premises.len() > 1));
            s[..1].make_ascii_uppercase();
            open = Some(s);
        }
        asserted = Some(&path[i - 1]);
    }
    if let Some(s) = open.take() {
        sentences.push(s + ".");
    }
    if sentences.is_empty() {
        cited.insert(root.clone());
        sentences.push(clean(&get(root).summary).to_string() + ".");
    }
    (sentences.join(" "), cited.into_iter().collect())
}
