//! Argument trees rooted at a query node.
//!
//! A node's children are its premises (for scheme applications) and every
//! non-blocked scheme application concluding at it. Expansion recurses until
//! a child would repeat a node already on the root-to-node path; that edge is
//! recorded as pruned and not expanded. The same network node may occur at
//! several positions when the network shares premises.

use std::collections::BTreeSet;

use crate::error::EvalError;
use crate::model::NodeId;
use crate::snapshot::NetworkSnapshot;

/// Index of a position in an [`ArgumentTree`].
pub type TreeIndex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub node: NodeId,
    pub parent: Option<TreeIndex>,
    pub children: Vec<TreeIndex>,
    pub depth: usize,
}

/// Cycle-pruned evaluation tree. Positions are stored in preorder, so every
/// child index is greater than its parent's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentTree {
    root: NodeId,
    nodes: Vec<TreeNode>,
    pruned_edges: Vec<(NodeId, NodeId)>,
}

impl ArgumentTree {
    pub fn root(&self) -> &NodeId {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, idx: TreeIndex) -> &TreeNode {
        &self.nodes[idx]
    }

    pub fn positions(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn children(&self, idx: TreeIndex) -> impl Iterator<Item = (TreeIndex, &NodeId)> {
        self.nodes[idx]
            .children
            .iter()
            .map(move |&c| (c, &self.nodes[c].node))
    }

    pub fn pruned_edges(&self) -> &[(NodeId, NodeId)] {
        &self.pruned_edges
    }

    /// First preorder position of `id`.
    pub fn position(&self, id: &NodeId) -> Option<TreeIndex> {
        self.nodes.iter().position(|t| &t.node == id)
    }

    pub fn contains(&self, id: &NodeId) -> bool {
        self.position(id).is_some()
    }

    pub fn node_ids(&self) -> BTreeSet<NodeId> {
        self.nodes.iter().map(|t| t.node.clone()).collect()
    }

    /// Parent-to-child edges between tree positions, as node id pairs.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.nodes
            .iter()
            .filter_map(|t| t.parent.map(|p| (self.nodes[p].node.clone(), t.node.clone())))
            .collect()
    }

    /// Node ids from the root to `idx`.
    pub fn path_to(&self, idx: TreeIndex) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes[idx].depth + 1);
        let mut cur = Some(idx);
        while let Some(i) = cur {
            out.push(self.nodes[i].node.clone());
            cur = self.nodes[i].parent;
        }
        out.reverse();
        out
    }
}

/// Builds the argument tree rooted at `root`.
pub fn argument_tree(root: &NodeId, snapshot: &NetworkSnapshot) -> Result<ArgumentTree, EvalError> {
    if !snapshot.contains(root) {
        return Err(EvalError::UnknownNode(root.clone()));
    }
    let mut nodes = vec![TreeNode {
        node: root.clone(),
        parent: None,
        children: Vec::new(),
        depth: 0,
    }];
    let mut pruned = Vec::new();

    // Explicit DFS; `path` mirrors the ids on the current root-to-node path.
    let mut path: Vec<NodeId> = vec![root.clone()];
    let mut on_path: BTreeSet<NodeId> = BTreeSet::from([root.clone()]);
    let mut stack: Vec<(TreeIndex, std::vec::IntoIter<NodeId>)> =
        vec![(0, snapshot.tree_children(root).into_iter())];

    while let Some((idx, iter)) = stack.last_mut() {
        let idx = *idx;
        match iter.next() {
            Some(child) => {
                if on_path.contains(&child) {
                    pruned.push((nodes[idx].node.clone(), child));
                    continue;
                }
                let cidx = nodes.len();
                nodes.push(TreeNode {
                    node: child.clone(),
                    parent: Some(idx),
                    children: Vec::new(),
                    depth: nodes[idx].depth + 1,
                });
                nodes[idx].children.push(cidx);
                let grand = snapshot.tree_children(&child);
                on_path.insert(child.clone());
                path.push(child);
                stack.push((cidx, grand.into_iter()));
            }
            None => {
                stack.pop();
                if let Some(done) = path.pop() {
                    on_path.remove(&done);
                }
            }
        }
    }

    Ok(ArgumentTree {
        root: root.clone(),
        nodes,
        pruned_edges: pruned,
    })
}
