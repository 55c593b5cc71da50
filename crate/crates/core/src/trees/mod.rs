//! Explicit rooted binary trees: the complete prefix and suffix trees, Newick
//! I/O, induced quartet topologies and a brute-force quartet distance.
//!
//! Quartet topologies here use only path lengths between leaves (the
//! four-point condition), so they do not depend on where the root sits.

mod newick;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::bitlabel::{Label, LeafOrder};
use crate::topology::Pairing;

pub use newick::parse_newick;

/// Largest `n` accepted by [`build_tree`].
pub const BUILD_MAX_N: u32 = 20;
/// Largest leaf count accepted by [`quartet_distance`].
pub const DISTANCE_MAX_LEAVES: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("node opened at byte {pos} does not have exactly two children")]
    NonBinary { pos: usize },
    #[error("duplicate leaf label {0:?}")]
    DuplicateLabel(String),
    #[error("tree has {0} leaves; quartet operations need at least 4")]
    TooFewLeaves(usize),
    #[error("tree has {0} leaves; brute-force distance is limited to {DISTANCE_MAX_LEAVES}")]
    TooManyLeaves(usize),
    #[error("unknown leaf label {0:?}")]
    UnknownLabel(String),
    #[error("leaf label {0:?} given more than once")]
    RepeatedLabel(String),
    #[error("trees have different leaf label sets")]
    LeafSetMismatch,
    #[error("n = {0} outside 2..={BUILD_MAX_N}")]
    NOutOfRange(u32),
    #[error("node {0} is not a non-root node of this tree")]
    InvalidEdge(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Node {
    parent: Option<usize>,
    children: Option<[usize; 2]>,
    label: Option<String>,
}

/// Rooted full binary tree with distinctly labelled leaves, stored as an arena.
#[derive(Debug, Clone)]
pub struct PhyloTree {
    nodes: Vec<Node>,
    root: usize,
}

impl PartialEq for PhyloTree {
    /// Same shape, same child order, same labels.
    fn eq(&self, other: &Self) -> bool {
        self.to_newick() == other.to_newick()
    }
}

impl Eq for PhyloTree {}

impl fmt::Display for PhyloTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_newick())
    }
}

/// Complete balanced tree of depth `n` whose leaf at position `p` carries the
/// label with `leaf_index(label, order) == p`.
pub fn build_tree(n: u32, order: LeafOrder) -> Result<PhyloTree, TreeError> {
    if !(2..=BUILD_MAX_N).contains(&n) {
        return Err(TreeError::NOutOfRange(n));
    }
    let size = 1usize << n;
    let mut nodes = Vec::with_capacity(2 * size - 1);
    for p in 0..size {
        let label = Label::at_leaf_index(n, order, p as u64).expect("n checked");
        nodes.push(Node {
            parent: None,
            children: None,
            label: Some(label.to_string()),
        });
    }
    let mut level: Vec<usize> = (0..size).collect();
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len() / 2);
        for pair in level.chunks_exact(2) {
            let id = nodes.len();
            nodes.push(Node {
                parent: None,
                children: Some([pair[0], pair[1]]),
                label: None,
            });
            nodes[pair[0]].parent = Some(id);
            nodes[pair[1]].parent = Some(id);
            next.push(id);
        }
        level = next;
    }
    Ok(PhyloTree {
        nodes,
        root: level[0],
    })
}

impl PhyloTree {
    pub(crate) fn from_nodes(nodes: Vec<Node>, root: usize) -> Self {
        PhyloTree { nodes, root }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn to_newick(&self) -> String {
        newick::to_newick(self)
    }

    /// Leaf ids in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            match self.nodes[id].children {
                Some([l, r]) => stack.extend([r, l]),
                None => out.push(id),
            }
        }
        out
    }

    pub fn leaf_labels(&self) -> Vec<&str> {
        self.leaves()
            .into_iter()
            .map(|id| self.nodes[id].label.as_deref().unwrap_or_default())
            .collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.children.is_none()).count()
    }

    fn label_index(&self) -> HashMap<&str, usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(id, n)| n.label.as_deref().map(|l| (l, id)))
            .collect()
    }

    fn depths(&self) -> Vec<u32> {
        let mut depth = vec![0u32; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if let Some(kids) = self.nodes[id].children {
                for c in kids {
                    depth[c] = depth[id] + 1;
                    stack.push(c);
                }
            }
        }
        depth
    }

    /// Number of edges on the path between two nodes.
    fn path_len(&self, depth: &[u32], mut a: usize, mut b: usize) -> u32 {
        let mut len = 0;
        while depth[a] > depth[b] {
            a = self.nodes[a].parent.expect("non-root");
            len += 1;
        }
        while depth[b] > depth[a] {
            b = self.nodes[b].parent.expect("non-root");
            len += 1;
        }
        while a != b {
            a = self.nodes[a].parent.expect("non-root");
            b = self.nodes[b].parent.expect("non-root");
            len += 2;
        }
        len
    }

    /// Path lengths between all leaves, rows and columns in `order`.
    fn leaf_distances(&self, order: &[usize]) -> Vec<u32> {
        let n = self.nodes.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (id, node) in self.nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                adj[id].push(p);
                adj[p].push(id);
            }
        }
        let m = order.len();
        let mut out = vec![0u32; m * m];
        let mut dist = vec![u32::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for (row, &src) in order.iter().enumerate() {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            dist[src] = 0;
            queue.push_back(src);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for (col, &dst) in order.iter().enumerate() {
                out[row * m + col] = dist[dst];
            }
        }
        out
    }

    /// Topology induced on four leaves: the split `{x,y}|{z,w}` whose two
    /// paths are disjoint, found as the unique minimum of
    /// `d(x,y) + d(z,w)` over the three splits.
    pub fn induced_quartet(&self, labels: [&str; 4]) -> Result<Pairing, TreeError> {
        let index = self.label_index();
        let mut ids = [0usize; 4];
        for (k, l) in labels.iter().enumerate() {
            ids[k] = *index
                .get(l)
                .ok_or_else(|| TreeError::UnknownLabel(l.to_string()))?;
            if labels[..k].contains(l) {
                return Err(TreeError::RepeatedLabel(l.to_string()));
            }
        }
        let depth = self.depths();
        let d = |i: usize, j: usize| self.path_len(&depth, ids[i], ids[j]);
        Ok(four_point([
            d(0, 1) + d(2, 3),
            d(0, 2) + d(1, 3),
            d(0, 3) + d(1, 2),
        ]))
    }

    /// Same unrooted tree with the root moved onto the edge above `node`.
    pub fn rerooted(&self, node: usize) -> Result<PhyloTree, TreeError> {
        if node >= self.nodes.len() || node == self.root {
            return Err(TreeError::InvalidEdge(node));
        }
        // Unrooted adjacency with the old root suppressed.
        let n = self.nodes.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let [rl, rr] = self.nodes[self.root]
            .children
            .expect("root with a non-root node is internal");
        adj[rl].push(rr);
        adj[rr].push(rl);
        for (id, node) in self.nodes.iter().enumerate() {
            if let Some(kids) = node.children {
                if id == self.root {
                    continue;
                }
                for c in kids {
                    adj[id].push(c);
                    adj[c].push(id);
                }
            }
        }
        let other_end = if node == rl {
            rr
        } else if node == rr {
            rl
        } else {
            self.nodes[node].parent.expect("non-root")
        };

        let mut nodes: Vec<Node> = Vec::with_capacity(n);
        let new_root = 0;
        nodes.push(Node {
            parent: None,
            children: None,
            label: None,
        });
        // (old id, came-from old id, new parent id, slot)
        let mut stack = vec![
            (other_end, node, new_root, 1usize),
            (node, other_end, new_root, 0usize),
        ];
        let mut kids_of_root = [0usize; 2];
        let mut pending: Vec<[usize; 2]> = vec![[usize::MAX; 2]];
        while let Some((old, from, parent, slot)) = stack.pop() {
            let id = nodes.len();
            nodes.push(Node {
                parent: Some(parent),
                children: None,
                label: self.nodes[old].label.clone(),
            });
            pending.push([usize::MAX; 2]);
            if parent == new_root {
                kids_of_root[slot] = id;
            } else {
                pending[parent][slot] = id;
            }
            let next: Vec<usize> = adj[old].iter().copied().filter(|&w| w != from).collect();
            for (k, &w) in next.iter().enumerate().rev() {
                stack.push((w, old, id, k));
            }
        }
        nodes[new_root].children = Some(kids_of_root);
        for (id, kids) in pending.into_iter().enumerate().skip(1) {
            if kids[0] != usize::MAX {
                nodes[id].children = Some(kids);
            }
        }
        Ok(PhyloTree {
            nodes,
            root: new_root,
        })
    }
}

fn four_point(sums: [u32; 3]) -> Pairing {
    let min = *sums.iter().min().expect("three sums");
    let winners = sums.iter().filter(|&&s| s == min).count();
    assert_eq!(winners, 1, "full binary trees resolve every quartet");
    Pairing::ALL[sums.iter().position(|&s| s == min).expect("min attained")]
}

/// Number of 4-subsets of the common leaf set whose induced topologies differ.
pub fn quartet_distance(t1: &PhyloTree, t2: &PhyloTree) -> Result<u64, TreeError> {
    let leaves1 = t1.leaves();
    let m = leaves1.len();
    if m < 4 {
        return Err(TreeError::TooFewLeaves(m));
    }
    if m > DISTANCE_MAX_LEAVES {
        return Err(TreeError::TooManyLeaves(m));
    }
    let index2 = t2.label_index();
    if t2.leaf_count() != m {
        return Err(TreeError::LeafSetMismatch);
    }
    let leaves2: Vec<usize> = leaves1
        .iter()
        .map(|&id| {
            let l = t1.nodes[id].label.as_deref().unwrap_or_default();
            index2.get(l).copied().ok_or(TreeError::LeafSetMismatch)
        })
        .collect::<Result<_, _>>()?;
    let d1 = t1.leaf_distances(&leaves1);
    let d2 = t2.leaf_distances(&leaves2);
    let split = |d: &[u32], a: usize, b: usize, c: usize, e: usize| {
        four_point([
            d[a * m + b] + d[c * m + e],
            d[a * m + c] + d[b * m + e],
            d[a * m + e] + d[b * m + c],
        ])
    };
    Ok((0..m)
        .into_par_iter()
        .map(|a| {
            let mut differ = 0u64;
            for b in (a + 1)..m {
                for c in (b + 1)..m {
                    for e in (c + 1)..m {
                        differ += (split(&d1, a, b, c, e) != split(&d2, a, b, c, e)) as u64;
                    }
                }
            }
            differ
        })
        .sum())
}
