use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CotreeError {
    #[error("graph is not a cograph (it has an induced P4)")]
    NotCograph,
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Leaf(usize),
    Union,
    Join,
}

#[derive(Clone, Debug)]
pub struct CotreeNode {
    pub kind: NodeKind,
    pub children: Option<(usize, usize)>,
    pub parent: Option<usize>,
    pub depth: usize,
    /// Sorted vertices below this node.
    pub vertices: Vec<usize>,
}

/// Binary cotree. Node indices are stable; the root is `root()`.
#[derive(Clone, Debug)]
pub struct Cotree {
    nodes: Vec<CotreeNode>,
    root: usize,
    leaf_of: Vec<usize>,
}

impl Cotree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, i: usize) -> &CotreeNode {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leaf(&self, v: usize) -> usize {
        self.leaf_of[v]
    }

    pub fn lca(&self, u: usize, v: usize) -> usize {
        let (mut a, mut b) = (self.leaf_of[u], self.leaf_of[v]);
        while self.nodes[a].depth > self.nodes[b].depth {
            a = self.nodes[a].parent.unwrap();
        }
        while self.nodes[b].depth > self.nodes[a].depth {
            b = self.nodes[b].parent.unwrap();
        }
        while a != b {
            a = self.nodes[a].parent.unwrap();
            b = self.nodes[b].parent.unwrap();
        }
        a
    }

    fn fmt_node(&self, i: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let node = &self.nodes[i];
        match (node.kind, node.children) {
            (NodeKind::Leaf(v), _) => write!(f, "{v}"),
            (kind, Some((l, r))) => {
                f.write_str(if kind == NodeKind::Join { "Join(" } else { "Union(" })?;
                self.fmt_node(l, f)?;
                f.write_str(",")?;
                self.fmt_node(r, f)?;
                f.write_str(")")
            }
            _ => unreachable!("inner node without children"),
        }
    }
}

impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_node(self.root, f)
    }
}

/// Connected components of `g[set]` (or of its complement), ordered by
/// smallest member.
fn parts(g: &Graph, set: &[usize], complement: bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; set.len()];
    let mut out = Vec::new();
    for s in 0..set.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut part = vec![set[s]];
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..set.len() {
                if !seen[j] && g.has_edge(set[i], set[j]) != complement {
                    seen[j] = true;
                    part.push(set[j]);
                    stack.push(j);
                }
            }
        }
        part.sort_unstable();
        out.push(part);
    }
    out
}

/// Cotree by the component / co-component recursion.
pub fn build_cotree(g: &Graph) -> Result<Cotree, CotreeError> {
    if g.n() == 0 {
        return Err(CotreeError::Empty);
    }
    let mut nodes = Vec::new();
    let all: Vec<usize> = g.vertices().collect();
    let root = build(g, all, &mut nodes)?;
    let mut leaf_of = vec![0; g.n()];
    // parents and depths, top-down
    let mut stack = vec![(root, None, 0)];
    while let Some((i, parent, depth)) = stack.pop() {
        let node: &mut CotreeNode = &mut nodes[i];
        node.parent = parent;
        node.depth = depth;
        if let NodeKind::Leaf(v) = node.kind {
            leaf_of[v] = i;
        }
        if let Some((l, r)) = node.children {
            stack.push((l, Some(i), depth + 1));
            stack.push((r, Some(i), depth + 1));
        }
    }
    Ok(Cotree { nodes, root, leaf_of })
}

fn build(g: &Graph, set: Vec<usize>, nodes: &mut Vec<CotreeNode>) -> Result<usize, CotreeError> {
    let push = |nodes: &mut Vec<CotreeNode>, kind, children, vertices| {
        nodes.push(CotreeNode { kind, children, parent: None, depth: 0, vertices });
        nodes.len() - 1
    };
    if set.len() == 1 {
        return Ok(push(nodes, NodeKind::Leaf(set[0]), None, set));
    }
    let (kind, groups) = {
        let comps = parts(g, &set, false);
        if comps.len() > 1 {
            (NodeKind::Union, comps)
        } else {
            let co = parts(g, &set, true);
            if co.len() == 1 {
                return Err(CotreeError::NotCograph);
            }
            (NodeKind::Join, co)
        }
    };
    let mut groups = groups.into_iter();
    let first = groups.next().unwrap();
    let mut acc_vertices = first.clone();
    let mut acc = build(g, first, nodes)?;
    for group in groups {
        acc_vertices.extend_from_slice(&group);
        acc_vertices.sort_unstable();
        let right = build(g, group, nodes)?;
        acc = push(nodes, kind, Some((acc, right)), acc_vertices.clone());
    }
    Ok(acc)
}
