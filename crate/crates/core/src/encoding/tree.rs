//! Rooted trees with port numbers and node labels, and their DFS-walk code.

use super::{bin_int, concat, concat_ints, decode, decode_exact, decode_ints, malformed, parse_int};
use super::{BitString, EncodingError};
use crate::graph::BfsTree;

/// Edge from a tree node to its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UpLink {
    pub parent: usize,
    /// Port at the parent leading here.
    pub parent_port: usize,
    /// Port here leading to the parent.
    pub child_port: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeNode<L> {
    pub label: L,
    pub up: Option<UpLink>,
    /// Children by increasing port at this node.
    pub children: Vec<usize>,
}

/// A rooted tree whose edges carry a port number at each end.
///
/// Nodes are stored in DFS preorder (children visited by increasing port),
/// with the root at index 0. Two trees are equal iff their codes are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PortTree<L> {
    nodes: Vec<TreeNode<L>>,
}

impl<L> PortTree<L> {
    pub fn single(label: L) -> Self {
        PortTree {
            nodes: vec![TreeNode {
                label,
                up: None,
                children: Vec::new(),
            }],
        }
    }

    /// Builds a tree from arbitrary indexing; `links[v]` is `None` only at `root`.
    ///
    /// Returns the tree and, for every tree index, the original index.
    pub fn from_links(root: usize, labels: Vec<L>, links: &[Option<UpLink>]) -> (Self, Vec<usize>) {
        let n = labels.len();
        assert_eq!(links.len(), n);
        let mut kids: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (v, link) in links.iter().enumerate() {
            if let Some(l) = link {
                kids[l.parent].push((l.parent_port, v));
            }
        }
        for k in &mut kids {
            k.sort_unstable();
        }
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            order.push(u);
            stack.extend(kids[u].iter().rev().map(|&(_, c)| c));
        }
        assert_eq!(order.len(), n, "links do not form a tree rooted at {root}");
        let mut pos = vec![usize::MAX; n];
        for (i, &u) in order.iter().enumerate() {
            pos[u] = i;
        }
        let mut labels: Vec<Option<L>> = labels.into_iter().map(Some).collect();
        let nodes = order
            .iter()
            .map(|&u| TreeNode {
                label: labels[u].take().unwrap(),
                up: links[u].map(|l| UpLink {
                    parent: pos[l.parent],
                    ..l
                }),
                children: kids[u].iter().map(|&(_, c)| pos[c]).collect(),
            })
            .collect();
        (PortTree { nodes }, order)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &TreeNode<L> {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[TreeNode<L>] {
        &self.nodes
    }

    /// Port sequence `(p1, q1, ..., pk, qk)` from node `i` up to the root.
    pub fn path_to_root(&self, mut i: usize) -> Vec<usize> {
        let mut seq = Vec::new();
        while let Some(up) = self.nodes[i].up {
            seq.push(up.child_port);
            seq.push(up.parent_port);
            i = up.parent;
        }
        seq
    }

    pub fn map_labels<M>(&self, mut f: impl FnMut(&L) -> M) -> PortTree<M> {
        PortTree {
            nodes: self
                .nodes
                .iter()
                .map(|n| TreeNode {
                    label: f(&n.label),
                    up: n.up,
                    children: n.children.clone(),
                })
                .collect(),
        }
    }

    /// Port numbers of the DFS walk: on each descent (parent port, child
    /// port), on each ascent (child port, parent port).
    pub fn walk_ports(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(4 * self.nodes.len().saturating_sub(1));
        self.walk_from(0, &mut out);
        out
    }

    fn walk_from(&self, u: usize, out: &mut Vec<u64>) {
        for &c in &self.nodes[u].children {
            let up = self.nodes[c].up.unwrap();
            out.extend([up.parent_port as u64, up.child_port as u64]);
            self.walk_from(c, out);
            out.extend([up.child_port as u64, up.parent_port as u64]);
        }
    }
}

impl PortTree<u64> {
    /// The labeled tree shipped in advice, plus tree index -> graph node.
    pub fn from_bfs(t: &BfsTree) -> (Self, Vec<usize>) {
        let links: Vec<Option<UpLink>> = t
            .parent
            .iter()
            .map(|l| {
                l.map(|l| UpLink {
                    parent: l.parent,
                    parent_port: l.parent_port,
                    child_port: l.child_port,
                })
            })
            .collect();
        PortTree::from_links(t.root, t.labels.clone(), &links)
    }
}

/// Code of a tree whose labels are already bit strings.
pub(crate) fn encode_raw(t: &PortTree<BitString>) -> BitString {
    let s1 = concat_ints(&t.walk_ports());
    let s2 = concat(t.nodes.iter().map(|n| &n.label));
    concat([s1, s2])
}

pub(crate) fn decode_raw(s: &BitString) -> Result<PortTree<BitString>, EncodingError> {
    let parts = decode_exact(s, 2, "labeled tree")?;
    let walk = decode_ints(&parts[0])?;
    if walk.len() % 4 != 0 {
        return Err(malformed(format!(
            "walk of {} ports is not a multiple of 4",
            walk.len()
        )));
    }
    let mut shape: Vec<(Option<UpLink>, Vec<usize>)> = vec![(None, Vec::new())];
    let mut cur = 0usize;
    for pair in walk.chunks(2) {
        let (a, b) = (pair[0] as usize, pair[1] as usize);
        match shape[cur].0 {
            Some(up) if up.child_port == a => {
                if up.parent_port != b {
                    return Err(malformed("ascent ports do not match the descent"));
                }
                cur = up.parent;
            }
            _ => {
                let last = shape[cur].1.last().map(|&c| shape[c].0.unwrap().parent_port);
                if last.is_some_and(|p| p >= a) {
                    return Err(malformed("children not in increasing port order"));
                }
                let id = shape.len();
                shape.push((
                    Some(UpLink {
                        parent: cur,
                        parent_port: a,
                        child_port: b,
                    }),
                    Vec::new(),
                ));
                shape[cur].1.push(id);
                cur = id;
            }
        }
    }
    if cur != 0 {
        return Err(malformed("walk does not return to the root"));
    }
    if walk.len() != 4 * (shape.len() - 1) {
        return Err(malformed("walk length does not match node count"));
    }
    let labels = decode(&parts[1])?;
    if labels.len() != shape.len() {
        return Err(malformed(format!(
            "{} labels for {} nodes",
            labels.len(),
            shape.len()
        )));
    }
    let nodes = shape
        .into_iter()
        .zip(labels)
        .map(|((up, children), label)| TreeNode {
            label,
            up,
            children,
        })
        .collect();
    Ok(PortTree { nodes })
}

/// `Concat(Concat(bin(S1)), Concat(bin(S2)))` for integer labels.
pub fn encode_labeled_tree(t: &PortTree<u64>) -> BitString {
    encode_raw(&t.map_labels(|&l| bin_int(l)))
}

pub fn decode_labeled_tree(s: &BitString) -> Result<PortTree<u64>, EncodingError> {
    let raw = decode_raw(s)?;
    let labels: Vec<u64> = raw
        .nodes
        .iter()
        .map(|n| parse_int(&n.label))
        .collect::<Result<_, _>>()?;
    let mut it = labels.into_iter();
    Ok(raw.map_labels(|_| it.next().unwrap()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PortGraph;

    fn two_node() -> PortTree<u64> {
        let links = [
            None,
            Some(UpLink {
                parent: 0,
                parent_port: 0,
                child_port: 0,
            }),
        ];
        PortTree::from_links(0, vec![1, 2], &links).0
    }

    #[test]
    fn single_node_tree() {
        let t = PortTree::single(7u64);
        assert!(t.walk_ports().is_empty());
        let code = encode_labeled_tree(&t);
        assert_eq!(code, concat([BitString::new(), concat([bin_int(7)])]));
        assert_eq!(decode_labeled_tree(&code).unwrap(), t);
    }

    #[test]
    fn two_node_walk() {
        let t = two_node();
        assert_eq!(t.walk_ports(), vec![0, 0, 0, 0]);
        assert_eq!(decode_labeled_tree(&encode_labeled_tree(&t)).unwrap(), t);
    }

    #[test]
    fn p3_bfs_tree_roundtrip() {
        let g = PortGraph::from_edges(3, &[(1, 0, 0, 0), (1, 1, 2, 0)]).unwrap();
        for root in 0..3 {
            let (t, order) = PortTree::from_bfs(&g.canonical_bfs_tree(root, &[5, 9, 2]));
            assert_eq!(order[0], root);
            assert_eq!(t.walk_ports().len(), 8);
            assert_eq!(decode_labeled_tree(&encode_labeled_tree(&t)).unwrap(), t);
        }
    }

    #[test]
    fn paths_lead_to_root() {
        let g = PortGraph::from_edges(3, &[(1, 0, 0, 0), (1, 1, 2, 0)]).unwrap();
        let (t, order) = PortTree::from_bfs(&g.canonical_bfs_tree(0, &[1, 2, 3]));
        for i in 0..t.len() {
            let (end, simple) = g.follow_path(order[i], &t.path_to_root(i)).unwrap();
            assert_eq!(end, 0);
            assert!(simple);
        }
    }

    #[test]
    fn rejects_walk_not_returning() {
        let bad = concat([concat_ints(&[0, 0]), concat_ints(&[1, 2])]);
        assert!(decode_labeled_tree(&bad).is_err());
    }
}
