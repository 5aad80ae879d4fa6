//! Anonymous port-numbered graphs.
//!
//! Node ids exist only on the harness side of the simulator. Node programs
//! never see a [`PortGraph`]; they receive views and advice.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

/// Where a port leads: the neighbor and the port number at the neighbor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortTarget {
    pub node: usize,
    pub port: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {0} nodes, at least 3 are required")]
    TooSmall(usize),
    #[error("port range: node {node} of degree {degree} uses ports {ports:?}")]
    PortRange {
        node: usize,
        degree: usize,
        ports: Vec<usize>,
    },
    #[error("port {port} at node {node} is assigned twice")]
    DuplicatePort { node: usize, port: usize },
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("multiple edges between {0} and {1}")]
    MultiEdge(usize, usize),
    #[error("reciprocity: port {port} at node {node} leads to ({target_node}, {target_port}) which does not lead back")]
    Reciprocity {
        node: usize,
        port: usize,
        target_node: usize,
        target_port: usize,
    },
    #[error("graph is disconnected: node {0} is unreachable from node 0")]
    Disconnected(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A simple connected undirected graph with local port numbering.
///
/// `adj[u][p]` is the far end of the edge behind port `p` at `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PortGraph {
    adj: Vec<Vec<PortTarget>>,
}

impl PortGraph {
    /// Builds a graph from per-node port tables and checks every invariant.
    pub fn from_adjacency(adj: Vec<Vec<PortTarget>>) -> Result<Self, GraphError> {
        let g = PortGraph { adj };
        g.validate()?;
        Ok(g)
    }

    /// Builds a graph from `(u, port_u, v, port_v)` edge records.
    pub fn from_edges(n: usize, edges: &[(usize, usize, usize, usize)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, pu, v, pv) in edges {
            b.connect(u, pu, v, pv)?;
        }
        b.build()
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// The neighbor behind `port` at `u`, or `None` if the port does not exist.
    pub fn target(&self, u: usize, port: usize) -> Option<PortTarget> {
        self.adj.get(u)?.get(port).copied()
    }

    pub fn ports(&self, u: usize) -> &[PortTarget] {
        &self.adj[u]
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    /// Checks the full invariant set, reporting the first violation.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.adj.len();
        if n < 3 {
            return Err(GraphError::TooSmall(n));
        }
        for (u, ports) in self.adj.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for (p, t) in ports.iter().enumerate() {
                if t.node >= n {
                    return Err(GraphError::NodeOutOfRange(t.node));
                }
                if t.node == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if !seen.insert(t.node) {
                    return Err(GraphError::MultiEdge(u, t.node));
                }
                let back = self.adj[t.node].get(t.port);
                if back != Some(&PortTarget { node: u, port: p }) {
                    return Err(GraphError::Reciprocity {
                        node: u,
                        port: p,
                        target_node: t.node,
                        target_port: t.port,
                    });
                }
            }
        }
        let dist = self.distances_from(0);
        if let Some(v) = dist.iter().position(Option::is_none) {
            return Err(GraphError::Disconnected(v));
        }
        Ok(())
    }

    /// BFS distances from `src`; `None` marks unreachable nodes.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for t in &self.adj[u] {
                if dist[t.node].is_none() {
                    dist[t.node] = Some(d + 1);
                    queue.push_back(t.node);
                }
            }
        }
        dist
    }

    pub fn eccentricity(&self, u: usize) -> usize {
        self.distances_from(u).into_iter().flatten().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> usize {
        self.nodes().map(|u| self.eccentricity(u)).max().unwrap_or(0)
    }

    /// Breadth-first spanning tree in which every node picks, among its
    /// neighbors one level closer to `root`, the one behind its smallest port.
    ///
    /// `labels` must be injective; the tree carries them verbatim.
    pub fn canonical_bfs_tree(&self, root: usize, labels: &[u64]) -> BfsTree {
        assert_eq!(labels.len(), self.node_count(), "one label per node");
        let dist: Vec<usize> = self
            .distances_from(root)
            .into_iter()
            .map(|d| d.expect("connected graph"))
            .collect();
        let parent = self
            .nodes()
            .map(|u| {
                if u == root {
                    return None;
                }
                self.adj[u]
                    .iter()
                    .enumerate()
                    .find(|(_, t)| dist[t.node] + 1 == dist[u])
                    .map(|(p, t)| TreeLink {
                        parent: t.node,
                        child_port: p,
                        parent_port: t.port,
                    })
            })
            .collect();
        BfsTree {
            root,
            parent,
            depth: dist,
            labels: labels.to_vec(),
        }
    }

    /// Walks `seq = (p1, q1, ..., pk, qk)` from `start`, checking each arrival port.
    ///
    /// Returns the end node and whether no node was visited twice.
    pub fn follow_path(&self, start: usize, seq: &[usize]) -> Result<(usize, bool), PathError> {
        if !seq.len().is_multiple_of(2) {
            return Err(PathError::OddLength(seq.len()));
        }
        let mut visited = vec![false; self.node_count()];
        visited[start] = true;
        let mut simple = true;
        let mut cur = start;
        for (step, pair) in seq.chunks(2).enumerate() {
            let (p, q) = (pair[0], pair[1]);
            let t = self.target(cur, p).ok_or(PathError::BadPort {
                step,
                node: cur,
                port: p,
            })?;
            if t.port != q {
                return Err(PathError::ReverseMismatch {
                    step,
                    expected: q,
                    found: t.port,
                });
            }
            cur = t.node;
            if visited[cur] {
                simple = false;
            }
            visited[cur] = true;
        }
        Ok((cur, simple))
    }

    /// Renames nodes: node `u` becomes `perm[u]`. Port numbers are kept.
    pub fn relabel(&self, perm: &[usize]) -> PortGraph {
        let n = self.node_count();
        assert_eq!(perm.len(), n);
        let mut adj = vec![Vec::new(); n];
        for u in self.nodes() {
            adj[perm[u]] = self.adj[u]
                .iter()
                .map(|t| PortTarget {
                    node: perm[t.node],
                    port: t.port,
                })
                .collect();
        }
        PortGraph { adj }
    }

    /// Text form: `n <count>` then `e <u> <p_u> <v> <p_v>` per edge, sorted
    /// by (smaller endpoint, its port).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.node_count()).unwrap();
        for u in self.nodes() {
            for (p, t) in self.adj[u].iter().enumerate() {
                if u < t.node {
                    writeln!(out, "e {} {} {} {}", u, p, t.node, t.port).unwrap();
                }
            }
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, GraphError> {
        let mut builder: Option<GraphBuilder> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut fields = content.split_whitespace();
            let tag = fields.next().unwrap();
            let nums: Result<Vec<usize>, _> = fields.map(usize::from_str).collect();
            let nums = nums.map_err(|e| GraphError::Parse {
                line,
                msg: format!("bad integer: {e}"),
            })?;
            match (tag, builder.as_mut()) {
                ("n", None) => {
                    if nums.len() != 1 {
                        return Err(GraphError::Parse {
                            line,
                            msg: "expected `n <count>`".into(),
                        });
                    }
                    builder = Some(GraphBuilder::new(nums[0]));
                }
                ("n", Some(_)) => {
                    return Err(GraphError::Parse {
                        line,
                        msg: "duplicate `n` line".into(),
                    })
                }
                ("e", Some(b)) => {
                    if nums.len() != 4 {
                        return Err(GraphError::Parse {
                            line,
                            msg: "expected `e <u> <p_u> <v> <p_v>`".into(),
                        });
                    }
                    b.connect(nums[0], nums[1], nums[2], nums[3])
                        .map_err(|e| GraphError::Parse {
                            line,
                            msg: e.to_string(),
                        })?;
                }
                ("e", None) => {
                    return Err(GraphError::Parse {
                        line,
                        msg: "edge before `n` line".into(),
                    })
                }
                (other, _) => {
                    return Err(GraphError::Parse {
                        line,
                        msg: format!("unknown record `{other}`"),
                    })
                }
            }
        }
        builder
            .ok_or(GraphError::Parse {
                line: 0,
                msg: "missing `n` line".into(),
            })?
            .build()
    }
}

impl fmt::Display for PortGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for PortGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PortGraph::parse_text(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("odd-length port sequence ({0} entries)")]
    OddLength(usize),
    #[error("bad port: step {step} uses port {port} at node {node}")]
    BadPort { step: usize, node: usize, port: usize },
    #[error("reverse mismatch: step {step} expected arrival port {expected}, found {found}")]
    ReverseMismatch {
        step: usize,
        expected: usize,
        found: usize,
    },
}

/// Incremental construction of port graphs and graph fragments.
///
/// A builder may hold a partial port assignment (gaps allowed) until
/// [`GraphBuilder::build`] checks the full invariant set.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    slots: Vec<BTreeMap<usize, PortTarget>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            slots: vec![BTreeMap::new(); n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.slots.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.slots.push(BTreeMap::new());
        self.slots.len() - 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.slots[u].len()
    }

    pub fn target(&self, u: usize, port: usize) -> Option<PortTarget> {
        self.slots.get(u)?.get(&port).copied()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, PortTarget)> + '_ {
        self.slots[u].iter().map(|(&p, &t)| (p, t))
    }

    /// Smallest port number not yet used at `u`.
    pub fn free_port(&self, u: usize) -> usize {
        (0..).find(|p| !self.slots[u].contains_key(p)).unwrap()
    }

    pub fn connect(&mut self, u: usize, pu: usize, v: usize, pv: usize) -> Result<(), GraphError> {
        let n = self.slots.len();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::NodeOutOfRange(w));
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.slots[u].values().any(|t| t.node == v) {
            return Err(GraphError::MultiEdge(u, v));
        }
        for (w, p) in [(u, pu), (v, pv)] {
            if self.slots[w].contains_key(&p) {
                return Err(GraphError::DuplicatePort { node: w, port: p });
            }
        }
        self.slots[u].insert(pu, PortTarget { node: v, port: pv });
        self.slots[v].insert(pv, PortTarget { node: u, port: pu });
        Ok(())
    }

    /// Connects `u` and `v` using the smallest free port at each end.
    pub fn connect_free(&mut self, u: usize, v: usize) -> Result<(usize, usize), GraphError> {
        let (pu, pv) = (self.free_port(u), self.free_port(v));
        self.connect(u, pu, v, pv)?;
        Ok((pu, pv))
    }

    pub fn disconnect(&mut self, u: usize, pu: usize) -> Option<PortTarget> {
        let t = self.slots.get_mut(u)?.remove(&pu)?;
        self.slots[t.node].remove(&t.port);
        Some(t)
    }

    /// Appends a disjoint copy of `other`; returns the index offset.
    pub fn append(&mut self, other: &GraphBuilder) -> usize {
        let offset = self.slots.len();
        for s in &other.slots {
            self.slots.push(
                s.iter()
                    .map(|(&p, t)| {
                        (
                            p,
                            PortTarget {
                                node: t.node + offset,
                                port: t.port,
                            },
                        )
                    })
                    .collect(),
            );
        }
        offset
    }

    pub fn build(&self) -> Result<PortGraph, GraphError> {
        let mut adj = Vec::with_capacity(self.slots.len());
        for (u, s) in self.slots.iter().enumerate() {
            let degree = s.len();
            if s.keys().enumerate().any(|(i, &p)| i != p) {
                return Err(GraphError::PortRange {
                    node: u,
                    degree,
                    ports: s.keys().copied().collect(),
                });
            }
            adj.push(s.values().copied().collect());
        }
        PortGraph::from_adjacency(adj)
    }
}

impl From<&PortGraph> for GraphBuilder {
    fn from(g: &PortGraph) -> Self {
        GraphBuilder {
            slots: g
                .adj
                .iter()
                .map(|ports| ports.iter().copied().enumerate().collect())
                .collect(),
        }
    }
}

/// Tree edge from a node up to its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeLink {
    pub parent: usize,
    /// Port at the child leading to the parent.
    pub child_port: usize,
    /// Port at the parent leading to the child.
    pub parent_port: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsTree {
    pub root: usize,
    pub parent: Vec<Option<TreeLink>>,
    pub depth: Vec<usize>,
    pub labels: Vec<u64>,
}

impl BfsTree {
    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// Port sequence `(p1, q1, ..., pk, qk)` leading from `node` up to the root.
    pub fn path_to_root(&self, mut node: usize) -> Vec<usize> {
        let mut seq = Vec::with_capacity(2 * self.depth[node]);
        while let Some(link) = self.parent[node] {
            seq.push(link.child_port);
            seq.push(link.parent_port);
            node = link.parent;
        }
        seq
    }

    /// Children of `u` as `(port at u, port at child, child)`, by port at `u`.
    pub fn children(&self, u: usize) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<_> = self
            .parent
            .iter()
            .enumerate()
            .filter_map(|(c, link)| match link {
                Some(l) if l.parent == u => Some((l.parent_port, l.child_port, c)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }
}
