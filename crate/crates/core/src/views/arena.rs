//! Hash-consed storage for augmented truncated views.
//!
//! Equal views get equal ids, so equality is an integer comparison and deep
//! views cost memory proportional to their distinct subviews.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use super::{AugView, ViewError, ViewNode};
use crate::encoding::{bin_int, concat, BitString};
use crate::graph::PortGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ViewId(u32);

impl ViewId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    degree: u32,
    /// `(up port, child)` per down port; empty exactly at depth 0.
    children: Box<[(u32, ViewId)]>,
}

#[derive(Default)]
pub struct ViewArena {
    keys: Vec<Key>,
    depths: Vec<usize>,
    index: HashMap<Key, ViewId>,
    truncations: HashMap<(ViewId, usize), ViewId>,
    bin1: HashMap<ViewId, BitString>,
    interned: HashMap<usize, ViewId>,
    keepalive: Vec<AugView>,
    materialized: HashMap<ViewId, AugView>,
}

impl ViewArena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    fn insert(&mut self, key: Key, depth: usize) -> ViewId {
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = ViewId(self.keys.len() as u32);
        self.keys.push(key.clone());
        self.depths.push(depth);
        self.index.insert(key, id);
        id
    }

    /// The depth-0 view of a node of the given degree.
    pub fn leaf(&mut self, degree: usize) -> ViewId {
        self.insert(
            Key {
                degree: degree as u32,
                children: Box::new([]),
            },
            0,
        )
    }

    /// A view whose root has one child per port; all children share a depth.
    pub fn node(&mut self, children: &[(usize, ViewId)]) -> ViewId {
        assert!(!children.is_empty(), "a view root has degree at least 1");
        let depth = self.depth(children[0].1) + 1;
        debug_assert!(children.iter().all(|&(_, c)| self.depth(c) + 1 == depth));
        self.insert(
            Key {
                degree: children.len() as u32,
                children: children.iter().map(|&(u, c)| (u as u32, c)).collect(),
            },
            depth,
        )
    }

    pub fn depth(&self, id: ViewId) -> usize {
        self.depths[id.index()]
    }

    pub fn degree(&self, id: ViewId) -> usize {
        self.keys[id.index()].degree as usize
    }

    /// `(up port, child)` behind `port` at the root; `None` at depth 0.
    pub fn child(&self, id: ViewId, port: usize) -> Option<(usize, ViewId)> {
        self.keys[id.index()]
            .children
            .get(port)
            .map(|&(u, c)| (u as usize, c))
    }

    pub fn children(&self, id: ViewId) -> impl ExactSizeIterator<Item = (usize, ViewId)> + '_ {
        self.keys[id.index()]
            .children
            .iter()
            .map(|&(u, c)| (u as usize, c))
    }

    /// The same view cut at depth `j` (identity when `j` is at least the depth).
    pub fn truncate(&mut self, id: ViewId, j: usize) -> ViewId {
        if j >= self.depth(id) {
            return id;
        }
        if j == 0 {
            return self.leaf(self.degree(id));
        }
        if let Some(&t) = self.truncations.get(&(id, j)) {
            return t;
        }
        let kids: Vec<(usize, ViewId)> = self.children(id).collect();
        let cut: Vec<(usize, ViewId)> = kids
            .into_iter()
            .map(|(u, c)| (u, self.truncate(c, j - 1)))
            .collect();
        let t = self.node(&cut);
        self.truncations.insert((id, j), t);
        t
    }

    /// Follows down ports from the root.
    pub fn descend(&self, mut id: ViewId, ports: &[usize]) -> Result<ViewId, ViewError> {
        for (step, &p) in ports.iter().enumerate() {
            id = self
                .child(id, p)
                .ok_or(ViewError::BadPort { step, port: p })?
                .1;
        }
        Ok(id)
    }

    /// The depth-`x` view of the tree node reached by `ports`.
    pub fn subview(&mut self, id: ViewId, ports: &[usize], x: usize) -> Result<ViewId, ViewError> {
        let depth = self.depth(id);
        if ports.len() + x > depth {
            return Err(ViewError::DepthOverflow {
                depth,
                at: ports.len(),
                x,
            });
        }
        let node = self.descend(id, ports)?;
        Ok(self.truncate(node, x))
    }

    /// `Concat` over ports `j` of `Concat(bin j, bin a_j, bin b_j)`, read from
    /// the first level of a view of depth at least 1.
    pub fn bin_depth1(&mut self, id: ViewId) -> BitString {
        assert!(self.depth(id) >= 1, "depth-1 code of a depth-0 view");
        let id = self.truncate(id, 1);
        if let Some(b) = self.bin1.get(&id) {
            return b.clone();
        }
        let code = concat(self.children(id).enumerate().map(|(j, (a, c))| {
            concat([
                bin_int(j as u64),
                bin_int(a as u64),
                bin_int(self.degree(c) as u64),
            ])
        }));
        self.bin1.insert(id, code.clone());
        code
    }

    /// Smallest `j` at which the truncations of `a` and `b` differ.
    pub fn first_difference(&mut self, a: ViewId, b: ViewId) -> Option<usize> {
        debug_assert_eq!(self.depth(a), self.depth(b));
        if a == b {
            return None;
        }
        let (mut lo, mut hi) = (0, self.depth(a));
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.truncate(a, mid) == self.truncate(b, mid) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    }

    /// The total order on views of equal depth.
    ///
    /// Views are compared at the shallowest depth where they differ: by
    /// degree at depth 0, by depth-1 code at depth 1 (a proper prefix is
    /// smaller), and deeper by recursing into the first port whose subviews
    /// differ. The order is stable under deepening: if the depth-`x`
    /// truncations compare one way, so do all deeper views.
    pub fn compare(&mut self, a: ViewId, b: ViewId) -> Result<Ordering, ViewError> {
        let (da, db) = (self.depth(a), self.depth(b));
        if da != db {
            return Err(ViewError::DepthMismatch(da, db));
        }
        Ok(match self.first_difference(a, b) {
            None => Ordering::Equal,
            Some(j) => {
                let (ta, tb) = (self.truncate(a, j), self.truncate(b, j));
                self.compare_at(ta, tb, j)
            }
        })
    }

    // `a`, `b` have depth `j`, differ, and agree at depth `j - 1`.
    fn compare_at(&mut self, a: ViewId, b: ViewId, j: usize) -> Ordering {
        match j {
            0 => self.degree(a).cmp(&self.degree(b)),
            1 => {
                let (ba, bb) = (self.bin_depth1(a), self.bin_depth1(b));
                ba.cmp(&bb)
            }
            _ => {
                let (ca, cb) = self
                    .children(a)
                    .zip(self.children(b))
                    .map(|((_, x), (_, y))| (x, y))
                    .find(|(x, y)| x != y)
                    .expect("views differ below the root");
                self.compare_at(ca, cb, j - 1)
            }
        }
    }

    /// Sorts ids ascending in view order and removes duplicates.
    pub fn sort_unique(&mut self, ids: &mut Vec<ViewId>) {
        ids.sort_unstable();
        ids.dedup();
        ids.sort_by(|&a, &b| self.compare(a, b).unwrap());
    }

    pub fn min_view(&mut self, ids: impl IntoIterator<Item = ViewId>) -> Option<ViewId> {
        let mut best: Option<ViewId> = None;
        for id in ids {
            best = match best {
                Some(b) if self.compare(b, id).unwrap() != Ordering::Greater => Some(b),
                _ => Some(id),
            };
        }
        best
    }

    /// Interns a materialized view; shared subtrees are visited once.
    pub fn intern(&mut self, view: &AugView) -> ViewId {
        let ptr = Arc::as_ptr(&view.0) as usize;
        if let Some(&id) = self.interned.get(&ptr) {
            return id;
        }
        let id = if view.0.children.is_empty() {
            self.leaf(view.0.degree)
        } else {
            let kids: Vec<(usize, ViewId)> = view
                .0
                .children
                .iter()
                .map(|(u, c)| (*u, self.intern(c)))
                .collect();
            self.node(&kids)
        };
        self.keepalive.push(view.clone());
        self.interned.insert(ptr, id);
        id
    }

    /// Builds the tree form of a stored view, sharing equal subtrees.
    pub fn materialize(&mut self, id: ViewId) -> AugView {
        if let Some(v) = self.materialized.get(&id) {
            return v.clone();
        }
        let kids: Vec<(usize, ViewId)> = self.children(id).collect();
        let children = kids
            .into_iter()
            .map(|(u, c)| (u, self.materialize(c)))
            .collect();
        let v = AugView(Arc::new(ViewNode {
            degree: self.degree(id),
            depth: self.depth(id),
            children,
        }));
        self.materialized.insert(id, v.clone());
        v
    }

    /// `ids[d][v]` is the depth-`d` view of node `v`, for `d` in `0..=depth`.
    pub fn graph_views(&mut self, g: &PortGraph, depth: usize) -> Vec<Vec<ViewId>> {
        let mut levels = Vec::with_capacity(depth + 1);
        levels.push(g.nodes().map(|v| self.leaf(g.degree(v))).collect::<Vec<_>>());
        for d in 0..depth {
            let next = g
                .nodes()
                .map(|v| {
                    let kids: Vec<(usize, ViewId)> = g
                        .ports(v)
                        .iter()
                        .map(|t| (t.port, levels[d][t.node]))
                        .collect();
                    self.node(&kids)
                })
                .collect();
            levels.push(next);
        }
        levels
    }
}
