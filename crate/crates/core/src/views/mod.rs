//! Augmented truncated views, their order, and view-based graph invariants.

mod arena;
mod refine;

pub use arena::{ViewArena, ViewId};
pub use refine::{election_index, is_feasible, refine, ElectionIndex, ViewPartition};

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::encoding::BitString;
use crate::graph::PortGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ViewError {
    #[error("depth mismatch: {0} vs {1}")]
    DepthMismatch(usize, usize),
    #[error("expected a view of depth {expected}, found depth {found}")]
    WrongDepth { expected: usize, found: usize },
    #[error("depth overflow: a depth-{x} subview at depth {at} of a depth-{depth} view")]
    DepthOverflow { depth: usize, at: usize, x: usize },
    #[error("bad port {port} at step {step} of a view path")]
    BadPort { step: usize, port: usize },
}

#[derive(PartialEq, Eq)]
pub(crate) struct ViewNode {
    pub(crate) degree: usize,
    pub(crate) depth: usize,
    /// `(up port, subview)` indexed by down port; empty at depth 0.
    pub(crate) children: Vec<(usize, AugView)>,
}

/// An augmented truncated view as a node holds it: a rooted tree with port
/// pairs on edges and degrees at the frontier.
///
/// Subtrees are reference-counted, so views produced by message exchange
/// share structure and stay polynomial in size even when the tree is not.
#[derive(Clone, PartialEq, Eq)]
pub struct AugView(pub(crate) Arc<ViewNode>);

impl AugView {
    pub fn leaf(degree: usize) -> Self {
        AugView(Arc::new(ViewNode {
            degree,
            depth: 0,
            children: Vec::new(),
        }))
    }

    /// A view one level deeper than the given subviews, one per port.
    pub fn from_children(children: Vec<(usize, AugView)>) -> Self {
        assert!(!children.is_empty());
        let depth = children[0].1.depth() + 1;
        assert!(children.iter().all(|(_, c)| c.depth() + 1 == depth));
        AugView(Arc::new(ViewNode {
            degree: children.len(),
            depth,
            children,
        }))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// `(up port, subview)` behind `port`.
    pub fn child(&self, port: usize) -> Option<(usize, &AugView)> {
        self.0.children.get(port).map(|(u, c)| (*u, c))
    }

    pub fn children(&self) -> &[(usize, AugView)] {
        &self.0.children
    }

    /// Node count of the tree this view represents (not of its shared form).
    pub fn tree_size(&self) -> u128 {
        1 + self
            .0
            .children
            .iter()
            .map(|(_, c)| c.tree_size())
            .sum::<u128>()
    }
}

impl fmt::Debug for AugView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.depth() == 0 {
            return write!(f, "[{}]", self.degree());
        }
        write!(f, "[{}:", self.degree())?;
        for (p, (u, c)) in self.children().iter().enumerate() {
            write!(f, " {p}/{u}->{c:?}")?;
        }
        f.write_str("]")
    }
}

/// The depth-`l` view of `v`.
pub fn aug_view(g: &PortGraph, v: usize, l: usize) -> AugView {
    aug_views_all(g, l).swap_remove(v)
}

/// Depth-`l` views of all nodes, built level by level with shared subtrees.
pub fn aug_views_all(g: &PortGraph, l: usize) -> Vec<AugView> {
    let mut level: Vec<AugView> = g.nodes().map(|v| AugView::leaf(g.degree(v))).collect();
    for _ in 0..l {
        level = g
            .nodes()
            .map(|v| {
                AugView::from_children(
                    g.ports(v)
                        .iter()
                        .map(|t| (t.port, level[t.node].clone()))
                        .collect(),
                )
            })
            .collect();
    }
    level
}

/// The depth-`x` view of the tree node at the end of down-port path `ports`.
pub fn extract_subview(b: &AugView, ports: &[usize], x: usize) -> Result<AugView, ViewError> {
    let mut arena = ViewArena::new();
    let id = arena.intern(b);
    let sub = arena.subview(id, ports, x)?;
    Ok(arena.materialize(sub))
}

/// The depth-1 code `Concat(Concat(bin 0, bin a_0, bin b_0), ...)`.
pub fn bin_depth1(b: &AugView) -> Result<BitString, ViewError> {
    if b.depth() != 1 {
        return Err(ViewError::WrongDepth {
            expected: 1,
            found: b.depth(),
        });
    }
    let mut arena = ViewArena::new();
    let id = arena.intern(b);
    Ok(arena.bin_depth1(id))
}

/// The view order on equal-depth views; see [`ViewArena::compare`].
pub fn compare_views(a: &AugView, b: &AugView) -> Result<Ordering, ViewError> {
    let mut arena = ViewArena::new();
    let (x, y) = (arena.intern(a), arena.intern(b));
    arena.compare(x, y)
}
