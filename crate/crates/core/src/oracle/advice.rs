//! The oracle: advice for election in minimum time.

use super::build::{build_trie, TrieRecord};
use super::label::Labeler;
use super::{DepthTries, NestedList, OracleError, Trie};
use crate::encoding::{encode_advice, BitString, PortTree};
use crate::graph::{BfsTree, PortGraph};
use crate::views::{election_index, ViewArena, ViewId};

/// Advice for one graph together with the oracle-side facts behind it.
#[derive(Clone, Debug)]
pub struct Advice {
    pub phi: usize,
    pub e1: Trie,
    pub e2: NestedList,
    /// Label of every node's depth-`phi` view.
    pub labels: Vec<u64>,
    /// The node labeled 1.
    pub root: usize,
    pub bfs: BfsTree,
    pub tree: PortTree<u64>,
    pub bits: BitString,
    /// Every `build_trie` call, in completion order.
    pub trace: Vec<TrieRecord>,
}

pub fn compute_advice(g: &PortGraph) -> Result<Advice, OracleError> {
    let phi = election_index(g).value().ok_or(OracleError::Infeasible)?;
    let mut arena = ViewArena::new();
    let views = arena.graph_views(g, phi);
    let mut labeler = Labeler::new();
    let mut trace = Vec::new();

    let mut s1 = views[1].clone();
    arena.sort_unique(&mut s1);
    let e1 = build_trie(&mut arena, &mut labeler, &s1, None, &NestedList::default(), &mut trace)?;

    let mut e2 = NestedList::default();
    for i in 2..=phi {
        let mut shallow: Vec<ViewId> = views[i - 1].clone();
        arena.sort_unique(&mut shallow);
        let mut tries = Vec::new();
        for b in shallow {
            let mut deeper: Vec<ViewId> = g
                .nodes()
                .filter(|&u| views[i - 1][u] == b)
                .map(|u| views[i][u])
                .collect();
            arena.sort_unique(&mut deeper);
            if deeper.len() > 1 {
                let j = labeler.retrieve(&mut arena, b, &e1, &e2)?;
                let t = build_trie(&mut arena, &mut labeler, &deeper, Some(&e1), &e2, &mut trace)?;
                tries.push((j, t));
            }
        }
        e2.0.push(DepthTries {
            depth: i as u64,
            tries,
        });
    }

    let labels = g
        .nodes()
        .map(|u| labeler.retrieve(&mut arena, views[phi][u], &e1, &e2))
        .collect::<Result<Vec<_>, _>>()?;
    let root = labels
        .iter()
        .position(|&l| l == 1)
        .ok_or_else(|| OracleError::Internal("no view labeled 1".into()))?;
    let bfs = g.canonical_bfs_tree(root, &labels);
    let (tree, _) = PortTree::from_bfs(&bfs);
    let bits = encode_advice(phi as u64, &e1, &e2, &tree);
    Ok(Advice {
        phi,
        e1,
        e2,
        labels,
        root,
        bfs,
        tree,
        bits,
        trace,
    })
}
