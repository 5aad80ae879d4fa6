//! Labels of views computed from the tries in advice.

use std::collections::HashMap;

use super::{NestedList, OracleError, Trie};
use crate::views::{ViewArena, ViewId};

/// Walks `trie` for the view `b` whose children carry labels `x`.
///
/// With `x` empty the queries read the depth-1 code of `b`: `(0, y)` goes
/// left iff the code is shorter than `y`, `(1, y)` goes left iff its `y`-th
/// bit (counting from 1) is 0. Otherwise `(i, y)` goes left iff `x[i] != y`.
/// Returns one plus the number of leaves left of the reached leaf.
pub fn local_label(arena: &mut ViewArena, b: ViewId, x: &[u64], trie: &Trie) -> Result<u64, OracleError> {
    let code = if x.is_empty() && !trie.is_leaf() {
        if arena.depth(b) == 0 {
            return Err(OracleError::DepthZero);
        }
        Some(arena.bin_depth1(b))
    } else {
        None
    };
    let mut offset = 0u64;
    let mut t = trie;
    while let Trie::Node { query, left, right } = t {
        let (qx, qy) = *query;
        let go_left = match (&code, qx) {
            (Some(code), 0) => (code.len() as u64) < qy,
            (Some(code), 1) => {
                let bit = (qy as usize)
                    .checked_sub(1)
                    .and_then(|i| code.bits().get(i))
                    .ok_or(OracleError::QueryOutOfRange { query: *query, len: code.len() })?;
                !*bit
            }
            (Some(_), _) => return Err(OracleError::BadQuery(*query)),
            (None, i) => {
                let term = x
                    .get(i as usize)
                    .ok_or(OracleError::QueryOutOfRange { query: *query, len: x.len() })?;
                *term != qy
            }
        };
        if go_left {
            t = left;
        } else {
            offset += left.leaves() as u64;
            t = right;
        }
    }
    Ok(offset + 1)
}

/// Memoized label retrieval; labels are functions of views, so the cache is
/// keyed by view id and stays valid while deeper entries are added to `E2`.
#[derive(Default)]
pub struct Labeler {
    memo: HashMap<ViewId, u64>,
}

impl Labeler {
    pub fn new() -> Self {
        Self::default()
    }

    /// The label of view `b` (depth at least 1) under tries `e1` and `e2`.
    pub fn retrieve(
        &mut self,
        arena: &mut ViewArena,
        b: ViewId,
        e1: &Trie,
        e2: &NestedList,
    ) -> Result<u64, OracleError> {
        if let Some(&l) = self.memo.get(&b) {
            return Ok(l);
        }
        let d = arena.depth(b);
        let label = match d {
            0 => return Err(OracleError::DepthZero),
            1 => local_label(arena, b, &[], e1)?,
            _ => {
                let kids: Vec<ViewId> = arena.children(b).map(|(_, c)| c).collect();
                let x = kids
                    .into_iter()
                    .map(|c| self.retrieve(arena, c, e1, e2))
                    .collect::<Result<Vec<_>, _>>()?;
                let shallow = arena.truncate(b, d - 1);
                let label = self.retrieve(arena, shallow, e1, e2)?;
                let list = e2.depth(d as u64).ok_or(OracleError::MissingDepth(d))?;
                // each class below `label` contributes its leaf count, or 1 if it does not split
                let mut sum = label - 1;
                for (i, t) in &list.tries {
                    if *i < label {
                        sum += t.leaves() as u64 - 1;
                    }
                }
                sum + match list.get(label) {
                    Some(t) => local_label(arena, b, &x, t)?,
                    None => 1,
                }
            }
        };
        self.memo.insert(b, label);
        Ok(label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PortGraph;

    #[test]
    fn single_leaf_gives_one() {
        let g = PortGraph::from_edges(3, &[(1, 0, 0, 0), (1, 1, 2, 0)]).unwrap();
        let mut a = ViewArena::new();
        let ids = a.graph_views(&g, 1);
        assert_eq!(local_label(&mut a, ids[1][0], &[], &Trie::Leaf), Ok(1));
    }

    #[test]
    fn length_query_goes_left_for_short_codes() {
        let g = PortGraph::from_edges(3, &[(1, 0, 0, 0), (1, 1, 2, 0)]).unwrap();
        let mut a = ViewArena::new();
        let ids = a.graph_views(&g, 1);
        let (short, long) = (a.bin_depth1(ids[1][0]), a.bin_depth1(ids[1][1]));
        assert!(short.len() < long.len());
        let t = Trie::node((0, long.len() as u64), Trie::Leaf, Trie::Leaf);
        assert_eq!(local_label(&mut a, ids[1][0], &[], &t), Ok(1));
        assert_eq!(local_label(&mut a, ids[1][1], &[], &t), Ok(2));
    }

    #[test]
    fn label_queries_index_children() {
        let mut a = ViewArena::new();
        let leaf = a.leaf(1);
        let t = Trie::node((1, 4), Trie::Leaf, Trie::Leaf);
        assert_eq!(local_label(&mut a, leaf, &[7, 4], &t), Ok(2));
        assert_eq!(local_label(&mut a, leaf, &[7, 5], &t), Ok(1));
        assert!(matches!(
            local_label(&mut a, leaf, &[7], &t),
            Err(OracleError::QueryOutOfRange { .. })
        ));
    }
}
