//! Trie construction over sets of same-depth views.

use super::label::Labeler;
use super::{NestedList, OracleError, Trie};
use crate::views::{ViewArena, ViewId};

/// One `build_trie` call: the set size and the size of the returned trie.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrieRecord {
    pub depth: usize,
    pub set_size: usize,
    pub trie_size: usize,
    pub leaves: usize,
}

/// Port and subview on which the two order-smallest views of `set` first
/// differ one level down. All views must agree one level up.
pub fn discriminatory_index(arena: &mut ViewArena, set: &[ViewId]) -> Result<(usize, ViewId), OracleError> {
    if set.len() < 2 {
        return Err(OracleError::Internal("discriminatory index of fewer than two views".into()));
    }
    let mut sorted = set.to_vec();
    arena.sort_unique(&mut sorted);
    let (u, v) = (sorted[0], sorted[1]);
    let (port, a, b) = arena
        .children(u)
        .zip(arena.children(v))
        .enumerate()
        .find(|(_, ((_, a), (_, b)))| a != b)
        .map(|(p, ((_, a), (_, b)))| (p, a, b))
        .ok_or_else(|| OracleError::Internal("views agree on every port".into()))?;
    let disc = arena.min_view([a, b]).unwrap();
    Ok((port, disc))
}

/// Builds a trie separating the distinct views in `set`.
///
/// Without `e1` the views must have depth 1 and queries read their codes;
/// with it, queries compare labels of neighbor subviews.
pub fn build_trie(
    arena: &mut ViewArena,
    labeler: &mut Labeler,
    set: &[ViewId],
    e1: Option<&Trie>,
    e2: &NestedList,
    trace: &mut Vec<TrieRecord>,
) -> Result<Trie, OracleError> {
    let depth = set.first().map(|&b| arena.depth(b)).ok_or_else(|| OracleError::Internal("empty view set".into()))?;
    let trie = if set.len() == 1 {
        Trie::Leaf
    } else {
        let (query, left): ((u64, u64), Vec<ViewId>) = match e1 {
            None => {
                if depth != 1 {
                    return Err(OracleError::Internal(format!(
                        "code queries on depth-{depth} views"
                    )));
                }
                let codes: Vec<_> = set.iter().map(|&b| arena.bin_depth1(b)).collect();
                let max = codes.iter().map(|c| c.len()).max().unwrap();
                if codes.iter().any(|c| c.len() != max) {
                    let left = set
                        .iter()
                        .zip(&codes)
                        .filter(|(_, c)| c.len() < max)
                        .map(|(&b, _)| b)
                        .collect();
                    ((0, max as u64), left)
                } else {
                    let j = (0..max)
                        .find(|&i| codes.iter().any(|c| c.bits()[i] != codes[0].bits()[i]))
                        .ok_or_else(|| OracleError::Internal("duplicate views in set".into()))?;
                    let left = set
                        .iter()
                        .zip(&codes)
                        .filter(|(_, c)| !c.bits()[j])
                        .map(|(&b, _)| b)
                        .collect();
                    ((1, j as u64 + 1), left)
                }
            }
            Some(e1) => {
                let (port, disc) = discriminatory_index(arena, set)?;
                let left = set
                    .iter()
                    .copied()
                    .filter(|&b| arena.child(b, port).unwrap().1 != disc)
                    .collect();
                let label = labeler.retrieve(arena, disc, e1, e2)?;
                ((port as u64, label), left)
            }
        };
        let right: Vec<ViewId> = set.iter().copied().filter(|b| !left.contains(b)).collect();
        let l = build_trie(arena, labeler, &left, e1, e2, trace)?;
        let r = build_trie(arena, labeler, &right, e1, e2, trace)?;
        Trie::node(query, l, r)
    };
    trace.push(TrieRecord {
        depth,
        set_size: set.len(),
        trie_size: trie.size(),
        leaves: trie.leaves(),
    });
    Ok(trie)
}
