//! Query tries and the nested list of per-depth tries.

/// A binary query tree. At an internal node the left child answers "no"
/// (port 0 at the parent) and the right child answers "yes" (port 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Trie {
    Leaf,
    Node {
        query: (u64, u64),
        left: Box<Trie>,
        right: Box<Trie>,
    },
}

impl Trie {
    pub fn node(query: (u64, u64), left: Trie, right: Trie) -> Self {
        Trie::Node {
            query,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Trie::Leaf)
    }

    /// Total node count.
    pub fn size(&self) -> usize {
        match self {
            Trie::Leaf => 1,
            Trie::Node { left, right, .. } => 1 + left.size() + right.size(),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            Trie::Leaf => 1,
            Trie::Node { left, right, .. } => left.leaves() + right.leaves(),
        }
    }

    /// Queries in preorder.
    pub fn queries(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        self.collect_queries(&mut out);
        out
    }

    fn collect_queries(&self, out: &mut Vec<(u64, u64)>) {
        if let Trie::Node { query, left, right } = self {
            out.push(*query);
            left.collect_queries(out);
            right.collect_queries(out);
        }
    }
}

/// Tries for one depth, keyed by the label of the shallower class they split.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DepthTries {
    pub depth: u64,
    pub tries: Vec<(u64, Trie)>,
}

impl DepthTries {
    pub fn get(&self, label: u64) -> Option<&Trie> {
        self.tries.iter().find(|(j, _)| *j == label).map(|(_, t)| t)
    }
}

/// The list `E2`: one entry per depth from 2 upward.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NestedList(pub Vec<DepthTries>);

impl NestedList {
    pub fn depth(&self, d: u64) -> Option<&DepthTries> {
        self.0.iter().find(|e| e.depth == d)
    }

    pub fn trie_count(&self) -> usize {
        self.0.iter().map(|e| e.tries.len()).sum()
    }

    /// Sum of trie sizes over every entry.
    pub fn total_trie_size(&self) -> usize {
        self.0
            .iter()
            .flat_map(|e| e.tries.iter())
            .map(|(_, t)| t.size())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let t = Trie::node((0, 3), Trie::Leaf, Trie::node((1, 2), Trie::Leaf, Trie::Leaf));
        assert_eq!(t.size(), 5);
        assert_eq!(t.leaves(), 3);
        assert_eq!(t.queries(), vec![(0, 3), (1, 2)]);
    }
}
