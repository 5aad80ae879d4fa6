//! Partition refinement by view equality, and the election index.

use std::collections::BTreeMap;

use crate::encoding::BitString;
use crate::graph::PortGraph;

/// Classes of nodes with equal depth-`depth` views.
///
/// Class ids are ranks in view order: class 0 holds the smallest view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViewPartition {
    pub depth: usize,
    pub class_of: Vec<usize>,
    pub class_count: usize,
}

impl ViewPartition {
    /// Members of each class, by class id.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count];
        for (v, &c) in self.class_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

fn ranked<K: Ord + Clone>(keys: Vec<K>, depth: usize) -> ViewPartition {
    let mut ranks: BTreeMap<K, usize> = keys.iter().cloned().map(|k| (k, 0)).collect();
    for (i, r) in ranks.values_mut().enumerate() {
        *r = i;
    }
    ViewPartition {
        depth,
        class_of: keys.iter().map(|k| ranks[k]).collect(),
        class_count: ranks.len(),
    }
}

fn depth1_code(g: &PortGraph, v: usize) -> BitString {
    use crate::encoding::{bin_int, concat};
    concat(g.ports(v).iter().enumerate().map(|(j, t)| {
        concat([
            bin_int(j as u64),
            bin_int(t.port as u64),
            bin_int(g.degree(t.node) as u64),
        ])
    }))
}

/// Partitions at depths 0, 1, 2, ... up to the first depth whose class count
/// repeats the previous one; from there on the partition never changes.
pub fn refine(g: &PortGraph) -> Vec<ViewPartition> {
    let mut out = vec![ranked(g.nodes().map(|v| g.degree(v)).collect(), 0)];
    let p1 = ranked(
        g.nodes()
            .map(|v| (out[0].class_of[v], depth1_code(g, v)))
            .collect(),
        1,
    );
    let mut stable = p1.class_count == out[0].class_count;
    out.push(p1);
    while !stable {
        let prev = out.last().unwrap();
        // the port pairs are already part of the depth-1 class
        let next = ranked(
            g.nodes()
                .map(|v| {
                    let nbrs: Vec<usize> = g.ports(v).iter().map(|t| prev.class_of[t.node]).collect();
                    (prev.class_of[v], nbrs)
                })
                .collect(),
            prev.depth + 1,
        );
        stable = next.class_count == prev.class_count;
        out.push(next);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElectionIndex {
    Feasible(usize),
    Infeasible,
}

impl ElectionIndex {
    pub fn value(self) -> Option<usize> {
        match self {
            ElectionIndex::Feasible(phi) => Some(phi),
            ElectionIndex::Infeasible => None,
        }
    }
}

/// Smallest depth at which all views are distinct.
pub fn election_index(g: &PortGraph) -> ElectionIndex {
    let n = g.node_count();
    refine(g)
        .iter()
        .find(|p| p.class_count == n)
        .map_or(ElectionIndex::Infeasible, |p| ElectionIndex::Feasible(p.depth))
}

pub fn is_feasible(g: &PortGraph) -> bool {
    election_index(g) != ElectionIndex::Infeasible
}
