//! Certificates for the family properties, checked through the views module
//! rather than through the constructions.

use super::cliques::RingOfCliques;
use super::hairy::{HairyRing, Stretch};
use super::necklace::{Necklace, NecklaceSpec};
use super::FamilyError;
use crate::graph::PortGraph;
use crate::views::{election_index, is_feasible, ElectionIndex, ViewArena};

fn fail<T>(msg: String) -> Result<T, FamilyError> {
    Err(FamilyError::Certificate(msg))
}

pub fn certify_ring_cliques(r: &RingOfCliques) -> Result<(), FamilyError> {
    match election_index(&r.graph) {
        ElectionIndex::Feasible(1) => Ok(()),
        other => fail(format!("ring of cliques has election index {other:?}, expected 1")),
    }
}

/// Election index `phi`, and equal depth-`phi-1` views at the two leaves.
pub fn certify_necklace(spec: &NecklaceSpec, n: &Necklace) -> Result<(), FamilyError> {
    let idx = election_index(&n.graph);
    if idx != ElectionIndex::Feasible(spec.phi) {
        return fail(format!(
            "necklace has election index {idx:?}, expected {}",
            spec.phi
        ));
    }
    let mut arena = ViewArena::new();
    let levels = arena.graph_views(&n.graph, spec.phi - 1);
    let top = &levels[spec.phi - 1];
    if top[n.left_leaf] != top[n.right_leaf] {
        return fail(format!(
            "leaf views differ at depth {}",
            spec.phi - 1
        ));
    }
    Ok(())
}

pub fn certify_hairy_ring(h: &HairyRing) -> Result<(), FamilyError> {
    let g = &h.graph;
    let max = g.max_degree();
    let at_max = g.nodes().filter(|&v| g.degree(v) == max).count();
    if at_max != 1 {
        return fail(format!("{at_max} nodes share the maximum degree {max}"));
    }
    if !is_feasible(g) {
        return fail("hairy ring is not feasible".into());
    }
    Ok(())
}

/// Distance from `anchor` to the hub in the closed stretch `g`.
pub fn stretch_radius(g: &PortGraph, hub: usize, anchor: usize) -> usize {
    g.distances_from(hub)[anchor].expect("closed stretch is connected")
}

/// Each anchor of the closed stretch `g` has the same depth-`T` view as the
/// cut node `w` of `h`, for every `T` below the anchor's distance to the hub.
pub fn certify_stretch(
    h: &HairyRing,
    w: usize,
    s: &Stretch,
    g: &PortGraph,
    hub: usize,
) -> Result<(), FamilyError> {
    let radii: Vec<usize> = s.anchors.iter().map(|&a| stretch_radius(g, hub, a)).collect();
    let depth = radii.iter().copied().max().unwrap_or(1).saturating_sub(1);
    let mut arena = ViewArena::new();
    let hv = arena.graph_views(&h.graph, depth);
    let gv = arena.graph_views(g, depth);
    for (&a, &r) in s.anchors.iter().zip(&radii) {
        for t in 0..r {
            if gv[t][a] != hv[t][w] {
                return fail(format!(
                    "anchor {a} differs from the cut node at depth {t} (hub at distance {r})"
                ));
            }
        }
    }
    if !is_feasible(g) {
        return fail("closed stretch is not feasible".into());
    }
    Ok(())
}
