//! Node-side election algorithms.

use std::collections::HashSet;

use super::budget::parameter;
use super::harness::{NodeKnowledge, NodeProgram, Step};
use crate::encoding::{bin_int, concat, decode_advice, decode_exact, parse_int, BitString, DecodedAdvice};
use crate::oracle::Labeler;
use crate::views::{ViewArena, ViewId};

/// Distinct tree nodes of a view, layer by layer: each entry is a subview
/// with the lexicographically smallest port sequence leading to it.
/// Entries in a layer are sorted by that sequence.
fn layers(arena: &ViewArena, root: ViewId, last: usize) -> Vec<Vec<(ViewId, Vec<usize>)>> {
    let mut out = vec![vec![(root, Vec::new())]];
    for _ in 0..last {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (id, seq) in out.last().unwrap() {
            for (p, (q, c)) in arena.children(*id).enumerate() {
                if seen.insert(c) {
                    let mut s = seq.clone();
                    s.extend([p, q]);
                    next.push((c, s));
                }
            }
        }
        out.push(next);
    }
    out
}

/// Port sequence to the closest tree node whose depth-`x` view is smallest
/// among the given layers, ties broken by the smaller sequence.
fn path_to_min(arena: &mut ViewArena, layers: &[Vec<(ViewId, Vec<usize>)>], x: usize) -> Vec<usize> {
    let candidates: Vec<ViewId> = layers
        .iter()
        .flatten()
        .map(|(id, _)| arena.truncate(*id, x))
        .collect();
    let min = arena.min_view(candidates).expect("the root is always a candidate");
    for layer in layers {
        for (id, seq) in layer {
            if arena.truncate(*id, x) == min {
                return seq.clone();
            }
        }
    }
    unreachable!("minimum comes from the layers")
}

/// Minimum-time election from the oracle's advice.
#[derive(Default)]
pub struct Elect {
    advice: Option<DecodedAdvice>,
}

impl Elect {
    pub fn new() -> Self {
        Self::default()
    }
}

impl NodeProgram for Elect {
    fn step(&mut self, k: &NodeKnowledge) -> Step {
        if self.advice.is_none() {
            match decode_advice(&k.advice) {
                Ok(a) if a.phi >= 1 => self.advice = Some(a),
                Ok(_) => return Step::Fail("advice carries election index 0".into()),
                Err(e) => return Step::Fail(format!("cannot decode advice: {e}")),
            }
        }
        let adv = self.advice.as_ref().unwrap();
        if (k.round as u64) < adv.phi {
            return Step::Continue;
        }
        let mut arena = ViewArena::new();
        let me = arena.intern(&k.view);
        let label = match Labeler::new().retrieve(&mut arena, me, &adv.e1, &adv.e2) {
            Ok(l) => l,
            Err(e) => return Step::Fail(format!("label retrieval failed: {e}")),
        };
        match adv.tree.nodes().iter().position(|n| n.label == label) {
            Some(i) => Step::Output(adv.tree.path_to_root(i)),
            None => Step::Fail(format!("label {label} is not in the advice tree")),
        }
    }
}

/// Election with a known upper bound `x` on the election index.
pub struct Generic {
    x: Option<u64>,
    source: XSource,
    arena: ViewArena,
}

enum XSource {
    Fixed,
    Variant(u8),
}

impl Generic {
    pub fn new(x: u64) -> Self {
        Generic {
            x: Some(x),
            source: XSource::Fixed,
            arena: ViewArena::new(),
        }
    }

    /// Reads `P_i` for variant `i` from advice `bin(value)`.
    pub fn from_advice(variant: u8) -> Self {
        Generic {
            x: None,
            source: XSource::Variant(variant),
            arena: ViewArena::new(),
        }
    }
}

impl NodeProgram for Generic {
    fn step(&mut self, k: &NodeKnowledge) -> Step {
        if self.x.is_none() {
            let XSource::Variant(i) = self.source else { unreachable!() };
            let p = parse_int(&k.advice)
                .map_err(|e| e.to_string())
                .and_then(|v| parameter(i, v).map_err(|e| e.to_string()));
            match p {
                Ok(p) => self.x = Some(p),
                Err(e) => return Step::Fail(format!("bad advice: {e}")),
            }
        }
        let x = self.x.unwrap() as usize;
        if x == 0 {
            return Step::Fail("parameter x must be positive".into());
        }
        // after exchange round r the node holds depth r+1; the loop starts at r = x
        let t = k.round;
        if t < x + 1 {
            return Step::Continue;
        }
        let root = self.arena.intern(&k.view);
        let ls = layers(&self.arena, root, t - x);
        let seen: HashSet<ViewId> = ls[..t - x]
            .iter()
            .flatten()
            .map(|(id, _)| self.arena.truncate(*id, x))
            .collect();
        let fresh = ls[t - x]
            .iter()
            .any(|(id, _)| !seen.contains(&self.arena.truncate(*id, x)));
        if fresh {
            return Step::Continue;
        }
        Step::Output(path_to_min(&mut self.arena, &ls[..t - x], x))
    }
}

/// Advice `Concat(bin D, bin φ)` for [`DPlusPhi`].
pub fn dphi_advice(diameter: u64, phi: u64) -> BitString {
    concat([bin_int(diameter), bin_int(phi)])
}

/// Election in exactly `D + φ` rounds with `D` and `φ` as advice.
#[derive(Default)]
pub struct DPlusPhi {
    params: Option<(usize, usize)>,
}

impl DPlusPhi {
    pub fn new() -> Self {
        Self::default()
    }
}

impl NodeProgram for DPlusPhi {
    fn step(&mut self, k: &NodeKnowledge) -> Step {
        if self.params.is_none() {
            let parsed = decode_exact(&k.advice, 2, "advice")
                .and_then(|p| Ok((parse_int(&p[0])?, parse_int(&p[1])?)));
            match parsed {
                Ok((d, phi)) if phi >= 1 => self.params = Some((d as usize, phi as usize)),
                Ok(_) => return Step::Fail("advice carries election index 0".into()),
                Err(e) => return Step::Fail(format!("bad advice: {e}")),
            }
        }
        let (d, phi) = self.params.unwrap();
        if k.round < d + phi {
            return Step::Continue;
        }
        let mut arena = ViewArena::new();
        let root = arena.intern(&k.view);
        let ls = layers(&arena, root, d);
        Step::Output(path_to_min(&mut arena, &ls, phi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PortGraph;

    #[test]
    fn layers_use_smallest_sequences() {
        let g = PortGraph::from_edges(3, &[(1, 0, 0, 0), (1, 1, 2, 0)]).unwrap();
        let mut arena = ViewArena::new();
        let ids = arena.graph_views(&g, 3);
        let ls = layers(&arena, ids[3][1], 2);
        assert_eq!(ls[1].len(), 2);
        assert_eq!(ls[1][0].1, vec![0, 0]);
        assert_eq!(ls[1][1].1, vec![1, 0]);
        // both endpoints lead back to the middle; one entry with the smaller path
        assert_eq!(ls[2].len(), 1);
        assert_eq!(ls[2][0].1, vec![0, 0, 0, 0]);
    }
}
