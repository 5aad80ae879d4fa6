//! Hairy rings, their cuts, and stretches.

use super::FamilyError;
use crate::graph::{GraphBuilder, PortGraph};

// Ring edges: port 1 leads clockwise to the next ring node, port 0 back to
// the previous one. A cut at w_1 then frees port 0 at w_1 and port 1 at w_n,
// which are exactly the ports a stretch joins on.
const NEXT: usize = 1;
const PREV: usize = 0;

/// Ring size is `stars.len()`; ring node `i` gets a star with `stars[i]` leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HairyRingSpec {
    pub stars: Vec<usize>,
}

impl HairyRingSpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        if self.stars.len() < 3 {
            return Err(FamilyError::Param(format!(
                "ring size must be at least 3, got {}",
                self.stars.len()
            )));
        }
        let max = *self.stars.iter().max().unwrap();
        if self.stars.iter().filter(|&&s| s == max).count() != 1 {
            return Err(FamilyError::Param("the largest star must be unique".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct HairyRing {
    pub graph: PortGraph,
    /// Ring nodes in clockwise order.
    pub ring: Vec<usize>,
}

fn ring_fragment(stars: &[usize]) -> (GraphBuilder, Vec<usize>) {
    let n = stars.len();
    let mut b = GraphBuilder::new(n);
    for (i, &k) in stars.iter().enumerate() {
        for j in 0..k {
            let leaf = b.add_node();
            b.connect(i, 2 + j, leaf, 0).unwrap();
        }
    }
    (b, (0..n).collect())
}

pub fn gen_hairy_ring(spec: &HairyRingSpec) -> Result<HairyRing, FamilyError> {
    spec.validate()?;
    let (mut b, ring) = ring_fragment(&spec.stars);
    let n = ring.len();
    for i in 0..n {
        b.connect(ring[i], NEXT, ring[(i + 1) % n], PREV)?;
    }
    Ok(HairyRing {
        graph: b.build()?,
        ring,
    })
}

/// A graph piece with two open ring ports: port 0 at `first`, port 1 at `last`.
#[derive(Clone, Debug)]
pub struct Fragment {
    pub builder: GraphBuilder,
    pub first: usize,
    pub last: usize,
}

/// Removes the ring edge between `w` and its counter-clockwise neighbor.
pub fn cut(h: &HairyRing, w: usize) -> Result<Fragment, FamilyError> {
    let pos = h
        .ring
        .iter()
        .position(|&r| r == w)
        .ok_or_else(|| FamilyError::Param(format!("node {w} is not on the ring")))?;
    let n = h.ring.len();
    let last = h.ring[(pos + n - 1) % n];
    let mut builder = GraphBuilder::from(&h.graph);
    builder.disconnect(w, PREV);
    Ok(Fragment {
        builder,
        first: w,
        last,
    })
}

#[derive(Clone, Debug)]
pub struct Stretch {
    pub fragment: Fragment,
    /// First node of each copy of the cut.
    pub anchors: Vec<usize>,
    pub copy_size: usize,
}

/// `gamma` copies of the cut at `w`, copy `i`'s first node joined by port 0
/// to copy `i-1`'s last node at port 1.
pub fn gamma_stretch(h: &HairyRing, w: usize, gamma: usize) -> Result<Stretch, FamilyError> {
    if gamma < 2 {
        return Err(FamilyError::Param(format!("gamma must be at least 2, got {gamma}")));
    }
    let c = cut(h, w)?;
    let mut b = GraphBuilder::new(0);
    let mut anchors = Vec::with_capacity(gamma);
    let mut prev_last = None;
    for _ in 0..gamma {
        let off = b.append(&c.builder);
        anchors.push(c.first + off);
        if let Some(pl) = prev_last {
            b.connect(c.first + off, PREV, pl, NEXT)?;
        }
        prev_last = Some(c.last + off);
    }
    Ok(Stretch {
        fragment: Fragment {
            builder: b,
            first: anchors[0],
            last: prev_last.unwrap(),
        },
        anchors,
        copy_size: c.builder.node_count(),
    })
}

/// Closes a fragment into a hairy ring with a new hub of `leaves` leaves
/// joined to both open ends. The hub must be the unique node of maximum degree.
pub fn close_with_hub(f: &Fragment, leaves: usize) -> Result<(PortGraph, usize), FamilyError> {
    let mut b = f.builder.clone();
    let hub = b.add_node();
    b.connect(hub, 0, f.last, NEXT)?;
    b.connect(hub, 1, f.first, PREV)?;
    for j in 0..leaves {
        let leaf = b.add_node();
        b.connect(hub, 2 + j, leaf, 0)?;
    }
    let g = b.build()?;
    let others = g.nodes().filter(|&v| v != hub).map(|v| g.degree(v)).max().unwrap_or(0);
    if g.degree(hub) <= others {
        return Err(FamilyError::Param(format!(
            "hub degree {} is not the unique maximum (another node has degree {others})",
            g.degree(hub)
        )));
    }
    Ok((g, hub))
}
