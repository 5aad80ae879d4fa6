//! Stretch a hairy ring and show that anchors far from the hub see the
//! same views as the ring node they copy.

use elect_advice::families::{
    certify_stretch, close_with_hub, gamma_stretch, gen_hairy_ring, stretch_radius, HairyRingSpec,
};
use elect_advice::views::{election_index, ViewArena};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = gen_hairy_ring(&HairyRingSpec {
        stars: vec![0, 2, 1, 4, 1],
    })?;
    let w = 2;
    let s = gamma_stretch(&h, w, 4)?;
    let (g, hub) = close_with_hub(&s.fragment, 5)?;
    certify_stretch(&h, w, &s, &g, hub)?;
    println!(
        "ring n={} phi={:?}; stretch n={} phi={:?}",
        h.graph.node_count(),
        election_index(&h.graph).value(),
        g.node_count(),
        election_index(&g).value()
    );

    let mut arena = ViewArena::new();
    let depth = 6;
    let ring_views = arena.graph_views(&h.graph, depth);
    let stretch_views = arena.graph_views(&g, depth);
    let target = h.ring[w];
    for &z in &s.anchors {
        let radius = stretch_radius(&g, hub, z);
        let same = (0..=depth).take_while(|&t| ring_views[t][target] == stretch_views[t][z]).last();
        println!("anchor {z:>3}: hub distance {radius:>2}, agrees with w up to depth {same:?}");
    }
    Ok(())
}
