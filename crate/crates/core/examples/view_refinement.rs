//! Watch view classes split depth by depth until every node is distinguished.

use elect_advice::families::clique;
use elect_advice::views::{aug_view, compare_views, election_index, refine};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = clique(4, 3)?;
    for p in refine(&g) {
        println!("depth {}: {} classes {:?}", p.depth, p.class_count, p.classes());
    }
    match election_index(&g).value() {
        Some(phi) => {
            let views: Vec<_> = g.nodes().map(|v| aug_view(&g, v, phi)).collect();
            let mut order: Vec<usize> = g.nodes().collect();
            order.sort_by(|&a, &b| compare_views(&views[a], &views[b]).unwrap());
            println!("phi={phi}, nodes by view order: {order:?}");
            println!("depth-{phi} view of node {} has {} nodes", order[0], views[order[0]].tree_size());
        }
        None => println!("infeasible"),
    }
    Ok(())
}
