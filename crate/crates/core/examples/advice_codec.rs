//! Take the advice string apart: envelope, tries and the labeled BFS tree.

use elect_advice::encoding::{bin_int, concat, decode, decode_advice, encode_trie};
use elect_advice::corpus::random_feasible;
use elect_advice::oracle::compute_advice;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let parts = [bin_int(1), bin_int(0)];
    let code = concat(&parts);
    println!("concat(1, 0) = {code}");
    println!("decode -> {:?}", decode(&code)?.iter().map(ToString::to_string).collect::<Vec<_>>());

    let (g, _) = random_feasible(3, 0, 10, 4);
    let a = compute_advice(&g)?;
    println!("n={} phi={} total bits={}", g.node_count(), a.phi, a.bits.len());
    println!("E1 trie: {} nodes, {} bits", a.e1.size(), encode_trie(&a.e1).len());
    for level in &a.e2.0 {
        let sizes: Vec<_> = level.tries.iter().map(|(label, t)| (*label, t.size())).collect();
        println!("E2 depth {}: (label, trie size) {sizes:?}", level.depth);
    }
    println!("BFS tree rooted at node {}, labels {:?}", a.root, a.labels);

    let back = decode_advice(&a.bits)?;
    assert_eq!(back.phi as usize, a.phi);
    assert_eq!(back.e1, a.e1);
    assert_eq!(back.e2, a.e2);
    println!("decoded envelope matches");
    Ok(())
}
