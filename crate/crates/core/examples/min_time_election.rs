//! Compute advice for a small graph and elect a leader in exactly φ rounds.

use elect_advice::encoding::{read_advice_file, write_advice_file, AdviceFormat};
use elect_advice::graph::PortGraph;
use elect_advice::oracle::compute_advice;
use elect_advice::sim::{run_elect, verify_outcome};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a 5-node path with a chord
    let g: PortGraph = "n 5\ne 0 0 1 0\ne 1 1 2 0\ne 2 1 3 0\ne 3 1 4 0\ne 1 2 3 2\n".parse()?;
    let advice = compute_advice(&g)?;
    println!("phi={} root={} advice_bits={}", advice.phi, advice.root, advice.bits.len());

    let file = write_advice_file(&advice.bits, AdviceFormat::Hex);
    print!("{file}");
    let bits = read_advice_file(&file)?;

    let outcome = run_elect(&g, &bits);
    let leader = verify_outcome(&g, &outcome)?;
    println!("rounds={} leader={leader}", outcome.rounds);
    for (v, r) in outcome.nodes.iter().enumerate() {
        println!("  node {v}: {:?}", r.output);
    }
    Ok(())
}
