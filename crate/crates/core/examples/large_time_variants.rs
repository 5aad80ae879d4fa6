//! Compare the four large-time election variants against their time bounds.

use elect_advice::cli::run_variant;
use elect_advice::corpus::random_feasible;
use elect_advice::sim::Variant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for index in 0..4 {
        let (g, phi) = random_feasible(7, index, 12, 3);
        println!("graph {index}: n={} D={} phi={phi}", g.node_count(), g.diameter());
        let mut variants = vec![Variant::MinTime, Variant::DPhi, Variant::Generic(phi as u64)];
        for c in [2, 3] {
            variants.extend((1..=4).map(|i| Variant::Election { i, c }));
        }
        for v in variants {
            let (report, _) = run_variant(&format!("g{index}"), &g, v)?;
            println!(
                "  {:<16} rounds={:<3} advice_bits={:<5} {}",
                v.to_string(),
                report.rounds,
                report.advice_bits,
                report.verdict
            );
        }
    }
    Ok(())
}
