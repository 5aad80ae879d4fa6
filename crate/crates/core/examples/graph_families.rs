//! Build one member of each lower-bound family and report its parameters.

use elect_advice::families::FamilySpec;
use elect_advice::views::election_index;

const SPECS: &[&str] = &[
    "family=clique x=3 t=5",
    "family=ring-cliques k=5 x=3 perm=4,2,5,3",
    "family=necklace k=4 x=3 phi=3 code=0,2,1,0",
    "family=hairy-ring stars=1,0,3,0,2",
    "family=stretch stars=1,0,3,0,2 w=1 gamma=3",
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in SPECS {
        let spec: FamilySpec = text.parse()?;
        let g = spec.generate_certified()?;
        let phi = election_index(&g).value().map_or("-".to_string(), |p| p.to_string());
        println!(
            "{:<13} n={:<4} D={:<3} max_deg={:<2} phi={phi}",
            spec.name(),
            g.node_count(),
            g.diameter(),
            g.max_degree()
        );
    }
    Ok(())
}
