//! Seeded test corpora: random feasible graphs plus family samples.
//!
//! Random graphs come from a ChaCha8 stream keyed by `(seed, index)`: graph
//! `i` of a corpus uses `ChaCha8Rng::seed_from_u64(seed)` with stream `i`, so
//! any member can be regenerated on its own.

use std::fs;
use std::io;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::families::{FamilySpec, HairyRingSpec, NecklaceSpec};
use crate::graph::{GraphBuilder, PortGraph};
use crate::views::election_index;

/// Largest election index kept in generated corpora. Simulating the large
/// time variants costs rounds exponential in the index beyond this.
pub const MAX_CORPUS_PHI: usize = 4;

#[derive(Clone, Debug)]
pub struct CorpusGraph {
    pub name: String,
    pub graph: PortGraph,
    pub phi: usize,
    pub family: Option<FamilySpec>,
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A connected graph on `n` nodes: a random tree plus up to `n` extra
/// edges, with every node's ports shuffled.
pub fn random_graph(rng: &mut impl Rng, n: usize) -> PortGraph {
    assert!(n >= 2, "need at least two nodes");
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let e = (a.min(b), a.max(b));
        if a != b && !edges.contains(&e) {
            edges.push(e);
        }
    }
    let mut incident = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    let mut port_of = vec![[0usize; 2]; edges.len()];
    for (v, inc) in incident.iter_mut().enumerate() {
        inc.shuffle(rng);
        for (p, &e) in inc.iter().enumerate() {
            port_of[e][usize::from(edges[e].1 == v)] = p;
        }
    }
    let mut b = GraphBuilder::new(n);
    for (i, &(a, c)) in edges.iter().enumerate() {
        b.connect(a, port_of[i][0], c, port_of[i][1]).unwrap();
    }
    b.build().unwrap()
}

/// Graph `index` of the random corpus for `seed`: the first draw on its
/// stream that is feasible with election index at most `max_phi`.
pub fn random_feasible(seed: u64, index: u64, n: usize, max_phi: usize) -> (PortGraph, usize) {
    let mut rng = stream(seed, index);
    loop {
        let g = random_graph(&mut rng, n);
        if let Some(phi) = election_index(&g).value() {
            if phi <= max_phi {
                return (g, phi);
            }
        }
    }
}

/// `count` random feasible graphs with sizes cycling through `sizes`.
pub fn random_corpus(seed: u64, count: usize, sizes: &[usize]) -> Vec<CorpusGraph> {
    (0..count)
        .map(|i| {
            let n = sizes[i % sizes.len()];
            let (graph, phi) = random_feasible(seed, i as u64, n, MAX_CORPUS_PHI);
            CorpusGraph {
                name: format!("random-n{n:02}-{i:03}"),
                graph,
                phi,
                family: None,
            }
        })
        .collect()
}

/// Deterministic family samples, `per_family` of each.
pub fn family_specs(per_family: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    // rings of cliques: x = 3 allows k up to 8, x = 4 up to 81
    for i in 0..per_family {
        let (k, x) = if i % 2 == 0 { (3 + i % 6, 3) } else { (8, 4) };
        let mut perm: Vec<usize> = (2..=k).collect();
        perm.shuffle(&mut stream(0xC11, i as u64));
        out.push(FamilySpec::RingCliques { k, x, perm });
    }
    for i in 0..per_family {
        let phi = 2 + i % (MAX_CORPUS_PHI - 1);
        let (k, x) = [(4, 3), (6, 3), (4, 4), (6, 4)][(i / 3) % 4];
        let mut rng = stream(0xDEC, i as u64);
        let mut code: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=x)).collect();
        code[0] = 0;
        code[k - 1] = 0;
        out.push(FamilySpec::Necklace(NecklaceSpec { k, x, phi, code }));
    }
    for i in 0..per_family {
        let mut rng = stream(0x4A1, i as u64);
        let n = rng.gen_range(3..=9);
        let mut stars: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let top = rng.gen_range(0..n);
        stars[top] = 4 + i % 3;
        out.push(FamilySpec::HairyRing(HairyRingSpec { stars }));
    }
    out
}

pub fn family_corpus(per_family: usize) -> Vec<CorpusGraph> {
    let mut counters = std::collections::BTreeMap::new();
    family_specs(per_family)
        .into_iter()
        .map(|spec| {
            let graph = spec.generate_certified().expect("sample specs are valid");
            let phi = election_index(&graph).value().expect("family samples are feasible");
            let c = counters.entry(spec.name()).or_insert(0);
            *c += 1;
            CorpusGraph {
                name: format!("{}-{:03}", spec.name(), c),
                graph,
                phi,
                family: Some(spec),
            }
        })
        .collect()
}

/// Random graphs with `n <= 32` followed by the family samples.
pub fn standard_corpus(seed: u64) -> Vec<CorpusGraph> {
    let sizes: Vec<usize> = (3..=32).collect();
    let mut c = random_corpus(seed, 180, &sizes);
    c.extend(family_corpus(20));
    c
}

/// Writes each graph as `<name>.graph` (and `<name>.spec` for family
/// samples) into `dir`.
pub fn write_corpus(dir: &Path, corpus: &[CorpusGraph]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    for c in corpus {
        fs::write(dir.join(format!("{}.graph", c.name)), c.graph.to_text())?;
        if let Some(spec) = &c.family {
            fs::write(dir.join(format!("{}.spec", c.name)), spec.to_string())?;
        }
    }
    Ok(())
}
