//! Write the seeded corpus to a directory and benchmark it to CSV.
//!
//! Usage: `cargo run --release --example bench_corpus [DIR]`

use std::path::PathBuf;

use elect_advice::cli::{bench, write_csv};
use elect_advice::corpus::{standard_corpus, write_corpus};
use elect_advice::sim::Variant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map_or_else(|| std::env::temp_dir().join("elect-advice-corpus"), PathBuf::from);
    std::fs::create_dir_all(&dir)?;
    let corpus = standard_corpus(2024);
    write_corpus(&dir, &corpus)?;
    println!("{} graphs in {}", corpus.len(), dir.display());

    let variants = [Variant::MinTime, Variant::DPhi, Variant::Election { i: 2, c: 2 }];
    let rows = bench(&dir, &variants)?;
    let csv = dir.join("bench.csv");
    write_csv(&csv, &rows)?;
    for v in variants {
        let mine: Vec<_> = rows.iter().filter(|r| r.variant == v).collect();
        let ok = mine.iter().filter(|r| r.verdict.is_ok()).count();
        let bits: usize = mine.iter().map(|r| r.advice_bits).sum();
        println!("{v}: {ok}/{} ok, mean advice {} bits", mine.len(), bits / mine.len().max(1));
    }
    println!("wrote {}", csv.display());
    Ok(())
}
