//! Synchronous simulation of anonymous election algorithms.

mod budget;
mod harness;
mod programs;
mod verify;

pub use budget::{
    advice_value, floor_log2, floor_log_log, log_star, parameter, tower, BudgetError, TimeBudget,
    Variant,
};
pub use harness::{
    com_round, run, ElectionOutcome, NodeKnowledge, NodeProgram, NodeResult, Step,
    DEFAULT_ROUND_LIMIT,
};
pub use programs::{dphi_advice, DPlusPhi, Elect, Generic};
pub use verify::{verify_outcome, VerifyError};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::encoding::{bin_int, BitString};
use crate::graph::PortGraph;

pub fn run_elect(g: &PortGraph, advice: &BitString) -> ElectionOutcome {
    run(g, advice, || Box::new(Elect::new()), DEFAULT_ROUND_LIMIT)
}

pub fn run_generic(g: &PortGraph, x: u64) -> ElectionOutcome {
    run(g, &BitString::new(), move || Box::new(Generic::new(x)), DEFAULT_ROUND_LIMIT)
}

/// Advice `A_i`: the binary form of the variant's advice value.
pub fn variant_advice(variant: u8, phi: u64) -> Result<BitString, BudgetError> {
    advice_value(variant, phi).map(bin_int)
}

pub fn run_election_variant(g: &PortGraph, variant: u8, advice: &BitString) -> Result<ElectionOutcome, BudgetError> {
    if !(1..=4).contains(&variant) {
        return Err(BudgetError::Variant(variant));
    }
    Ok(run(
        g,
        advice,
        move || Box::new(Generic::from_advice(variant)),
        DEFAULT_ROUND_LIMIT,
    ))
}

pub fn run_election_dphi(g: &PortGraph, advice: &BitString) -> ElectionOutcome {
    run(g, advice, || Box::new(DPlusPhi::new()), DEFAULT_ROUND_LIMIT)
}

/// Reruns a program on a copy of `g` with node ids shuffled (ports kept) and
/// checks that every node's result moved with it. A program that consulted
/// anything besides its view and the advice would be exposed by the shuffle.
pub fn audit_anonymity<F>(g: &PortGraph, advice: &BitString, factory: F, seed: u64) -> Result<(), String>
where
    F: Fn() -> Box<dyn NodeProgram>,
{
    let mut perm: Vec<usize> = g.nodes().collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let h = g.relabel(&perm);
    let a = run(g, advice, &factory, DEFAULT_ROUND_LIMIT);
    let b = run(&h, advice, &factory, DEFAULT_ROUND_LIMIT);
    for v in g.nodes() {
        if a.nodes[v] != b.nodes[perm[v]] {
            return Err(format!(
                "node {v} (renamed {}) behaves differently: {:?} vs {:?}",
                perm[v], a.nodes[v], b.nodes[perm[v]]
            ));
        }
    }
    Ok(())
}
