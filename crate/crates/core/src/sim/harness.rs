//! Synchronous round harness.
//!
//! Node programs are created without any identity and see only the round
//! number, their own augmented view, and the shared advice string.

use std::sync::Arc;

use rayon::prelude::*;

use crate::encoding::BitString;
use crate::graph::PortGraph;
use crate::views::AugView;

/// Everything a node knows after `round` exchange rounds.
#[derive(Clone, Debug)]
pub struct NodeKnowledge {
    pub round: usize,
    /// The node's view at depth `round`.
    pub view: AugView,
    pub advice: Arc<BitString>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Continue,
    Output(Vec<usize>),
    Fail(String),
}

pub trait NodeProgram: Send {
    fn step(&mut self, k: &NodeKnowledge) -> Step;
}

/// A node's final state: its output (or failure) and the number of exchange
/// rounds it had completed when it decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeResult {
    pub output: Result<Vec<usize>, String>,
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElectionOutcome {
    /// Indexed by harness node id.
    pub nodes: Vec<NodeResult>,
    /// Exchange rounds until the last node decided.
    pub rounds: usize,
}

impl ElectionOutcome {
    /// Index of the last round in which some node was still exchanging
    /// (rounds numbered from 0), or `None` if everyone decided before any exchange.
    pub fn last_round_index(&self) -> Option<usize> {
        self.rounds.checked_sub(1)
    }
}

/// One exchange round: every node sends its depth-`i` view to all neighbors
/// and assembles its depth-`i+1` view.
pub fn com_round(g: &PortGraph, views: &[AugView]) -> Vec<AugView> {
    g.nodes()
        .map(|v| {
            AugView::from_children(
                g.ports(v)
                    .iter()
                    .map(|t| (t.port, views[t.node].clone()))
                    .collect(),
            )
        })
        .collect()
}

pub const DEFAULT_ROUND_LIMIT: usize = 4096;

/// Runs one program instance per node until every node decides.
///
/// Nodes that decided keep relaying views, so undecided neighbors still see
/// full-depth views. A node still undecided after `round_limit` rounds fails.
pub fn run<F>(g: &PortGraph, advice: &BitString, factory: F, round_limit: usize) -> ElectionOutcome
where
    F: Fn() -> Box<dyn NodeProgram>,
{
    let advice = Arc::new(advice.clone());
    let mut programs: Vec<Box<dyn NodeProgram>> = g.nodes().map(|_| factory()).collect();
    let mut results: Vec<Option<NodeResult>> = vec![None; g.node_count()];
    let mut views: Vec<AugView> = g.nodes().map(|v| AugView::leaf(g.degree(v))).collect();
    let mut round = 0;
    loop {
        let decided: Vec<Option<Step>> = programs
            .par_iter_mut()
            .zip(&results)
            .zip(&views)
            .map(|((prog, done), view)| {
                done.is_none().then(|| {
                    prog.step(&NodeKnowledge {
                        round,
                        view: view.clone(),
                        advice: Arc::clone(&advice),
                    })
                })
            })
            .collect();
        for (slot, step) in results.iter_mut().zip(decided) {
            let output = match step {
                Some(Step::Output(seq)) => Ok(seq),
                Some(Step::Fail(msg)) => Err(msg),
                Some(Step::Continue) | None => continue,
            };
            *slot = Some(NodeResult { output, rounds: round });
        }
        if results.iter().all(Option::is_some) {
            break;
        }
        if round >= round_limit {
            for slot in results.iter_mut().filter(|s| s.is_none()) {
                *slot = Some(NodeResult {
                    output: Err(format!("no decision within {round_limit} rounds")),
                    rounds: round,
                });
            }
            break;
        }
        views = com_round(g, &views);
        round += 1;
    }
    let nodes: Vec<NodeResult> = results.into_iter().map(Option::unwrap).collect();
    let rounds = nodes.iter().map(|r| r.rounds).max().unwrap_or(0);
    ElectionOutcome { nodes, rounds }
}
