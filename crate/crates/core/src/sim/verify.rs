//! Checking election outcomes against the graph.

use thiserror::Error;

use super::harness::ElectionOutcome;
use crate::graph::{PathError, PortGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("node {node} failed: {msg}")]
    NodeFailed { node: usize, msg: String },
    #[error("node {node}: {err}")]
    Path { node: usize, err: PathError },
    #[error("node {node}: path not simple")]
    NotSimple { node: usize },
    #[error("node {node}: no common endpoint (reaches {end}, node {first} reaches {expected})")]
    NoCommonEndpoint {
        node: usize,
        end: usize,
        first: usize,
        expected: usize,
    },
    #[error("outcome has {found} nodes, graph has {expected}")]
    Size { expected: usize, found: usize },
}

/// Follows every node's output; returns the common endpoint.
pub fn verify_outcome(g: &PortGraph, o: &ElectionOutcome) -> Result<usize, VerifyError> {
    if o.nodes.len() != g.node_count() {
        return Err(VerifyError::Size {
            expected: g.node_count(),
            found: o.nodes.len(),
        });
    }
    let mut leader = None;
    for (node, r) in o.nodes.iter().enumerate() {
        let seq = r.output.as_ref().map_err(|msg| VerifyError::NodeFailed {
            node,
            msg: msg.clone(),
        })?;
        let (end, simple) = g
            .follow_path(node, seq)
            .map_err(|err| VerifyError::Path { node, err })?;
        if !simple {
            return Err(VerifyError::NotSimple { node });
        }
        match leader {
            None => leader = Some((node, end)),
            Some((first, expected)) if expected != end => {
                return Err(VerifyError::NoCommonEndpoint {
                    node,
                    end,
                    first,
                    expected,
                })
            }
            Some(_) => {}
        }
    }
    Ok(leader.map(|(_, l)| l).unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::harness::NodeResult;

    fn outcome(seqs: Vec<Vec<usize>>) -> ElectionOutcome {
        ElectionOutcome {
            nodes: seqs
                .into_iter()
                .map(|s| NodeResult {
                    output: Ok(s),
                    rounds: 1,
                })
                .collect(),
            rounds: 1,
        }
    }

    fn p3() -> PortGraph {
        PortGraph::from_edges(3, &[(1, 0, 0, 0), (1, 1, 2, 0)]).unwrap()
    }

    #[test]
    fn empty_outputs_have_no_common_endpoint() {
        let e = verify_outcome(&p3(), &outcome(vec![vec![], vec![], vec![]]));
        assert!(matches!(e, Err(VerifyError::NoCommonEndpoint { .. })));
        assert!(e.unwrap_err().to_string().contains("no common endpoint"));
    }

    #[test]
    fn all_to_middle() {
        let o = outcome(vec![vec![0, 0], vec![], vec![0, 1]]);
        assert_eq!(verify_outcome(&p3(), &o), Ok(1));
    }

    #[test]
    fn back_and_forth_is_not_simple() {
        let o = outcome(vec![vec![0, 0], vec![0, 0, 0, 0], vec![0, 1]]);
        let e = verify_outcome(&p3(), &o).unwrap_err();
        assert_eq!(e, VerifyError::NotSimple { node: 1 });
        assert!(e.to_string().contains("path not simple"));
    }
}
