//! Necklaces: joints carrying emeralds, linked by diamonds, with two chains.

use super::cliques::{append_clique, family_size};
use super::FamilyError;
use crate::graph::{GraphBuilder, PortGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecklaceSpec {
    pub k: usize,
    pub x: usize,
    pub phi: usize,
    /// `c_1..c_k` with `c_1 = c_k = 0` and entries in `0..=x`.
    pub code: Vec<usize>,
}

impl NecklaceSpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        let NecklaceSpec { k, x, phi, code } = self;
        let bad = |m: String| Err(FamilyError::Param(m));
        if *k < 3 || k % 2 != 0 {
            return bad(format!("k must be even and at least 3, got {k}"));
        }
        if *x < 2 {
            return bad(format!("x must be at least 2, got {x}"));
        }
        if family_size(*x).is_some_and(|y| (*k as u64) > y) {
            return bad(format!("k = {k} exceeds (x-1)^x for x = {x}"));
        }
        if *phi < 2 {
            return bad(format!("phi must be at least 2, got {phi}"));
        }
        if code.len() != *k {
            return bad(format!("code has {} entries, expected {k}", code.len()));
        }
        if code[0] != 0 || code[k - 1] != 0 {
            return bad("code must start and end with 0".into());
        }
        if code.iter().any(|&c| c > *x) {
            return bad(format!("code entries must lie in 0..={x}"));
        }
        Ok(())
    }

    /// Node count of the generated graph.
    pub fn node_count(&self) -> usize {
        let (k, x) = (self.k, self.x);
        k + k * x + (k - 1) * x + 2 * (self.phi - 1)
    }
}

#[derive(Clone, Debug)]
pub struct Necklace {
    pub graph: PortGraph,
    /// `joints[i]` is joint `w_{i+1}`.
    pub joints: Vec<usize>,
    pub left_leaf: usize,
    pub right_leaf: usize,
}

pub fn gen_necklace(spec: &NecklaceSpec) -> Result<Necklace, FamilyError> {
    spec.validate()?;
    let NecklaceSpec { k, x, phi, ref code } = *spec;
    let mut b = GraphBuilder::new(0);
    // emerald E_i is member C_i of F(x); its node r is the joint
    let joints: Vec<usize> = (1..=k).map(|i| append_clique(&mut b, x, i as u64)).collect();

    for i in 0..k - 1 {
        // diamond D_{i+1}, between joints w_{i+1} and w_{i+2}
        let shift = |p: usize| (p + code[i]) % (x + 1);
        let nodes: Vec<usize> = (0..x).map(|_| b.add_node()).collect();
        let mut used = vec![0usize; x];
        for a in 0..x {
            for c in a + 1..x {
                b.connect(nodes[a], shift(used[a]), nodes[c], shift(used[c]))?;
                used[a] += 1;
                used[c] += 1;
            }
        }
        // joint w_j (1-based) with even j uses x.. for the diamond before it
        // and 2x.. for the one after; odd j the other way round. Since k is
        // even this also covers the end joints, which only use x..
        let (left, right) = (i + 1, i + 2);
        let after_left = if left % 2 == 1 { x } else { 2 * x };
        let before_right = if right % 2 == 0 { x } else { 2 * x };
        for (j, &d) in nodes.iter().enumerate() {
            b.connect(d, shift(x - 1), joints[left - 1], after_left + j)?;
            b.connect(d, shift(x), joints[right - 1], before_right + j)?;
        }
    }

    let mut chain = |joint: usize| -> Result<usize, FamilyError> {
        // builds a_{phi-2} .. a_0 and returns a_0
        let len = phi - 1;
        let nodes: Vec<usize> = (0..len).map(|_| b.add_node()).collect();
        let top = nodes[len - 1];
        b.connect(top, 0, joint, 2 * x)?;
        for i in 1..len {
            b.connect(nodes[i], 1, nodes[i - 1], 0)?;
        }
        Ok(nodes[0])
    };
    let left_leaf = chain(joints[0])?;
    let right_leaf = chain(joints[k - 1])?;
    Ok(Necklace {
        graph: b.build()?,
        joints,
        left_leaf,
        right_leaf,
    })
}
