//! The clique family `F(x)` and rings of cliques.

use super::FamilyError;
use crate::graph::{GraphBuilder, PortGraph};

/// `(x-1)^x`, or `None` if it does not fit in a `u64`.
pub fn family_size(x: usize) -> Option<u64> {
    (x as u64 - 1).checked_pow(x as u32)
}

/// The `t`-th (1-based) sequence over `{1..x-1}^x` in lexicographic order.
pub fn shift_sequence(x: usize, t: u64) -> Vec<usize> {
    let mut rest = t - 1;
    let base = (x - 1) as u64;
    let mut digits = vec![0; x];
    for d in digits.iter_mut().rev() {
        *d = (rest % base) as usize + 1;
        rest /= base;
    }
    digits
}

/// Appends member `C_t` of `F(x)` to `b`; returns the index of its node `r`.
///
/// Node `r` reaches `v_i` through port `i`. The remaining edges take the
/// smallest free port in node order `r, v_0, v_1, ...`, after which every
/// port `p` at `v_j` becomes `(p + h_j) mod x`.
pub fn append_clique(b: &mut GraphBuilder, x: usize, t: u64) -> usize {
    let h = shift_sequence(x, t);
    let r = b.add_node();
    let v: Vec<usize> = (0..x).map(|_| b.add_node()).collect();
    // local port tables before the shift: base[j][p] = neighbor
    let mut base = vec![vec![usize::MAX; x]; x];
    // port 0 at every v_j goes back to r
    let mut used = vec![1usize; x];
    for j in 0..x {
        for l in j + 1..x {
            base[j][used[j]] = l;
            base[l][used[l]] = j;
            used[j] += 1;
            used[l] += 1;
        }
    }
    let shifted = |j: usize, p: usize| (p + h[j]) % x;
    for j in 0..x {
        b.connect(r, j, v[j], shifted(j, 0)).unwrap();
    }
    for j in 0..x {
        for p in 0..x {
            let l = base[j][p];
            if l != usize::MAX && j < l {
                let q = base[l].iter().position(|&m| m == j).unwrap();
                b.connect(v[j], shifted(j, p), v[l], shifted(l, q)).unwrap();
            }
        }
    }
    r
}

/// Member `C_t` of `F(x)` as a standalone graph with `r` at index 0.
pub fn clique(x: usize, t: u64) -> Result<PortGraph, FamilyError> {
    check_x(x)?;
    let y = family_size(x).ok_or(FamilyError::TooLarge("(x-1)^x"))?;
    if t == 0 || t > y {
        return Err(FamilyError::Param(format!("member index {t} outside 1..={y}")));
    }
    let mut b = GraphBuilder::new(0);
    append_clique(&mut b, x, t);
    Ok(b.build()?)
}

/// All `(x-1)^x` members of `F(x)`, in order.
pub fn gen_clique_family(x: usize) -> Result<Vec<PortGraph>, FamilyError> {
    check_x(x)?;
    let y = family_size(x).ok_or(FamilyError::TooLarge("(x-1)^x"))?;
    (1..=y).map(|t| clique(x, t)).collect()
}

fn check_x(x: usize) -> Result<(), FamilyError> {
    if x < 2 {
        return Err(FamilyError::Param(format!("x must be at least 2, got {x}")));
    }
    Ok(())
}

/// A ring of cliques with the harness-side index of each ring node.
#[derive(Clone, Debug)]
pub struct RingOfCliques {
    pub graph: PortGraph,
    /// `joints[t]` is ring node `w_{t+1}`.
    pub joints: Vec<usize>,
}

/// A member of the ring-of-cliques family: ring node `w_1` carries `C_1` and
/// `w_t` carries `C_{perm[t-2]}` for `t >= 2`, where `perm` permutes `2..=k`.
/// Ring port `x` leads clockwise to `w_{t+1}`, port `x+1` back to `w_{t-1}`.
pub fn gen_ring_cliques(k: usize, x: usize, perm: &[usize]) -> Result<RingOfCliques, FamilyError> {
    check_x(x)?;
    if k < 3 {
        return Err(FamilyError::Param(format!("ring size k must be at least 3, got {k}")));
    }
    if family_size(x).is_some_and(|y| (k as u64) > y) {
        return Err(FamilyError::Param(format!(
            "k = {k} exceeds (x-1)^x for x = {x}"
        )));
    }
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (2..=k).collect::<Vec<_>>() {
        return Err(FamilyError::Param(format!(
            "expected a permutation of 2..={k}, got {perm:?}"
        )));
    }
    let mut b = GraphBuilder::new(0);
    let joints: Vec<usize> = (0..k)
        .map(|t| {
            let member = if t == 0 { 1 } else { perm[t - 1] };
            append_clique(&mut b, x, member as u64)
        })
        .collect();
    for t in 0..k {
        b.connect(joints[t], x, joints[(t + 1) % k], x + 1)?;
    }
    Ok(RingOfCliques {
        graph: b.build()?,
        joints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::views::{election_index, ElectionIndex};

    #[test]
    fn family_sizes() {
        assert_eq!(gen_clique_family(2).unwrap().len(), 1);
        assert_eq!(gen_clique_family(3).unwrap().len(), 8);
        assert_eq!(clique(2, 1).unwrap().node_count(), 3);
    }

    #[test]
    fn sequences_are_lexicographic() {
        assert_eq!(shift_sequence(3, 1), vec![1, 1, 1]);
        assert_eq!(shift_sequence(3, 2), vec![1, 1, 2]);
        assert_eq!(shift_sequence(3, 8), vec![2, 2, 2]);
    }

    #[test]
    fn root_ports_lead_to_v() {
        let g = clique(4, 5).unwrap();
        for i in 0..4 {
            assert_eq!(g.target(0, i).unwrap().node, i + 1);
        }
    }

    #[test]
    fn members_differ() {
        let fam = gen_clique_family(3).unwrap();
        for a in 0..fam.len() {
            for b in a + 1..fam.len() {
                assert_ne!(fam[a].to_text(), fam[b].to_text());
            }
        }
    }

    #[test]
    fn ring_k8_x4() {
        let perm: Vec<usize> = (2..=8).collect();
        let r = gen_ring_cliques(8, 4, &perm).unwrap();
        assert_eq!(r.graph.node_count(), 8 * 5);
        assert_eq!(election_index(&r.graph), ElectionIndex::Feasible(1));
    }

    #[test]
    fn ring_rejects_bad_parameters() {
        assert!(gen_ring_cliques(9, 3, &(2..=9).collect::<Vec<_>>()).is_err());
        assert!(gen_ring_cliques(4, 3, &[2, 2, 3]).is_err());
    }
}
