//! Brute-force reference implementations used to check the library.
//!
//! Nothing here goes through refinement, the view arena, or the library's
//! encoders: view equality follows the inductive definition directly, and
//! the order and depth-1 encoding are re-derived from scratch.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::HashMap;

use elect_advice::graph::PortGraph;

/// Plain adjacency copy: `adj[u][p] = (v, q)`.
pub struct Adj {
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl Adj {
    pub fn new(g: &PortGraph) -> Self {
        Adj {
            adj: g
                .nodes()
                .map(|u| g.ports(u).iter().map(|t| (t.node, t.port)).collect())
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn deg(&self, u: usize) -> usize {
        self.adj[u].len()
    }
}

/// Floyd-Warshall distances.
pub fn all_pairs(a: &Adj) -> Vec<Vec<usize>> {
    let n = a.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for &(v, _) in &a.adj[u] {
            d[u][v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn diameter(a: &Adj) -> usize {
    all_pairs(a).into_iter().flatten().max().unwrap_or(0)
}

/// Explicit view trees, small depths only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    pub deg: usize,
    pub kids: Vec<(usize, Tree)>,
}

pub fn materialize(a: &Adj, v: usize, l: usize) -> Tree {
    Tree {
        deg: a.deg(v),
        kids: if l == 0 {
            Vec::new()
        } else {
            a.adj[v].iter().map(|&(w, q)| (q, materialize(a, w, l - 1))).collect()
        },
    }
}

/// Definitional equality of depth-`l` augmented views, memoized on
/// `(u, v, l)`. Works for views of any depth and both graphs may differ.
pub struct ViewEq<'a> {
    a: &'a Adj,
    b: &'a Adj,
    memo: HashMap<(usize, usize, usize), bool>,
}

impl<'a> ViewEq<'a> {
    pub fn new(a: &'a Adj, b: &'a Adj) -> Self {
        ViewEq {
            a,
            b,
            memo: HashMap::new(),
        }
    }

    pub fn eq(&mut self, u: usize, v: usize, l: usize) -> bool {
        if self.a.deg(u) != self.b.deg(v) {
            return false;
        }
        if l == 0 {
            return true;
        }
        if let Some(&r) = self.memo.get(&(u, v, l)) {
            return r;
        }
        let mut r = true;
        for p in 0..self.a.deg(u) {
            let (x, qx) = self.a.adj[u][p];
            let (y, qy) = self.b.adj[v][p];
            if qx != qy || !self.eq(x, y, l - 1) {
                r = false;
                break;
            }
        }
        self.memo.insert((u, v, l), r);
        r
    }

    /// The order on depth-`l` views: find the first depth `j` where the
    /// truncations differ; compare degrees at 0, depth-1 codes at 1, and
    /// the first differing neighbor at depth `j-1` otherwise.
    pub fn cmp(&mut self, u: usize, v: usize, l: usize) -> Ordering {
        let Some(j) = (0..=l).find(|&j| !self.eq(u, v, j)) else {
            return Ordering::Equal;
        };
        match j {
            0 => self.a.deg(u).cmp(&self.b.deg(v)),
            1 => depth1_code(self.a, u).cmp(&depth1_code(self.b, v)),
            _ => {
                let p = (0..self.a.deg(u))
                    .find(|&p| !self.eq(self.a.adj[u][p].0, self.b.adj[v][p].0, j - 1))
                    .expect("views differ below the root");
                self.cmp(self.a.adj[u][p].0, self.b.adj[v][p].0, j - 1)
            }
        }
    }
}

fn bits(x: u64) -> Vec<bool> {
    if x == 0 {
        return vec![false];
    }
    let w = 64 - x.leading_zeros();
    (0..w).rev().map(|i| x >> i & 1 == 1).collect()
}

/// Doubles each bit and writes `01` between parts.
pub fn concat(parts: &[Vec<bool>]) -> Vec<bool> {
    let mut out = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            out.extend([false, true]);
        }
        for &b in p {
            out.extend([b, b]);
        }
    }
    out
}

/// `Concat` over ports of `Concat(bin p, bin reverse port, bin neighbor degree)`.
pub fn depth1_code(a: &Adj, v: usize) -> Vec<bool> {
    let parts: Vec<Vec<bool>> = a.adj[v]
        .iter()
        .enumerate()
        .map(|(p, &(w, q))| concat(&[bits(p as u64), bits(q as u64), bits(a.deg(w) as u64)]))
        .collect();
    concat(&parts)
}

pub fn to_string(b: &[bool]) -> String {
    b.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

/// Class ids at depth `l` by pairwise definitional comparison.
pub fn classes(a: &Adj, l: usize) -> Vec<usize> {
    let mut e = ViewEq::new(a, a);
    let mut reps: Vec<usize> = Vec::new();
    (0..a.n())
        .map(|v| match reps.iter().position(|&r| e.eq(r, v, l)) {
            Some(c) => c,
            None => {
                reps.push(v);
                reps.len() - 1
            }
        })
        .collect()
}

/// Smallest depth at which all views differ, searching up to `n` (an
/// infeasible graph never separates).
pub fn election_index(a: &Adj) -> Option<usize> {
    let n = a.n();
    let mut e = ViewEq::new(a, a);
    (0..=n).find(|&l| (0..n).all(|u| (u + 1..n).all(|v| !e.eq(u, v, l))))
}

/// Whether two labelings induce the same partition.
pub fn same_partition(x: &[usize], y: &[usize]) -> bool {
    let n = x.len();
    n == y.len() && (0..n).all(|u| (0..n).all(|v| (x[u] == x[v]) == (y[u] == y[v])))
}

/// The node whose depth-`l` view is smallest.
pub fn argmin_view(a: &Adj, l: usize) -> usize {
    let mut e = ViewEq::new(a, a);
    (1..a.n()).fold(0, |best, v| if e.cmp(v, best, l) == Ordering::Less { v } else { best })
}
