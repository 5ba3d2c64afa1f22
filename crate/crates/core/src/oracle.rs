//! Floating-point cross-check of the maximum slope.
//!
//! Shares only the vertex metrics with the exact pipeline. Heights are
//! doubles, white vertices come from a breadth-first labeling of class nodes,
//! and loops are found by an unpruned walk from every start vertex in both
//! directions. Intended for tests and sanity checks, not for answers.

use std::collections::VecDeque;

use num_traits::ToPrimitive;

use crate::metric::vertex_metrics;
use crate::model::{EdgeEnd, Side, ValidatedGraph};
use crate::slope::SlopeError;

/// Absolute tolerance for deciding that a parallel loop has nonzero height.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleSlope {
    Finite(f64),
    Infinite,
}

/// Maximum slope with double-precision heights. `budget` bounds the number of
/// closed walks examined (each loop is met `2·len` times).
pub fn float_max_slope_oracle(vg: &ValidatedGraph, budget: usize) -> Result<OracleSlope, SlopeError> {
    let graph = vg.graph();
    let metrics = vertex_metrics(vg);
    let n_black = graph.vertices().len();
    let n_nodes = 3 * n_black;

    // node graph: class nodes joined by original edges
    let mut node_adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n_nodes];
    let mut arcs = Vec::new();
    for (i, e) in graph.edges().iter().enumerate() {
        let len2 = |v: usize, w| metrics[v].squared_length(w).unwrap().to_f64().unwrap();
        let h = 0.5 * (len2(e.tail, e.tail_vec).log2() - len2(e.head, e.head_vec).log2());
        let (tv, tc) = vg.node_of(EdgeEnd { edge: i, side: Side::Tail });
        let (hv, hc) = vg.node_of(EdgeEnd { edge: i, side: Side::Head });
        let (t, hd) = (3 * tv + tc, 3 * hv + hc);
        node_adj[t].push((hd, h));
        node_adj[hd].push((t, -h));
        arcs.push((t, hd, h));
    }

    let mut white = vec![usize::MAX; n_nodes];
    let mut pot = vec![0.0f64; n_nodes];
    let mut n_white = 0;
    for root in 0..n_nodes {
        if white[root] != usize::MAX {
            continue;
        }
        white[root] = n_white;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, h) in &node_adj[u] {
                if white[w] == usize::MAX {
                    white[w] = n_white;
                    pot[w] = pot[u] + h;
                    queue.push_back(w);
                }
            }
        }
        n_white += 1;
    }
    for &(t, hd, h) in &arcs {
        if (pot[hd] - pot[t] - h).abs() > ORACLE_TOLERANCE {
            return Ok(OracleSlope::Infinite);
        }
    }

    // bipartite graph: black 0..n_black, white n_black.., one edge per node
    let n = n_black + n_white;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, &wk) in white.iter().enumerate().take(n_nodes) {
        let (b, w) = (k / 3, n_black + wk);
        adj[b].push((w, k));
        adj[w].push((b, k));
    }

    struct Search<'a> {
        adj: &'a [Vec<(usize, usize)>],
        pot: &'a [f64],
        n_black: usize,
        start: usize,
        seen: Vec<bool>,
        verts: Vec<usize>,
        edges: Vec<usize>,
        best: f64,
        walks: usize,
        budget: usize,
    }

    impl Search<'_> {
        fn close(&mut self) -> Result<(), SlopeError> {
            self.walks += 1;
            if self.walks > self.budget {
                return Err(SlopeError::CycleBudgetExceeded(self.budget));
            }
            let len = self.edges.len();
            let mut net = 0.0;
            for i in 0..len {
                if self.verts[i] >= self.n_black {
                    net += self.pot[self.edges[i]] - self.pot[self.edges[(i + len - 1) % len]];
                }
            }
            let slope = net.abs() / (len as f64 / 2.0);
            if slope > self.best {
                self.best = slope;
            }
            Ok(())
        }

        fn walk(&mut self, u: usize) -> Result<(), SlopeError> {
            for i in 0..self.adj[u].len() {
                let (w, e) = self.adj[u][i];
                if self.edges.last() == Some(&e) {
                    continue;
                }
                if w == self.start {
                    if !self.edges.is_empty() {
                        self.edges.push(e);
                        self.close()?;
                        self.edges.pop();
                    }
                } else if !self.seen[w] {
                    self.seen[w] = true;
                    self.verts.push(w);
                    self.edges.push(e);
                    self.walk(w)?;
                    self.edges.pop();
                    self.verts.pop();
                    self.seen[w] = false;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        adj: &adj,
        pot: &pot,
        n_black,
        start: 0,
        seen: vec![false; n],
        verts: Vec::new(),
        edges: Vec::new(),
        best: 0.0,
        walks: 0,
        budget,
    };
    for s in 0..n {
        search.start = s;
        search.seen[s] = true;
        search.verts = vec![s];
        search.walk(s)?;
        search.seen[s] = false;
    }
    Ok(OracleSlope::Finite(search.best))
}
