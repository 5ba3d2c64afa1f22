//! Maximum slope over the embedded loops of the graph of P-sets.
//!
//! Every folded edge has length one half, and a path in the graph of P-sets
//! twists at every interior black vertex, so a loop with `2k` folded edges has
//! `k` twists. Its slope is `|net height| / k`; the maximum over all loops is
//! attained on an embedded loop, so enumerating simple cycles is enough.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::exactnum::{LogRat, SlopeValue};
use crate::metric::{edge_heights, vertex_metrics, EdgeHeight, VertexMetric};
use crate::model::ValidatedGraph;
use crate::pset::{fold, FoldOutcome, InfiniteSlopeWitness, PSetGraph};

pub const DEFAULT_CYCLE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("more than {0} embedded loops in the graph of P-sets; raise the cycle budget")]
    CycleBudgetExceeded(usize),
}

/// A cycle of the graph of P-sets repeating no vertex, stored in canonical
/// rotation and orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedLoop {
    /// Folded edge indices in traversal order.
    pub edges: Vec<usize>,
    /// `vertices[i]` is where `edges[i]` starts; black vertex `b` is `b`,
    /// white vertex `w` is `black.len() + w`.
    pub vertices: Vec<usize>,
}

impl EmbeddedLoop {
    pub fn twists(&self) -> u64 {
        (self.edges.len() / 2) as u64
    }

    pub fn edge_names<'p>(&self, p: &'p PSetGraph) -> Vec<&'p str> {
        self.edges.iter().map(|&e| p.folded[e].name.as_str()).collect()
    }

    /// The loop traversed backwards.
    pub fn reversed(&self) -> EmbeddedLoop {
        let n = self.edges.len();
        let edges: Vec<usize> = self.edges.iter().rev().copied().collect();
        // Backwards, edge i is entered from the vertex that ended it forwards.
        let vertices = (0..n).map(|i| self.vertices[(n - i) % n]).collect();
        EmbeddedLoop { edges, vertices }
    }

    fn rotated(&self, k: usize) -> EmbeddedLoop {
        let mut edges = self.edges.clone();
        let mut vertices = self.vertices.clone();
        edges.rotate_left(k);
        vertices.rotate_left(k);
        EmbeddedLoop { edges, vertices }
    }

    /// Rotation/orientation with the lexicographically least edge-name
    /// sequence (then least vertex sequence, which settles 2-cycles).
    pub fn canonical(&self, p: &PSetGraph) -> EmbeddedLoop {
        let n = self.edges.len();
        let rev = self.reversed();
        let mut best = self.clone();
        let mut best_key = (best.edge_names(p), best.vertices.clone());
        for base in [self, &rev] {
            for k in 0..n {
                let cand = base.rotated(k);
                let key = (cand.edge_names(p), cand.vertices.clone());
                if key < best_key {
                    best = cand;
                    best_key = key;
                }
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopWitness {
    Loop(EmbeddedLoop),
    /// The graph of P-sets is a tree.
    Acyclic,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SlopeResult {
    Infinite(InfiniteSlopeWitness),
    Finite {
        slope: SlopeValue,
        approx: f64,
        witness: LoopWitness,
    },
}

/// The bare invariant, without witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaxSlope {
    Infinite,
    Finite(SlopeValue),
}

impl MaxSlope {
    /// Decimal rendering, or `infinite`.
    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            MaxSlope::Infinite => "infinite".to_string(),
            MaxSlope::Finite(s) => s.to_decimal(digits),
        }
    }
}

impl fmt::Display for MaxSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxSlope::Infinite => f.write_str("infinite"),
            MaxSlope::Finite(s) => write!(f, "{} ({})", s.to_decimal(12), s),
        }
    }
}

impl SlopeResult {
    pub fn max_slope(&self) -> MaxSlope {
        match self {
            SlopeResult::Infinite(_) => MaxSlope::Infinite,
            SlopeResult::Finite { slope, .. } => MaxSlope::Finite(slope.clone()),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SlopeResult::Infinite(_))
    }
}

fn adjacency(p: &PSetGraph) -> Vec<Vec<(usize, usize)>> {
    let nb = p.black.len();
    let mut adj = vec![Vec::new(); p.vertex_count()];
    for (k, f) in p.folded.iter().enumerate() {
        let w = nb + f.white;
        adj[f.vertex].push((w, k));
        adj[w].push((f.vertex, k));
    }
    adj
}

/// Calls `visit(edges, vertices)` once per embedded loop, in one fixed
/// orientation: the loop starts at its least vertex and its first edge index
/// is below its last. Parallel folded edges give 2-cycles.
pub fn for_each_simple_cycle(
    p: &PSetGraph,
    budget: usize,
    mut visit: impl FnMut(&[usize], &[usize]),
) -> Result<usize, SlopeError> {
    let adj = adjacency(p);
    let n = adj.len();
    let mut on_path = vec![false; n];
    let mut count = 0usize;

    struct Frame {
        vertex: usize,
        next: usize,
    }

    for start in 0..n {
        let mut path_vertices = vec![start];
        let mut path_edges: Vec<usize> = Vec::new();
        let mut stack = vec![Frame { vertex: start, next: 0 }];
        on_path[start] = true;
        while let Some(top) = stack.last_mut() {
            let u = top.vertex;
            if top.next == adj[u].len() {
                on_path[u] = false;
                stack.pop();
                path_vertices.pop();
                path_edges.pop();
                continue;
            }
            let (w, e) = adj[u][top.next];
            top.next += 1;
            if w == start {
                if let Some(&first) = path_edges.first() {
                    if first < e {
                        count += 1;
                        if count > budget {
                            return Err(SlopeError::CycleBudgetExceeded(budget));
                        }
                        path_edges.push(e);
                        visit(&path_edges, &path_vertices);
                        path_edges.pop();
                    }
                }
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path_vertices.push(w);
                path_edges.push(e);
                stack.push(Frame { vertex: w, next: 0 });
            }
        }
        on_path[start] = false;
    }
    Ok(count)
}

/// All embedded loops in canonical form, sorted by edge-name sequence.
pub fn enumerate_simple_cycles(p: &PSetGraph, budget: usize) -> Result<Vec<EmbeddedLoop>, SlopeError> {
    let mut loops = Vec::new();
    for_each_simple_cycle(p, budget, |edges, vertices| {
        let l = EmbeddedLoop {
            edges: edges.to_vec(),
            vertices: vertices.to_vec(),
        };
        loops.push(l.canonical(p));
    })?;
    loops.sort_by(|a, b| a.edge_names(p).cmp(&b.edge_names(p)));
    Ok(loops)
}

/// Net height around a loop given as parallel edge/vertex sequences.
fn net_height(p: &PSetGraph, edges: &[usize], vertices: &[usize]) -> LogRat {
    let nb = p.black.len();
    let n = edges.len();
    let mut total = LogRat::zero();
    for i in 0..n {
        // Edge i runs from vertices[i] to vertices[i+1]; at each white vertex
        // we leave down edge i after arriving up edge i-1.
        if vertices[i] >= nb {
            let arrive = &p.folded[edges[(i + n - 1) % n]].phi;
            let leave = &p.folded[edges[i]].phi;
            total = total + (leave + &(-arrive));
        }
    }
    total
}

pub fn loop_slope(l: &EmbeddedLoop, p: &PSetGraph) -> SlopeValue {
    SlopeValue::new(&net_height(p, &l.edges, &l.vertices), l.twists())
}

/// Maximum slope of an already-folded graph of P-sets.
pub fn max_slope_of(p: &PSetGraph, budget: usize) -> Result<(SlopeValue, LoopWitness), SlopeError> {
    let mut best: Option<(SlopeValue, EmbeddedLoop)> = None;
    for_each_simple_cycle(p, budget, |edges, vertices| {
        let slope = SlopeValue::new(&net_height(p, edges, vertices), (edges.len() / 2) as u64);
        let replace = match &best {
            None => true,
            Some((b, bl)) => match slope.cmp(b) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => {
                    let cand = EmbeddedLoop {
                        edges: edges.to_vec(),
                        vertices: vertices.to_vec(),
                    }
                    .canonical(p);
                    cand.edge_names(p) < bl.edge_names(p)
                }
            },
        };
        if replace {
            let l = EmbeddedLoop {
                edges: edges.to_vec(),
                vertices: vertices.to_vec(),
            }
            .canonical(p);
            best = Some((slope, l));
        }
    })?;
    Ok(match best {
        Some((s, l)) => (s, LoopWitness::Loop(l)),
        None => (SlopeValue::zero(), LoopWitness::Acyclic),
    })
}

/// Fold and maximize, starting from given edge heights.
pub fn slope_from_heights(
    vg: &ValidatedGraph,
    heights: &[EdgeHeight],
    budget: usize,
) -> Result<SlopeResult, SlopeError> {
    match fold(vg, heights) {
        FoldOutcome::Infinite(w) => Ok(SlopeResult::Infinite(w)),
        FoldOutcome::Folded(p) => {
            let (slope, witness) = max_slope_of(&p, budget)?;
            Ok(SlopeResult::Finite {
                approx: slope.to_f64(),
                slope,
                witness,
            })
        }
    }
}

/// As [`compute_max_slope`], with caller-supplied vertex metrics.
pub fn slope_with_metrics(
    vg: &ValidatedGraph,
    metrics: &[VertexMetric],
    budget: usize,
) -> Result<SlopeResult, SlopeError> {
    slope_from_heights(vg, &edge_heights(vg, metrics), budget)
}

pub fn compute_max_slope_with_budget(
    vg: &ValidatedGraph,
    budget: usize,
) -> Result<SlopeResult, SlopeError> {
    slope_with_metrics(vg, &vertex_metrics(vg), budget)
}

/// The maximum slope invariant, with the default cycle budget.
pub fn compute_max_slope(vg: &ValidatedGraph) -> Result<SlopeResult, SlopeError> {
    compute_max_slope_with_budget(vg, DEFAULT_CYCLE_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    /// Different maximum slopes: the groups are not quasi-isometric.
    Distinguished { left: MaxSlope, right: MaxSlope },
    /// Equal maximum slopes; this says nothing either way.
    Inconclusive { slope: MaxSlope },
}

pub fn compare_max_slopes(left: MaxSlope, right: MaxSlope) -> Comparison {
    if left == right {
        Comparison::Inconclusive { slope: left }
    } else {
        Comparison::Distinguished { left, right }
    }
}

pub fn compare_groups_with_budget(
    a: &ValidatedGraph,
    b: &ValidatedGraph,
    budget: usize,
) -> Result<Comparison, SlopeError> {
    let left = compute_max_slope_with_budget(a, budget)?.max_slope();
    let right = compute_max_slope_with_budget(b, budget)?.max_slope();
    Ok(compare_max_slopes(left, right))
}

pub fn compare_groups(a: &ValidatedGraph, b: &ValidatedGraph) -> Result<Comparison, SlopeError> {
    compare_groups_with_budget(a, b, DEFAULT_CYCLE_BUDGET)
}
