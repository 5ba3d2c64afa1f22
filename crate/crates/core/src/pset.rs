//! Folding parallel edges into the graph of P-sets.
//!
//! Subdivide every edge at its midpoint and, at each vertex, identify the
//! half-edges that lie in a common parallel class. What remains is a bipartite
//! graph: black vertices are the original vertices, white vertices are the
//! classes of midpoints glued together, and each folded edge is one
//! `(vertex, parallel class)` pair.
//!
//! Each white vertex carries a potential `φ` on its folded edges, the height
//! from the white vertex down to the black one, such that the height of every
//! original edge is the difference of potentials across its white vertex. If
//! no such potential exists, some loop of parallel transitions has nonzero
//! height and the maximum slope is infinite.

use std::collections::VecDeque;
use std::fmt;

use crate::exactnum::LogRat;
use crate::metric::EdgeHeight;
use crate::model::{EdgeEnd, IntVec2, Side, ValidatedGraph};

/// `(vertex, parallel class index)`.
pub type ClassNode = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionArc {
    pub edge: usize,
    /// Index into [`TransitionGraph::nodes`] of the tail end's class.
    pub tail: usize,
    pub head: usize,
    pub weight: LogRat,
}

/// The original edges glued into one white vertex, as arcs between the
/// `(vertex, class)` nodes at their ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionGraph {
    pub nodes: Vec<ClassNode>,
    pub arcs: Vec<TransitionArc>,
}

/// A closed walk of original edges, parallel at every transition, whose net
/// height is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfiniteSlopeWitness {
    /// `(edge, forward)`; `forward` means traversed tail to head.
    pub steps: Vec<(usize, bool)>,
    pub net_height: LogRat,
}

impl InfiniteSlopeWitness {
    /// Net height recomputed from per-edge heights.
    pub fn height_from(&self, heights: &[EdgeHeight]) -> LogRat {
        self.steps
            .iter()
            .map(|&(e, fwd)| if fwd { heights[e].h.clone() } else { -&heights[e].h })
            .sum()
    }

    /// The edge-end a step leaves from and the one it arrives at.
    pub fn step_ends(&self, i: usize) -> (EdgeEnd, EdgeEnd) {
        let (edge, fwd) = self.steps[i];
        let (from, to) = if fwd {
            (Side::Tail, Side::Head)
        } else {
            (Side::Head, Side::Tail)
        };
        (EdgeEnd { edge, side: from }, EdgeEnd { edge, side: to })
    }
}

/// One `(vertex, class)` pair, joining black vertex `vertex` to white vertex
/// `white`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedEdge {
    pub vertex: usize,
    pub class: usize,
    pub direction: IntVec2,
    pub white: usize,
    /// Height from the white vertex to the black one; non-negative.
    pub phi: LogRat,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteVertex {
    /// Original edges glued into this white vertex, ascending.
    pub edges: Vec<usize>,
    /// Folded edges incident to this white vertex, ascending.
    pub folded: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSetGraph {
    pub black: Vec<String>,
    pub white: Vec<WhiteVertex>,
    /// Ordered by `(vertex, class)`; folded edge `3·v + c` is class `c` at `v`.
    pub folded: Vec<FoldedEdge>,
}

impl PSetGraph {
    pub fn folded_index(&self, node: ClassNode) -> usize {
        3 * node.0 + node.1
    }

    pub fn folded_edge(&self, node: ClassNode) -> &FoldedEdge {
        &self.folded[self.folded_index(node)]
    }

    pub fn black_valence(&self, v: usize) -> usize {
        self.folded.iter().filter(|f| f.vertex == v).count()
    }

    /// Graph-of-P-sets vertex count: black plus white.
    pub fn vertex_count(&self) -> usize {
        self.black.len() + self.white.len()
    }

    /// Whether the graph of P-sets is a tree (it is always connected).
    pub fn is_tree(&self) -> bool {
        self.folded.len() + 1 == self.vertex_count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoldOutcome {
    Folded(PSetGraph),
    Infinite(InfiniteSlopeWitness),
}

impl fmt::Display for InfiniteSlopeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, fwd)) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", if *fwd { "+" } else { "-" }, e)?;
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Groups original edges into white vertices: two edges fold together when
/// they have ends in a common parallel class at a common vertex. Components
/// are ordered by their smallest class node.
pub fn white_components(vg: &ValidatedGraph, heights: &[EdgeHeight]) -> Vec<TransitionGraph> {
    let n_nodes = 3 * vg.graph().vertices().len();
    let key = |(v, c): ClassNode| 3 * v + c;
    let end_node = |edge, side| vg.node_of(EdgeEnd { edge, side });
    let mut uf = UnionFind::new(n_nodes);
    for e in 0..vg.graph().edges().len() {
        uf.union(key(end_node(e, Side::Tail)), key(end_node(e, Side::Head)));
    }

    let mut comp_of_root = vec![usize::MAX; n_nodes];
    let mut comps: Vec<TransitionGraph> = Vec::new();
    let mut local = vec![usize::MAX; n_nodes];
    for (k, slot) in local.iter_mut().enumerate() {
        let root = uf.find(k);
        if comp_of_root[root] == usize::MAX {
            comp_of_root[root] = comps.len();
            comps.push(TransitionGraph {
                nodes: Vec::new(),
                arcs: Vec::new(),
            });
        }
        let comp = &mut comps[comp_of_root[root]];
        *slot = comp.nodes.len();
        comp.nodes.push((k / 3, k % 3));
    }
    for (e, h) in heights.iter().enumerate() {
        let t = key(end_node(e, Side::Tail));
        let hd = key(end_node(e, Side::Head));
        comps[comp_of_root[uf.find(t)]].arcs.push(TransitionArc {
            edge: e,
            tail: local[t],
            head: local[hd],
            weight: h.h.clone(),
        });
    }
    comps
}

/// Finds `φ` with `φ(head) - φ(tail) = weight` on every arc, normalized so the
/// minimum is 0, or a nonzero closed walk showing none exists.
pub fn assign_potentials(t: &TransitionGraph) -> Result<Vec<LogRat>, InfiniteSlopeWitness> {
    let n = t.nodes.len();
    // incident arcs per node
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, a) in t.arcs.iter().enumerate() {
        incident[a.tail].push(i);
        if a.head != a.tail {
            incident[a.head].push(i);
        }
    }

    let mut phi: Vec<Option<LogRat>> = vec![None; n];
    // parent[v] = (arc, parent node) in the spanning forest
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut in_tree = vec![false; t.arcs.len()];
    for root in 0..n {
        if phi[root].is_some() {
            continue;
        }
        phi[root] = Some(LogRat::zero());
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let pu = phi[u].clone().expect("queued nodes have potentials");
            for &ai in &incident[u] {
                let a = &t.arcs[ai];
                let (w, value) = if a.tail == u {
                    (a.head, &pu + &a.weight)
                } else {
                    (a.tail, &pu + &(-&a.weight))
                };
                if phi[w].is_none() {
                    phi[w] = Some(value);
                    parent[w] = Some((ai, u));
                    depth[w] = depth[u] + 1;
                    in_tree[ai] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let phi: Vec<LogRat> = phi.into_iter().map(|p| p.expect("all nodes reached")).collect();

    for (ai, a) in t.arcs.iter().enumerate() {
        if in_tree[ai] {
            continue;
        }
        let diff = &phi[a.head] + &(-&phi[a.tail]);
        if diff != a.weight {
            return Err(witness_for(t, &parent, &depth, ai));
        }
    }

    let min = phi.iter().min().cloned().unwrap_or_default();
    let shift = -&min;
    Ok(phi.iter().map(|p| p + &shift).collect())
}

/// Arc `ai` forward, then the tree path from its head back to its tail.
fn witness_for(
    t: &TransitionGraph,
    parent: &[Option<(usize, usize)>],
    depth: &[usize],
    ai: usize,
) -> InfiniteSlopeWitness {
    let a = &t.arcs[ai];
    // Climb from both ends to the common ancestor.
    let (mut x, mut y) = (a.head, a.tail);
    let mut up_from_head = Vec::new();
    let mut up_from_tail = Vec::new();
    while x != y {
        if depth[x] >= depth[y] {
            let (arc, p) = parent[x].expect("non-root has a parent");
            up_from_head.push((arc, x));
            x = p;
        } else {
            let (arc, p) = parent[y].expect("non-root has a parent");
            up_from_tail.push((arc, y));
            y = p;
        }
    }
    let mut steps = vec![(t.arcs[ai].edge, true)];
    let mut weight = a.weight.clone();
    // head -> ancestor: each tree arc is walked from child to parent.
    for &(arc, child) in &up_from_head {
        let fwd = t.arcs[arc].tail == child;
        steps.push((t.arcs[arc].edge, fwd));
        weight = weight + if fwd { t.arcs[arc].weight.clone() } else { -&t.arcs[arc].weight };
    }
    // ancestor -> tail: walk the tail-side arcs from parent to child.
    for &(arc, child) in up_from_tail.iter().rev() {
        let fwd = t.arcs[arc].head == child;
        steps.push((t.arcs[arc].edge, fwd));
        weight = weight + if fwd { t.arcs[arc].weight.clone() } else { -&t.arcs[arc].weight };
    }
    InfiniteSlopeWitness {
        steps,
        net_height: weight,
    }
}

/// Builds the graph of P-sets, or stops at the first white vertex whose
/// transitions admit a nonzero parallel loop.
pub fn fold(vg: &ValidatedGraph, heights: &[EdgeHeight]) -> FoldOutcome {
    let graph = vg.graph();
    let comps = white_components(vg, heights);
    let n_folded = 3 * graph.vertices().len();
    let mut white_of = vec![usize::MAX; n_folded];
    let mut phi_of: Vec<Option<LogRat>> = vec![None; n_folded];
    let mut white = Vec::with_capacity(comps.len());
    for (w, comp) in comps.iter().enumerate() {
        let phi = match assign_potentials(comp) {
            Ok(phi) => phi,
            Err(witness) => return FoldOutcome::Infinite(witness),
        };
        let mut folded = Vec::with_capacity(comp.nodes.len());
        for (&(v, c), p) in comp.nodes.iter().zip(phi) {
            white_of[3 * v + c] = w;
            phi_of[3 * v + c] = Some(p);
            folded.push(3 * v + c);
        }
        folded.sort_unstable();
        let mut edges: Vec<usize> = comp.arcs.iter().map(|a| a.edge).collect();
        edges.sort_unstable();
        white.push(WhiteVertex { edges, folded });
    }

    let folded = (0..n_folded)
        .map(|k| {
            let (vertex, class) = (k / 3, k % 3);
            let direction = vg.vertex_classes(vertex).classes[class].direction;
            FoldedEdge {
                vertex,
                class,
                direction,
                white: white_of[k],
                phi: phi_of[k].take().expect("every class node lies in a component"),
                name: format!("{}:{}", graph.vertices()[vertex], direction),
            }
        })
        .collect();
    FoldOutcome::Folded(PSetGraph {
        black: graph.vertices().to_vec(),
        white,
        folded,
    })
}
