#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use tubular::exactnum::{LogRat, Rational};
use tubular::metric::{edge_heights, vertex_metrics, EdgeHeight, Unimodular, VertexMetric};
use tubular::model::{validate, EdgeEnd, GroupGraph, IntVec2, Side, ValidatedGraph};
use tubular::pset::{FoldOutcome, PSetGraph};

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(format!("{FIXTURES}/{name}")).unwrap()
}

pub fn fixture(name: &str) -> ValidatedGraph {
    validate(GroupGraph::parse(&fixture_text(name)).unwrap()).unwrap()
}

/// BB(p, r) from the shipped template.
pub fn bb(p: i64, r: i64) -> ValidatedGraph {
    let text = fixture_text("bb_template.tg")
        .replace("(p,", &format!("({p},"))
        .replace("(r,", &format!("({r},"));
    validate(GroupGraph::parse(&text).unwrap()).unwrap()
}

fn random_primitive(rng: &mut impl Rng) -> IntVec2 {
    loop {
        let v = IntVec2::new(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        if let Ok(d) = v.primitive_direction() {
            return d;
        }
    }
}

/// A random connected description with `1..=max_vertices` vertices, three
/// parallel classes at every vertex, and edge vectors that are small
/// multiples of the class directions.
pub fn random_instance(rng: &mut impl Rng, max_vertices: usize) -> GroupGraph {
    let n = rng.gen_range(1..=max_vertices);
    let dirs: Vec<[IntVec2; 3]> = (0..n)
        .map(|_| loop {
            let t = [random_primitive(rng), random_primitive(rng), random_primitive(rng)];
            if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] {
                break t;
            }
        })
        .collect();
    let mut ends: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        ends.push(((u, rng.gen_range(0..3)), (v, rng.gen_range(0..3))));
    }
    for _ in 0..rng.gen_range(0..=n) {
        let a = (rng.gen_range(0..n), rng.gen_range(0..3));
        let b = (rng.gen_range(0..n), rng.gen_range(0..3));
        ends.push((a, b));
    }
    for v in 0..n {
        for c in 0..3 {
            let used = ends.iter().any(|&(a, b)| a == (v, c) || b == (v, c));
            if !used {
                let other = (rng.gen_range(0..n), rng.gen_range(0..3));
                ends.push(((v, c), other));
            }
        }
    }
    ends.shuffle(rng);

    let mut g = GroupGraph::new();
    for v in 0..n {
        g.add_vertex(format!("v{v}")).unwrap();
    }
    let scale = |rng: &mut dyn rand::RngCore, d: IntVec2| {
        let k = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { -1 } else { 1 };
        IntVec2::new(d.x * k, d.y * k)
    };
    for (i, ((tv, tc), (hv, hc))) in ends.into_iter().enumerate() {
        if rng.gen_bool(0.5) {
            // swap ends sometimes so heads are not always the later vertex
            let tail_vec = scale(rng, dirs[hv][hc]);
            let head_vec = scale(rng, dirs[tv][tc]);
            g.add_edge(format!("e{i}"), hv, tail_vec, tv, head_vec).unwrap();
        } else {
            let tail_vec = scale(rng, dirs[tv][tc]);
            let head_vec = scale(rng, dirs[hv][hc]);
            g.add_edge(format!("e{i}"), tv, tail_vec, hv, head_vec).unwrap();
        }
    }
    g
}

pub fn random_valid(rng: &mut impl Rng, max_vertices: usize) -> ValidatedGraph {
    validate(random_instance(rng, max_vertices)).expect("generator builds valid descriptions")
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `vᵀ M w`, written out independently of the library's own inner product.
pub fn form(m: &VertexMetric, v: IntVec2, w: IntVec2) -> Rational {
    &m.m11 * rat(v.x * w.x) + &m.m12 * rat(v.x * w.y + v.y * w.x) + &m.m22 * rat(v.y * w.y)
}

/// The pairwise 60 degree identity `4·(dᵢᵀMdⱼ)² = (dᵢᵀMdᵢ)(dⱼᵀMdⱼ)`.
pub fn sixty_degree_violations(vg: &ValidatedGraph) -> Vec<String> {
    let metrics = vertex_metrics(vg);
    let mut bad = Vec::new();
    for (v, m) in metrics.iter().enumerate() {
        let d = vg.vertex_classes(v).directions();
        for i in 0..3 {
            for j in i + 1..3 {
                let ij = form(m, d[i], d[j]);
                if rat(4) * &ij * &ij != form(m, d[i], d[i]) * form(m, d[j], d[j]) {
                    bad.push(format!("vertex {v}: {} vs {}", d[i], d[j]));
                }
            }
        }
    }
    bad
}

/// Structural and height-preservation checks on a fold, from public data
/// only. Returns a list of violations.
pub fn fold_violations(vg: &ValidatedGraph, heights: &[EdgeHeight], p: &PSetGraph) -> Vec<String> {
    let mut bad = Vec::new();
    let g = vg.graph();
    for v in 0..g.vertices().len() {
        if p.black_valence(v) != 3 {
            bad.push(format!("black vertex {v} has valence {}", p.black_valence(v)));
        }
    }
    if p.folded.len() != 3 * g.vertices().len() {
        bad.push("folded edge count is not 3·|V|".into());
    }
    for (e, edge) in g.edges().iter().enumerate() {
        let t = p.folded_edge(vg.node_of(EdgeEnd { edge: e, side: Side::Tail }));
        let h = p.folded_edge(vg.node_of(EdgeEnd { edge: e, side: Side::Head }));
        if t.white != h.white {
            bad.push(format!("edge {} ends in two white vertices", edge.name));
        }
        let diff = &h.phi + &(-&t.phi);
        if diff != heights[e].h {
            bad.push(format!("edge {}: φ difference {} != height {}", edge.name, diff, heights[e].h));
        }
    }
    for (w, white) in p.white.iter().enumerate() {
        let phis: Vec<&LogRat> = white.folded.iter().map(|&k| &p.folded[k].phi).collect();
        if phis.iter().any(|f| f.sign().is_lt()) {
            bad.push(format!("white vertex {w} has a negative φ"));
        }
        if !phis.iter().any(|f| f.is_zero()) {
            bad.push(format!("white vertex {w} has no φ = 0 edge"));
        }
        if white.folded.iter().any(|&k| p.folded[k].white != w) {
            bad.push(format!("white vertex {w} lists a foreign folded edge"));
        }
    }
    bad
}

pub fn heights(vg: &ValidatedGraph) -> Vec<EdgeHeight> {
    edge_heights(vg, &vertex_metrics(vg))
}

pub fn fold_of(vg: &ValidatedGraph) -> FoldOutcome {
    tubular::pset::fold(vg, &heights(vg))
}

pub fn random_unimodular(rng: &mut impl Rng) -> Unimodular {
    let mut u = Unimodular::IDENTITY;
    for _ in 0..rng.gen_range(1..=4) {
        let k = rng.gen_range(-2..=2);
        let step = match rng.gen_range(0..3) {
            0 => Unimodular { rows: [[1, k], [0, 1]] },
            1 => Unimodular { rows: [[1, 0], [k, 1]] },
            _ => Unimodular { rows: [[0, 1], [1, 0]] },
        };
        u = step.compose(&u);
    }
    u
}

fn apply(u: &Unimodular, v: IntVec2) -> IntVec2 {
    let (x, y) = u.apply(v);
    IntVec2::new(x as i64, y as i64)
}

/// Rewrites every vector at vertex `v` in the basis given by `u`.
pub fn rebase_vertex(g: &GroupGraph, v: usize, u: &Unimodular) -> GroupGraph {
    let mut out = GroupGraph::new();
    for name in g.vertices() {
        out.add_vertex(name.clone()).unwrap();
    }
    for e in g.edges() {
        let tv = if e.tail == v { apply(u, e.tail_vec) } else { e.tail_vec };
        let hv = if e.head == v { apply(u, e.head_vec) } else { e.head_vec };
        out.add_edge(e.name.clone(), e.tail, tv, e.head, hv).unwrap();
    }
    out
}

/// Swaps tail and head (with their vectors) of edge `which`.
pub fn reorient_edge(g: &GroupGraph, which: usize) -> GroupGraph {
    let mut out = GroupGraph::new();
    for name in g.vertices() {
        out.add_vertex(name.clone()).unwrap();
    }
    for (i, e) in g.edges().iter().enumerate() {
        if i == which {
            out.add_edge(e.name.clone(), e.head, e.head_vec, e.tail, e.tail_vec).unwrap();
        } else {
            out.add_edge(e.name.clone(), e.tail, e.tail_vec, e.head, e.head_vec).unwrap();
        }
    }
    out
}

/// Shuffles vertex and edge order and gives everything fresh names.
pub fn rename_and_shuffle(rng: &mut impl Rng, g: &GroupGraph) -> GroupGraph {
    let mut vperm: Vec<usize> = (0..g.vertices().len()).collect();
    vperm.shuffle(rng);
    // new position of old vertex i
    let mut pos = vec![0; vperm.len()];
    for (new, &old) in vperm.iter().enumerate() {
        pos[old] = new;
    }
    let mut out = GroupGraph::new();
    for new in 0..vperm.len() {
        out.add_vertex(format!("r{new}")).unwrap();
    }
    let mut eperm: Vec<usize> = (0..g.edges().len()).collect();
    eperm.shuffle(rng);
    for (k, &old) in eperm.iter().enumerate() {
        let e = &g.edges()[old];
        out.add_edge(format!("z{k}_{old}"), pos[e.tail], e.tail_vec, pos[e.head], e.head_vec)
            .unwrap();
    }
    out
}

/// Metrics built with a random ordering of each vertex's directions.
pub fn permuted_metrics(rng: &mut impl Rng, vg: &ValidatedGraph) -> Vec<VertexMetric> {
    vg.all_vertex_classes()
        .iter()
        .map(|vc| {
            let mut d = vc.directions();
            d.shuffle(rng);
            VertexMetric::symmetric_form(d[0], d[1], d[2]).unwrap()
        })
        .collect()
}

/// Canonical metrics, each multiplied by a random positive rational.
pub fn rescaled_metrics(rng: &mut impl Rng, vg: &ValidatedGraph) -> Vec<VertexMetric> {
    vertex_metrics(vg)
        .into_iter()
        .map(|m| {
            let f = Rational::new(BigInt::from(rng.gen_range(1..50)), BigInt::from(rng.gen_range(1..50)));
            m.scaled(&f)
        })
        .collect()
}
