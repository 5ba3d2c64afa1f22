//! Maximum slopes of the Baumslag-Solitar style family BB(p, r): one vertex,
//! two loops `x` and `y` joining `(p,0)` to `(r,±1)`.

use tubular::model::{validate, GroupGraph, IntVec2};
use tubular::slope::{compute_max_slope, MaxSlope};

fn bb(p: i64, r: i64) -> GroupGraph {
    let mut g = GroupGraph::new();
    let v = g.add_vertex("v").unwrap();
    g.add_edge("x", v, IntVec2::new(p, 0), v, IntVec2::new(r, 1)).unwrap();
    g.add_edge("y", v, IntVec2::new(p, 0), v, IntVec2::new(r, -1)).unwrap();
    g
}

fn main() {
    println!("{:>3} {:>3}  {:<12} exact", "p", "r", "slope");
    for r in 2..=6 {
        for p in 1..r {
            let vg = validate(bb(p, r)).expect("three classes at v");
            let result = compute_max_slope(&vg).unwrap();
            let s = result.max_slope();
            let exact = match &s {
                MaxSlope::Finite(v) => v.to_string(),
                MaxSlope::Infinite => "infinite".into(),
            };
            println!("{p:>3} {r:>3}  {:<12} {exact}", s.to_decimal(8));
        }
    }
}
