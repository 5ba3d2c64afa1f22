//! A loop of parallel transitions with nonzero height: no graph of P-sets
//! exists and the slope is infinite.

use tubular::metric::{edge_heights, vertex_metrics};
use tubular::model::{validate, GroupGraph};
use tubular::pset::{fold, FoldOutcome};

fn main() {
    let g = GroupGraph::parse("vertex v\nedge x : v (2,0) -> v (1,0)\nedge y : v (0,1) -> v (1,1)\n").unwrap();
    let vg = validate(g).unwrap();
    let heights = edge_heights(&vg, &vertex_metrics(&vg));
    for h in &heights {
        println!("height of {} = {}", vg.graph().edges()[h.edge].name, h.h);
    }
    match fold(&vg, &heights) {
        FoldOutcome::Infinite(w) => {
            let names: Vec<String> = w
                .steps
                .iter()
                .map(|&(e, fwd)| format!("{}{}", vg.graph().edges()[e].name, if fwd { "" } else { "⁻¹" }))
                .collect();
            println!("infinite slope, witness {} with net height {}", names.join(" "), w.net_height);
            println!("recomputed: {}", w.height_from(&heights));
        }
        FoldOutcome::Folded(_) => println!("folded, slope is finite"),
    }
}
