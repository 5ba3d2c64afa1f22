//! Folds a description into its graph of P-sets and writes Graphviz DOT.
//!
//!     cargo run --example fold_to_dot | dot -Tsvg > pset.svg

use tubular::cli::pset_to_dot;
use tubular::metric::{edge_heights, vertex_metrics};
use tubular::model::{validate, GroupGraph};
use tubular::pset::{fold, FoldOutcome};

fn main() {
    let text = "vertex v\nedge x : v (4,0) -> v (16,1)\nedge y : v (4,0) -> v (16,-1)\n";
    let vg = validate(GroupGraph::parse(text).unwrap()).unwrap();
    let heights = edge_heights(&vg, &vertex_metrics(&vg));
    match fold(&vg, &heights) {
        FoldOutcome::Folded(p) => {
            for f in &p.folded {
                eprintln!("{} -> white {} φ = {}", f.name, f.white, f.phi.to_decimal(6));
            }
            print!("{}", pset_to_dot(&p, 6));
        }
        FoldOutcome::Infinite(w) => eprintln!("no graph of P-sets: {w}"),
    }
}
