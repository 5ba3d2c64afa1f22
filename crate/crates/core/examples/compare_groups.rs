//! Compares two descriptions by maximum slope. Different slopes prove the
//! groups are not quasi-isometric; equal slopes prove nothing.

use tubular::model::{validate, GroupGraph, ValidatedGraph};
use tubular::slope::{compare_groups, Comparison};

fn load(text: &str) -> ValidatedGraph {
    validate(GroupGraph::parse(text).unwrap()).unwrap()
}

fn main() {
    let bb12 = load("vertex v\nedge x : v (1,0) -> v (2,1)\nedge y : v (1,0) -> v (2,-1)\n");
    let bb24 = load("vertex v\nedge x : v (2,0) -> v (4,1)\nedge y : v (2,0) -> v (4,-1)\n");
    let bb13 = load("vertex v\nedge x : v (1,0) -> v (3,1)\nedge y : v (1,0) -> v (3,-1)\n");

    for (name, a, b) in [("BB(1,2) vs BB(2,4)", &bb12, &bb24), ("BB(1,2) vs BB(1,3)", &bb12, &bb13)] {
        match compare_groups(a, b).unwrap() {
            Comparison::Distinguished { left, right } => {
                println!("{name}: distinguished, {} vs {}", left.to_decimal(10), right.to_decimal(10))
            }
            Comparison::Inconclusive { slope } => {
                println!("{name}: inconclusive, both {}", slope.to_decimal(10))
            }
        }
    }
}
