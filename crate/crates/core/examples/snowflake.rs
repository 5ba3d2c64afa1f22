//! Parses a three vertex snowflake description and prints its full report:
//! metrics, edge heights, the graph of P-sets and the slope witness.

use tubular::cli::Report;
use tubular::model::{validate, GroupGraph};
use tubular::slope::DEFAULT_CYCLE_BUDGET;

const SNOWFLAKE: &str = include_str!("../fixtures/snowflake_16_4.tg");

fn main() {
    let vg = validate(GroupGraph::parse(SNOWFLAKE).unwrap()).unwrap();
    let report = Report::build(&vg, 12, DEFAULT_CYCLE_BUDGET).unwrap();
    print!("{}", report.to_text());
}
