//! Exact computation of the maximum-slope quasi-isometry invariant of tubular
//! groups.
//!
//! A tubular group is described as a graph of groups whose vertex groups are
//! `Z^2` and whose edge groups are `Z`. The pipeline is:
//!
//! 1. [`model`]: parse a `.tg` description and validate that every vertex sees
//!    exactly three parallel classes of edge injections.
//! 2. [`metric`]: put the symmetric (pairwise 60 degree) metric on every vertex
//!    plane and compute the height change across every edge.
//! 3. [`pset`]: fold parallel edges into the graph of P-sets, or detect a
//!    parallel loop of nonzero height (infinite slope).
//! 4. [`slope`]: maximize |height| / twists over the embedded loops of the
//!    graph of P-sets.
//!
//! Every height is carried exactly as `(1/2)·log2(q)` for a positive rational
//! `q` (see [`exactnum`]); floating point only appears in rendered output and
//! in the independent cross-check oracle.

pub mod cli;
pub mod exactnum;
pub mod metric;
pub mod model;
pub mod oracle;
pub mod pset;
pub mod slope;

pub use exactnum::{LogRat, Rational, SlopeValue};
pub use metric::{EdgeHeight, VertexMetric};
pub use model::{Edge, GroupGraph, IntVec2, ModelError, ValidatedGraph};
pub use pset::{FoldOutcome, InfiniteSlopeWitness, PSetGraph};
pub use slope::{compare_groups, compute_max_slope, Comparison, SlopeError, SlopeResult};
