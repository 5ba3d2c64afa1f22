//! The `tubular` command line: reports, JSON, and DOT rendering.
//!
//! Everything here is reachable as a library so that the binary stays a
//! one-line wrapper around [`run`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::exactnum::{fmt_rational, LogRat, Rational, SlopeValue, MAX_DIGITS};
use crate::metric::{edge_heights, vertex_metrics, EdgeHeight, VertexMetric};
use crate::model::{parse_group_graph, validate, Side, ValidatedGraph};
use crate::pset::{fold, FoldOutcome, InfiniteSlopeWitness, PSetGraph};
use crate::slope::{
    compare_max_slopes, max_slope_of, Comparison, LoopWitness, MaxSlope, SlopeError, SlopeResult,
    DEFAULT_CYCLE_BUDGET,
};

pub const DEFAULT_DIGITS: usize = 12;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Budget(#[from] SlopeError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

/// Reads and validates a `.tg` file.
pub fn load(path: &Path) -> Result<ValidatedGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let graph =
        parse_group_graph(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    validate(graph).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Everything computed for one input.
#[derive(Debug, Clone)]
pub struct Report {
    pub vertex_names: Vec<String>,
    pub edge_names: Vec<String>,
    pub metrics: Vec<VertexMetric>,
    pub heights: Vec<EdgeHeight>,
    pub pset: Option<PSetGraph>,
    pub result: SlopeResult,
    pub digits: usize,
}

impl Report {
    pub fn build(vg: &ValidatedGraph, digits: usize, budget: usize) -> Result<Report, SlopeError> {
        let metrics = vertex_metrics(vg);
        let heights = edge_heights(vg, &metrics);
        let (pset, result) = match fold(vg, &heights) {
            FoldOutcome::Infinite(w) => (None, SlopeResult::Infinite(w)),
            FoldOutcome::Folded(p) => {
                let (slope, witness) = max_slope_of(&p, budget)?;
                let result = SlopeResult::Finite {
                    approx: slope.to_f64(),
                    slope,
                    witness,
                };
                (Some(p), result)
            }
        };
        Ok(Report {
            vertex_names: vg.graph().vertices().to_vec(),
            edge_names: vg.graph().edges().iter().map(|e| e.name.clone()).collect(),
            metrics,
            heights,
            pset,
            result,
            digits,
        })
    }

    /// Names along the witness: folded edges for a loop, signed original
    /// edges for an infinite-slope walk.
    pub fn witness_names(&self) -> Vec<String> {
        match &self.result {
            SlopeResult::Infinite(w) => w.steps.iter().map(|&(e, _)| self.edge_names[e].clone()).collect(),
            SlopeResult::Finite {
                witness: LoopWitness::Loop(l),
                ..
            } => {
                let p = self.pset.as_ref().expect("finite result carries a graph of P-sets");
                l.edge_names(p).into_iter().map(str::to_string).collect()
            }
            SlopeResult::Finite { .. } => Vec::new(),
        }
    }

    pub fn headline(&self) -> String {
        match &self.result {
            SlopeResult::Infinite(_) => "max slope = infinite".to_string(),
            SlopeResult::Finite { slope, .. } => format!(
                "max slope = {} (exact: {})",
                slope.to_decimal(self.digits),
                slope
            ),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let d = self.digits;
        writeln!(out, "{}", self.headline()).unwrap();
        match &self.result {
            SlopeResult::Infinite(w) => {
                writeln!(
                    out,
                    "witness: parallel loop {} with net height {} = {}",
                    self.signed_steps(w),
                    w.net_height,
                    w.net_height.to_decimal(d)
                )
                .unwrap();
            }
            SlopeResult::Finite { witness, .. } => match witness {
                LoopWitness::Acyclic => writeln!(out, "witness: graph of P-sets is a tree").unwrap(),
                LoopWitness::Loop(l) => writeln!(
                    out,
                    "witness: embedded loop {} ({} twists)",
                    self.witness_names().join(" "),
                    l.twists()
                )
                .unwrap(),
            },
        }
        writeln!(
            out,
            "input: {} vertices, {} edges",
            self.vertex_names.len(),
            self.edge_names.len()
        )
        .unwrap();
        for (name, m) in self.vertex_names.iter().zip(&self.metrics) {
            writeln!(
                out,
                "vertex {name}: metric [[{}, {}], [{}, {}]]",
                fmt_rational(&m.m11),
                fmt_rational(&m.m12),
                fmt_rational(&m.m12),
                fmt_rational(&m.m22)
            )
            .unwrap();
        }
        for (name, h) in self.edge_names.iter().zip(&self.heights) {
            writeln!(out, "edge {name}: height {} = {}", h.h, h.h.to_decimal(d)).unwrap();
        }
        if let Some(p) = &self.pset {
            writeln!(
                out,
                "graph of P-sets: {} black, {} white, {} folded edges",
                p.black.len(),
                p.white.len(),
                p.folded.len()
            )
            .unwrap();
        }
        out
    }

    fn signed_steps(&self, w: &InfiniteSlopeWitness) -> String {
        w.steps
            .iter()
            .map(|&(e, fwd)| {
                if fwd {
                    self.edge_names[e].clone()
                } else {
                    format!("{}^-1", self.edge_names[e])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edge_names
            .iter()
            .zip(&self.heights)
            .map(|(name, h)| {
                json!({
                    "name": name,
                    "q_num": h.h.q().numer().to_string(),
                    "q_den": h.h.q().denom().to_string(),
                    "approx": h.h.to_f64(),
                })
            })
            .collect();
        let vertices: Vec<Value> = self
            .vertex_names
            .iter()
            .zip(&self.metrics)
            .map(|(name, m)| {
                json!({
                    "name": name,
                    "metric": {
                        "m11": ratio_string(&m.m11),
                        "m12": ratio_string(&m.m12),
                        "m22": ratio_string(&m.m22),
                    },
                })
            })
            .collect();
        let mut doc = json!({
            "status": if self.result.is_infinite() { "infinite" } else { "finite" },
            "witness": self.witness_names(),
            "edges": edges,
            "vertices": vertices,
            "input": {
                "vertices": self.vertex_names.len(),
                "edges": self.edge_names.len(),
            },
        });
        let obj = doc.as_object_mut().expect("object literal");
        match &self.result {
            SlopeResult::Infinite(w) => {
                obj.insert("witness_kind".into(), json!("parallel_loop"));
                obj.insert(
                    "witness_forward".into(),
                    json!(w.steps.iter().map(|&(_, f)| f).collect::<Vec<_>>()),
                );
                obj.insert("witness_net_height".into(), lograt_json(&w.net_height));
            }
            SlopeResult::Finite { slope, witness, .. } => {
                obj.insert("max_slope".into(), slope_json(slope));
                let kind = match witness {
                    LoopWitness::Loop(_) => "embedded_loop",
                    LoopWitness::Acyclic => "acyclic",
                };
                obj.insert("witness_kind".into(), json!(kind));
            }
        }
        if let Some(p) = &self.pset {
            obj.insert(
                "pset".into(),
                json!({
                    "black": p.black.len(),
                    "white": p.white.len(),
                    "folded_edges": p.folded.len(),
                }),
            );
        }
        doc
    }
}

fn ratio_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn lograt_json(h: &LogRat) -> Value {
    json!({
        "q_num": h.q().numer().to_string(),
        "q_den": h.q().denom().to_string(),
        "approx": h.to_f64(),
    })
}

fn slope_json(s: &SlopeValue) -> Value {
    json!({
        "q_num": s.q().numer().to_string(),
        "q_den": s.q().denom().to_string(),
        "twists": s.twists(),
        "approx": s.to_f64(),
    })
}

/// Graphviz rendering of the graph of P-sets: black vertices filled, white
/// vertices open, zero-height folded edges unlabeled.
pub fn pset_to_dot(p: &PSetGraph, digits: usize) -> String {
    let mut out = String::from("graph pset {\n    node [shape=circle, label=\"\", width=0.25];\n");
    for (i, name) in p.black.iter().enumerate() {
        writeln!(
            out,
            "    \"b{i}\" [style=filled, fillcolor=black, xlabel=\"{}\"];",
            dot_escape(name)
        )
        .unwrap();
    }
    for i in 0..p.white.len() {
        writeln!(out, "    \"w{i}\" [width=0.4];").unwrap();
    }
    for f in &p.folded {
        write!(out, "    \"b{}\" -- \"w{}\"", f.vertex, f.white).unwrap();
        if !f.phi.is_zero() {
            write!(out, " [label=\"{}\"]", f.phi.to_decimal(digits)).unwrap();
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn pset_to_json(p: &PSetGraph) -> Value {
    let folded: Vec<Value> = p
        .folded
        .iter()
        .map(|f| {
            json!({
                "name": f.name,
                "black": p.black[f.vertex],
                "white": f.white,
                "direction": [f.direction.x, f.direction.y],
                "phi": lograt_json(&f.phi),
            })
        })
        .collect();
    let white: Vec<Value> = p
        .white
        .iter()
        .map(|w| json!({ "folded": w.folded, "edges": w.edges }))
        .collect();
    json!({ "black": p.black, "white": white, "folded": folded })
}

/// Per-vertex parallel class table.
pub fn class_table(vg: &ValidatedGraph) -> String {
    let g = vg.graph();
    let mut out = format!(
        "ok: {} vertices, {} edges, 3 parallel classes at every vertex\n",
        g.vertices().len(),
        g.edges().len()
    );
    for (v, name) in g.vertices().iter().enumerate() {
        writeln!(out, "vertex {name}").unwrap();
        for c in &vg.vertex_classes(v).classes {
            let ends: Vec<String> = c
                .ends
                .iter()
                .map(|end| {
                    let side = match end.side {
                        Side::Tail => "tail",
                        Side::Head => "head",
                    };
                    format!("{}.{side}", g.edges()[end.edge].name)
                })
                .collect();
            writeln!(out, "  class {}: {}", c.direction, ends.join(", ")).unwrap();
        }
    }
    out
}

#[derive(Debug, Parser)]
#[command(
    name = "tubular",
    version,
    about = "Maximum slope invariant of tubular groups, computed exactly"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Significant digits in decimal output
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS)]
    digits: usize,
    /// Abort if the graph of P-sets has more embedded loops than this
    #[arg(long, global = true, default_value_t = DEFAULT_CYCLE_BUDGET)]
    max_cycles: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a description and list the parallel classes at each vertex
    Check { path: PathBuf },
    /// Build the graph of P-sets
    Fold {
        path: PathBuf,
        /// Write Graphviz DOT here (`-` for stdout)
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the graph as JSON (stdout when no path is given)
        #[arg(long, num_args = 0..=1)]
        json: Option<Option<PathBuf>>,
    },
    /// Compute the maximum slope
    Slope {
        path: PathBuf,
        /// JSON report (stdout when no path is given)
        #[arg(long, num_args = 0..=1)]
        json: Option<Option<PathBuf>>,
    },
    /// Compare the maximum slopes of two groups
    Compare { left: PathBuf, right: PathBuf },
}

fn emit(target: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match target {
        Some(path) if path != Path::new("-") => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        _ => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("stdout: {e}"))),
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn execute(args: Args, out: &mut dyn Write) -> Result<(), CliError> {
    if !(1..=MAX_DIGITS).contains(&args.digits) {
        return Err(CliError::Input(format!(
            "--digits must be between 1 and {MAX_DIGITS}"
        )));
    }
    let (digits, budget) = (args.digits, args.max_cycles);
    let w = |out: &mut dyn Write, s: &str| emit(None, s, out);
    match args.command {
        Command::Check { path } => {
            let vg = load(&path)?;
            w(out, &class_table(&vg))
        }
        Command::Fold { path, dot, json } => {
            let vg = load(&path)?;
            let heights = edge_heights(&vg, &vertex_metrics(&vg));
            let p = match fold(&vg, &heights) {
                FoldOutcome::Folded(p) => p,
                FoldOutcome::Infinite(_) => {
                    let report = Report::build(&vg, digits, budget)?;
                    return w(
                        out,
                        &format!(
                            "no graph of P-sets: a parallel loop has nonzero height\n{}",
                            report.to_text()
                        ),
                    );
                }
            };
            if dot.is_none() && json.is_none() {
                w(
                    out,
                    &format!(
                        "graph of P-sets: {} black, {} white, {} folded edges\n",
                        p.black.len(),
                        p.white.len(),
                        p.folded.len()
                    ),
                )?;
            }
            if let Some(target) = &dot {
                emit(Some(target), &pset_to_dot(&p, digits), out)?;
            }
            if let Some(target) = &json {
                emit(target.as_deref(), &json_text(&pset_to_json(&p)), out)?;
            }
            Ok(())
        }
        Command::Slope { path, json } => {
            let vg = load(&path)?;
            let report = Report::build(&vg, digits, budget)?;
            match json {
                Some(target) => emit(target.as_deref(), &json_text(&report.to_json()), out),
                None => w(out, &report.to_text()),
            }
        }
        Command::Compare { left, right } => {
            let a = Report::build(&load(&left)?, digits, budget)?;
            let b = Report::build(&load(&right)?, digits, budget)?;
            let show = |m: &MaxSlope| m.to_decimal(digits);
            let exact = |m: &MaxSlope| match m {
                MaxSlope::Infinite => "infinite".to_string(),
                MaxSlope::Finite(s) => s.to_string(),
            };
            let text = match compare_max_slopes(a.result.max_slope(), b.result.max_slope()) {
                Comparison::Distinguished { left: l, right: r } => format!(
                    "DISTINGUISHED {} ≠ {} (not quasi-isometric)\n{}: {}\n{}: {}\n",
                    show(&l),
                    show(&r),
                    left.display(),
                    exact(&l),
                    right.display(),
                    exact(&r)
                ),
                Comparison::Inconclusive { slope } => format!(
                    "INCONCLUSIVE (equal maximum slope)\nboth: {} = {}\n",
                    show(&slope),
                    exact(&slope)
                ),
            };
            w(out, &text)
        }
    }
}

/// Runs the command line and returns the process exit code: 0 on success
/// (including an infinite slope), 1 on usage, input, or validation errors, 3
/// when the cycle budget is exceeded.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(args, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> String {
        format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["tubular"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn slope_text() {
        let (code, out, _) = run_args(&["slope", &fixture("bb_1_2.tg")]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next().unwrap(), "max slope = 2 (exact: (1/2)·log2(16)/1)");
    }

    #[test]
    fn dot_counts() {
        let p = {
            let vg = load(Path::new(&fixture("bb_4_16.tg"))).unwrap();
            match fold(&vg, &edge_heights(&vg, &vertex_metrics(&vg))) {
                FoldOutcome::Folded(p) => p,
                _ => panic!(),
            }
        };
        let dot = pset_to_dot(&p, 12);
        assert_eq!(dot.lines().filter(|l| l.contains("\" [") && !l.contains("--")).count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot.matches("label=\"3\"").count(), 1);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&["frobnicate"]).0, 1);
        assert_eq!(run_args(&["slope"]).0, 1);
        assert_eq!(run_args(&["slope", &fixture("bb_1_2.tg"), "--digits", "0"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
    }
}
