//! Graph-of-groups descriptions: the `.tg` text format and validation of the
//! three-parallel-classes assumption.
//!
//! Every vertex group is `Z^2 = <a, b>` with a fixed basis; an edge carries the
//! image of the edge-group generator at each end as an integer vector
//! `(x, y)` standing for the word `a^x b^y`.
//!
//! ```text
//! # BB(1,2)
//! vertex v
//! edge x : v (1,0) -> v (2,1)
//! edge y : v (1,0) -> v (2,-1)
//! ```

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate {kind} name `{name}`")]
    DuplicateName {
        line: usize,
        kind: &'static str,
        name: String,
    },
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: the zero vector is not a valid edge-group generator image")]
    ZeroVector { line: usize },
    #[error("the zero vector is not a group element with a direction")]
    InvalidElement,
    #[error(
        "vertex `{vertex}` has {count} parallel classes of incident edge groups; exactly 3 are \
         required (vertices with 4 or more classes belong to the generalized procedure and are \
         not supported)"
    )]
    WrongClassCount { vertex: String, count: usize },
    #[error("the underlying graph is disconnected (vertex `{unreached}` is not reachable from `{root}`)")]
    Disconnected { root: String, unreached: String },
}

/// The word `a^x b^y` in `Z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec2 {
    pub x: i64,
    pub y: i64,
}

impl IntVec2 {
    pub const fn new(x: i64, y: i64) -> Self {
        IntVec2 { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Generator of the maximal cyclic subgroup containing `self`, with the
    /// first nonzero coordinate positive. Two vectors lie in a common maximal
    /// cyclic subgroup iff their primitive directions are equal.
    pub fn primitive_direction(&self) -> Result<IntVec2, ModelError> {
        if self.is_zero() {
            return Err(ModelError::InvalidElement);
        }
        let g = self.x.gcd(&self.y);
        let (mut x, mut y) = (self.x / g, self.y / g);
        if x < 0 || (x == 0 && y < 0) {
            x = -x;
            y = -y;
        }
        Ok(IntVec2 { x, y })
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.x.gcd(&self.y) == 1
    }
}

impl fmt::Display for IntVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    pub tail_vec: IntVec2,
    pub head_vec: IntVec2,
}

impl Edge {
    pub fn end(&self, side: Side) -> (usize, IntVec2) {
        match side {
            Side::Tail => (self.tail, self.tail_vec),
            Side::Head => (self.head, self.head_vec),
        }
    }
}

/// A graph of groups with `Z^2` vertex groups and `Z` edge groups. Loops and
/// multi-edges are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl GroupGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize, ModelError> {
        let name = name.into();
        if self.vertex_index(&name).is_some() {
            return Err(ModelError::DuplicateName {
                line: 0,
                kind: "vertex",
                name,
            });
        }
        self.vertices.push(name);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        tail: usize,
        tail_vec: IntVec2,
        head: usize,
        head_vec: IntVec2,
    ) -> Result<usize, ModelError> {
        let name = name.into();
        if self.edges.iter().any(|e| e.name == name) {
            return Err(ModelError::DuplicateName {
                line: 0,
                kind: "edge",
                name,
            });
        }
        for v in [tail, head] {
            if v >= self.vertices.len() {
                return Err(ModelError::UnknownVertex {
                    line: 0,
                    name: format!("#{v}"),
                });
            }
        }
        if tail_vec.is_zero() || head_vec.is_zero() {
            return Err(ModelError::ZeroVector { line: 0 });
        }
        self.edges.push(Edge {
            name,
            tail,
            head,
            tail_vec,
            head_vec,
        });
        Ok(self.edges.len() - 1)
    }

    /// Parses the `.tg` text format.
    pub fn parse(text: &str) -> Result<GroupGraph, ModelError> {
        parse_group_graph(text)
    }

    /// Canonical `.tg` rendering: all vertices, then all edges, in order.
    pub fn to_tg(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GroupGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for e in &self.edges {
            writeln!(
                f,
                "edge {} : {} {} -> {} {}",
                e.name, self.vertices[e.tail], e.tail_vec, self.vertices[e.head], e.head_vec
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    Colon,
    Arrow,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Int(n) => write!(f, "`{n}`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Comma => f.write_str("`,`"),
            Token::Colon => f.write_str("`:`"),
            Token::Arrow => f.write_str("`->`"),
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ModelError {
    ModelError::Syntax {
        line,
        message: message.into(),
    }
}

fn tokenize(line_no: usize, line: &str) -> Result<Vec<Token>, ModelError> {
    let mut tokens = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' | ')' | ',' | ':' => {
                chars.next();
                tokens.push(match c {
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    ',' => Token::Comma,
                    _ => Token::Colon,
                });
            }
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => {
                        chars.next();
                        tokens.push(Token::Arrow);
                    }
                    Some(&(_, d)) if d.is_ascii_digit() => {
                        let end = scan_while(&mut chars, |c| c.is_ascii_digit());
                        tokens.push(parse_int(line_no, &line[start..end])?);
                    }
                    _ => return Err(syntax(line_no, "stray `-`")),
                }
            }
            c if c.is_ascii_digit() => {
                let end = scan_while(&mut chars, |c| c.is_ascii_digit());
                tokens.push(parse_int(line_no, &line[start..end])?);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let end = scan_while(&mut chars, |c| c.is_ascii_alphanumeric() || c == '_');
                tokens.push(Token::Ident(line[start..end].to_string()));
            }
            other => return Err(syntax(line_no, format!("unexpected character `{other}`"))),
        }
    }
    Ok(tokens)
}

fn scan_while(
    chars: &mut std::iter::Peekable<std::str::CharIndices<'_>>,
    pred: impl Fn(char) -> bool,
) -> usize {
    let mut end = 0;
    while let Some(&(i, c)) = chars.peek() {
        if !pred(c) {
            return i;
        }
        end = i + c.len_utf8();
        chars.next();
    }
    end
}

fn parse_int(line_no: usize, s: &str) -> Result<Token, ModelError> {
    s.parse::<i64>()
        .map(Token::Int)
        .map_err(|_| syntax(line_no, format!("integer `{s}` out of range")))
}

struct LineCursor<'a> {
    line: usize,
    tokens: &'a [Token],
    pos: usize,
}

impl LineCursor<'_> {
    fn next(&mut self, what: &str) -> Result<&Token, ModelError> {
        let tok = self
            .tokens
            .get(self.pos)
            .ok_or_else(|| syntax(self.line, format!("expected {what}, found end of line")))?;
        self.pos += 1;
        Ok(tok)
    }

    fn expect(&mut self, want: Token) -> Result<(), ModelError> {
        let line = self.line;
        let what = want.to_string();
        match self.next(&what)? {
            t if *t == want => Ok(()),
            t => Err(syntax(line, format!("expected {what}, found {t}"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ModelError> {
        let line = self.line;
        match self.next(what)? {
            Token::Ident(s) => Ok(s.clone()),
            t => Err(syntax(line, format!("expected {what}, found {t}"))),
        }
    }

    fn int(&mut self) -> Result<i64, ModelError> {
        let line = self.line;
        match self.next("integer")? {
            Token::Int(n) => Ok(*n),
            t => Err(syntax(line, format!("expected integer, found {t}"))),
        }
    }

    fn vector(&mut self) -> Result<IntVec2, ModelError> {
        self.expect(Token::LParen)?;
        let x = self.int()?;
        self.expect(Token::Comma)?;
        let y = self.int()?;
        self.expect(Token::RParen)?;
        Ok(IntVec2 { x, y })
    }

    fn finish(&self) -> Result<(), ModelError> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(syntax(self.line, format!("unexpected trailing {t}"))),
        }
    }
}

/// Parses a `.tg` description. Errors carry 1-based line numbers.
pub fn parse_group_graph(text: &str) -> Result<GroupGraph, ModelError> {
    let mut graph = GroupGraph::new();
    let mut vertex_ids: HashMap<String, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(line, content)?;
        if tokens.is_empty() {
            continue;
        }
        let mut cur = LineCursor {
            line,
            tokens: &tokens,
            pos: 0,
        };
        match cur.ident("`vertex` or `edge`")?.as_str() {
            "vertex" => {
                let name = cur.ident("vertex name")?;
                cur.finish()?;
                if vertex_ids.contains_key(&name) {
                    return Err(ModelError::DuplicateName {
                        line,
                        kind: "vertex",
                        name,
                    });
                }
                let id = graph.add_vertex(name.clone())?;
                vertex_ids.insert(name, id);
            }
            "edge" => {
                let name = cur.ident("edge name")?;
                cur.expect(Token::Colon)?;
                let tail = cur.ident("tail vertex")?;
                let tail_vec = cur.vector()?;
                cur.expect(Token::Arrow)?;
                let head = cur.ident("head vertex")?;
                let head_vec = cur.vector()?;
                cur.finish()?;
                if graph.edges.iter().any(|e| e.name == name) {
                    return Err(ModelError::DuplicateName {
                        line,
                        kind: "edge",
                        name,
                    });
                }
                let lookup = |n: &str| {
                    vertex_ids
                        .get(n)
                        .copied()
                        .ok_or_else(|| ModelError::UnknownVertex {
                            line,
                            name: n.to_string(),
                        })
                };
                let (tail, head) = (lookup(&tail)?, lookup(&head)?);
                if tail_vec.is_zero() || head_vec.is_zero() {
                    return Err(ModelError::ZeroVector { line });
                }
                graph.add_edge(name, tail, tail_vec, head, head_vec)?;
            }
            other => {
                return Err(syntax(
                    line,
                    format!("expected `vertex` or `edge`, found `{other}`"),
                ))
            }
        }
    }
    Ok(graph)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Tail,
    Head,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Tail => Side::Head,
            Side::Head => Side::Tail,
        }
    }
}

/// One side of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeEnd {
    pub edge: usize,
    pub side: Side,
}

/// Edge-ends at a vertex whose groups lie in one maximal cyclic subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClass {
    pub direction: IntVec2,
    pub ends: Vec<EdgeEnd>,
}

/// The incident edge-ends of one vertex, grouped into parallel classes sorted
/// by direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClasses {
    pub ends: Vec<(EdgeEnd, IntVec2)>,
    pub classes: Vec<ParallelClass>,
}

impl VertexClasses {
    pub fn directions(&self) -> Vec<IntVec2> {
        self.classes.iter().map(|c| c.direction).collect()
    }
}

/// A connected [`GroupGraph`] in which every vertex has exactly three parallel
/// classes, with the class partition precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedGraph {
    graph: GroupGraph,
    vertices: Vec<VertexClasses>,
    /// `end_class[e] = [tail class, head class]`, indices into the endpoint's
    /// `classes`.
    end_class: Vec<[usize; 2]>,
}

impl ValidatedGraph {
    pub fn graph(&self) -> &GroupGraph {
        &self.graph
    }

    pub fn vertex_classes(&self, v: usize) -> &VertexClasses {
        &self.vertices[v]
    }

    pub fn all_vertex_classes(&self) -> &[VertexClasses] {
        &self.vertices
    }

    /// Index of the parallel class containing `end`, at that end's vertex.
    pub fn class_of(&self, end: EdgeEnd) -> usize {
        self.end_class[end.edge][match end.side {
            Side::Tail => 0,
            Side::Head => 1,
        }]
    }

    /// `(vertex, class index)` of an edge end.
    pub fn node_of(&self, end: EdgeEnd) -> (usize, usize) {
        let (v, _) = self.graph.edges[end.edge].end(end.side);
        (v, self.class_of(end))
    }

    pub fn into_graph(self) -> GroupGraph {
        self.graph
    }
}

/// Checks the standing assumptions and annotates every vertex with its
/// parallel classes.
pub fn validate(graph: GroupGraph) -> Result<ValidatedGraph, ModelError> {
    let n = graph.vertices.len();
    let mut per_vertex: Vec<Vec<(EdgeEnd, IntVec2)>> = vec![Vec::new(); n];
    for (i, e) in graph.edges.iter().enumerate() {
        for side in [Side::Tail, Side::Head] {
            let (v, w) = e.end(side);
            per_vertex[v].push((EdgeEnd { edge: i, side }, w.primitive_direction()?));
        }
    }

    let mut vertices = Vec::with_capacity(n);
    let mut end_class = vec![[usize::MAX; 2]; graph.edges.len()];
    for (v, ends) in per_vertex.into_iter().enumerate() {
        let mut dirs: Vec<IntVec2> = ends.iter().map(|&(_, d)| d).collect();
        dirs.sort();
        dirs.dedup();
        if dirs.len() != 3 {
            return Err(ModelError::WrongClassCount {
                vertex: graph.vertices[v].clone(),
                count: dirs.len(),
            });
        }
        let mut classes: Vec<ParallelClass> = dirs
            .iter()
            .map(|&direction| ParallelClass {
                direction,
                ends: Vec::new(),
            })
            .collect();
        for &(end, d) in &ends {
            let k = dirs.binary_search(&d).expect("direction collected above");
            classes[k].ends.push(end);
            end_class[end.edge][end.side as usize] = k;
        }
        vertices.push(VertexClasses { ends, classes });
    }

    check_connected(&graph)?;
    Ok(ValidatedGraph {
        graph,
        vertices,
        end_class,
    })
}

fn check_connected(graph: &GroupGraph) -> Result<(), ModelError> {
    let n = graph.vertices.len();
    if n == 0 {
        return Ok(());
    }
    let mut adj = vec![Vec::new(); n];
    for e in &graph.edges {
        adj[e.tail].push(e.head);
        adj[e.head].push(e.tail);
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    match seen.iter().position(|s| !s) {
        None => Ok(()),
        Some(u) => Err(ModelError::Disconnected {
            root: graph.vertices[0].clone(),
            unreached: graph.vertices[u].clone(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BB_1_2: &str = include_str!("../fixtures/bb_1_2.tg");
    const BB_4_16: &str = include_str!("../fixtures/bb_4_16.tg");
    const SNOWFLAKE: &str = include_str!("../fixtures/snowflake_16_4.tg");

    #[test]
    fn primitive_direction_examples() {
        let p = |x, y| IntVec2::new(x, y).primitive_direction().unwrap();
        assert_eq!(p(4, 0), IntVec2::new(1, 0));
        assert_eq!(p(-2, -4), IntVec2::new(1, 2));
        assert_eq!(p(16, 1), IntVec2::new(16, 1));
        assert_eq!(p(0, -3), IntVec2::new(0, 1));
        assert_eq!(p(-3, 6), IntVec2::new(1, -2));
        assert_eq!(
            IntVec2::new(0, 0).primitive_direction(),
            Err(ModelError::InvalidElement)
        );
    }

    #[test]
    fn parse_bb() {
        let g = parse_group_graph(BB_1_2).unwrap();
        assert_eq!(g.vertices(), ["v"]);
        assert_eq!(g.edges().len(), 2);
        let x = &g.edges()[0];
        assert_eq!(x.name, "x");
        assert_eq!(x.tail_vec, IntVec2::new(1, 0));
        assert_eq!(x.head_vec, IntVec2::new(2, 1));
    }

    #[test]
    fn parse_snowflake() {
        let g = parse_group_graph(SNOWFLAKE).unwrap();
        assert_eq!(g.vertices().len(), 3);
        assert_eq!(g.edges().len(), 6);
        assert_eq!(g.edges()[5].tail_vec, IntVec2::new(0, 16));
    }

    #[test]
    fn parse_free_whitespace() {
        let g = parse_group_graph("vertex v\n  edge   x:v( 1 , 0 )->v(-2,1)  # hi\n").unwrap();
        assert_eq!(g.edges()[0].head_vec, IntVec2::new(-2, 1));
    }

    #[test]
    fn parse_errors() {
        let err = parse_group_graph("vertex v\nedge x : v (0,0) -> v (1,0)").unwrap_err();
        assert_eq!(err, ModelError::ZeroVector { line: 2 });

        let err = parse_group_graph("vertex v\nvertex v\n").unwrap_err();
        assert!(matches!(err, ModelError::DuplicateName { line: 2, kind: "vertex", .. }));

        let err = parse_group_graph(
            "vertex v\nedge x : v (1,0) -> v (1,1)\nedge x : v (1,0) -> v (0,1)",
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::DuplicateName { line: 3, kind: "edge", .. }));

        let err = parse_group_graph("edge x : v (1,0) -> v (1,1)\nvertex v").unwrap_err();
        assert_eq!(
            err,
            ModelError::UnknownVertex {
                line: 1,
                name: "v".into()
            }
        );

        let err = parse_group_graph("vertex v\nedge x : v (1,0) v (1,1)").unwrap_err();
        assert!(matches!(err, ModelError::Syntax { line: 2, .. }), "{err}");
        let err = parse_group_graph("vertex v w").unwrap_err();
        assert!(matches!(err, ModelError::Syntax { line: 1, .. }));
        let err = parse_group_graph("vertex 9v").unwrap_err();
        assert!(matches!(err, ModelError::Syntax { line: 1, .. }));
        let err = parse_group_graph("\n\nnode v").unwrap_err();
        assert!(matches!(err, ModelError::Syntax { line: 3, .. }));
        let err = parse_group_graph("vertex v\nedge x : v (99999999999999999999,0) -> v (1,0)")
            .unwrap_err();
        assert!(err.to_string().contains("out of range"));
    }

    #[test]
    fn validate_bb() {
        let vg = validate(parse_group_graph(BB_4_16).unwrap()).unwrap();
        let vc = vg.vertex_classes(0);
        assert_eq!(
            vc.directions(),
            vec![IntVec2::new(1, 0), IntVec2::new(16, -1), IntVec2::new(16, 1)]
        );
        assert_eq!(
            vc.classes[0].ends,
            vec![
                EdgeEnd { edge: 0, side: Side::Tail },
                EdgeEnd { edge: 1, side: Side::Tail }
            ]
        );
    }

    #[test]
    fn validate_snowflake_v1() {
        let vg = validate(parse_group_graph(SNOWFLAKE).unwrap()).unwrap();
        let vc = vg.vertex_classes(0);
        assert_eq!(
            vc.directions(),
            vec![IntVec2::new(0, 1), IntVec2::new(1, 0), IntVec2::new(1, 1)]
        );
        let c = &vc.classes[2];
        assert_eq!(c.ends.len(), 4);
        assert!(c.ends.iter().all(|e| e.side == Side::Head));
    }

    #[test]
    fn validate_errors() {
        let g = parse_group_graph("vertex v\nedge x : v (1,0) -> v (0,1)").unwrap();
        assert_eq!(
            validate(g),
            Err(ModelError::WrongClassCount {
                vertex: "v".into(),
                count: 2
            })
        );
        let g = parse_group_graph(
            "vertex v\nedge x : v (1,0) -> v (0,1)\nedge y : v (1,1) -> v (1,-1)",
        )
        .unwrap();
        let err = validate(g).unwrap_err();
        assert!(err.to_string().contains("4 or more"));
        let g = parse_group_graph(include_str!("../fixtures/disconnected.tg")).unwrap();
        assert!(matches!(validate(g), Err(ModelError::Disconnected { .. })));
    }

    fn arb_vec() -> impl Strategy<Value = IntVec2> {
        (-50i64..50, -50i64..50)
            .prop_filter("nonzero", |(x, y)| *x != 0 || *y != 0)
            .prop_map(|(x, y)| IntVec2::new(x, y))
    }

    fn arb_graph() -> impl Strategy<Value = GroupGraph> {
        (1usize..5)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    prop::collection::vec((0..n, arb_vec(), 0..n, arb_vec()), 0..8),
                )
            })
            .prop_map(|(n, edges)| {
                let mut g = GroupGraph::new();
                for i in 0..n {
                    g.add_vertex(format!("v{i}")).unwrap();
                }
                for (i, (t, tv, h, hv)) in edges.into_iter().enumerate() {
                    g.add_edge(format!("e{i}"), t, tv, h, hv).unwrap();
                }
                g
            })
    }

    proptest! {
        #[test]
        fn round_trip(g in arb_graph()) {
            prop_assert_eq!(parse_group_graph(&g.to_tg()).unwrap(), g);
        }

        #[test]
        fn primitive_idempotent_and_scale_invariant(v in arb_vec(), k in -9i64..9) {
            let d = v.primitive_direction().unwrap();
            prop_assert_eq!(d.primitive_direction().unwrap(), d);
            prop_assert!(d.is_primitive());
            if k != 0 {
                let s = IntVec2::new(v.x * k, v.y * k);
                prop_assert_eq!(s.primitive_direction().unwrap(), d);
            }
        }

        #[test]
        fn classes_partition_ends(g in arb_graph()) {
            let before = g.clone();
            if let Ok(vg) = validate(g) {
                prop_assert_eq!(vg.graph(), &before);
                for (v, vc) in vg.all_vertex_classes().iter().enumerate() {
                    let mut from_classes: Vec<EdgeEnd> =
                        vc.classes.iter().flat_map(|c| c.ends.iter().copied()).collect();
                    from_classes.sort();
                    let mut all: Vec<EdgeEnd> = vc.ends.iter().map(|&(e, _)| e).collect();
                    all.sort();
                    prop_assert_eq!(&from_classes, &all);
                    for c in &vc.classes {
                        prop_assert!(!c.ends.is_empty());
                        for &e in &c.ends {
                            prop_assert_eq!(vg.node_of(e).0, v);
                        }
                    }
                }
            }
        }
    }
}
