//! The exchange graph: triangulations joined by flips.
//!
//! Every edge carries the vertex 4-set of its flip quadrilateral as a label and
//! is oriented from the endpoint containing the diagonal `(a, c)` of the quad
//! `a < b < c < d` towards the endpoint containing `(b, d)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::polygon::{
    check_size, enumerate_triangulations_bounded, vertex_count, Diagonal, Triangulation, Vertex,
    DEFAULT_MAX_NODES,
};

pub type NodeId = usize;
pub type EdgeId = usize;

/// Vertex set of a flip quadrilateral, sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadLabel(pub [Vertex; 4]);

impl QuadLabel {
    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    /// The diagonal through the smallest vertex, `(a, c)`.
    pub fn alpha(&self) -> Diagonal {
        Diagonal::of(self.0[0], self.0[2])
    }

    /// The diagonal `(b, d)` crossing [`QuadLabel::alpha`].
    pub fn beta(&self) -> Diagonal {
        Diagonal::of(self.0[1], self.0[3])
    }
}

impl fmt::Display for QuadLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{{{a},{b},{c},{d}}}")
    }
}

/// Vertex set of the empty pentagon of a geodesic 5-cycle, sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PentLabel(pub [Vertex; 5]);

impl PentLabel {
    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    /// The five diagonals inside the pentagon.
    pub fn interior_diagonals(&self) -> [Diagonal; 5] {
        let p = self.0;
        [
            Diagonal::of(p[0], p[2]),
            Diagonal::of(p[0], p[3]),
            Diagonal::of(p[1], p[3]),
            Diagonal::of(p[1], p[4]),
            Diagonal::of(p[2], p[4]),
        ]
    }

    fn is_interior(&self, d: &Diagonal) -> bool {
        self.interior_diagonals().contains(d)
    }
}

impl fmt::Display for PentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.0;
        write!(f, "{{{a},{b},{c},{d},{e}}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub tail: NodeId,
    pub head: NodeId,
    pub label: QuadLabel,
}

impl Edge {
    pub fn other(&self, node: NodeId) -> NodeId {
        if node == self.tail {
            self.head
        } else {
            self.tail
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    n: usize,
    nodes: Vec<Triangulation>,
    index: HashMap<Triangulation, NodeId>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
}

impl ExchangeGraph {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_bounded(n, DEFAULT_MAX_NODES)
    }

    /// Builds the graph and fails with [`Error::TriangleFound`] if it is not triangle-free.
    pub fn build_bounded(n: usize, max_nodes: usize) -> Result<Self> {
        check_size(n, max_nodes)?;
        let nodes = enumerate_triangulations_bounded(n, max_nodes)?;
        let index: HashMap<Triangulation, NodeId> = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let mut edges = Vec::with_capacity(nodes.len() * n / 2);
        let mut adjacency = vec![Vec::with_capacity(n); nodes.len()];
        for (u, t) in nodes.iter().enumerate() {
            for d in t.diagonals() {
                let (next, _) = t.flip(d)?;
                let v = index[&next];
                if v <= u {
                    continue;
                }
                let label = QuadLabel(t.quad_of(d)?);
                let (tail, head) = if *d == label.alpha() { (u, v) } else { (v, u) };
                let id = edges.len();
                edges.push(Edge { tail, head, label });
                adjacency[u].push((v, id));
                adjacency[v].push((u, id));
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let graph = ExchangeGraph {
            n,
            nodes,
            index,
            edges,
            adjacency,
        };
        if let Some(tri) = graph.find_triangle() {
            return Err(Error::TriangleFound(tri));
        }
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[Triangulation] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Triangulation {
        &self.nodes[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn find(&self, t: &Triangulation) -> Option<NodeId> {
        self.index.get(t).copied()
    }

    /// Neighbours of `u` with the connecting edge, sorted by neighbour id.
    pub fn neighbors(&self, u: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[u]
    }

    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        self.adjacency[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adjacency[u][i].1)
    }

    /// Node reached by flipping `d` in node `u`.
    pub fn flip_node(&self, u: NodeId, d: &Diagonal) -> Result<(NodeId, EdgeId)> {
        let (t, _) = self.nodes[u].flip(d)?;
        let v = self.index[&t];
        let e = self
            .edge_between(u, v)
            .expect("flip neighbours are adjacent");
        Ok((v, e))
    }

    pub fn is_regular(&self) -> bool {
        self.adjacency.iter().all(|a| a.len() == self.n)
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.nodes.len()
    }

    pub fn find_triangle(&self) -> Option<[NodeId; 3]> {
        for e in &self.edges {
            let (u, v) = (e.tail.min(e.head), e.tail.max(e.head));
            for &(w, _) in &self.adjacency[u] {
                if w != v && self.edge_between(v, w).is_some() {
                    let mut tri = [u, v, w];
                    tri.sort_unstable();
                    return Some(tri);
                }
            }
        }
        None
    }

    /// `Ok(None)` for a stretch step, `Ok(Some(edge))` for a flip.
    pub fn step(&self, u: NodeId, v: NodeId) -> Result<Option<EdgeId>> {
        if u >= self.nodes.len() || v >= self.nodes.len() {
            return Err(Error::NotAWalk(format!(
                "node index out of range in step {u} -> {v}"
            )));
        }
        if u == v {
            return Ok(None);
        }
        self.edge_between(u, v)
            .map(Some)
            .ok_or_else(|| Error::NotAWalk(format!("nodes {u} and {v} are not adjacent")))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph exchange_graph {{").unwrap();
        writeln!(out, "  // clex {}, n = {}", crate::VERSION, self.n).unwrap();
        for (i, t) in self.nodes.iter().enumerate() {
            let diags: Vec<String> = t.diagonals().iter().map(|d| d.to_string()).collect();
            writeln!(out, "  n{i} [label=\"{}\"];", diags.join(" ")).unwrap();
        }
        for e in &self.edges {
            writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.tail, e.head, e.label).unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }

    /// JSON export: `{version, n, nodes, edges: [{u, v, label}], five_cycles: [{nodes, label}]}`.
    pub fn to_json(&self, five_cycles: &[FiveCycle]) -> serde_json::Value {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| json!({"u": e.tail, "v": e.head, "label": e.label.0}))
            .collect();
        let cycles: Vec<_> = five_cycles
            .iter()
            .map(|c| json!({"nodes": c.nodes, "label": c.label.0}))
            .collect();
        json!({
            "version": crate::VERSION,
            "n": self.n,
            "nodes": self.nodes,
            "edges": edges,
            "five_cycles": cycles,
        })
    }
}

/// A geodesic 4-cycle: the completions of a partial triangulation with two empty quadrilaterals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourCycle {
    pub nodes: [NodeId; 4],
    /// The `n - 2` diagonals shared by all four nodes.
    pub face: Vec<Diagonal>,
    pub quads: [QuadLabel; 2],
}

/// A geodesic 5-cycle: the completions of a partial triangulation with one empty pentagon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveCycle {
    pub nodes: [NodeId; 5],
    pub face: Vec<Diagonal>,
    pub label: PentLabel,
}

impl FiveCycle {
    pub fn walk(&self) -> Walk {
        let mut nodes = self.nodes.to_vec();
        nodes.push(self.nodes[0]);
        Walk { nodes }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GeodesicCycles {
    pub four: Vec<FourCycle>,
    pub five: Vec<FiveCycle>,
}

impl GeodesicCycles {
    /// Distinct 5-cycle labels in sorted order.
    pub fn five_labels(&self) -> Vec<PentLabel> {
        let set: BTreeSet<PentLabel> = self.five.iter().map(|c| c.label).collect();
        set.into_iter().collect()
    }
}

/// Rotates a cycle to start at its least node, heading towards the smaller neighbour.
pub(crate) fn normalize_cycle(nodes: &mut [NodeId]) {
    let k = nodes.len();
    let start = (0..k).min_by_key(|&i| nodes[i]).unwrap();
    nodes.rotate_left(start);
    if nodes[k - 1] < nodes[1] {
        nodes[1..].reverse();
    }
}

/// Walks around the completions of `t` minus `{d1, d2}`, always flipping the older free diagonal.
fn face_cycle(
    graph: &ExchangeGraph,
    start: NodeId,
    d1: Diagonal,
    d2: Diagonal,
) -> Result<Vec<NodeId>> {
    let mut free = [d1, d2];
    let mut cur = start;
    let mut nodes = vec![start];
    loop {
        let (t, g) = graph.node(cur).flip(&free[0])?;
        let next = graph.find(&t).expect("flip stays in the graph");
        free = [free[1], g];
        if next == start {
            break;
        }
        nodes.push(next);
        cur = next;
        if nodes.len() > 5 {
            unreachable!("codimension-2 faces have at most five completions");
        }
    }
    Ok(nodes)
}

/// Enumerates codimension-2 faces and their geodesic cycles.
///
/// Five-cycles are sorted by label, then by node sequence; four-cycles by node sequence.
pub fn geodesic_cycles(graph: &ExchangeGraph) -> Result<GeodesicCycles> {
    let mut seen: HashSet<Vec<Diagonal>> = HashSet::new();
    let mut out = GeodesicCycles::default();
    for (u, t) in graph.nodes().iter().enumerate() {
        let diags = t.diagonals();
        for i in 0..diags.len() {
            for j in i + 1..diags.len() {
                let face: Vec<Diagonal> = diags
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, d)| *d)
                    .collect();
                if !seen.insert(face.clone()) {
                    continue;
                }
                let mut nodes = face_cycle(graph, u, diags[i], diags[j])?;
                normalize_cycle(&mut nodes);
                let q1 = QuadLabel(t.quad_of(&diags[i])?);
                let q2 = QuadLabel(t.quad_of(&diags[j])?);
                match nodes.len() {
                    4 => {
                        let mut quads = [q1, q2];
                        quads.sort_unstable();
                        out.four.push(FourCycle {
                            nodes: nodes.try_into().unwrap(),
                            face,
                            quads,
                        });
                    }
                    5 => {
                        let union: BTreeSet<Vertex> =
                            q1.0.iter().chain(q2.0.iter()).copied().collect();
                        let label: Vec<Vertex> = union.into_iter().collect();
                        out.five.push(FiveCycle {
                            nodes: nodes.try_into().unwrap(),
                            face,
                            label: PentLabel(label.try_into().expect("pentagon has five vertices")),
                        });
                    }
                    k => unreachable!("face with {k} completions"),
                }
            }
        }
    }
    out.four.sort_by_key(|c| c.nodes);
    out.five.sort_by_key(|c| (c.label, c.nodes));
    Ok(out)
}

/// The vertex arcs of the regions outside a pentagon, each listed in polygon order.
///
/// Arc `i` runs from `p[i]` to `p[i+1]`; the last arc wraps through `n+3` back to `p[0]`.
pub fn exterior_regions(n: usize, label: &PentLabel) -> Vec<Vec<Vertex>> {
    let m = vertex_count(n);
    let p = label.0;
    let mut arcs = Vec::with_capacity(5);
    for i in 0..4 {
        arcs.push((p[i]..=p[i + 1]).collect::<Vec<_>>());
    }
    let mut wrap: Vec<Vertex> = (p[4]..=m).collect();
    wrap.extend(1..=p[0]);
    arcs.push(wrap);
    arcs
}

fn in_region(arc: &[Vertex], d: &Diagonal) -> bool {
    let (first, last) = (arc[0], arc[arc.len() - 1]);
    arc.contains(&d.a()) && arc.contains(&d.b()) && Diagonal::of(first, last) != *d
}

/// Flips the region `arc` of `t` to the fan at the region's least vertex.
///
/// Returns the `(removed, added)` diagonal of every flip, in order.
fn normalize_region(
    t: &Triangulation,
    arc: &[Vertex],
) -> Result<(Triangulation, Vec<(Diagonal, Diagonal)>)> {
    let apex = *arc.iter().min().unwrap();
    let mut cur = t.clone();
    let mut flips = Vec::new();
    if arc.len() < 4 {
        return Ok((cur, flips));
    }
    loop {
        let mut candidate = None;
        for d in cur.diagonals() {
            if in_region(arc, d) && !d.contains(apex) && cur.quad_of(d)?.contains(&apex) {
                candidate = Some(*d);
                break;
            }
        }
        let Some(d) = candidate else { break };
        let (next, added) = cur.flip(&d)?;
        flips.push((d, added));
        cur = next;
    }
    Ok((cur, flips))
}

/// The exterior of a pentagon, flipped region by region to per-region fans.
pub fn normalize_exterior(
    n: usize,
    t: &Triangulation,
    label: &PentLabel,
) -> Result<(Triangulation, Vec<(Diagonal, Diagonal)>)> {
    let mut cur = t.clone();
    let mut flips = Vec::new();
    for arc in exterior_regions(n, label) {
        let (next, mut fl) = normalize_region(&cur, &arc)?;
        cur = next;
        flips.append(&mut fl);
    }
    Ok((cur, flips))
}

/// A closed walk: consecutive nodes are equal (a stretch) or adjacent, and it ends where it starts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    nodes: Vec<NodeId>,
}

impl Walk {
    pub fn new(graph: &ExchangeGraph, nodes: Vec<NodeId>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::NotAWalk("empty node sequence".into()));
        }
        if nodes.first() != nodes.last() {
            return Err(Error::NotAWalk("walk is not closed".into()));
        }
        for w in nodes.windows(2) {
            graph.step(w[0], w[1])?;
        }
        if nodes.len() == 1 {
            graph.step(nodes[0], nodes[0])?;
        }
        Ok(Walk { nodes })
    }

    pub fn constant(node: NodeId) -> Self {
        Walk { nodes: vec![node] }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn base(&self) -> NodeId {
        self.nodes[0]
    }

    /// Number of steps, stretches included.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn word(&self, graph: &ExchangeGraph) -> LoopWord {
        loop_word(graph, &self.nodes).expect("walks are validated on construction")
    }

    /// Edges traversed, with `+1` when walked tail to head.
    pub fn signed_edges(&self, graph: &ExchangeGraph) -> Vec<(EdgeId, i64)> {
        self.nodes
            .windows(2)
            .filter_map(|w| {
                let e = graph.edge_between(w[0], w[1])?;
                let sign = if graph.edge(e).tail == w[0] { 1 } else { -1 };
                Some((e, sign))
            })
            .collect()
    }

    /// Concatenation of two loops with the same base.
    pub fn concat(&self, other: &Walk) -> Result<Walk> {
        if self.base() != other.base() {
            return Err(Error::NotAWalk("loops have different base nodes".into()));
        }
        let mut nodes = self.nodes.clone();
        nodes.extend_from_slice(&other.nodes[1..]);
        Ok(Walk { nodes })
    }

    pub fn reversed(&self) -> Walk {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        Walk { nodes }
    }
}

/// The edge labels read along a walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopWord(pub Vec<QuadLabel>);

impl LoopWord {
    /// Occurrence count of every letter.
    pub fn letter_counts(&self) -> HashMap<QuadLabel, usize> {
        let mut counts = HashMap::new();
        for l in &self.0 {
            *counts.entry(*l).or_insert(0) += 1;
        }
        counts
    }

    /// Letters occurring an odd number of times, sorted.
    pub fn odd_letters(&self) -> Vec<QuadLabel> {
        let mut odd: Vec<QuadLabel> = self
            .letter_counts()
            .into_iter()
            .filter(|&(_, c)| c % 2 == 1)
            .map(|(l, _)| l)
            .collect();
        odd.sort_unstable();
        odd
    }
}

/// Reads the labels along a closed node sequence; stretch steps contribute nothing.
pub fn loop_word(graph: &ExchangeGraph, nodes: &[NodeId]) -> Result<LoopWord> {
    if nodes.is_empty() || nodes.first() != nodes.last() {
        return Err(Error::NotAWalk("walk is not closed".into()));
    }
    let mut letters = Vec::with_capacity(nodes.len());
    for w in nodes.windows(2) {
        if let Some(e) = graph.step(w[0], w[1])? {
            letters.push(graph.edge(e).label);
        }
    }
    Ok(LoopWord(letters))
}

/// Elementary homotopy moves on closed walks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Repeat the node at the position.
    Stretch,
    /// At a repeated node `T, T`, detour to the neighbour obtained by flipping `diagonal`.
    Insert { diagonal: Diagonal },
    /// Replace the node at the position by the opposite corner of a geodesic 4-cycle.
    Switch,
}

pub fn apply_move(graph: &ExchangeGraph, walk: &Walk, mv: Move, position: usize) -> Result<Walk> {
    let nodes = &walk.nodes;
    let last = nodes.len() - 1;
    let mut out = nodes.clone();
    match mv {
        Move::Stretch => {
            if position > last {
                return Err(Error::MoveNotApplicable(format!(
                    "position {position} out of range"
                )));
            }
            out.insert(position, nodes[position]);
        }
        Move::Insert { diagonal } => {
            if position >= last || nodes[position] != nodes[position + 1] {
                return Err(Error::MoveNotApplicable(format!(
                    "insert needs a repeated node at position {position}"
                )));
            }
            let (via, _) = graph
                .flip_node(nodes[position], &diagonal)
                .map_err(|e| Error::MoveNotApplicable(e.to_string()))?;
            out.insert(position + 1, via);
        }
        Move::Switch => {
            if position == 0 || position >= last {
                return Err(Error::MoveNotApplicable(format!(
                    "switch needs an interior position, got {position}"
                )));
            }
            let replacement = switch_partner(
                graph,
                nodes[position - 1],
                nodes[position],
                nodes[position + 1],
            )
            .ok_or_else(|| {
                Error::MoveNotApplicable(format!("no geodesic 4-cycle through position {position}"))
            })?;
            out[position] = replacement;
        }
    }
    Ok(Walk { nodes: out })
}

/// The fourth corner `x` of a geodesic 4-cycle `prev - mid - next - x`, if there is one.
pub fn switch_partner(
    graph: &ExchangeGraph,
    prev: NodeId,
    mid: NodeId,
    next: NodeId,
) -> Option<NodeId> {
    if prev == mid || mid == next || prev == next {
        return None;
    }
    let e1 = graph.edge_between(prev, mid)?;
    let e2 = graph.edge_between(mid, next)?;
    let (l1, l2) = (graph.edge(e1).label, graph.edge(e2).label);
    if l1 == l2 {
        return None;
    }
    // The diagonal that the second step removes must already be flippable at `prev`.
    let (t_mid, t_next) = (graph.node(mid), graph.node(next));
    let removed = *t_mid.diagonals().iter().find(|d| !t_next.contains(d))?;
    if !graph.node(prev).contains(&removed) {
        return None;
    }
    let (x, e3) = graph.flip_node(prev, &removed).ok()?;
    let e4 = graph.edge_between(x, next)?;
    let opposite = graph.edge(e3).label == l2 && graph.edge(e4).label == l1;
    (opposite && x != mid).then_some(x)
}

/// Rows of equal-length closed walks; row `k` and `k + 1` agree entrywise up to one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub rows: Vec<Walk>,
}

/// Builds the net of 4-cycles between two geodesic 5-cycles with the same label.
///
/// Nodes are paired by their restriction to the pentagon; both exteriors are
/// normalized to per-region fans and the flips of `c2` are replayed in reverse.
pub fn net_between(graph: &ExchangeGraph, c1: &FiveCycle, c2: &FiveCycle) -> Result<Grid> {
    if c1.label != c2.label {
        return Err(Error::LabelMismatch {
            left: c1.label.0.to_vec(),
            right: c2.label.0.to_vec(),
        });
    }
    let label = c1.label;
    let inside = |id: NodeId| -> Vec<Diagonal> {
        graph
            .node(id)
            .diagonals()
            .iter()
            .filter(|d| label.is_interior(d))
            .copied()
            .collect()
    };
    let mut target = [0; 5];
    for (k, &u) in c1.nodes.iter().enumerate() {
        let key = inside(u);
        target[k] = *c2
            .nodes
            .iter()
            .find(|&&v| inside(v) == key)
            .expect("both cycles realize all five pentagon triangulations");
    }

    let n = graph.n();
    let (_, forward) = normalize_exterior(n, graph.node(c1.nodes[0]), &label)?;
    let (_, backward) = normalize_exterior(n, graph.node(c2.nodes[0]), &label)?;
    let schedule = forward
        .iter()
        .map(|&(removed, _)| removed)
        .chain(backward.iter().rev().map(|&(_, added)| added));

    let mut row: Vec<NodeId> = c1.nodes.to_vec();
    let mut rows = vec![closed(&row)];
    for d in schedule {
        for u in row.iter_mut() {
            *u = graph.flip_node(*u, &d)?.0;
        }
        rows.push(closed(&row));
    }
    debug_assert_eq!(row, target.to_vec());
    if row != target.to_vec() {
        return Err(Error::LabelMismatch {
            left: c1.label.0.to_vec(),
            right: c2.label.0.to_vec(),
        });
    }
    Ok(Grid { rows })
}

fn closed(row: &[NodeId]) -> Walk {
    let mut nodes = row.to_vec();
    nodes.push(row[0]);
    Walk { nodes }
}

/// Checks the grid conditions: closed rows of equal length, entrywise equal-or-adjacent between rows.
pub fn check_grid(graph: &ExchangeGraph, grid: &Grid) -> std::result::Result<(), String> {
    let Some(first) = grid.rows.first() else {
        return Err("grid has no rows".into());
    };
    let len = first.nodes.len();
    for (k, row) in grid.rows.iter().enumerate() {
        if row.nodes.len() != len {
            return Err(format!(
                "row {k} has length {} instead of {len}",
                row.nodes.len()
            ));
        }
        Walk::new(graph, row.nodes.clone()).map_err(|e| format!("row {k}: {e}"))?;
    }
    for (k, pair) in grid.rows.windows(2).enumerate() {
        for (j, (&u, &v)) in pair[0].nodes.iter().zip(&pair[1].nodes).enumerate() {
            if graph.step(u, v).is_err() {
                return Err(format!("rows {k} and {} are not near at column {j}", k + 1));
            }
        }
    }
    Ok(())
}

/// True iff the walk is a geodesic 5-cycle with the given label: five distinct
/// nodes, five distinct letters whose union is the label.
pub fn is_five_cycle_with_label(graph: &ExchangeGraph, walk: &Walk, label: &PentLabel) -> bool {
    let nodes = &walk.nodes[..walk.nodes.len() - 1];
    let distinct: HashSet<_> = nodes.iter().collect();
    if nodes.len() != 5 || distinct.len() != 5 {
        return false;
    }
    let word = walk.word(graph);
    let letters: HashSet<_> = word.0.iter().collect();
    let union: BTreeSet<Vertex> = word.0.iter().flat_map(|l| l.0).collect();
    letters.len() == 5 && union.into_iter().collect::<Vec<_>>() == label.0.to_vec()
}

/// Label equality decides homotopy of geodesic 5-cycles.
pub fn homotopic(c1: &FiveCycle, c2: &FiveCycle) -> bool {
    c1.label == c2.label
}

/// The 5-cycle whose exterior is the per-region fan at each region's least vertex.
pub fn canonical_five_cycle(graph: &ExchangeGraph, label: &PentLabel) -> Result<FiveCycle> {
    let n = graph.n();
    let mut diagonals = Vec::with_capacity(n);
    for arc in exterior_regions(n, label) {
        let apex = *arc.iter().min().unwrap();
        let (first, last) = (arc[0], arc[arc.len() - 1]);
        for &v in &arc {
            let d = Diagonal::of(apex, v);
            let adjacent = arc.windows(2).any(|w| Diagonal::of(w[0], w[1]) == d);
            if v != apex && !adjacent && d != Diagonal::of(first, last) {
                diagonals.push(d);
            }
        }
        // The pentagon side bounding the region is a polygon diagonal unless it is a side.
        let side = Diagonal::of(first, last);
        if arc.len() > 2 {
            diagonals.push(side);
        }
    }
    let p = label.0;
    diagonals.push(Diagonal::of(p[0], p[2]));
    diagonals.push(Diagonal::of(p[0], p[3]));
    let start = Triangulation::new(n, diagonals)?;
    let u = graph
        .find(&start)
        .ok_or_else(|| Error::InvalidTriangulation(format!("{start} is not a node")))?;
    let mut nodes = face_cycle(graph, u, Diagonal::of(p[0], p[2]), Diagonal::of(p[0], p[3]))?;
    normalize_cycle(&mut nodes);
    let mut face: Vec<Diagonal> = start
        .diagonals()
        .iter()
        .filter(|d| !label.is_interior(d))
        .copied()
        .collect();
    face.sort_unstable();
    Ok(FiveCycle {
        nodes: nodes
            .try_into()
            .map_err(|_| Error::InvalidTriangulation("not a pentagon face".into()))?,
        face,
        label: *label,
    })
}
