//! Diagonals, boundary edges and triangulations of the convex `(n+3)`-gon.
//!
//! Vertices are labelled `1..=n+3` clockwise. A [`Triangulation`] is kept as
//! a sorted list of its `n` diagonals, so equality and hashing are structural.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::combinat::catalan;
use crate::error::{Error, Result};

pub type Vertex = u16;

/// Node bound used when the caller does not configure one (`C_8`, i.e. n = 7).
pub const DEFAULT_MAX_NODES: usize = 1430;

pub fn vertex_count(n: usize) -> Vertex {
    (n + 3) as Vertex
}

/// A chord `(a, b)` with `a < b` that is not a side of the polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagonal {
    a: Vertex,
    b: Vertex,
}

impl Diagonal {
    pub fn new(n: usize, x: Vertex, y: Vertex) -> Result<Self> {
        let m = vertex_count(n);
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        if a < 1 || b > m || b - a < 2 || (a == 1 && b == m) {
            return Err(Error::InvalidDiagonal {
                a: x as u32,
                b: y as u32,
                vertices: m as u32,
            });
        }
        Ok(Diagonal { a, b })
    }

    /// Builds a diagonal from endpoints already known to be valid.
    pub(crate) fn of(x: Vertex, y: Vertex) -> Self {
        if x < y {
            Diagonal { a: x, b: y }
        } else {
            Diagonal { a: y, b: x }
        }
    }

    pub fn a(&self) -> Vertex {
        self.a
    }

    pub fn b(&self) -> Vertex {
        self.b
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.a == v || self.b == v
    }

    pub fn crosses(&self, other: &Diagonal) -> bool {
        crosses(self, other)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Serialize for Diagonal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

/// True iff the open chords meet in the interior: the endpoints strictly interleave.
pub fn crosses(d1: &Diagonal, d2: &Diagonal) -> bool {
    let (a, c) = (d1.a, d1.b);
    let (b, d) = (d2.a, d2.b);
    (a < b && b < c && c < d) || (b < a && a < d && d < c)
}

/// A side `(i, i+1)` or `(1, n+3)` of the polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryEdge {
    a: Vertex,
    b: Vertex,
}

impl BoundaryEdge {
    pub fn new(n: usize, x: Vertex, y: Vertex) -> Result<Self> {
        let m = vertex_count(n);
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        if a < 1 || b > m || !is_side(m, a, b) {
            return Err(Error::InvalidBoundaryEdge {
                a: x as u32,
                b: y as u32,
                vertices: m as u32,
            });
        }
        Ok(BoundaryEdge { a, b })
    }

    /// The `n+3` sides in the order `(1,2), (2,3), ..., (n+2,n+3), (1,n+3)`.
    pub fn all(n: usize) -> Vec<BoundaryEdge> {
        let m = vertex_count(n);
        let mut edges: Vec<_> = (1..m).map(|i| BoundaryEdge { a: i, b: i + 1 }).collect();
        edges.push(BoundaryEdge { a: 1, b: m });
        edges
    }

    pub fn a(&self) -> Vertex {
        self.a
    }

    pub fn b(&self) -> Vertex {
        self.b
    }
}

impl fmt::Display for BoundaryEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

pub(crate) fn is_side(m: Vertex, a: Vertex, b: Vertex) -> bool {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    b - a == 1 || (a == 1 && b == m)
}

/// Every diagonal of the `(n+3)`-gon in lexicographic order.
pub fn all_diagonals(n: usize) -> Vec<Diagonal> {
    let m = vertex_count(n);
    let mut out = Vec::new();
    for a in 1..=m {
        for b in a + 2..=m {
            if !(a == 1 && b == m) {
                out.push(Diagonal { a, b });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    n: usize,
    diagonals: Vec<Diagonal>,
}

impl Triangulation {
    /// Validates size, distinctness and pairwise non-crossing.
    pub fn new(n: usize, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self> {
        let mut diagonals: Vec<Diagonal> = diagonals.into_iter().collect();
        diagonals.sort_unstable();
        diagonals.dedup();
        if diagonals.len() != n {
            return Err(Error::InvalidTriangulation(format!(
                "expected {n} distinct diagonals, got {}",
                diagonals.len()
            )));
        }
        for d in &diagonals {
            Diagonal::new(n, d.a, d.b)?;
        }
        for (i, d1) in diagonals.iter().enumerate() {
            for d2 in &diagonals[i + 1..] {
                if crosses(d1, d2) {
                    return Err(Error::InvalidTriangulation(format!("{d1} crosses {d2}")));
                }
            }
        }
        Ok(Triangulation { n, diagonals })
    }

    /// The fan of all diagonals through `apex`.
    pub fn fan(n: usize, apex: Vertex) -> Result<Self> {
        let m = vertex_count(n);
        if apex < 1 || apex > m {
            return Err(Error::InvalidDiagonal {
                a: apex as u32,
                b: apex as u32,
                vertices: m as u32,
            });
        }
        let mut diagonals: Vec<Diagonal> = (1..=m)
            .filter(|&v| v != apex && !is_side(m, apex, v))
            .map(|v| Diagonal::of(apex, v))
            .collect();
        diagonals.sort_unstable();
        Ok(Triangulation { n, diagonals })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: &Diagonal) -> bool {
        self.diagonals.binary_search(d).is_ok()
    }

    /// Side of the polygon or diagonal of this triangulation.
    pub fn has_edge(&self, x: Vertex, y: Vertex) -> bool {
        is_side(vertex_count(self.n), x, y) || self.contains(&Diagonal::of(x, y))
    }

    fn apexes(&self, d: &Diagonal) -> (Vertex, Vertex) {
        let m = vertex_count(self.n);
        let (a, b) = (d.a, d.b);
        let inner = (a + 1..b)
            .find(|&c| self.has_edge(a, c) && self.has_edge(c, b))
            .expect("every diagonal of a triangulation borders a triangle on each side");
        let outer = (b + 1..=m)
            .chain(1..a)
            .find(|&c| self.has_edge(b, c) && self.has_edge(c, a))
            .expect("every diagonal of a triangulation borders a triangle on each side");
        (inner, outer)
    }

    /// Sorted vertex set of the quadrilateral formed by the two triangles on `d`.
    pub fn quad_of(&self, d: &Diagonal) -> Result<[Vertex; 4]> {
        if !self.contains(d) {
            return Err(Error::DiagonalNotInTriangulation(*d));
        }
        let (inner, outer) = self.apexes(d);
        let mut quad = [d.a, d.b, inner, outer];
        quad.sort_unstable();
        Ok(quad)
    }

    /// Replaces `d` by the other diagonal of its quadrilateral.
    pub fn flip(&self, d: &Diagonal) -> Result<(Triangulation, Diagonal)> {
        let pos = self
            .diagonals
            .binary_search(d)
            .map_err(|_| Error::DiagonalNotInTriangulation(*d))?;
        let (inner, outer) = self.apexes(d);
        let new = Diagonal::of(inner, outer);
        let mut diagonals = self.diagonals.clone();
        diagonals.remove(pos);
        let at = diagonals.binary_search(&new).unwrap_err();
        diagonals.insert(at, new);
        Ok((
            Triangulation {
                n: self.n,
                diagonals,
            },
            new,
        ))
    }

    /// The `n + 1` triangles, each as a sorted vertex triple, in sorted order.
    pub fn triangles(&self) -> Vec<[Vertex; 3]> {
        let m = vertex_count(self.n);
        let mut out = Vec::with_capacity(self.n + 1);
        let mut edges: Vec<(Vertex, Vertex)> = self.diagonals.iter().map(|d| (d.a, d.b)).collect();
        edges.extend((1..m).map(|i| (i, i + 1)));
        for &(a, b) in &edges {
            for c in b + 1..=m {
                if self.has_edge(a, c) && self.has_edge(b, c) {
                    out.push([a, b, c]);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.diagonals.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Triangulation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.diagonals.serialize(s)
    }
}

pub fn check_size(n: usize, max_nodes: usize) -> Result<()> {
    if n == 0 || n > 30 {
        return Err(Error::SizeOutOfRange(n));
    }
    let required = catalan(n + 1);
    if required > max_nodes {
        return Err(Error::ResourceLimit {
            n,
            required,
            limit: max_nodes,
        });
    }
    Ok(())
}

/// All triangulations, breadth-first from `fan(n, 1)`, flipping diagonals in sorted order.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<Triangulation>> {
    enumerate_triangulations_bounded(n, DEFAULT_MAX_NODES)
}

pub fn enumerate_triangulations_bounded(n: usize, max_nodes: usize) -> Result<Vec<Triangulation>> {
    check_size(n, max_nodes)?;
    let start = Triangulation::fan(n, 1)?;
    let mut seen: HashMap<Triangulation, usize> = HashMap::new();
    let mut order = vec![start.clone()];
    seen.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let t = order[i].clone();
        for d in t.diagonals() {
            let (next, _) = t.flip(d)?;
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), order.len());
                queue.push_back(order.len());
                order.push(next);
            }
        }
    }
    Ok(order)
}
