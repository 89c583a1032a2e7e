//! The 2-complex obtained from the exchange graph by filling every 4-cycle,
//! and its first homology.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::{binomial, subsets};
use crate::error::{Error, Result};
use crate::flipgraph::{
    canonical_five_cycle, geodesic_cycles, ExchangeGraph, FiveCycle, NodeId, PentLabel, Walk,
};
use crate::zlinalg::{invariant_factors, Lattice, SparseMatrix};

/// The exchange graph with a 2-cell glued along every 4-cycle.
///
/// The graph has no triangles, so all 2-cells are squares. Each cell is stored as
/// `[u, v, x, w]`, traversed in that order, with `u` the least node and `v < w`.
pub struct CellComplex2 {
    graph: ExchangeGraph,
    cells: Vec<[NodeId; 4]>,
}

impl CellComplex2 {
    pub fn new(graph: ExchangeGraph) -> Result<Self> {
        if let Some(tri) = graph.find_triangle() {
            return Err(Error::TriangleFound(tri));
        }
        let cells = four_cycles(&graph);
        Ok(CellComplex2 { graph, cells })
    }

    pub fn graph(&self) -> &ExchangeGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn two_cells(&self) -> &[[NodeId; 4]] {
        &self.cells
    }

    /// `∂1`: one column per edge, `-1` at the tail and `+1` at the head.
    pub fn boundary1(&self) -> SparseMatrix {
        let mut m = SparseMatrix::new(self.graph.node_count());
        for e in self.graph.edges() {
            m.push_column([(e.tail, -BigInt::one()), (e.head, BigInt::one())]);
        }
        m
    }

    /// `∂2`: one column per cell, the signed edges met along its traversal.
    pub fn boundary2(&self) -> SparseMatrix {
        let mut m = SparseMatrix::new(self.graph.edge_count());
        for cell in &self.cells {
            let walk = closed_walk(cell);
            m.push_column(self.chain_of_nodes(&walk).coefficients);
        }
        m
    }

    pub fn boundary_matrices(&self) -> (SparseMatrix, SparseMatrix) {
        (self.boundary1(), self.boundary2())
    }

    fn chain_of_nodes(&self, nodes: &[NodeId]) -> ChainVector {
        let mut coefficients: BTreeMap<usize, BigInt> = BTreeMap::new();
        for w in nodes.windows(2) {
            let Some(e) = self.graph.edge_between(w[0], w[1]) else {
                continue;
            };
            let sign = if self.graph.edge(e).tail == w[0] {
                1
            } else {
                -1
            };
            *coefficients.entry(e).or_default() += sign;
        }
        coefficients.retain(|_, c| !c.is_zero());
        ChainVector {
            level: ChainLevel::C1,
            coefficients,
        }
    }

    /// The 1-chain traced by a closed walk (stretches contribute nothing).
    pub fn class_vector(&self, walk: &Walk) -> ChainVector {
        self.chain_of_nodes(walk.nodes())
    }
}

fn closed_walk(cell: &[NodeId; 4]) -> Vec<NodeId> {
    vec![cell[0], cell[1], cell[2], cell[3], cell[0]]
}

/// Every 4-cycle, found from its least node `u`, two neighbours `v < w` of `u`
/// and a further common neighbour `x` of `v` and `w`.
fn four_cycles(graph: &ExchangeGraph) -> Vec<[NodeId; 4]> {
    let mut out = Vec::new();
    for u in 0..graph.node_count() {
        let higher: Vec<NodeId> = graph
            .neighbors(u)
            .iter()
            .map(|&(v, _)| v)
            .filter(|&v| v > u)
            .collect();
        for (i, &v) in higher.iter().enumerate() {
            let nv: BTreeSet<NodeId> = graph.neighbors(v).iter().map(|&(x, _)| x).collect();
            for &w in &higher[i + 1..] {
                for &(x, _) in graph.neighbors(w) {
                    if x > u && nv.contains(&x) {
                        out.push([u, v, x, w]);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn build_complex(n: usize) -> Result<CellComplex2> {
    CellComplex2::new(ExchangeGraph::build(n)?)
}

pub fn build_complex_bounded(n: usize, max_nodes: usize) -> Result<CellComplex2> {
    CellComplex2::new(ExchangeGraph::build_bounded(n, max_nodes)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainLevel {
    C0,
    C1,
    C2,
}

/// A sparse integer chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    pub level: ChainLevel,
    pub coefficients: BTreeMap<usize, BigInt>,
}

impl ChainVector {
    pub fn to_dense(&self, len: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); len];
        for (&i, c) in &self.coefficients {
            v[i] = c.clone();
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1 {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    pub cycle_rank: usize,
    pub boundary_rank: usize,
}

/// Rank and torsion of `H_1 = ker ∂1 / im ∂2`.
pub fn h1_of(complex: &CellComplex2) -> H1 {
    let (d1, d2) = complex.boundary_matrices();
    let cycle_rank = complex.graph.edge_count() - invariant_factors(&d1).len();
    let f2 = invariant_factors(&d2);
    H1 {
        rank: cycle_rank - f2.len(),
        boundary_rank: f2.len(),
        torsion: f2.into_iter().filter(|f| !f.is_one()).collect(),
        cycle_rank,
    }
}

pub fn h1(n: usize) -> Result<H1> {
    Ok(h1_of(&build_complex(n)?))
}

/// Homology computations that need membership in `im ∂2`.
pub struct Homology {
    complex: CellComplex2,
    boundaries: Lattice,
    basis_labels: Vec<PentLabel>,
    basis: Vec<FiveCycle>,
    solver: Lattice,
}

impl Homology {
    pub fn new(complex: CellComplex2) -> Result<Self> {
        let d2 = complex.boundary2();
        let edges = complex.graph.edge_count();
        let columns: Vec<Vec<BigInt>> = (0..d2.cols())
            .map(|j| {
                let mut v = vec![BigInt::zero(); edges];
                for (&i, c) in d2.column(j) {
                    v[i] = c.clone();
                }
                v
            })
            .collect();
        let boundaries = Lattice::from_generators(edges, &columns, false);

        let m = crate::polygon::vertex_count(complex.n());
        let basis_labels: Vec<PentLabel> = subsets(m, 5)
            .into_iter()
            .filter(|s| s[0] == 1)
            .map(|s| PentLabel(s.try_into().expect("5-subset")))
            .collect();
        let basis = basis_labels
            .iter()
            .map(|l| canonical_five_cycle(&complex.graph, l))
            .collect::<Result<Vec<_>>>()?;
        let mut generators: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|c| complex.class_vector(&c.walk()).to_dense(edges))
            .collect();
        generators.extend(columns);
        let solver = Lattice::from_generators(edges, &generators, true);
        Ok(Homology {
            complex,
            boundaries,
            basis_labels,
            basis,
            solver,
        })
    }

    pub fn build(n: usize) -> Result<Self> {
        Self::new(build_complex(n)?)
    }

    pub fn complex(&self) -> &CellComplex2 {
        &self.complex
    }

    pub fn graph(&self) -> &ExchangeGraph {
        &self.complex.graph
    }

    /// Labels of the basis classes: the 5-sets containing vertex 1.
    pub fn basis_labels(&self) -> &[PentLabel] {
        &self.basis_labels
    }

    /// One representative 5-cycle per basis label.
    pub fn basis_cycles(&self) -> &[FiveCycle] {
        &self.basis
    }

    fn dense(&self, walk: &Walk) -> Vec<BigInt> {
        self.complex
            .class_vector(walk)
            .to_dense(self.complex.graph.edge_count())
    }

    pub fn is_boundary(&self, walk: &Walk) -> bool {
        self.boundaries.contains(&self.dense(walk))
    }

    pub fn classes_equal(&self, w1: &Walk, w2: &Walk) -> bool {
        let diff: Vec<BigInt> = self
            .dense(w1)
            .iter()
            .zip(self.dense(w2))
            .map(|(a, b)| a - b)
            .collect();
        self.boundaries.contains(&diff)
    }

    /// Canonical representative of the class of a walk; equal keys mean equal classes.
    pub fn class_key(&self, walk: &Walk) -> Vec<BigInt> {
        self.boundaries.residue(&self.dense(walk))
    }

    /// Coefficients of the class of `walk` over the basis classes.
    pub fn decompose(&self, walk: &Walk) -> Result<Vec<BigInt>> {
        let coeffs = self
            .solver
            .coefficients(&self.dense(walk))
            .ok_or(Error::NotInSpan)?;
        Ok(coeffs[..self.basis.len()].to_vec())
    }

    /// True iff the basis classes are independent modulo boundaries.
    pub fn basis_independent(&self) -> bool {
        self.solver.rank() == self.boundaries.rank() + self.basis.len()
    }
}

/// Node sets of geodesic 4-cycles versus all 4-cycles of the graph.
pub fn all_four_cycles_geodesic(complex: &CellComplex2) -> Result<bool> {
    let geo = geodesic_cycles(&complex.graph)?;
    let a: BTreeSet<[NodeId; 4]> = geo
        .four
        .iter()
        .map(|c| {
            let mut s = c.nodes;
            s.sort_unstable();
            s
        })
        .collect();
    let b: BTreeSet<[NodeId; 4]> = complex
        .cells
        .iter()
        .map(|c| {
            let mut s = *c;
            s.sort_unstable();
            s
        })
        .collect();
    Ok(a == b)
}

/// One row of the per-n homology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRow {
    pub n: usize,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    pub four_cycles: usize,
    pub five_cycles: usize,
    pub label_classes: usize,
}

impl HomologyRow {
    pub fn expected_rank(&self) -> usize {
        binomial(self.n + 2, 4)
    }
}

/// Counts for one `n`; label classes are the distinct homology classes among all
/// geodesic 5-cycles.
pub fn homology_row(n: usize) -> Result<HomologyRow> {
    let hom = Homology::build(n)?;
    let h = h1_of(&hom.complex);
    let geo = geodesic_cycles(hom.graph())?;
    let keys: BTreeSet<Vec<BigInt>> = geo.five.iter().map(|c| hom.class_key(&c.walk())).collect();
    Ok(HomologyRow {
        n,
        rank: h.rank,
        torsion: h.torsion,
        four_cycles: hom.complex.cells.len(),
        five_cycles: geo.five.len(),
        label_classes: keys.len(),
    })
}

pub const CSV_HEADER: &str = "n,rank,torsion,four_cycles,five_cycles,label_classes";

/// CSV with [`CSV_HEADER`]; torsion factors are joined with `;` (empty when free).
pub fn csv_report(rows: &[HomologyRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let torsion: Vec<String> = r.torsion.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.n,
            r.rank,
            torsion.join(";"),
            r.four_cycles,
            r.five_cycles,
            r.label_classes
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_counts() {
        assert_eq!(build_complex(1).unwrap().two_cells().len(), 0);
        assert_eq!(build_complex(2).unwrap().two_cells().len(), 0);
        assert_eq!(build_complex(3).unwrap().two_cells().len(), 3);
    }

    #[test]
    fn single_edge_boundary() {
        let c = build_complex(1).unwrap();
        let d1 = c.boundary1().to_dense();
        let e = c.graph().edge(0);
        assert_eq!(d1[(e.tail, 0)], BigInt::from(-1));
        assert_eq!(d1[(e.head, 0)], BigInt::from(1));
    }

    #[test]
    fn chain_complex_identity() {
        for n in 1..=4 {
            let c = build_complex(n).unwrap();
            let (d1, d2) = c.boundary_matrices();
            let prod = d1.mul_sparse(&d2).unwrap();
            assert_eq!(prod.nnz(), 0, "n = {n}");
        }
    }

    #[test]
    fn rank_of_boundary2_n3() {
        let c = build_complex(3).unwrap();
        assert_eq!(invariant_factors(&c.boundary2()), vec![BigInt::one(); 3]);
    }

    #[test]
    fn h1_small() {
        for (n, rank) in [(2, 1), (3, 5), (4, 15)] {
            let h = h1(n).unwrap();
            assert_eq!(h.rank, rank, "n = {n}");
            assert!(h.torsion.is_empty());
        }
    }

    #[test]
    fn square_is_null_homologous() {
        let hom = Homology::build(3).unwrap();
        let cell = hom.complex().two_cells()[0];
        let walk = Walk::new(hom.graph(), closed_walk(&cell)).unwrap();
        assert!(hom.is_boundary(&walk));
        assert!(hom.classes_equal(&walk, &Walk::constant(cell[0])));
    }

    #[test]
    fn basis_members_decompose_to_indicators() {
        let hom = Homology::build(3).unwrap();
        assert!(hom.basis_independent());
        for (i, c) in hom.basis_cycles().iter().enumerate() {
            let coeffs = hom.decompose(&c.walk()).unwrap();
            for (j, x) in coeffs.iter().enumerate() {
                assert_eq!(*x, BigInt::from((i == j) as i64));
            }
        }
    }

    #[test]
    fn all_four_cycles_are_geodesic_small() {
        for n in 1..=5 {
            assert!(
                all_four_cycles_geodesic(&build_complex(n).unwrap()).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn csv_layout() {
        let row = homology_row(3).unwrap();
        assert_eq!(row.label_classes, 6);
        let csv = csv_report(&[row]);
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(
            csv.lines().nth(1).unwrap(),
            format!("3,5,,3,{},6", homology_row(3).unwrap().five_cycles)
        );
    }
}
