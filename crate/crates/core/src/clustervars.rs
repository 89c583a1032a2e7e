//! Cluster variables attached to the diagonals of the polygon.
//!
//! Starting from the fan at vertex 1, every flip produces the variable of the new
//! diagonal through the exchange relation
//! `x_(p,r) * x_(q,s) = x_(p,q) * x_(r,s) + x_(q,r) * x_(s,p)` on the quadrilateral
//! `p < q < r < s`.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::json;

use crate::error::{Error, Result};
use crate::flipgraph::ExchangeGraph;
use crate::laurent::LaurentPoly;
use crate::polygon::{vertex_count, BoundaryEdge, Diagonal, Triangulation, Vertex};

/// The initial variable assignment on the fan at vertex 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    n: usize,
    cluster: BTreeMap<Diagonal, usize>,
    frozen: BTreeMap<BoundaryEdge, usize>,
}

impl Seed {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::SizeOutOfRange(n));
        }
        let m = vertex_count(n);
        let cluster = (3..=m - 1)
            .map(|j| (Diagonal::of(1, j), j as usize - 2))
            .collect();
        let mut frozen = BTreeMap::new();
        for i in 1..m {
            frozen.insert(BoundaryEdge::new(n, i, i + 1)?, n + i as usize);
        }
        frozen.insert(BoundaryEdge::new(n, 1, m)?, 2 * n + 3);
        Ok(Seed { n, cluster, frozen })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of indeterminates, `2n + 3`.
    pub fn nvars(&self) -> usize {
        2 * self.n + 3
    }

    pub fn triangulation(&self) -> Triangulation {
        Triangulation::fan(self.n, 1).expect("fan at vertex 1 always exists")
    }

    /// 1-based index of the variable on a seed diagonal.
    pub fn cluster(&self) -> &BTreeMap<Diagonal, usize> {
        &self.cluster
    }

    /// 1-based index of the frozen variable on each boundary edge.
    pub fn frozen(&self) -> &BTreeMap<BoundaryEdge, usize> {
        &self.frozen
    }

    /// Indices of the frozen variables, `n+1 ..= 2n+3`.
    pub fn frozen_indices(&self) -> Vec<usize> {
        (self.n + 1..=self.nvars()).collect()
    }
}

/// Cluster variables of every diagonal, plus the frozen boundary variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableTable {
    n: usize,
    diagonals: BTreeMap<Diagonal, LaurentPoly>,
    frozen: BTreeMap<BoundaryEdge, LaurentPoly>,
}

impl VariableTable {
    fn from_seed(seed: &Seed) -> Self {
        let nv = seed.nvars();
        VariableTable {
            n: seed.n,
            diagonals: seed
                .cluster
                .iter()
                .map(|(&d, &i)| (d, LaurentPoly::var(nv, i)))
                .collect(),
            frozen: seed
                .frozen
                .iter()
                .map(|(&e, &i)| (e, LaurentPoly::var(nv, i)))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        2 * self.n + 3
    }

    pub fn get(&self, d: &Diagonal) -> Option<&LaurentPoly> {
        self.diagonals.get(d)
    }

    /// Variable on the segment `{x, y}`, whether a diagonal or a boundary edge.
    pub fn segment(&self, x: Vertex, y: Vertex) -> Option<&LaurentPoly> {
        let (a, b) = (x.min(y), x.max(y));
        if let Ok(e) = BoundaryEdge::new(self.n, a, b) {
            return self.frozen.get(&e);
        }
        Diagonal::new(self.n, a, b)
            .ok()
            .and_then(|d| self.diagonals.get(&d))
    }

    pub fn diagonals(&self) -> &BTreeMap<Diagonal, LaurentPoly> {
        &self.diagonals
    }

    pub fn frozen(&self) -> &BTreeMap<BoundaryEdge, LaurentPoly> {
        &self.frozen
    }

    pub fn len(&self) -> usize {
        self.diagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonals.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let variables: Vec<_> = self
            .diagonals
            .iter()
            .map(|(d, p)| {
                json!({
                    "diagonal": d,
                    "value": p.to_fraction_string(),
                    "terms": p,
                })
            })
            .collect();
        let frozen: Vec<_> = self
            .frozen
            .iter()
            .map(|(e, p)| json!({ "edge": [e.a(), e.b()], "value": p.to_fraction_string() }))
            .collect();
        json!({
            "version": crate::VERSION,
            "n": self.n,
            "nvars": self.nvars(),
            "variables": variables,
            "frozen": frozen,
        })
    }
}

/// `(xa * xc + xb * xd) / xk`, exactly.
pub fn exchange(
    xk: &LaurentPoly,
    xa: &LaurentPoly,
    xb: &LaurentPoly,
    xc: &LaurentPoly,
    xd: &LaurentPoly,
) -> Result<LaurentPoly> {
    let num = xa.try_mul(xc)?.try_add(&xb.try_mul(xd)?)?;
    num.exact_div(xk)
}

/// Variable of the diagonal that replaces `d` when flipping it in `t`.
pub fn exchange_at(
    table: &VariableTable,
    t: &Triangulation,
    d: &Diagonal,
) -> Result<(Diagonal, LaurentPoly)> {
    let [p, q, r, s] = t.quad_of(d)?;
    let (_, new) = t.flip(d)?;
    let side = |x: Vertex, y: Vertex| table.segment(x, y).ok_or(Error::InconsistentVariable(*d));
    let xk = table.get(d).ok_or(Error::InconsistentVariable(*d))?;
    let value = exchange(xk, side(p, q)?, side(q, r)?, side(r, s)?, side(s, p)?)?;
    Ok((new, value))
}

pub fn compute_table(n: usize) -> Result<VariableTable> {
    compute_table_on(&ExchangeGraph::build(n)?)
}

/// Breadth-first over the graph from the fan; every edge is traversed in both
/// directions and each recomputed variable must match the stored one.
pub fn compute_table_on(graph: &ExchangeGraph) -> Result<VariableTable> {
    let seed = Seed::new(graph.n())?;
    let mut table = VariableTable::from_seed(&seed);
    let root = graph
        .find(&seed.triangulation())
        .ok_or_else(|| Error::InvalidTriangulation("fan missing from graph".into()))?;
    let mut seen = vec![false; graph.node_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let t = graph.node(u);
        for d in t.diagonals() {
            let (new, value) = exchange_at(&table, t, d)?;
            match table.diagonals.get(&new) {
                Some(old) if *old != value => return Err(Error::InconsistentVariable(new)),
                Some(_) => {}
                None => {
                    table.diagonals.insert(new, value);
                }
            }
            let (v, _) = graph.flip_node(u, d)?;
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    Ok(table)
}

/// Recomputes every flip of every node against a finished table.
pub fn check_consistency(graph: &ExchangeGraph, table: &VariableTable) -> Result<()> {
    for t in graph.nodes() {
        for d in t.diagonals() {
            let (new, value) = exchange_at(table, t, d)?;
            if table.get(&new) != Some(&value) {
                return Err(Error::InconsistentVariable(new));
            }
        }
    }
    Ok(())
}

/// Diagonals whose variable has a denominator involving a frozen variable.
pub fn laurent_violations(table: &VariableTable) -> Vec<Diagonal> {
    table
        .diagonals
        .iter()
        .filter(|(_, p)| p.denominator()[table.n..].iter().any(|&e| e != 0))
        .map(|(d, _)| *d)
        .collect()
}

/// True iff no two diagonals carry the same variable.
pub fn all_distinct(table: &VariableTable) -> bool {
    let mut values: Vec<&LaurentPoly> = table.diagonals.values().collect();
    let total = values.len();
    values.sort_by_key(|p| p.to_string());
    values.dedup();
    values.len() == total
}

/// Diagonals whose variable has a negative coefficient.
pub fn positivity_failures(table: &VariableTable) -> Vec<Diagonal> {
    table
        .diagonals
        .iter()
        .filter(|(_, p)| p.terms().any(|(_, c)| c.is_negative()))
        .map(|(d, _)| *d)
        .collect()
}

/// The diagonals flipped, in order, to walk once around the pentagon for n = 2.
pub const PERIOD_FIVE_FLIPS: [(Vertex, Vertex); 5] = [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)];

#[derive(Clone, Debug)]
pub struct PeriodFive {
    /// `f_1 .. f_7` with frozen variables set to 1.
    pub values: Vec<LaurentPoly>,
    /// The same values at `x_1 = x_2 = 1`.
    pub orbit: Vec<BigRational>,
    pub confirmed: bool,
}

/// Walks the five flips around the n = 2 pentagon from the fan and compares the
/// produced sequence with `f_{k+1} = (f_k + 1) / f_{k-1}`.
pub fn period_five() -> Result<PeriodFive> {
    let n = 2;
    let seed = Seed::new(n)?;
    let frozen = seed.frozen_indices();
    let nv = seed.nvars();
    let mut table = VariableTable::from_seed(&seed);
    let mut t = seed.triangulation();
    let mut values = vec![LaurentPoly::var(nv, 1), LaurentPoly::var(nv, 2)];
    for (a, b) in PERIOD_FIVE_FLIPS {
        let d = Diagonal::new(n, a, b)?;
        let (new, value) = exchange_at(&table, &t, &d)?;
        values.push(value.set_to_one(&frozen));
        table.diagonals.insert(new, value);
        t = t.flip(&d)?.0;
    }

    let one = LaurentPoly::one(nv);
    let mut recurrence = true;
    for k in 2..values.len() {
        let expected = values[k - 1].try_add(&one)?.exact_div(&values[k - 2])?;
        recurrence &= expected == values[k];
    }
    let point: Vec<BigRational> = (0..nv).map(|_| BigRational::one()).collect();
    let orbit = values
        .iter()
        .map(|v| v.specialize(&point))
        .collect::<Result<Vec<_>>>()?;
    let confirmed = recurrence && values[5] == values[0] && values[6] == values[1];
    Ok(PeriodFive {
        values,
        orbit,
        confirmed,
    })
}

pub fn verify_period_five() -> bool {
    period_five().is_ok_and(|p| p.confirmed)
}

/// Small integers as exact rationals.
pub fn rationals(values: &[i64]) -> Vec<BigRational> {
    values
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, a: Vertex, b: Vertex) -> Diagonal {
        Diagonal::new(n, a, b).unwrap()
    }

    fn parse(n: usize, s: &str) -> LaurentPoly {
        LaurentPoly::parse(2 * n + 3, s).unwrap()
    }

    #[test]
    fn seed_labels() {
        let s = Seed::new(3).unwrap();
        assert_eq!(s.cluster()[&d(3, 1, 5)], 3);
        assert_eq!(s.frozen()[&BoundaryEdge::new(3, 1, 2).unwrap()], 4);
        assert_eq!(s.frozen()[&BoundaryEdge::new(3, 5, 6).unwrap()], 8);
        assert_eq!(s.frozen()[&BoundaryEdge::new(3, 1, 6).unwrap()], 9);
    }

    #[test]
    fn a2_first_exchange() {
        let v = |i| LaurentPoly::var(7, i);
        // sides of {1,2,3,4} around the removed diagonal (1,3): x3 x5 + x4 x2 over x1
        let got = exchange(&v(1), &v(4), &v(5), &v(2), &v(3)).unwrap();
        assert_eq!(got.to_fraction_string(), "(x2*x4 + x3*x5)/x1");
    }

    #[test]
    fn a2_table() {
        let t = compute_table(2).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.get(&d(2, 1, 3)), Some(&LaurentPoly::var(7, 1)));
        assert_eq!(
            t.get(&d(2, 2, 4)).unwrap().to_fraction_string(),
            "(x2*x4 + x3*x5)/x1"
        );
        assert_eq!(
            t.get(&d(2, 3, 5)).unwrap().to_fraction_string(),
            "(x1*x6 + x5*x7)/x2"
        );
        assert_eq!(
            t.get(&d(2, 2, 5)).unwrap().to_fraction_string(),
            "(x1*x3*x6 + x2*x4*x7 + x3*x5*x7)/(x1*x2)"
        );
    }

    #[test]
    fn a2_final_exchange_returns_x1() {
        let table = compute_table(2).unwrap();
        let t = Triangulation::new(2, [d(2, 2, 5), d(2, 3, 5)]).unwrap();
        let (new, value) = exchange_at(&table, &t, &d(2, 2, 5)).unwrap();
        assert_eq!(new, d(2, 1, 3));
        assert_eq!(value, LaurentPoly::var(7, 1));
    }

    #[test]
    fn n1_single_exchange() {
        let t = compute_table(1).unwrap();
        assert_eq!(
            t.get(&d(1, 2, 4)).unwrap(),
            &parse(1, "1 * x1^-1 x2^1 x4^1 + 1 * x1^-1 x3^1 x5^1")
        );
    }

    #[test]
    fn period_five_values() {
        let p = period_five().unwrap();
        assert!(p.confirmed);
        assert_eq!(p.values[2].to_fraction_string(), "(x2 + 1)/x1");
        assert_eq!(p.orbit, rationals(&[1, 1, 2, 3, 2, 1, 1]));
    }

    #[test]
    fn invariants_up_to_five() {
        for n in 1..=5 {
            let g = ExchangeGraph::build(n).unwrap();
            let t = compute_table_on(&g).unwrap();
            assert_eq!(t.len(), (n + 3) * n / 2);
            check_consistency(&g, &t).unwrap();
            assert!(laurent_violations(&t).is_empty());
            assert!(all_distinct(&t));
            assert!(positivity_failures(&t).is_empty());
        }
    }

    #[test]
    fn segment_lookup() {
        let t = compute_table(2).unwrap();
        assert_eq!(t.segment(5, 1), Some(&LaurentPoly::var(7, 7)));
        assert_eq!(t.segment(4, 1), Some(&LaurentPoly::var(7, 2)));
        assert_eq!(t.segment(2, 2), None);
    }
}
