//! Named verification checks behind a common trait, so front ends can list and
//! select them by id.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::clustervars::{
    all_distinct, check_consistency, laurent_violations, period_five, positivity_failures,
};
use crate::combinat::{binomial, catalan};
use crate::error::{Error, Result};
use crate::exchmod::{edge_class_check, homology_to_relations, ExchangeModule};
use crate::flipgraph::{
    check_grid, geodesic_cycles, is_five_cycle_with_label, net_between, ExchangeGraph,
    GeodesicCycles,
};
use crate::homology::{h1_of, CellComplex2, Homology, H1};
use crate::polygon::DEFAULT_MAX_NODES;

/// Shared artifacts for one `n`, built on first use.
pub struct Context {
    n: usize,
    max_nodes: usize,
    graph: OnceLock<Result<ExchangeGraph>>,
    cycles: OnceLock<Result<GeodesicCycles>>,
    homology: OnceLock<Result<Homology>>,
    h1: OnceLock<Result<H1>>,
    module: OnceLock<Result<ExchangeModule>>,
}

impl Context {
    pub fn new(n: usize) -> Self {
        Self::with_bound(n, DEFAULT_MAX_NODES)
    }

    pub fn with_bound(n: usize, max_nodes: usize) -> Self {
        Context {
            n,
            max_nodes,
            graph: OnceLock::new(),
            cycles: OnceLock::new(),
            homology: OnceLock::new(),
            h1: OnceLock::new(),
            module: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> Result<&ExchangeGraph> {
        self.graph
            .get_or_init(|| ExchangeGraph::build_bounded(self.n, self.max_nodes))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn cycles(&self) -> Result<&GeodesicCycles> {
        self.cycles
            .get_or_init(|| geodesic_cycles(self.graph()?))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn homology(&self) -> Result<&Homology> {
        self.homology
            .get_or_init(|| {
                let graph = ExchangeGraph::build_bounded(self.n, self.max_nodes)?;
                Homology::new(CellComplex2::new(graph)?)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Rank and torsion only; cheaper than [`Context::homology`] for large `n`.
    pub fn h1(&self) -> Result<&H1> {
        self.h1
            .get_or_init(|| {
                let graph = ExchangeGraph::build_bounded(self.n, self.max_nodes)?;
                Ok(h1_of(&CellComplex2::new(graph)?))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn module(&self) -> Result<&ExchangeModule> {
        self.module
            .get_or_init(|| ExchangeModule::from_graph(self.graph()?))
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// Result of one check: an overall verdict and one line per fact examined.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub lines: Vec<(bool, String)>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|(ok, _)| *ok)
    }

    fn expect(&mut self, ok: bool, text: impl Into<String>) {
        self.lines.push((ok, text.into()));
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, found: T, expected: T) {
        let ok = found == expected;
        self.lines
            .push((ok, format!("{what}: {found:?} (expected {expected:?})")));
    }
}

pub trait Check: Send + Sync {
    fn id(&self) -> &'static str;
    fn title(&self) -> &'static str;
    fn run(&self, ctx: &Context) -> Result<CheckOutcome>;
}

struct Census;

impl Check for Census {
    fn id(&self) -> &'static str {
        "census"
    }

    fn title(&self) -> &'static str {
        "exchange graph census"
    }

    fn run(&self, ctx: &Context) -> Result<CheckOutcome> {
        let g = ctx.graph()?;
        let n = ctx.n();
        let mut out = CheckOutcome::default();
        out.expect_eq("triangulations", g.node_count(), catalan(n + 1));
        out.expect_eq("edges", g.edge_count(), catalan(n + 1) * n / 2);
        out.expect(g.is_regular(), format!("{n}-regular"));
        out.expect(g.is_connected(), "connected");
        out.expect(g.find_triangle().is_none(), "triangle-free");
        Ok(out)
    }
}

struct ClusterVariables;

impl Check for ClusterVariables {
    fn id(&self) -> &'static str {
        "cluster"
    }

    fn title(&self) -> &'static str {
        "cluster variables: Laurent, well defined, distinct"
    }

    fn run(&self, ctx: &Context) -> Result<CheckOutcome> {
        let m = ctx.module()?;
        let table = m.table();
        let n = ctx.n();
        let mut out = CheckOutcome::default();
        out.expect_eq("diagonal variables", table.len(), n * (n + 3) / 2);
        out.expect(
            check_consistency(ctx.graph()?, table).is_ok(),
            "every flip reproduces the stored variable",
        );
        out.expect(
            laurent_violations(table).is_empty(),
            "denominators are monomials in x1..xn",
        );
        out.expect(all_distinct(table), "variables pairwise distinct");
        let negative = positivity_failures(table);
        // Positivity is an observation, reported but not required.
        out.lines.push((
            true,
            format!("variables with a negative coefficient: {}", negative.len()),
        ));
        Ok(out)
    }
}

struct PeriodFive;

impl Check for PeriodFive {
    fn id(&self) -> &'static str {
        "period5"
    }

    fn title(&self) -> &'static str {
        "period five of f(k+1) = (f(k) + 1) / f(k-1)"
    }

    fn run(&self, _ctx: &Context) -> Result<CheckOutcome> {
        let p = period_five()?;
        let mut out = CheckOutcome::default();
        out.expect(p.confirmed, "f6 = x1 and f7 = x2");
        let orbit: Vec<String> = p.orbit.iter().map(|q| q.to_string()).collect();
        out.expect_eq(
            "orbit at x1 = x2 = 1",
            orbit.join(","),
            "1,1,2,3,2,1,1".to_string(),
        );
        Ok(out)
    }
}

struct KernelIsHomology;

impl Check for KernelIsHomology {
    fn id(&self) -> &'static str {
        "1"
    }

    fn title(&self) -> &'static str {
        "ker θ has the rank of H1, edge classes match crossing pairs"
    }

    fn run(&self, ctx: &Context) -> Result<CheckOutcome> {
        let m = ctx.module()?;
        let hom = ctx.homology()?;
        let h = ctx.h1()?;
        let mut out = CheckOutcome::default();
        out.expect_eq("rank ker θ vs rank H1", m.kernel_rank(), h.rank);
        let edges = edge_class_check(hom.complex());
        out.expect(
            edges.bijective,
            format!("{} edge classes, one label each", edges.classes),
        );
        out.expect(edges.surjective, "every crossing pair labels an edge");
        out.expect(
            edges.kills_boundaries,
            "label map vanishes on 2-cell boundaries",
        );
        let (matches, injective) = homology_to_relations(hom);
        out.expect(matches, "basis 5-cycles map to their pentagonal relations");
        out.expect(injective, "basis classes have independent images");
        Ok(out)
    }
}

struct FreeOfPentagons;

impl Check for FreeOfPentagons {
    fn id(&self) -> &'static str {
        "2"
    }

    fn title(&self) -> &'static str {
        "H1 free of rank C(n+2,4), ker θ generated by pentagonal relations"
    }

    fn run(&self, ctx: &Context) -> Result<CheckOutcome> {
        let n = ctx.n();
        let h = ctx.h1()?;
        let m = ctx.module()?;
        let mut out = CheckOutcome::default();
        out.expect_eq("rank H1", h.rank, binomial(n + 2, 4));
        out.expect(h.torsion.is_empty(), format!("torsion {:?}", h.torsion));
        out.expect_eq("rank ker θ", m.kernel_rank(), binomial(n + 2, 4));
        let g = m.verify_pentagonal_generation();
        out.expect(g.in_kernel, "pentagonal relations lie in ker θ");
        out.expect(g.all_span_kernel, "pentagonal relations span ker θ");
        out.expect(
            g.one_containing_span_kernel,
            "relations with 1 in the label span ker θ",
        );
        out.expect(
            g.one_containing_independent,
            "relations with 1 in the label are independent",
        );
        out.expect(
            g.one_containing_span_pentagons,
            "relations with 1 in the label span all pentagonal relations",
        );
        Ok(out)
    }
}

struct ExchangeBasis;

impl Check for ExchangeBasis {
    fn id(&self) -> &'static str {
        "3"
    }

    fn title(&self) -> &'static str {
        "exchange module free of rank C(n+2,3) on endpoint-1 pairs"
    }

    fn run(&self, ctx: &Context) -> Result<CheckOutcome> {
        let n = ctx.n();
        let m = ctx.module()?;
        let mut out = CheckOutcome::default();
        out.expect_eq("rank θ", m.theta_rank(), binomial(n + 2, 3));
        out.expect_eq(
            "endpoint-1 pairs",
            m.exchange_basis().len(),
            binomial(n + 2, 3),
        );
        out.expect_eq(
            "rank of endpoint-1 images",
            m.exchange_basis_rank(),
            m.exchange_basis().len(),
        );
        let failures = m.pairs().iter().filter(|p| m.express(p).is_err()).count();
        out.expect(failures == 0, format!("pairs not expressible: {failures}"));
        out.expect(m.quotient_torsion_free(), "F / ker θ is torsion-free");
        Ok(out)
    }
}

struct LabelsAreClasses;

impl Check for LabelsAreClasses {
    fn id(&self) -> &'static str {
        "4.4"
    }

    fn title(&self) -> &'static str {
        "geodesic 5-cycles are homologous iff their labels agree"
    }

    fn run(&self, ctx: &Context) -> Result<CheckOutcome> {
        let hom = ctx.homology()?;
        let cycles = ctx.cycles()?;
        let mut labels_of_key: BTreeMap<Vec<BigInt>, BTreeSet<_>> = BTreeMap::new();
        let mut keys_of_label: BTreeMap<_, BTreeSet<Vec<BigInt>>> = BTreeMap::new();
        for c in &cycles.five {
            let key = hom.class_key(&c.walk());
            labels_of_key
                .entry(key.clone())
                .or_default()
                .insert(c.label);
            keys_of_label.entry(c.label).or_default().insert(key);
        }
        let mut out = CheckOutcome::default();
        out.expect(
            keys_of_label.values().all(|s| s.len() == 1),
            format!(
                "{} five-cycles, each label a single class",
                cycles.five.len()
            ),
        );
        out.expect(
            labels_of_key.values().all(|s| s.len() == 1),
            format!("{} classes, each with a single label", labels_of_key.len()),
        );
        out.expect_eq("classes", labels_of_key.len(), binomial(ctx.n() + 3, 5));
        Ok(out)
    }
}

struct Nets;

impl Check for Nets {
    fn id(&self) -> &'static str {
        "nets"
    }

    fn title(&self) -> &'static str {
        "nets of 4-cycles between same-label 5-cycles"
    }

    fn run(&self, ctx: &Context) -> Result<CheckOutcome> {
        let g = ctx.graph()?;
        let cycles = ctx.cycles()?;
        let mut by_label: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for c in &cycles.five {
            by_label.entry(c.label).or_default().push(c);
        }
        let (mut pairs, mut bad) = (0usize, 0usize);
        for group in by_label.values() {
            let first = group[0];
            for other in group {
                pairs += 1;
                let ok = net_between(g, first, other).is_ok_and(|grid| {
                    check_grid(g, &grid).is_ok()
                        && grid
                            .rows
                            .iter()
                            .all(|r| is_five_cycle_with_label(g, r, &first.label))
                });
                bad += usize::from(!ok);
            }
        }
        let mut out = CheckOutcome::default();
        out.expect(bad == 0, format!("{pairs} nets built, {bad} invalid"));
        Ok(out)
    }
}

/// All checks in a fixed order.
pub fn registry() -> Vec<Box<dyn Check>> {
    vec![
        Box::new(Census),
        Box::new(ClusterVariables),
        Box::new(PeriodFive),
        Box::new(KernelIsHomology),
        Box::new(FreeOfPentagons),
        Box::new(ExchangeBasis),
        Box::new(LabelsAreClasses),
        Box::new(Nets),
    ]
}

/// Checks selected by id; `all` selects every check.
pub fn select(id: &str) -> Result<Vec<Box<dyn Check>>> {
    let all = registry();
    if id == "all" {
        return Ok(all);
    }
    let chosen: Vec<_> = all.into_iter().filter(|c| c.id() == id).collect();
    if chosen.is_empty() {
        return Err(Error::Parse(format!("unknown check {id:?}")));
    }
    Ok(chosen)
}

pub fn ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id()).collect()
}
