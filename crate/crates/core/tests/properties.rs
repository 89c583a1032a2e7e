use std::sync::OnceLock;

use clex_core::flipgraph::{
    apply_move, geodesic_cycles, switch_partner, ExchangeGraph, FiveCycle, Move, Walk,
};
use clex_core::homology::Homology;
use clex_core::polygon::{crosses, enumerate_triangulations};
use proptest::prelude::*;

fn homology(n: usize) -> &'static Homology {
    static H3: OnceLock<Homology> = OnceLock::new();
    static H4: OnceLock<Homology> = OnceLock::new();
    let cell = if n == 3 { &H3 } else { &H4 };
    cell.get_or_init(|| Homology::build(n).unwrap())
}

fn five_cycles(n: usize) -> &'static [FiveCycle] {
    static C3: OnceLock<Vec<FiveCycle>> = OnceLock::new();
    static C4: OnceLock<Vec<FiveCycle>> = OnceLock::new();
    let cell = if n == 3 { &C3 } else { &C4 };
    cell.get_or_init(|| geodesic_cycles(homology(n).graph()).unwrap().five)
}

#[derive(Clone, Debug)]
enum Step {
    Stretch(usize),
    Insert(usize, usize),
    Switch(usize),
}

fn step() -> impl Strategy<Value = Step> {
    prop_oneof![
        any::<usize>().prop_map(Step::Stretch),
        (any::<usize>(), any::<usize>()).prop_map(|(a, b)| Step::Insert(a, b)),
        any::<usize>().prop_map(Step::Switch),
    ]
}

/// Interprets an abstract step against the current walk; inapplicable steps are skipped.
fn apply(g: &ExchangeGraph, w: &Walk, s: &Step) -> Option<Walk> {
    let nodes = w.nodes();
    match *s {
        Step::Stretch(p) => apply_move(g, w, Move::Stretch, p % nodes.len()).ok(),
        Step::Insert(p, d) => {
            let repeats: Vec<usize> = (0..nodes.len() - 1)
                .filter(|&i| nodes[i] == nodes[i + 1])
                .collect();
            let i = *repeats.get(p % repeats.len().max(1))?;
            let diags = g.node(nodes[i]).diagonals();
            apply_move(
                g,
                w,
                Move::Insert {
                    diagonal: diags[d % diags.len()],
                },
                i,
            )
            .ok()
        }
        Step::Switch(p) => {
            let spots: Vec<usize> = (1..nodes.len() - 1)
                .filter(|&i| switch_partner(g, nodes[i - 1], nodes[i], nodes[i + 1]).is_some())
                .collect();
            let i = *spots.get(p % spots.len().max(1))?;
            apply_move(g, w, Move::Switch, i).ok()
        }
    }
}

fn loop_from(g: &ExchangeGraph, c: &FiveCycle, rotation: usize, tail: &[usize]) -> Walk {
    let mut cycle = c.nodes.to_vec();
    cycle.rotate_left(rotation % 5);
    let mut path = vec![cycle[0]];
    for &t in tail {
        let nb = g.neighbors(*path.last().unwrap());
        path.push(nb[t % nb.len()].0);
    }
    let mut nodes: Vec<usize> = path.iter().rev().copied().collect();
    nodes.extend(cycle.iter().skip(1));
    nodes.extend(path.iter().copied());
    Walk::new(g, nodes).unwrap()
}

fn check_moves(
    n: usize,
    pick: usize,
    rotation: usize,
    tail: &[usize],
    steps: &[Step],
) -> Result<(), TestCaseError> {
    let hom = homology(n);
    let g = hom.graph();
    let cycles = five_cycles(n);
    let start = loop_from(g, &cycles[pick % cycles.len()], rotation, tail);
    let mut w = start.clone();
    for s in steps {
        if let Some(next) = apply(g, &w, s) {
            w = next;
        }
    }
    prop_assert!(hom.classes_equal(&start, &w));
    prop_assert_eq!(start.word(g).odd_letters(), w.word(g).odd_letters());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn moves_preserve_class_n3(
        pick in any::<usize>(), rotation in 0usize..5,
        tail in prop::collection::vec(any::<usize>(), 0..4),
        steps in prop::collection::vec(step(), 1..12),
    ) {
        check_moves(3, pick, rotation, &tail, &steps)?;
    }

    #[test]
    fn moves_preserve_class_n4(
        pick in any::<usize>(), rotation in 0usize..5,
        tail in prop::collection::vec(any::<usize>(), 0..4),
        steps in prop::collection::vec(step(), 1..12),
    ) {
        check_moves(4, pick, rotation, &tail, &steps)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flips_are_involutions(n in 1usize..6, pick in any::<usize>(), which in any::<usize>()) {
        let all = enumerate_triangulations(n).unwrap();
        let t = &all[pick % all.len()];
        let d = t.diagonals()[which % n];
        let (t2, d2) = t.flip(&d).unwrap();
        prop_assert!(crosses(&d, &d2));
        prop_assert_eq!(t2.flip(&d2).unwrap(), (t.clone(), d));
        let quad = t.quad_of(&d).unwrap();
        for v in [d.a(), d.b(), d2.a(), d2.b()] {
            prop_assert!(quad.contains(&v));
        }
    }
}
