//! Randomized invariants for the model, solvers, and rewriter.

use std::collections::BTreeMap;

use proptest::prelude::*;

use pickroute::brute::{solve_exhaustive, solve_unpruned, Filter, SolveError};
use pickroute::dp::{solve_dp, DpMode};
use pickroute::rewrite::eliminate_outer_doubles;
use pickroute::warehouse::{EdgeId, Len, PickInstance, VertexId, WarehouseLayout};

/// Strategy: a small instance with arbitrary depot and 1..=4 picks.
fn small_instance() -> impl Strategy<Value = PickInstance> {
    (1usize..=3, 1usize..=2, 1usize..=3)
        .prop_flat_map(|(a, b, c)| {
            let cells = a * b * c;
            (
                Just((a, b, c)),
                proptest::collection::btree_set(0..cells, 1..=4.min(cells)),
                0..a * (b + 1),
            )
        })
        .prop_map(|((a, b, c), picks, depot_ix)| {
            let layout = WarehouseLayout::uniform(a, b, c).unwrap();
            let picks = picks
                .into_iter()
                .map(|ix| VertexId::Cell {
                    aisle: ix / (b * c),
                    subaisle: ix / c % b,
                    cell: ix % c + 1,
                })
                .collect();
            let depot = VertexId::Intersection {
                aisle: depot_ix / (b + 1),
                cross_aisle: depot_ix % (b + 1),
            };
            PickInstance::new(layout, depot, picks).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_walk_consumes_exactly_the_multiset(i in small_instance()) {
        let s = solve_exhaustive(&i, Filter::None).unwrap();
        let walk = s.tour.extract_closed_walk().unwrap();
        prop_assert_eq!(walk.first(), walk.last());
        // Count undirected edge uses along the walk.
        let layout = i.layout();
        let mut used: BTreeMap<usize, u8> = BTreeMap::new();
        for w in walk.windows(2) {
            let e = layout
                .enumerate_edges()
                .find(|e| {
                    let (u, v) = layout.edge_endpoints(*e);
                    (u, v) == (w[0], w[1]) || (u, v) == (w[1], w[0])
                })
                .expect("walk follows grid edges");
            *used.entry(layout.edge_index(e)).or_insert(0) += 1;
        }
        for (ix, m) in s.tour.multiplicities().iter().enumerate() {
            prop_assert_eq!(used.get(&ix).copied().unwrap_or(0), *m);
        }
    }

    #[test]
    fn tour_length_is_linear_in_multiplicities(i in small_instance()) {
        let s = solve_exhaustive(&i, Filter::None).unwrap();
        let layout = i.layout();
        let expect: Len = layout
            .enumerate_edges()
            .map(|e| layout.edge_length(e).unwrap() * Len::from_integer(s.tour.mult(e) as i64))
            .sum();
        prop_assert_eq!(s.tour.tour_length(), expect);
    }

    #[test]
    fn runs_are_disjoint_and_uniform(i in small_instance()) {
        let s = solve_exhaustive(&i, Filter::None).unwrap();
        let mut covered: BTreeMap<(usize, usize), u8> = BTreeMap::new();
        for run in s.tour.find_edge_runs() {
            prop_assert!(run.multiplicity == 1 || run.multiplicity == 2);
            prop_assert!(run.top_cross < run.bottom_cross);
            for sub in run.subaisles_spanned() {
                // no two runs may claim the same subaisle of the same aisle
                prop_assert!(covered.insert((run.aisle, sub), run.multiplicity).is_none());
                for slot in 0..i.layout().slots_per_subaisle() {
                    let m = s.tour.mult(EdgeId::VerticalUnit { aisle: run.aisle, subaisle: sub, slot });
                    prop_assert_eq!(m, run.multiplicity);
                }
            }
        }
    }

    #[test]
    fn dp_agrees_with_oracle(i in small_instance()) {
        let oracle = solve_exhaustive(&i, Filter::None).unwrap();
        let dp = solve_dp(&i, DpMode::Full).unwrap();
        prop_assert_eq!(oracle.length, dp.length);
        prop_assert!(dp.tour.is_feasible());
        prop_assert_eq!(dp.tour.tour_length(), dp.length);
    }

    #[test]
    fn pruned_search_is_value_preserving(
        (a, c) in (1usize..=2, 1usize..=2),
        picks in proptest::collection::btree_set(0usize..4, 1..=2),
        depot_ix in 0usize..4,
    ) {
        // Tiny sizes only: the audit solver enumerates the raw product.
        let b = 1usize;
        let cells = a * b * c;
        let layout = WarehouseLayout::uniform(a, b, c).unwrap();
        let picks: Vec<VertexId> = picks
            .into_iter()
            .filter(|ix| *ix < cells)
            .map(|ix| VertexId::Cell { aisle: ix / (b * c), subaisle: ix / c % b, cell: ix % c + 1 })
            .collect();
        prop_assume!(!picks.is_empty());
        let depot = VertexId::Intersection { aisle: depot_ix % a, cross_aisle: depot_ix / a % (b + 1) };
        let i = PickInstance::new(layout, depot, picks).unwrap();
        for filter in [Filter::None, Filter::NoDoublesAtAll, Filter::NoConnectingDoubles] {
            let fast = solve_exhaustive(&i, filter).map(|s| s.length);
            let slow = solve_unpruned(&i, filter).map(|s| s.length);
            match (fast, slow) {
                (Ok(f), Ok(s)) => prop_assert_eq!(f, s),
                (Err(SolveError::Infeasible), Err(SolveError::Infeasible)) => {}
                (f, s) => prop_assert!(false, "divergence: {:?} vs {:?}", f, s),
            }
        }
    }

    #[test]
    fn rewriter_never_lengthens_optimal_witnesses(i in small_instance()) {
        prop_assume!(i.non_empty_aisles().len() >= 2);
        let s = solve_exhaustive(&i, Filter::None).unwrap();
        let out = eliminate_outer_doubles(&s.tour).unwrap();
        prop_assert!(out.tour.is_feasible());
        prop_assert!(!out.tour.has_outer_double());
        prop_assert_eq!(out.tour.tour_length(), s.length);
    }

    #[test]
    fn instance_json_round_trips(i in small_instance()) {
        let text = i.to_json();
        let back = PickInstance::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn tour_dump_round_trips(i in small_instance()) {
        let s = solve_exhaustive(&i, Filter::None).unwrap();
        let dump = s.tour.to_dump();
        let back = pickroute::tour::TourSubgraph::from_dump(&i, &dump).unwrap();
        prop_assert_eq!(back.multiplicities(), s.tour.multiplicities());
        prop_assert_eq!(back.to_dump(), dump);
    }
}
