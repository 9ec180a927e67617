//! Batch theorem checking over instance families.
//!
//! Each structural claim is tested as min-value equality between the
//! unfiltered oracle and the oracle restricted to tours without the claimed
//! structure — logically equivalent to "a minimal tour without it exists"
//! and far cheaper than enumerating all optima.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::brute::{
    solve_exhaustive_with_budget, Filter, SolveError, DEFAULT_BUDGET,
};
use crate::configs::{classify_double_edge, DoubleEdgeClass};
use crate::dp::{solve_dp, DpMode};
use crate::rewrite::eliminate_outer_doubles;
use crate::tour::TourSubgraph;
use crate::warehouse::{Len, PickInstance, VertexId, WarehouseLayout};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    NotApplicable,
}

/// Theorem: minimal tours need no connecting double runs.
pub fn check_theorem_connecting(instance: &PickInstance, budget: u128) -> Verdict {
    filter_equality_verdict(instance, Filter::NoConnectingDoubles, budget)
}

/// Lemma: double runs in states (0,2), (1,1), (1,2), (2,2) are unnecessary.
pub fn check_lemma_states(instance: &PickInstance, budget: u128) -> Verdict {
    filter_equality_verdict(instance, Filter::NoReducibleStates, budget)
}

/// Theorem: with at least two non-empty aisles, minimal tours need no double
/// run through an outer subaisle; additionally the rewriter must remove any
/// such run from an optimal witness without changing its length.
pub fn check_theorem_outer(instance: &PickInstance, budget: u128) -> Verdict {
    if instance.non_empty_aisles().len() < 2 {
        return Verdict::NotApplicable;
    }
    let base = match solve_exhaustive_with_budget(instance, Filter::None, budget) {
        Ok(s) => s,
        Err(SolveError::Infeasible) => return Verdict::Fail,
        Err(_) => return Verdict::Skipped,
    };
    match solve_exhaustive_with_budget(instance, Filter::NoOuterDoubles, budget) {
        Ok(s) if s.length == base.length => {}
        Ok(_) | Err(SolveError::Infeasible) => return Verdict::Fail,
        Err(_) => return Verdict::Skipped,
    }
    match eliminate_outer_doubles(&base.tour) {
        Ok(out)
            if out.tour.is_feasible()
                && !out.tour.has_outer_double()
                && out.tour.tour_length() == base.length =>
        {
            Verdict::Pass
        }
        _ => Verdict::Fail,
    }
}

/// Corollary: in single-block layouts, and two-block layouts with at least
/// two non-empty aisles, minimal tours need no double runs at all.
pub fn check_corollary(instance: &PickInstance, budget: u128) -> Verdict {
    let b = instance.layout().num_blocks();
    let applicable = b == 1 || (b == 2 && instance.non_empty_aisles().len() >= 2);
    if !applicable {
        return Verdict::NotApplicable;
    }
    filter_equality_verdict(instance, Filter::NoDoublesAtAll, budget)
}

/// Confirmation of the corollary's stated exclusion: a two-block layout whose
/// picks sit in one single-column warehouse aisle, in a subaisle not touching
/// the depot's cross-aisle, really does need a double run. Applicable only
/// where the requirement is forced (single aisle: no horizontal edge can fix
/// the parity of the intermediate subaisle).
pub fn check_exclusion_requires_double(instance: &PickInstance, budget: u128) -> Verdict {
    let layout = instance.layout();
    let non_empty = instance.non_empty_aisles();
    if layout.num_blocks() != 2 || non_empty.len() != 1 || layout.num_aisles() != 1 {
        return Verdict::NotApplicable;
    }
    let (_, depot_cross) = instance.depot_position();
    let separated = instance.picks().iter().any(|p| match p {
        VertexId::Cell { subaisle, .. } => depot_cross != *subaisle && depot_cross != subaisle + 1,
        _ => false,
    });
    if !separated {
        return Verdict::NotApplicable;
    }
    let base = match solve_exhaustive_with_budget(instance, Filter::None, budget) {
        Ok(s) => s,
        Err(SolveError::Infeasible) => return Verdict::Fail,
        Err(_) => return Verdict::Skipped,
    };
    match solve_exhaustive_with_budget(instance, Filter::NoDoublesAtAll, budget) {
        Err(SolveError::Infeasible) => Verdict::Pass,
        Ok(s) if s.length > base.length => Verdict::Pass,
        Ok(_) => Verdict::Fail,
        Err(_) => Verdict::Skipped,
    }
}

fn filter_equality_verdict(instance: &PickInstance, filter: Filter, budget: u128) -> Verdict {
    let base = match solve_exhaustive_with_budget(instance, Filter::None, budget) {
        Ok(s) => s,
        Err(SolveError::Infeasible) => return Verdict::Fail,
        Err(_) => return Verdict::Skipped,
    };
    match solve_exhaustive_with_budget(instance, filter, budget) {
        Ok(s) if s.length == base.length => Verdict::Pass,
        Ok(_) | Err(SolveError::Infeasible) => Verdict::Fail,
        Err(_) => Verdict::Skipped,
    }
}

pub fn instance_hash(instance: &PickInstance) -> String {
    let mut hasher = Sha256::new();
    hasher.update(instance.to_json().as_bytes());
    let digest = hasher.finalize();
    digest.iter().take(16).map(|b| format!("{b:02x}")).collect()
}

fn len_string(l: Len) -> String {
    if l.is_integer() {
        l.to_integer().to_string()
    } else {
        format!("{}/{}", l.numer(), l.denom())
    }
}

/// Run statistics on a witness: run counts by multiplicity, class and state,
/// plus doubled-horizontal occurrences.
fn double_run_stats(t: &TourSubgraph<'_>) -> BTreeMap<String, u64> {
    let mut stats: BTreeMap<String, u64> = BTreeMap::new();
    let mut bump = |k: String| *stats.entry(k).or_insert(0) += 1;
    for run in t.find_edge_runs() {
        match run.multiplicity {
            1 => bump("single_runs".into()),
            _ => {
                bump("double_runs".into());
                if run.spans_outer_subaisle(t.instance().layout().num_blocks()) {
                    bump("double_runs_outer".into());
                }
                match classify_double_edge(t, &run) {
                    Ok(DoubleEdgeClass::Connecting) => bump("double_connecting".into()),
                    Ok(DoubleEdgeClass::NonConnecting { state, .. }) => {
                        bump(format!("double_state_{}_{}", state.0, state.1))
                    }
                    Err(_) => bump("double_unclassified".into()),
                }
            }
        }
    }
    let layout = t.instance().layout();
    for cross in 0..layout.num_cross_aisles() {
        for left in 0..layout.num_aisles().saturating_sub(1) {
            if t.mult(crate::warehouse::EdgeId::HorizontalUnit { cross_aisle: cross, left_aisle: left }) == 2 {
                bump("horizontal_doubled".into());
            }
        }
    }
    stats
}

#[derive(Debug, Serialize)]
pub struct FailureDetail {
    pub instance: serde_json::Value,
    pub witness: Option<String>,
    pub rewrite_trace: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct InstanceReport {
    pub hash: String,
    pub optimal: Option<String>,
    /// Optimal value per filter; None means infeasible under that filter.
    pub filtered: BTreeMap<String, Option<String>>,
    pub dp_matches_oracle: Verdict,
    pub dp_transitions_full: u64,
    pub dp_transitions_restricted: u64,
    pub theorem_connecting: Verdict,
    pub lemma_states: Verdict,
    pub theorem_outer: Verdict,
    pub corollary: Verdict,
    pub exclusion_requires_double: Verdict,
    pub stats: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureDetail>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub rows: Vec<InstanceReport>,
    pub summary: BTreeMap<String, BTreeMap<String, u64>>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn all_applicable_pass(&self) -> bool {
        self.summary
            .values()
            .all(|counts| counts.get("Fail").copied().unwrap_or(0) == 0)
    }
}

pub fn verify_instance(instance: &PickInstance, budget: u128) -> InstanceReport {
    let base = solve_exhaustive_with_budget(instance, Filter::None, budget).ok();

    let mut filtered = BTreeMap::new();
    for filter in [
        Filter::NoOuterDoubles,
        Filter::NoDoublesAtAll,
        Filter::NoConnectingDoubles,
        Filter::NoReducibleStates,
    ] {
        let value = match solve_exhaustive_with_budget(instance, filter, budget) {
            Ok(s) => Some(len_string(s.length)),
            Err(_) => None,
        };
        filtered.insert(filter.name().to_string(), value);
    }

    let dp_full = solve_dp(instance, DpMode::Full);
    let dp_restricted = solve_dp(instance, DpMode::RestrictOuter);
    let dp_matches_oracle = match (&base, &dp_full) {
        (Some(b), Ok(d)) => {
            if b.length == d.length && d.tour.is_feasible() && d.tour.tour_length() == d.length {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        (None, Err(SolveError::Infeasible)) => Verdict::Pass,
        (None, _) | (_, Err(SolveError::StateGuardExceeded { .. })) => Verdict::Skipped,
        _ => Verdict::Fail,
    };

    let theorem_connecting = check_theorem_connecting(instance, budget);
    let lemma_states = check_lemma_states(instance, budget);
    let theorem_outer = check_theorem_outer(instance, budget);
    let corollary = check_corollary(instance, budget);
    let exclusion = check_exclusion_requires_double(instance, budget);

    let any_fail = [theorem_connecting, lemma_states, theorem_outer, corollary, exclusion, dp_matches_oracle]
        .contains(&Verdict::Fail);
    let failure = any_fail.then(|| FailureDetail {
        instance: serde_json::from_str(&instance.to_json()).expect("canonical JSON"),
        witness: base.as_ref().map(|s| s.tour.to_dump()),
        rewrite_trace: base
            .as_ref()
            .map(|s| format!("{:?}", eliminate_outer_doubles(&s.tour).map(|o| o.steps))),
    });

    InstanceReport {
        hash: instance_hash(instance),
        optimal: base.as_ref().map(|s| len_string(s.length)),
        filtered,
        dp_matches_oracle,
        dp_transitions_full: dp_full.as_ref().map(|s| s.work).unwrap_or(0),
        dp_transitions_restricted: dp_restricted.as_ref().map(|s| s.work).unwrap_or(0),
        theorem_connecting,
        lemma_states,
        theorem_outer,
        corollary,
        exclusion_requires_double: exclusion,
        stats: base.as_ref().map(|s| double_run_stats(&s.tour)).unwrap_or_default(),
        failure,
    }
}

/// Verify every instance (in parallel), sort rows by hash, aggregate.
pub fn run_family(instances: &[PickInstance], budget: u128) -> Report {
    let mut rows: Vec<InstanceReport> =
        instances.par_iter().map(|i| verify_instance(i, budget)).collect();
    rows.sort_by(|x, y| x.hash.cmp(&y.hash));

    let mut summary: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
    let mut tally = |check: &str, v: Verdict| {
        *summary
            .entry(check.to_string())
            .or_default()
            .entry(format!("{v:?}"))
            .or_insert(0) += 1;
    };
    for row in &rows {
        tally("dp_matches_oracle", row.dp_matches_oracle);
        tally("theorem_connecting", row.theorem_connecting);
        tally("lemma_states", row.lemma_states);
        tally("theorem_outer", row.theorem_outer);
        tally("corollary", row.corollary);
        tally("exclusion_requires_double", row.exclusion_requires_double);
    }
    Report { rows, summary }
}

/// Every instance with the given bounds: all layouts, depots, and pick sets
/// of size 1..=max_picks.
pub fn enumerate_family(
    max_aisles: usize,
    max_blocks: usize,
    max_cells: usize,
    max_picks: usize,
    cell_step: Len,
    gap: Len,
) -> Vec<PickInstance> {
    let mut out = Vec::new();
    for a in 1..=max_aisles {
        for b in 1..=max_blocks {
            for c in 1..=max_cells {
                let cells: Vec<VertexId> = (0..a)
                    .flat_map(|aisle| {
                        (0..b).flat_map(move |sub| {
                            (1..=c).map(move |cell| VertexId::Cell { aisle, subaisle: sub, cell })
                        })
                    })
                    .collect();
                let mut subsets: Vec<Vec<VertexId>> = Vec::new();
                collect_subsets(&cells, max_picks, &mut Vec::new(), 0, &mut subsets);
                for aisle in 0..a {
                    for cross in 0..=b {
                        for picks in &subsets {
                            let layout = WarehouseLayout::new(a, b, c, cell_step, vec![gap; a - 1])
                                .expect("valid family layout");
                            let depot = VertexId::Intersection { aisle, cross_aisle: cross };
                            out.push(
                                PickInstance::new(layout, depot, picks.clone())
                                    .expect("valid family instance"),
                            );
                        }
                    }
                }
            }
        }
    }
    out
}

fn collect_subsets(
    cells: &[VertexId],
    left: usize,
    acc: &mut Vec<VertexId>,
    from: usize,
    out: &mut Vec<Vec<VertexId>>,
) {
    if !acc.is_empty() {
        out.push(acc.clone());
    }
    if left == 0 {
        return;
    }
    for i in from..cells.len() {
        acc.push(cells[i]);
        collect_subsets(cells, left - 1, acc, i + 1, out);
        acc.pop();
    }
}

/// Seeded random instances: uniform pick count in [1, min(6, A*B*C)],
/// uniform distinct cells, uniform depot among intersections.
pub fn sample_family(
    aisles: usize,
    blocks: usize,
    cells: usize,
    samples: usize,
    seed: u64,
    cell_step: Len,
    gap: Len,
) -> Vec<PickInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total_cells = aisles * blocks * cells;
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let count = rng.gen_range(1..=total_cells.min(6));
        let picks: Vec<VertexId> = sample(&mut rng, total_cells, count)
            .into_iter()
            .map(|ix| VertexId::Cell {
                aisle: ix / (blocks * cells),
                subaisle: ix / cells % blocks,
                cell: ix % cells + 1,
            })
            .collect();
        let depot_ix = rng.gen_range(0..aisles * (blocks + 1));
        let depot = VertexId::Intersection {
            aisle: depot_ix / (blocks + 1),
            cross_aisle: depot_ix % (blocks + 1),
        };
        let layout = WarehouseLayout::new(aisles, blocks, cells, cell_step, vec![gap; aisles - 1])
            .expect("valid sampled layout");
        out.push(PickInstance::new(layout, depot, picks).expect("valid sampled instance"));
    }
    out
}

pub fn default_budget() -> u128 {
    DEFAULT_BUDGET
}
