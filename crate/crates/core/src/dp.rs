//! Exact dynamic program over column frontiers.
//!
//! Independent of the branch-and-bound oracle: the two share only the
//! subaisle configuration catalogue, so agreement between them is a
//! meaningful cross-check. States describe the horizontal multiplicities
//! leaving a column together with a canonical connectivity partition of the
//! frontier vertices and a flag marking an already-finished component.

use std::collections::BTreeMap;

use crate::brute::{SolveError, Solution};
use crate::configs::{candidate_configs, config_multiplicities};
use crate::tour::TourSubgraph;
use crate::warehouse::{CostModel, EdgeId, PickInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpMode {
    Full,
    /// Drop the full double traversal from upper and lower subaisles.
    RestrictOuter,
}

/// Hard cap on cross-aisles: state space grows too fast beyond it.
pub const MAX_DP_CROSS: usize = 6;

type Key = ([u8; MAX_DP_CROSS], [u8; MAX_DP_CROSS], bool);

struct Entry {
    cost: i64,
    prev: Key,
    cfg: Vec<usize>,
    h: [u8; MAX_DP_CROSS],
}

pub fn solve_dp(instance: &PickInstance, mode: DpMode) -> Result<Solution<'_>, SolveError> {
    let layout = instance.layout();
    let (a, b) = (layout.num_aisles(), layout.num_blocks());
    let b1 = b + 1;
    if b1 > MAX_DP_CROSS {
        return Err(SolveError::StateGuardExceeded { max: MAX_DP_CROSS, got: b1 });
    }
    let cm = CostModel::for_layout(layout);
    let restrict = matches!(mode, DpMode::RestrictOuter);

    // Candidate multiplicity vectors and scaled costs per (column, subaisle).
    let mut cand: Vec<Vec<(Vec<u8>, i64)>> = Vec::with_capacity(a * b);
    for col in 0..a {
        for sub in 0..b {
            let picks = instance.picks_in_subaisle(col, sub);
            cand.push(
                candidate_configs(instance, col, sub, restrict)
                    .into_iter()
                    .map(|cfg| {
                        let m = config_multiplicities(cfg, &picks, layout.cells_per_subaisle())
                            .expect("candidate is admissible");
                        let cost = m.iter().map(|&x| x as i64).sum::<i64>() * cm.vertical;
                        (m, cost)
                    })
                    .collect(),
            );
        }
    }

    let (depot_col, depot_cross) = instance.depot_position();
    let mut required = vec![false; a];
    required[depot_col] = true;
    for aisle in instance.non_empty_aisles() {
        required[aisle] = true;
    }
    let req_right: Vec<bool> = (0..a).map(|col| required[col + 1..].contains(&true)).collect();

    let start: Key = ([0; MAX_DP_CROSS], [0; MAX_DP_CROSS], false);
    let mut layer: BTreeMap<Key, Entry> =
        BTreeMap::from([(start, Entry { cost: 0, prev: start, cfg: vec![], h: [0; MAX_DP_CROSS] })]);
    let mut history: Vec<BTreeMap<Key, Entry>> = Vec::with_capacity(a);
    let mut transitions = 0u64;

    for col in 0..a {
        let mut next: BTreeMap<Key, Entry> = BTreeMap::new();
        for (&(left, comp, closed), entry) in &layer {
            let base = entry.cost;
            // Cartesian product over the column's subaisle configurations.
            let lists: Vec<&Vec<(Vec<u8>, i64)>> = (0..b).map(|s| &cand[col * b + s]).collect();
            let mut pick = vec![0usize; b];
            'combos: loop {
                let mut vert = [0u8; MAX_DP_CROSS];
                let mut joins = [false; MAX_DP_CROSS];
                let mut vcost = 0i64;
                for sub in 0..b {
                    let (m, c) = &lists[sub][pick[sub]];
                    vert[sub] += m[0];
                    vert[sub + 1] += m[m.len() - 1];
                    joins[sub] = m.iter().all(|&x| x > 0);
                    vcost += c;
                }
                let ok_closed = !closed || vert[..b1].iter().all(|&v| v == 0);
                if ok_closed {
                    // Horizontal multiplicities: parity is forced, even
                    // vertices choose between absent and doubled.
                    let last = col == a - 1;
                    let mut free: Vec<usize> = Vec::new();
                    let mut h0 = [0u8; MAX_DP_CROSS];
                    let mut parity_ok = true;
                    for j in 0..b1 {
                        match (left[j] + vert[j]) % 2 {
                            0 => free.push(j),
                            _ if last => {
                                parity_ok = false;
                                break;
                            }
                            _ => h0[j] = 1,
                        }
                    }
                    if parity_ok {
                        let options = if last { 1usize } else { 1usize << free.len() };
                        for bits in 0..options {
                            let mut h = h0;
                            if !last {
                                for (t, &j) in free.iter().enumerate() {
                                    if bits >> t & 1 == 1 {
                                        h[j] = 2;
                                    }
                                }
                            }
                            transitions += 1;
                            let hcost: i64 = if last {
                                0
                            } else {
                                h[..b1].iter().map(|&x| x as i64).sum::<i64>() * cm.gaps[col]
                            };
                            if closed && h[..b1].iter().any(|&x| x > 0) {
                                continue;
                            }
                            let Some(key) = advance(
                                b1, &left, &comp, closed, &vert, &joins, &h,
                                depot_col == col, depot_cross, req_right[col],
                            ) else {
                                continue;
                            };
                            let cost = base + vcost + hcost;
                            let better = next.get(&key).map_or(true, |e| cost < e.cost);
                            if better {
                                next.insert(
                                    key,
                                    Entry { cost, prev: (left, comp, closed), cfg: pick.clone(), h },
                                );
                            }
                        }
                    }
                }
                // odometer over the configuration product
                let mut s = 0;
                loop {
                    if s == b {
                        break 'combos;
                    }
                    pick[s] += 1;
                    if pick[s] < lists[s].len() {
                        break;
                    }
                    pick[s] = 0;
                    s += 1;
                }
            }
        }
        history.push(std::mem::replace(&mut layer, next));
    }

    let goal: Key = ([0; MAX_DP_CROSS], [0; MAX_DP_CROSS], true);
    let Some(end) = layer.get(&goal) else {
        return Err(SolveError::Infeasible);
    };
    let total = end.cost;

    // Walk the back-pointers to materialize the witness subgraph.
    let mut tour = TourSubgraph::empty(instance);
    let mut key = goal;
    for col in (0..a).rev() {
        let entry = if col == a - 1 { layer.get(&key).unwrap() } else { history[col + 1].get(&key).unwrap() };
        for sub in 0..b {
            let (m, _) = &cand[col * b + sub][entry.cfg[sub]];
            for (slot, &mult) in m.iter().enumerate() {
                if mult > 0 {
                    tour.set_mult(EdgeId::VerticalUnit { aisle: col, subaisle: sub, slot }, mult);
                }
            }
        }
        if col + 1 < a {
            for j in 0..b1 {
                if entry.h[j] > 0 {
                    tour.set_mult(EdgeId::HorizontalUnit { cross_aisle: j, left_aisle: col }, entry.h[j]);
                }
            }
        }
        key = entry.prev;
    }

    Ok(Solution { length: cm.to_len(total), tour, work: transitions })
}

/// Compute the successor frontier, or `None` when the transition dies.
#[allow(clippy::too_many_arguments)]
fn advance(
    b1: usize,
    left: &[u8; MAX_DP_CROSS],
    comp: &[u8; MAX_DP_CROSS],
    closed: bool,
    vert: &[u8; MAX_DP_CROSS],
    joins: &[bool; MAX_DP_CROSS],
    h: &[u8; MAX_DP_CROSS],
    is_depot_col: bool,
    depot_cross: usize,
    req_right: bool,
) -> Option<Key> {
    if is_depot_col && left[depot_cross] + vert[depot_cross] + h[depot_cross] == 0 {
        return None;
    }
    // Connected-component labels by propagation until a fixed point; this
    // intentionally avoids the oracle's union-find.
    let mut label = [usize::MAX; MAX_DP_CROSS];
    for j in 0..b1 {
        if left[j] + vert[j] + h[j] > 0 {
            label[j] = j;
        }
    }
    loop {
        let mut changed = false;
        for j in 0..b1 {
            // same inherited component
            if comp[j] != 0 {
                for k in 0..b1 {
                    if comp[k] == comp[j] && label[k] != label[j] {
                        let m = label[k].min(label[j]);
                        label[k] = m;
                        label[j] = m;
                        changed = true;
                    }
                }
            }
            // joined through a fully traversed subaisle
            if j + 1 < b1 && joins[j] && label[j] != label[j + 1] {
                let m = label[j].min(label[j + 1]);
                label[j] = m;
                label[j + 1] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // A component with no horizontal edge to the right is finished.
    let mut open = [false; MAX_DP_CROSS];
    for j in 0..b1 {
        if h[j] > 0 {
            open[label[j]] = true;
        }
    }
    let mut n_finished = 0usize;
    let mut seen = [false; MAX_DP_CROSS];
    for j in 0..b1 {
        if label[j] != usize::MAX && !seen[label[j]] {
            seen[label[j]] = true;
            if !open[label[j]] {
                n_finished += 1;
            }
        }
    }
    let mut now_closed = closed;
    if n_finished > 0 {
        if n_finished > 1 || closed || req_right || (0..b1).any(|j| label[j] != usize::MAX && open[label[j]]) {
            return None;
        }
        now_closed = true;
    }
    let mut out_comp = [0u8; MAX_DP_CROSS];
    let mut canon = [0u8; MAX_DP_CROSS];
    let mut next_id = 0u8;
    let mut out_mult = [0u8; MAX_DP_CROSS];
    for j in 0..b1 {
        out_mult[j] = h[j];
        if h[j] > 0 {
            if canon[label[j]] == 0 {
                next_id += 1;
                canon[label[j]] = next_id;
            }
            out_comp[j] = canon[label[j]];
        }
    }
    Some((out_mult, out_comp, now_closed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::{solve_exhaustive, Filter};
    use crate::warehouse::{Len, VertexId, WarehouseLayout};

    fn inst(a: usize, b: usize, c: usize, depot: (usize, usize), picks: &[(usize, usize, usize)]) -> PickInstance {
        PickInstance::new(
            WarehouseLayout::uniform(a, b, c).unwrap(),
            VertexId::Intersection { aisle: depot.0, cross_aisle: depot.1 },
            picks
                .iter()
                .map(|&(aisle, subaisle, cell)| VertexId::Cell { aisle, subaisle, cell })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn matches_oracle_on_small_instances() {
        let cases = [
            inst(1, 1, 3, (0, 0), &[(0, 0, 2)]),
            inst(2, 1, 3, (0, 1), &[(0, 0, 2), (1, 0, 1)]),
            inst(1, 2, 1, (0, 0), &[(0, 1, 1)]),
            inst(3, 2, 2, (1, 1), &[(0, 0, 1), (2, 1, 2), (1, 0, 2)]),
            inst(2, 3, 2, (0, 3), &[(1, 0, 1), (0, 2, 2)]),
        ];
        for i in &cases {
            let dp = solve_dp(i, DpMode::Full).unwrap();
            let oracle = solve_exhaustive(i, Filter::None).unwrap();
            assert_eq!(dp.length, oracle.length);
            assert!(dp.tour.is_feasible());
            assert_eq!(dp.tour.tour_length(), dp.length);
        }
    }

    #[test]
    fn restricted_mode_prunes_transitions() {
        let i = inst(3, 2, 2, (0, 0), &[(0, 0, 1), (1, 1, 2), (2, 0, 2)]);
        let full = solve_dp(&i, DpMode::Full).unwrap();
        let restricted = solve_dp(&i, DpMode::RestrictOuter).unwrap();
        assert_eq!(full.length, restricted.length);
        assert!(restricted.work < full.work);
        assert!(!restricted.tour.has_outer_double());
    }

    #[test]
    fn state_guard() {
        let i = inst(1, 6, 1, (0, 0), &[(0, 0, 1)]);
        assert_eq!(
            solve_dp(&i, DpMode::Full).unwrap_err(),
            SolveError::StateGuardExceeded { max: MAX_DP_CROSS, got: 7 }
        );
    }

    #[test]
    fn infeasible_never_happens_with_picks_but_depot_must_join() {
        // Depot far from the single pick: cross over, return inside the
        // subaisle, cross back.
        let i = inst(2, 1, 2, (1, 1), &[(0, 0, 1)]);
        let s = solve_dp(&i, DpMode::Full).unwrap();
        assert_eq!(s.length, Len::from_integer(6));
        assert_eq!(solve_exhaustive(&i, Filter::None).unwrap().length, s.length);
    }
}
