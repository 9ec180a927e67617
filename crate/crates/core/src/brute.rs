//! Exhaustive oracle over the configuration search space.
//!
//! Tours are assembled from one admissible vertical configuration per
//! subaisle plus a multiplicity in {0,1,2} per horizontal unit edge. The
//! solver walks columns left to right with value-preserving pruning (parity
//! of finalized vertices, dead connectivity states, incumbent bound); a
//! no-pruning mode enumerates the raw product for auditing on tiny inputs.

use thiserror::Error;

use crate::configs::{candidate_configs, config_multiplicities, run_state, SubaisleConfig};
use crate::tour::TourSubgraph;
use crate::warehouse::{CostModel, EdgeId, Len, PickInstance, WarehouseLayout};

/// Restriction applied to the search space, each encoding one structural claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    None,
    /// No double run touching the upper or lower subaisles.
    NoOuterDoubles,
    /// No double run anywhere (partial doubled segments remain allowed).
    NoDoublesAtAll,
    /// No double run with horizontal edges incident to both end vertices.
    NoConnectingDoubles,
    /// No double run in states (0,2), (1,1), (1,2) or (2,2).
    NoReducibleStates,
}

impl Filter {
    pub fn name(&self) -> &'static str {
        match self {
            Filter::None => "none",
            Filter::NoOuterDoubles => "no-outer-doubles",
            Filter::NoDoublesAtAll => "no-doubles",
            Filter::NoConnectingDoubles => "no-connecting-doubles",
            Filter::NoReducibleStates => "no-reducible-states",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("search space of {size} configurations exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("no tour subgraph satisfies feasibility and the filter")]
    Infeasible,
    #[error("dynamic program supports at most {max} cross-aisles, layout has {got}")]
    StateGuardExceeded { max: usize, got: usize },
}

#[derive(Debug, Clone)]
pub struct Solution<'a> {
    pub length: Len,
    pub tour: TourSubgraph<'a>,
    /// Search nodes explored (column finalizations for the oracle,
    /// transitions for the dynamic program).
    pub work: u64,
}

pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Raw configuration-space size: 6^(A*B) * 3^((B+1)*(A-1)).
pub fn search_space_size(layout: &WarehouseLayout) -> u128 {
    let ab = (layout.num_aisles() * layout.num_blocks()) as u32;
    let h = (layout.num_cross_aisles() * (layout.num_aisles() - 1)) as u32;
    6u128.saturating_pow(ab).saturating_mul(3u128.saturating_pow(h))
}

/// Final-subgraph filter predicate.
pub fn filter_pass(t: &TourSubgraph<'_>, filter: Filter) -> bool {
    match filter {
        Filter::None => true,
        Filter::NoDoublesAtAll => t.find_edge_runs().iter().all(|r| r.multiplicity != 2),
        Filter::NoOuterDoubles => !t.has_outer_double(),
        Filter::NoConnectingDoubles => t.find_edge_runs().iter().all(|r| {
            r.multiplicity != 2
                || t.horizontal_mult(r.aisle, r.top_cross, true) + t.horizontal_mult(r.aisle, r.top_cross, false) == 0
                || t.horizontal_mult(r.aisle, r.bottom_cross, true)
                    + t.horizontal_mult(r.aisle, r.bottom_cross, false)
                    == 0
        }),
        Filter::NoReducibleStates => t
            .find_edge_runs()
            .iter()
            .filter(|r| r.multiplicity == 2)
            .all(|r| !run_state(t, r).expect("run is double").is_reducible_state()),
    }
}

pub fn solve_exhaustive<'a>(instance: &'a PickInstance, filter: Filter) -> Result<Solution<'a>, SolveError> {
    solve_exhaustive_with_budget(instance, filter, DEFAULT_BUDGET)
}

pub fn solve_exhaustive_with_budget<'a>(
    instance: &'a PickInstance,
    filter: Filter,
    budget: u128,
) -> Result<Solution<'a>, SolveError> {
    let layout = instance.layout();
    let size = search_space_size(layout);
    if size > budget {
        return Err(SolveError::BudgetExceeded { size, budget });
    }
    if layout.num_cross_aisles() > MAX_CROSS {
        return Err(SolveError::StateGuardExceeded { max: MAX_CROSS, got: layout.num_cross_aisles() });
    }
    let mut search = Search::new(instance, filter);
    search.run();
    search.into_solution()
}

/// True iff restricting the search by `filter` does not change the optimum.
pub fn optimal_value_under_filter_equals_unfiltered(
    instance: &PickInstance,
    filter: Filter,
    budget: u128,
) -> Result<bool, SolveError> {
    let base = solve_exhaustive_with_budget(instance, Filter::None, budget)?;
    match solve_exhaustive_with_budget(instance, filter, budget) {
        Ok(restricted) => Ok(restricted.length == base.length),
        Err(SolveError::Infeasible) => Ok(false),
        Err(e) => Err(e),
    }
}

const MAX_CROSS: usize = 16;
type Arr = [u8; MAX_CROSS];

struct Cfg {
    config: SubaisleConfig,
    mult: Vec<u8>,
    cost: i64,
    top: u8,
    bot: u8,
    connects: bool,
}

struct ColChoice {
    cfg: Vec<usize>,
    h: Arr,
}

struct Search<'a> {
    inst: &'a PickInstance,
    a: usize,
    b: usize,
    filter: Filter,
    cm: CostModel,
    cfgs: Vec<Vec<Cfg>>,           // aisle * b + subaisle
    cfg_min_suffix: Vec<Vec<i64>>, // per column, per subaisle: min cost of remaining subaisles
    vert_min_suffix: Vec<i64>,     // columns >= i (len a+1)
    gap_bound_suffix: Vec<i64>,    // forced crossings for gaps >= i (len a)
    req_after: Vec<bool>,          // any pick/depot strictly right of column i
    has_picks: Vec<bool>,          // column has any pick
    depot_col: usize,
    depot_cross: usize,
    incumbent: i64,
    best: Option<Vec<ColChoice>>,
    choices: Vec<ColChoice>,
    work: u64,
}

impl<'a> Search<'a> {
    fn new(inst: &'a PickInstance, filter: Filter) -> Self {
        let layout = inst.layout();
        let (a, b) = (layout.num_aisles(), layout.num_blocks());
        let cm = CostModel::for_layout(layout);
        let restrict_outer = matches!(filter, Filter::NoOuterDoubles);
        let no_doubles = matches!(filter, Filter::NoDoublesAtAll);

        let mut cfgs = Vec::with_capacity(a * b);
        for aisle in 0..a {
            for sub in 0..b {
                let picks = inst.picks_in_subaisle(aisle, sub);
                let mut list: Vec<Cfg> = candidate_configs(inst, aisle, sub, restrict_outer)
                    .into_iter()
                    .filter(|cfg| !(no_doubles && *cfg == SubaisleConfig::DoubleTraversal))
                    .map(|cfg| {
                        let mult = config_multiplicities(cfg, &picks, layout.cells_per_subaisle())
                            .expect("candidate is admissible");
                        let units: i64 = mult.iter().map(|&m| m as i64).sum();
                        Cfg {
                            config: cfg,
                            cost: units * cm.vertical,
                            top: mult[0],
                            bot: *mult.last().expect("slots nonempty"),
                            connects: mult.iter().all(|&m| m > 0),
                            mult,
                        }
                    })
                    .collect();
                // Cheap configurations first; stable, so canonical order breaks ties.
                list.sort_by_key(|c| c.cost);
                cfgs.push(list);
            }
        }

        let cfg_min_suffix: Vec<Vec<i64>> = (0..a)
            .map(|col| {
                let mut suf = vec![0i64; b + 1];
                for sub in (0..b).rev() {
                    let min = cfgs[col * b + sub].iter().map(|c| c.cost).min().unwrap_or(0);
                    suf[sub] = suf[sub + 1] + min;
                }
                suf
            })
            .collect();

        let mut vert_min_suffix = vec![0i64; a + 1];
        for col in (0..a).rev() {
            vert_min_suffix[col] = vert_min_suffix[col + 1] + cfg_min_suffix[col][0];
        }

        let (depot_col, depot_cross) = inst.depot_position();
        let mut req_cols = vec![false; a];
        req_cols[depot_col] = true;
        for &aisle in &inst.non_empty_aisles() {
            req_cols[aisle] = true;
        }
        let req_after: Vec<bool> = (0..a)
            .map(|col| req_cols[col + 1..].iter().any(|&r| r))
            .collect();

        let mut gap_bound_suffix = vec![0i64; a];
        for g in (0..a.saturating_sub(1)).rev() {
            let left = req_cols[..=g].iter().any(|&r| r);
            let right = req_cols[g + 1..].iter().any(|&r| r);
            let forced = if left && right { 2 * cm.gaps[g] } else { 0 };
            gap_bound_suffix[g] = gap_bound_suffix[g + 1] + forced;
        }

        let has_picks = (0..a)
            .map(|col| (0..b).any(|sub| !inst.picks_in_subaisle(col, sub).is_empty()))
            .collect();

        Search {
            inst,
            a,
            b,
            filter,
            cm,
            cfgs,
            cfg_min_suffix,
            vert_min_suffix,
            gap_bound_suffix,
            req_after,
            has_picks,
            depot_col,
            depot_cross,
            incumbent: i64::MAX,
            best: None,
            choices: (0..a).map(|_| ColChoice { cfg: vec![0; b], h: [0; MAX_CROSS] }).collect(),
            work: 0,
        }
    }

    fn run(&mut self) {
        self.dfs_column(0, [0; MAX_CROSS], [0; MAX_CROSS], false, 0);
    }

    fn into_solution(self) -> Result<Solution<'a>, SolveError> {
        let Some(best) = self.best else {
            return Err(SolveError::Infeasible);
        };
        let tour = build_tour(self.inst, &self.cfgs, &best);
        Ok(Solution { length: self.cm.to_len(self.incumbent), tour, work: self.work })
    }

    fn lower_bound(&self, col: usize) -> i64 {
        self.vert_min_suffix[col] + if col < self.a { self.gap_bound_suffix[col.min(self.a - 1)] } else { 0 }
    }

    fn dfs_column(&mut self, col: usize, left_mult: Arr, left_comp: Arr, closed: bool, partial: i64) {
        if col == self.a {
            if closed && partial < self.incumbent {
                self.try_accept(partial);
            }
            return;
        }
        if partial + self.lower_bound(col) >= self.incumbent {
            return;
        }
        if closed {
            // A finished component forbids any further structure.
            if self.has_picks[col] || self.depot_col == col {
                return;
            }
            for sub in 0..self.b {
                self.choices[col].cfg[sub] = self
                    .cfgs[col * self.b + sub]
                    .iter()
                    .position(|c| c.config == SubaisleConfig::Empty)
                    .expect("pickless subaisle admits the empty config");
            }
            self.choices[col].h = [0; MAX_CROSS];
            self.dfs_column(col + 1, [0; MAX_CROSS], [0; MAX_CROSS], true, partial);
            return;
        }
        self.dfs_configs(col, 0, left_mult, left_comp, [0; MAX_CROSS], 0, partial);
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs_configs(
        &mut self,
        col: usize,
        sub: usize,
        left_mult: Arr,
        left_comp: Arr,
        vert: Arr,
        connects: u16,
        partial: i64,
    ) {
        if sub == self.b {
            self.dfs_horizontals(col, left_mult, left_comp, vert, connects, partial);
            return;
        }
        let remaining = self.cfg_min_suffix[col][sub + 1] + self.vert_min_suffix[col + 1]
            + self.gap_bound_suffix[col.min(self.a - 1)];
        for idx in 0..self.cfgs[col * self.b + sub].len() {
            let (cost, top, bot, conn) = {
                let c = &self.cfgs[col * self.b + sub][idx];
                (c.cost, c.top, c.bot, c.connects)
            };
            let next = partial + cost;
            if next + remaining >= self.incumbent {
                // Costs ascend, so later configs cannot help either.
                break;
            }
            let mut v = vert;
            v[sub] += top;
            v[sub + 1] += bot;
            let m = if conn { connects | (1 << sub) } else { connects };
            self.choices[col].cfg[sub] = idx;
            self.dfs_configs(col, sub + 1, left_mult, left_comp, v, m, next);
        }
    }

    fn dfs_horizontals(
        &mut self,
        col: usize,
        left_mult: Arr,
        left_comp: Arr,
        vert: Arr,
        connects: u16,
        partial: i64,
    ) {
        let b1 = self.b + 1;
        if col == self.a - 1 {
            // Last column: no horizontals; every finalized vertex must be even.
            if (0..b1).any(|j| (left_mult[j] + vert[j]) % 2 != 0) {
                return;
            }
            self.finalize(col, left_mult, left_comp, vert, connects, [0; MAX_CROSS], partial);
            return;
        }
        // Parity of each vertex fixes the parity of its outgoing horizontal.
        let gap = self.cm.gaps[col];
        let mut h: Arr = [0; MAX_CROSS];
        for j in 0..b1 {
            if (left_mult[j] + vert[j]) % 2 == 1 {
                h[j] = 1;
            }
        }
        // Remaining freedom: even vertices may take 0 or 2.
        let even: Vec<usize> = (0..b1).filter(|&j| h[j] == 0).collect();
        let combos = 1usize << even.len();
        for bits in 0..combos {
            let mut hh = h;
            let mut cost = 0i64;
            for (t, &j) in even.iter().enumerate() {
                if bits >> t & 1 == 1 {
                    hh[j] = 2;
                }
            }
            for item in hh.iter().take(b1) {
                cost += *item as i64 * gap;
            }
            let next = partial + cost;
            if next + self.vert_min_suffix[col + 1] + self.gap_bound_suffix[col + 1] >= self.incumbent {
                continue;
            }
            self.finalize(col, left_mult, left_comp, vert, connects, hh, next);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn finalize(
        &mut self,
        col: usize,
        left_mult: Arr,
        left_comp: Arr,
        vert: Arr,
        connects: u16,
        h: Arr,
        partial: i64,
    ) {
        self.work += 1;
        let b1 = self.b + 1;
        if self.depot_col == col {
            let j = self.depot_cross;
            if left_mult[j] == 0 && vert[j] == 0 && h[j] == 0 {
                return; // depot vertex left uncovered
            }
        }

        // Union-find over the column's cross-aisle vertices.
        let mut parent: [u8; MAX_CROSS] = [0; MAX_CROSS];
        for (j, p) in parent.iter_mut().enumerate().take(b1) {
            *p = j as u8;
        }
        fn find(parent: &mut [u8; MAX_CROSS], x: u8) -> u8 {
            let mut r = x;
            while parent[r as usize] != r {
                r = parent[r as usize];
            }
            let mut c = x;
            while parent[c as usize] != r {
                let n = parent[c as usize];
                parent[c as usize] = r;
                c = n;
            }
            r
        }
        let union = |parent: &mut [u8; MAX_CROSS], x: u8, y: u8| {
            let (rx, ry) = (find(parent, x), find(parent, y));
            if rx != ry {
                parent[ry.max(rx) as usize] = ry.min(rx);
            }
        };
        // Blocks inherited from the left frontier.
        for j in 0..b1 {
            if left_comp[j] != 0 {
                for k in j + 1..b1 {
                    if left_comp[k] == left_comp[j] {
                        union(&mut parent, j as u8, k as u8);
                    }
                }
            }
        }
        // Traversal configs connect the subaisle's two intersections.
        for sub in 0..self.b {
            if connects >> sub & 1 == 1 {
                union(&mut parent, sub as u8, sub as u8 + 1);
            }
        }

        let active = |j: usize| left_mult[j] + vert[j] + h[j] > 0;
        let mut open_roots: u16 = 0;
        let mut closed_roots: u16 = 0;
        for j in 0..b1 {
            if !active(j) {
                continue;
            }
            let r = find(&mut parent, j as u8);
            if h[j] >= 1 {
                open_roots |= 1 << r;
            } else {
                closed_roots |= 1 << r;
            }
        }
        closed_roots &= !open_roots;
        let n_close = closed_roots.count_ones();
        let mut new_closed = false;
        if n_close > 0 {
            if n_close > 1 || open_roots != 0 || self.req_after[col] {
                return; // a component disconnects from everything else
            }
            new_closed = true;
        }

        // Next frontier: labels canonical by first occurrence.
        let mut next_comp: Arr = [0; MAX_CROSS];
        let mut label_of: [u8; MAX_CROSS] = [0; MAX_CROSS];
        let mut next_label = 0u8;
        for j in 0..b1 {
            if h[j] >= 1 {
                let r = find(&mut parent, j as u8) as usize;
                if label_of[r] == 0 {
                    next_label += 1;
                    label_of[r] = next_label;
                }
                next_comp[j] = label_of[r];
            }
        }

        self.choices[col].h = h;
        self.dfs_column(col + 1, h, next_comp, new_closed, partial);
    }

    fn try_accept(&mut self, partial: i64) {
        let tour = build_tour(self.inst, &self.cfgs, &self.choices);
        debug_assert!(tour.is_feasible(), "search produced an infeasible candidate");
        if !filter_pass(&tour, self.filter) {
            return;
        }
        self.incumbent = partial;
        self.best = Some(
            self.choices
                .iter()
                .map(|c| ColChoice { cfg: c.cfg.clone(), h: c.h })
                .collect(),
        );
    }
}

fn build_tour<'a>(inst: &'a PickInstance, cfgs: &[Vec<Cfg>], choices: &[ColChoice]) -> TourSubgraph<'a> {
    let layout = inst.layout();
    let b = layout.num_blocks();
    let mut t = TourSubgraph::empty(inst);
    for (col, choice) in choices.iter().enumerate() {
        for sub in 0..b {
            let cfg = &cfgs[col * b + sub][choice.cfg[sub]];
            for (slot, &m) in cfg.mult.iter().enumerate() {
                if m > 0 {
                    t.set_mult(EdgeId::VerticalUnit { aisle: col, subaisle: sub, slot }, m);
                }
            }
        }
        if col + 1 < layout.num_aisles() {
            for cross in 0..=b {
                if choice.h[cross] > 0 {
                    t.set_mult(EdgeId::HorizontalUnit { cross_aisle: cross, left_aisle: col }, choice.h[cross]);
                }
            }
        }
    }
    t
}

/// Audit mode: raw product enumeration with no pruning. Only for tiny inputs.
pub fn solve_unpruned<'a>(instance: &'a PickInstance, filter: Filter) -> Result<Solution<'a>, SolveError> {
    let layout = instance.layout();
    let (a, b) = (layout.num_aisles(), layout.num_blocks());
    let restrict_outer = matches!(filter, Filter::NoOuterDoubles);
    let no_doubles = matches!(filter, Filter::NoDoublesAtAll);

    let mut per_sub: Vec<Vec<Vec<u8>>> = Vec::new();
    for aisle in 0..a {
        for sub in 0..b {
            let picks = instance.picks_in_subaisle(aisle, sub);
            per_sub.push(
                candidate_configs(instance, aisle, sub, restrict_outer)
                    .into_iter()
                    .filter(|cfg| !(no_doubles && *cfg == SubaisleConfig::DoubleTraversal))
                    .map(|cfg| config_multiplicities(cfg, &picks, layout.cells_per_subaisle()).unwrap())
                    .collect(),
            );
        }
    }
    let n_h = layout.horizontal_edge_count();
    let size: u128 = per_sub.iter().map(|l| l.len() as u128).product::<u128>()
        * 3u128.saturating_pow(n_h as u32);
    if size > 50_000_000 {
        return Err(SolveError::BudgetExceeded { size, budget: 50_000_000 });
    }

    let mut counter = vec![0usize; per_sub.len() + n_h];
    let radix: Vec<usize> = per_sub.iter().map(|l| l.len()).chain(std::iter::repeat(3).take(n_h)).collect();
    let mut best: Option<(Len, TourSubgraph<'a>)> = None;
    let mut work = 0u64;
    loop {
        work += 1;
        let mut mult = vec![0u8; layout.edge_count()];
        for (i, list) in per_sub.iter().enumerate() {
            let v = &list[counter[i]];
            let base = i * layout.slots_per_subaisle();
            mult[base..base + v.len()].copy_from_slice(v);
        }
        for j in 0..n_h {
            mult[layout.vertical_edge_count() + j] = counter[per_sub.len() + j] as u8;
        }
        let t = TourSubgraph::from_multiplicities(instance, mult).unwrap();
        if t.is_feasible() && filter_pass(&t, filter) {
            let len = t.tour_length();
            if best.as_ref().map_or(true, |(l, _)| len < *l) {
                best = Some((len, t));
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == counter.len() {
                let Some((length, tour)) = best else {
                    return Err(SolveError::Infeasible);
                };
                return Ok(Solution { length, tour, work });
            }
            counter[pos] += 1;
            if counter[pos] < radix[pos] {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::warehouse::{VertexId, WarehouseLayout};

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
    fn single_aisle_single_pick() {
        let i = inst(1, 1, 3, (0, 0), &[(0, 0, 2)]);
        let s = solve_exhaustive(&i, Filter::None).unwrap();
        assert_eq!(s.length, Len::from_integer(4)); // down two cells and back
        assert!(s.tour.is_feasible());
    }

    #[test]
    fn two_aisle_rectangle_optimum() {
        let i = inst(2, 1, 3, (0, 1), &[(0, 0, 2), (1, 0, 1)]);
        let s = solve_exhaustive(&i, Filter::None).unwrap();
        assert_eq!(s.length, Len::from_integer(10));
    }

    #[test]
    fn forced_double_infeasible_without_doubles() {
        // B=2, picks only in the depot column's lower subaisle, single aisle:
        // the upper subaisle must be doubled to reach them.
        let i = inst(1, 2, 1, (0, 0), &[(0, 1, 1)]);
        let s = solve_exhaustive(&i, Filter::None).unwrap();
        assert_eq!(s.length, Len::from_integer(6));
        assert_eq!(solve_exhaustive(&i, Filter::NoDoublesAtAll).unwrap_err(), SolveError::Infeasible);
        assert_eq!(
            optimal_value_under_filter_equals_unfiltered(&i, Filter::NoDoublesAtAll, DEFAULT_BUDGET),
            Ok(false)
        );
    }

    #[test]
    fn budget_guard_refuses() {
        let i = inst(12, 3, 1, (0, 0), &[(0, 0, 1)]);
        assert!(matches!(
            solve_exhaustive(&i, Filter::None),
            Err(SolveError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn pruned_matches_unpruned_on_small_grid() {
        // Value-preservation audit for the pruning rules.
        for (depot, picks) in [
            ((0, 0), vec![(0, 0, 1), (1, 0, 1)]),
            ((1, 1), vec![(0, 0, 1)]),
            ((0, 1), vec![(1, 0, 1)]),
        ] {
            let i = inst(2, 1, 1, depot, &picks);
            for filter in [Filter::None, Filter::NoDoublesAtAll, Filter::NoConnectingDoubles] {
                let fast = solve_exhaustive(&i, filter);
                let slow = solve_unpruned(&i, filter);
                match (fast, slow) {
                    (Ok(f), Ok(s)) => assert_eq!(f.length, s.length, "filter {filter:?} depot {depot:?}"),
                    (Err(SolveError::Infeasible), Err(SolveError::Infeasible)) => {}
                    (f, s) => panic!("divergence: {f:?} vs {s:?}"),
                }
            }
        }
    }

    #[test]
    fn restriction_monotonicity_and_determinism() {
        let i = inst(2, 2, 2, (0, 0), &[(0, 1, 2), (1, 0, 1)]);
        let base = solve_exhaustive(&i, Filter::None).unwrap();
        for filter in [
            Filter::NoOuterDoubles,
            Filter::NoDoublesAtAll,
            Filter::NoConnectingDoubles,
            Filter::NoReducibleStates,
        ] {
            if let Ok(s) = solve_exhaustive(&i, filter) {
                assert!(s.length >= base.length);
                assert!(s.tour.is_feasible());
                assert!(filter_pass(&s.tour, filter));
            }
        }
        let again = solve_exhaustive(&i, Filter::None).unwrap();
        assert_eq!(base.tour, again.tour);
    }
}
