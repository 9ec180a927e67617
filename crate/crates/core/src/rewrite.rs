//! Length-preserving rewrites that push doubled runs out of outer subaisles.
//!
//! The basic move shifts a doubled vertical run into the neighbouring aisle,
//! paying for the new column with a horizontal edge taken from the donor end
//! and repaying it at the opposite end. When the run dangles from a bare
//! border intersection the doubled tail is simply truncated, which strictly
//! shortens the tour.

use std::collections::HashSet;

use thiserror::Error;

use crate::configs::Direction;
use crate::tour::{EdgeRun, TourSubgraph};
use crate::warehouse::{EdgeId, VertexId};

/// Which end of a vertical run donates its horizontal edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunEnd {
    Top,
    Bottom,
}

impl RunEnd {
    fn other(self) -> RunEnd {
        match self {
            RunEnd::Top => RunEnd::Bottom,
            RunEnd::Bottom => RunEnd::Top,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("run is not doubled")]
    NotDouble,
    #[error("no aisle in that direction")]
    NoNeighbor,
    #[error("rewrite not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("no applicable rewrite for a remaining outer double run")]
    Stuck,
    #[error("rewrite loop exceeded {limit} iterations")]
    GuardTripped { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    Transform { direction: Direction, donor: RunEnd },
    Truncate { removed_units: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub aisle: usize,
    pub top_cross: usize,
    pub bottom_cross: usize,
    pub kind: StepKind,
}

#[derive(Debug, Clone)]
pub struct RewriteOutcome<'a> {
    pub tour: TourSubgraph<'a>,
    pub steps: Vec<RewriteStep>,
}

/// Shift a doubled run into the neighbouring aisle, donating the bottom
/// horizontal edge and restoring it at the top.
pub fn transform<'a>(
    t: &TourSubgraph<'a>,
    run: &EdgeRun,
    direction: Direction,
) -> Result<TourSubgraph<'a>, RewriteError> {
    transform_with_donor(t, run, direction, RunEnd::Bottom)
}

/// The same move with an explicit donor end.
pub fn transform_with_donor<'a>(
    t: &TourSubgraph<'a>,
    run: &EdgeRun,
    direction: Direction,
    donor: RunEnd,
) -> Result<TourSubgraph<'a>, RewriteError> {
    let layout = t.instance().layout();
    if run.multiplicity != 2 {
        return Err(RewriteError::NotDouble);
    }
    let neighbor = match direction {
        Direction::TowardLeft => run.aisle.checked_sub(1).ok_or(RewriteError::NoNeighbor)?,
        Direction::TowardRight => {
            if run.aisle + 1 >= layout.num_aisles() {
                return Err(RewriteError::NoNeighbor);
            }
            run.aisle + 1
        }
    };
    let left_aisle = run.aisle.min(neighbor);
    let (donor_cross, receiver_cross) = match donor {
        RunEnd::Top => (run.top_cross, run.bottom_cross),
        RunEnd::Bottom => (run.bottom_cross, run.top_cross),
    };
    let donor_edge = EdgeId::HorizontalUnit { cross_aisle: donor_cross, left_aisle };
    let receiver_edge = EdgeId::HorizontalUnit { cross_aisle: receiver_cross, left_aisle };
    if t.mult(donor_edge) == 0 {
        return Err(RewriteError::NotApplicable("donor end has no horizontal edge to spend"));
    }
    if t.mult(receiver_edge) >= 2 {
        return Err(RewriteError::NotApplicable("receiving horizontal edge is already doubled"));
    }
    for sub in run.subaisles_spanned() {
        for slot in 0..layout.slots_per_subaisle() {
            if t.mult(EdgeId::VerticalUnit { aisle: neighbor, subaisle: sub, slot }) >= 2 {
                return Err(RewriteError::NotApplicable("neighbouring span is already doubled"));
            }
            debug_assert_eq!(t.mult(EdgeId::VerticalUnit { aisle: run.aisle, subaisle: sub, slot }), 2);
        }
    }

    let mut out = t.clone();
    for sub in run.subaisles_spanned() {
        for slot in 0..layout.slots_per_subaisle() {
            let own = EdgeId::VerticalUnit { aisle: run.aisle, subaisle: sub, slot };
            let theirs = EdgeId::VerticalUnit { aisle: neighbor, subaisle: sub, slot };
            out.set_mult(own, out.mult(own) - 1);
            out.set_mult(theirs, out.mult(theirs) + 1);
        }
    }
    out.set_mult(donor_edge, t.mult(donor_edge) - 1);
    out.set_mult(receiver_edge, t.mult(receiver_edge) + 1);
    debug_assert_eq!(out.tour_length(), t.tour_length());
    Ok(out)
}

fn horizontal_incidence(t: &TourSubgraph<'_>, aisle: usize, cross: usize) -> u8 {
    t.horizontal_mult(aisle, cross, true) + t.horizontal_mult(aisle, cross, false)
}

/// Truncate the doubled tail hanging from a bare end of the run: delete
/// doubled units inward until the first vertex the tour still needs.
pub fn eliminate_case1<'a>(t: &TourSubgraph<'a>, run: &EdgeRun) -> Result<TourSubgraph<'a>, RewriteError> {
    let inst = t.instance();
    let layout = inst.layout();
    if run.multiplicity != 2 {
        return Err(RewriteError::NotDouble);
    }
    let bare = |end: RunEnd| {
        let (v, cross) = match end {
            RunEnd::Top => (run.top(), run.top_cross),
            RunEnd::Bottom => (run.bottom(), run.bottom_cross),
        };
        horizontal_incidence(t, run.aisle, cross) == 0 && v != inst.depot()
    };
    let end = if bare(RunEnd::Top) {
        RunEnd::Top
    } else if bare(RunEnd::Bottom) {
        RunEnd::Bottom
    } else {
        return Err(RewriteError::NotApplicable("neither end is bare and depot-free"));
    };

    // Edges of the run in walking order from the bare end, each paired with
    // the vertex reached after crossing it.
    let c = layout.cells_per_subaisle();
    let mut path: Vec<(EdgeId, VertexId)> = Vec::new();
    for sub in run.subaisles_spanned() {
        for slot in 0..=c {
            let e = EdgeId::VerticalUnit { aisle: run.aisle, subaisle: sub, slot };
            let v = if slot < c {
                VertexId::Cell { aisle: run.aisle, subaisle: sub, cell: slot + 1 }
            } else {
                VertexId::Intersection { aisle: run.aisle, cross_aisle: sub + 1 }
            };
            path.push((e, v));
        }
    }
    if end == RunEnd::Bottom {
        path.reverse();
        // walking upward the vertex reached is the one above the edge
        for i in 0..path.len() {
            let EdgeId::VerticalUnit { aisle, subaisle, slot } = path[i].0 else { unreachable!() };
            path[i].1 = if slot == 0 {
                VertexId::Intersection { aisle, cross_aisle: subaisle }
            } else {
                VertexId::Cell { aisle, subaisle, cell: slot }
            };
        }
    }

    let picks: HashSet<VertexId> = inst.picks().iter().copied().collect();
    let mut out = t.clone();
    for (e, v) in &path {
        out.set_mult(*e, 0);
        let keep = match *v {
            VertexId::Cell { .. } => picks.contains(v) || *v == inst.depot(),
            VertexId::Intersection { aisle, cross_aisle } => {
                *v == inst.depot() || horizontal_incidence(t, aisle, cross_aisle) > 0
            }
        };
        if keep {
            break;
        }
    }
    debug_assert!(out.tour_length() < t.tour_length());
    Ok(out)
}

/// Remove every doubled run that spans an upper or lower subaisle.
///
/// Truncation strictly shortens the tour; transforms keep its length. The
/// iteration guard is generous; tripping it means the case analysis failed
/// and is worth reporting.
pub fn eliminate_outer_doubles<'a>(t: &TourSubgraph<'a>) -> Result<RewriteOutcome<'a>, RewriteError> {
    let inst = t.instance();
    let layout = inst.layout();
    let (a, b, c) = (layout.num_aisles(), layout.num_blocks(), layout.cells_per_subaisle());
    let limit = 4 * a * b * (c + 1) * 3;
    let (depot_col, _) = inst.depot_position();

    let mut cur = t.clone();
    let mut steps = Vec::new();
    let mut seen: HashSet<Vec<u8>> = HashSet::from([cur.multiplicities().to_vec()]);

    for _ in 0..limit {
        let run = match cur
            .find_edge_runs()
            .into_iter()
            .find(|r| r.multiplicity == 2 && r.spans_outer_subaisle(b))
        {
            None => return Ok(RewriteOutcome { tour: cur, steps }),
            Some(r) => r,
        };
        let step_base = RewriteStep {
            aisle: run.aisle,
            top_cross: run.top_cross,
            bottom_cross: run.bottom_cross,
            kind: StepKind::Truncate { removed_units: 0 },
        };

        if let Ok(next) = eliminate_case1(&cur, &run) {
            if next.is_feasible() {
                let removed: usize = cur
                    .multiplicities()
                    .iter()
                    .zip(next.multiplicities())
                    .map(|(o, n)| (o - n) as usize)
                    .sum();
                seen.insert(next.multiplicities().to_vec());
                steps.push(RewriteStep { kind: StepKind::Truncate { removed_units: removed }, ..step_base });
                cur = next;
                continue;
            }
        }

        // Prefer moving away from the depot column, donating from the inner
        // end of the run first.
        let dirs = if depot_col <= run.aisle {
            [Direction::TowardRight, Direction::TowardLeft]
        } else {
            [Direction::TowardLeft, Direction::TowardRight]
        };
        let donor0 = if run.top_cross == 0 { RunEnd::Bottom } else { RunEnd::Top };
        let mut advanced = false;
        for direction in dirs {
            for donor in [donor0, donor0.other()] {
                let Ok(next) = transform_with_donor(&cur, &run, direction, donor) else {
                    continue;
                };
                if !next.is_feasible() || !seen.insert(next.multiplicities().to_vec()) {
                    continue;
                }
                steps.push(RewriteStep { kind: StepKind::Transform { direction, donor }, ..step_base });
                cur = next;
                advanced = true;
                break;
            }
            if advanced {
                break;
            }
        }
        if !advanced {
            return Err(RewriteError::Stuck);
        }
    }
    Err(RewriteError::GuardTripped { limit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::{solve_exhaustive, Filter};
    use crate::warehouse::{Len, PickInstance, WarehouseLayout};

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

    /// Hand-built tour: ring over two aisles plus a doubled upper subaisle in
    /// aisle 0 whose top end carries the horizontal edges.
    fn ring_with_double(i: &PickInstance) -> TourSubgraph<'_> {
        let mut t = TourSubgraph::empty(i);
        let c = i.layout().cells_per_subaisle();
        for aisle in 0..2 {
            for slot in 0..=c {
                t.set_mult(EdgeId::VerticalUnit { aisle, subaisle: 1, slot }, 1);
            }
        }
        for slot in 0..=c {
            t.set_mult(EdgeId::VerticalUnit { aisle: 0, subaisle: 0, slot }, 2);
        }
        t.set_mult(EdgeId::HorizontalUnit { cross_aisle: 1, left_aisle: 0 }, 1);
        t.set_mult(EdgeId::HorizontalUnit { cross_aisle: 2, left_aisle: 0 }, 1);
        t
    }

    #[test]
    fn transform_preserves_length_and_feasibility() {
        let i = inst(2, 2, 1, (0, 1), &[(0, 0, 1), (0, 1, 1), (1, 1, 1)]);
        let t = ring_with_double(&i);
        assert!(t.is_feasible());
        let run = t
            .find_edge_runs()
            .into_iter()
            .find(|r| r.multiplicity == 2)
            .unwrap();
        assert_eq!((run.aisle, run.top_cross, run.bottom_cross), (0, 0, 1));
        // Donor must be the bottom end: the top end of this run is bare.
        let moved = transform(&t, &run, Direction::TowardRight).unwrap();
        assert_eq!(moved.tour_length(), t.tour_length());
        assert!(moved.is_feasible());
        assert_eq!(moved.mult(EdgeId::VerticalUnit { aisle: 0, subaisle: 0, slot: 0 }), 1);
        assert_eq!(moved.mult(EdgeId::VerticalUnit { aisle: 1, subaisle: 0, slot: 0 }), 1);
        assert_eq!(moved.mult(EdgeId::HorizontalUnit { cross_aisle: 0, left_aisle: 0 }), 1);
        assert_eq!(moved.mult(EdgeId::HorizontalUnit { cross_aisle: 1, left_aisle: 0 }), 0);
    }

    #[test]
    fn transform_rejects_left_of_leftmost_and_single_runs() {
        let i = inst(2, 2, 1, (0, 1), &[(0, 0, 1), (0, 1, 1), (1, 1, 1)]);
        let t = ring_with_double(&i);
        let runs = t.find_edge_runs();
        let double = runs.iter().find(|r| r.multiplicity == 2).unwrap();
        let single = runs.iter().find(|r| r.multiplicity == 1).unwrap();
        assert_eq!(
            transform(&t, double, Direction::TowardLeft).unwrap_err(),
            RewriteError::NoNeighbor
        );
        assert_eq!(transform(&t, single, Direction::TowardRight).unwrap_err(), RewriteError::NotDouble);
    }

    #[test]
    fn truncation_strictly_shortens() {
        // Doubled tail reaching past the last pick up to a bare border end.
        let i = inst(1, 1, 3, (0, 1), &[(0, 0, 3)]);
        let mut t = TourSubgraph::empty(&i);
        for slot in 0..=3 {
            t.set_mult(EdgeId::VerticalUnit { aisle: 0, subaisle: 0, slot }, 2);
        }
        assert!(t.is_feasible());
        let run = t.find_edge_runs().pop().unwrap();
        let cut = eliminate_case1(&t, &run).unwrap();
        assert!(cut.is_feasible());
        // Everything above the pick cell goes; only the unit next to the
        // depot stays doubled.
        assert_eq!(cut.tour_length(), Len::from_integer(2));
        assert_eq!(cut.mult(EdgeId::VerticalUnit { aisle: 0, subaisle: 0, slot: 0 }), 0);
        assert_eq!(cut.mult(EdgeId::VerticalUnit { aisle: 0, subaisle: 0, slot: 3 }), 2);
    }

    #[test]
    fn truncation_refused_when_bare_end_is_depot() {
        let i = inst(1, 1, 3, (0, 0), &[(0, 0, 1)]);
        let mut t = TourSubgraph::empty(&i);
        for slot in 0..=3 {
            t.set_mult(EdgeId::VerticalUnit { aisle: 0, subaisle: 0, slot }, 2);
        }
        let run = t.find_edge_runs().pop().unwrap();
        // Top end is the depot; bottom end is bare, so the tail below the
        // pick goes away instead.
        let cut = eliminate_case1(&t, &run).unwrap();
        assert_eq!(cut.mult(EdgeId::VerticalUnit { aisle: 0, subaisle: 0, slot: 3 }), 0);
        assert_eq!(cut.mult(EdgeId::VerticalUnit { aisle: 0, subaisle: 0, slot: 0 }), 2);
    }

    #[test]
    fn eliminates_outer_doubles_from_optimal_witnesses() {
        let cases = [
            inst(2, 2, 2, (0, 0), &[(0, 0, 1), (1, 1, 2)]),
            inst(3, 2, 1, (1, 2), &[(0, 0, 1), (2, 0, 1), (1, 1, 1)]),
            inst(2, 1, 3, (0, 1), &[(0, 0, 2), (1, 0, 1)]),
            inst(3, 2, 2, (0, 0), &[(1, 0, 2), (2, 1, 1)]),
        ];
        for i in &cases {
            let opt = solve_exhaustive(i, Filter::None).unwrap();
            let out = eliminate_outer_doubles(&opt.tour).unwrap();
            assert!(out.tour.is_feasible());
            assert!(!out.tour.has_outer_double());
            assert!(out.tour.tour_length() <= opt.length);
            if opt.tour.has_outer_double() {
                assert!(!out.steps.is_empty());
                // an optimal tour cannot shrink
                assert_eq!(out.tour.tour_length(), opt.length);
            } else {
                assert!(out.steps.is_empty());
            }
        }
    }
}
