//! The six admissible vertical edge patterns per subaisle, and the state /
//! connectivity classification of double edges.

use thiserror::Error;

use crate::tour::{EdgeRun, TourSubgraph};
use crate::warehouse::PickInstance;

/// One of the six vertical edge configurations of a subaisle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubaisleConfig {
    /// No edges. Admissible only without picks.
    Empty,
    /// Every slot once.
    SingleTraversal,
    /// Every slot twice.
    DoubleTraversal,
    /// Doubled from the upper intersection down to the lowest pick.
    TopReturn,
    /// Doubled from the lower intersection up to the highest pick.
    BottomReturn,
    /// Doubled from both intersections inward, skipping the largest gap
    /// between consecutive pick positions (intersections count as virtual
    /// positions; ties break toward the top).
    GapSplit,
}

impl SubaisleConfig {
    /// Canonical enumeration order used for deterministic tie-breaking.
    pub const ALL: [SubaisleConfig; 6] = [
        SubaisleConfig::Empty,
        SubaisleConfig::SingleTraversal,
        SubaisleConfig::DoubleTraversal,
        SubaisleConfig::TopReturn,
        SubaisleConfig::BottomReturn,
        SubaisleConfig::GapSplit,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SubaisleConfig::Empty => "empty",
            SubaisleConfig::SingleTraversal => "single",
            SubaisleConfig::DoubleTraversal => "double",
            SubaisleConfig::TopReturn => "top-return",
            SubaisleConfig::BottomReturn => "bottom-return",
            SubaisleConfig::GapSplit => "gap-split",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("config {0:?} inadmissible for this pick set")]
    Inadmissible(SubaisleConfig),
    #[error("pick cell {cell} outside 1..={cells}")]
    PickOutOfRange { cell: usize, cells: usize },
}

/// Per-slot multiplicities realizing a config for the given sorted pick cells.
pub fn config_multiplicities(
    config: SubaisleConfig,
    picks: &[usize],
    cells: usize,
) -> Result<Vec<u8>, ConfigError> {
    if let Some(&c) = picks.iter().find(|&&c| c < 1 || c > cells) {
        return Err(ConfigError::PickOutOfRange { cell: c, cells });
    }
    let slots = cells + 1;
    match config {
        SubaisleConfig::Empty => {
            if !picks.is_empty() {
                return Err(ConfigError::Inadmissible(config));
            }
            Ok(vec![0; slots])
        }
        SubaisleConfig::SingleTraversal => Ok(vec![1; slots]),
        SubaisleConfig::DoubleTraversal => Ok(vec![2; slots]),
        SubaisleConfig::TopReturn => {
            let &lowest = picks.last().ok_or(ConfigError::Inadmissible(config))?;
            let mut m = vec![0; slots];
            m[..lowest].fill(2);
            Ok(m)
        }
        SubaisleConfig::BottomReturn => {
            let &highest = picks.first().ok_or(ConfigError::Inadmissible(config))?;
            let mut m = vec![0; slots];
            m[highest..].fill(2);
            Ok(m)
        }
        SubaisleConfig::GapSplit => {
            if picks.is_empty() {
                return Err(ConfigError::Inadmissible(config));
            }
            // Positions: virtual 0 (upper intersection), picks, virtual C+1.
            let mut positions = Vec::with_capacity(picks.len() + 2);
            positions.push(0);
            positions.extend_from_slice(picks);
            positions.push(cells + 1);
            let (mut best_at, mut best_gap) = (0, 0);
            for w in positions.windows(2) {
                let gap = w[1] - w[0];
                if gap > best_gap {
                    best_gap = gap;
                    best_at = w[0];
                }
            }
            let mut m = vec![2; slots];
            m[best_at..best_at + best_gap].fill(0);
            Ok(m)
        }
    }
}

/// All admissible configs for one subaisle, deduplicated by multiplicity
/// vector, in canonical order. When `restrict_outer` holds and the subaisle
/// is outer, `DoubleTraversal` is excluded.
pub fn candidate_configs(
    instance: &PickInstance,
    aisle: usize,
    subaisle: usize,
    restrict_outer: bool,
) -> Vec<SubaisleConfig> {
    let layout = instance.layout();
    let picks = instance.picks_in_subaisle(aisle, subaisle);
    let cells = layout.cells_per_subaisle();
    let outer = layout.is_outer_subaisle(subaisle).expect("subaisle in bounds");
    let mut seen: Vec<Vec<u8>> = Vec::new();
    let mut out = Vec::new();
    for cfg in SubaisleConfig::ALL {
        if cfg == SubaisleConfig::DoubleTraversal && restrict_outer && outer {
            continue;
        }
        let Ok(m) = config_multiplicities(cfg, &picks, cells) else {
            continue;
        };
        if seen.contains(&m) {
            continue;
        }
        seen.push(m);
        out.push(cfg);
    }
    out
}

/// Canonical state `(s_a, s_b)` of a double edge: horizontal multiplicities
/// on one fixed side of the run's end vertices, ordered so `s_a <= s_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubleEdgeState(pub u8, pub u8);

impl DoubleEdgeState {
    /// The four states shown unnecessary regardless of position.
    pub fn is_reducible_state(&self) -> bool {
        matches!((self.0, self.1), (0, 2) | (1, 1) | (1, 2) | (2, 2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OuterKind {
    NotOuter,
    /// Touches an outer subaisle and the border-side end vertex has no
    /// incident horizontal edges.
    InnerConnected,
    /// Touches an outer subaisle and the border-side end vertex has incident
    /// horizontal edges.
    OuterConnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoubleEdgeClass {
    /// Horizontal edges incident to both end vertices.
    Connecting,
    NonConnecting { state: DoubleEdgeState, outer_kind: OuterKind },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("run has multiplicity {0}, classification needs a double edge")]
    NotDouble(u8),
    #[error("double edge with both end vertices horizontally bare cannot occur in a connected tour with two or more non-empty aisles")]
    StructurallyInvalid,
    #[error("no neighboring aisle in that direction")]
    NoNeighbor,
}

fn side_counts(t: &TourSubgraph<'_>, run: &EdgeRun, toward_left: bool) -> (u8, u8) {
    (
        t.horizontal_mult(run.aisle, run.top_cross, toward_left),
        t.horizontal_mult(run.aisle, run.bottom_cross, toward_left),
    )
}

/// Raw state of any double run under the side convention: count the left
/// side, mirrored to the right side at the leftmost aisle or when the left
/// side is entirely bare while the right is not.
pub fn run_state(t: &TourSubgraph<'_>, run: &EdgeRun) -> Result<DoubleEdgeState, ClassifyError> {
    if run.multiplicity != 2 {
        return Err(ClassifyError::NotDouble(run.multiplicity));
    }
    let (mut a, mut b) = if run.aisle == 0 {
        side_counts(t, run, false)
    } else {
        side_counts(t, run, true)
    };
    if a == 0 && b == 0 && run.aisle != 0 {
        let (ra, rb) = side_counts(t, run, false);
        if ra > 0 || rb > 0 {
            (a, b) = (ra, rb);
        }
    }
    Ok(DoubleEdgeState(a.min(b), a.max(b)))
}

/// Classifies a double run per the connecting / non-connecting and
/// inner- / outer-connected scheme.
pub fn classify_double_edge(t: &TourSubgraph<'_>, run: &EdgeRun) -> Result<DoubleEdgeClass, ClassifyError> {
    if run.multiplicity != 2 {
        return Err(ClassifyError::NotDouble(run.multiplicity));
    }
    let b = t.instance().layout().num_blocks();
    let h_total = |cross: usize| {
        t.horizontal_mult(run.aisle, cross, true) + t.horizontal_mult(run.aisle, cross, false)
    };
    let top_h = h_total(run.top_cross);
    let bottom_h = h_total(run.bottom_cross);
    if top_h == 0 && bottom_h == 0 {
        if t.instance().non_empty_aisles().len() >= 2 {
            return Err(ClassifyError::StructurallyInvalid);
        }
        // Single non-empty aisle: degenerate but representable.
        return Ok(DoubleEdgeClass::NonConnecting {
            state: DoubleEdgeState(0, 0),
            outer_kind: if run.spans_outer_subaisle(b) { OuterKind::InnerConnected } else { OuterKind::NotOuter },
        });
    }
    if top_h > 0 && bottom_h > 0 {
        return Ok(DoubleEdgeClass::Connecting);
    }
    let state = run_state(t, run)?;
    let outer_kind = if !run.spans_outer_subaisle(b) {
        OuterKind::NotOuter
    } else {
        // Border ends: top end at the warehouse's upper border, bottom end at
        // the lower border. A bare border end makes the run inner-connected.
        let top_border = run.top_cross == 0;
        let bottom_border = run.bottom_cross == b;
        let bare_border = (top_border && top_h == 0) || (bottom_border && bottom_h == 0);
        if bare_border {
            OuterKind::InnerConnected
        } else {
            OuterKind::OuterConnected
        }
    };
    Ok(DoubleEdgeClass::NonConnecting { state, outer_kind })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    TowardLeft,
    TowardRight,
}

impl Direction {
    pub fn neighbor_of(&self, aisle: usize, num_aisles: usize) -> Option<usize> {
        match self {
            Direction::TowardLeft => aisle.checked_sub(1),
            Direction::TowardRight => (aisle + 1 < num_aisles).then_some(aisle + 1),
        }
    }
}

/// True iff the adjacent aisle in the given direction contains a
/// multiplicity-1 run over exactly the same cross-aisle span.
pub fn preceding_single_edge_exists(
    t: &TourSubgraph<'_>,
    run: &EdgeRun,
    direction: Direction,
) -> Result<bool, ClassifyError> {
    let neighbor = direction
        .neighbor_of(run.aisle, t.instance().layout().num_aisles())
        .ok_or(ClassifyError::NoNeighbor)?;
    Ok(t.find_edge_runs().iter().any(|r| {
        r.aisle == neighbor
            && r.multiplicity == 1
            && r.top_cross == run.top_cross
            && r.bottom_cross == run.bottom_cross
    }))
}
