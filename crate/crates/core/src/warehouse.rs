//! Warehouse grid model: layout geometry, vertex/edge identity and pick instances.
//!
//! The warehouse is a grid multigraph. Vertical aisles are indexed left to
//! right, cross-aisles top to bottom. A subaisle is the segment of an aisle
//! between two consecutive cross-aisles and holds `cells_per_subaisle`
//! storage cells, so it decomposes into `C + 1` vertical unit edges.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact length type used everywhere; optimal tour lengths are rationals.
pub type Len = Rational64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("layout dimensions must be at least 1 (got aisles={aisles}, blocks={blocks}, cells={cells})")]
    EmptyLayout { aisles: usize, blocks: usize, cells: usize },
    #[error("all lengths must be strictly positive")]
    NonPositiveLength,
    #[error("expected {expected} aisle gaps, got {got}")]
    GapCount { expected: usize, got: usize },
    #[error("vertex {0} out of bounds")]
    VertexOutOfBounds(String),
    #[error("edge {0} out of bounds")]
    EdgeOutOfBounds(String),
    #[error("depot must be an intersection vertex")]
    DepotNotIntersection,
    #[error("pick locations must be cell vertices")]
    PickNotCell,
    #[error("pick set must be nonempty")]
    NoPicks,
}

/// Grid geometry of a rectangular warehouse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarehouseLayout {
    num_aisles: usize,
    num_blocks: usize,
    cells_per_subaisle: usize,
    cell_step: Len,
    aisle_gaps: Vec<Len>,
}

impl WarehouseLayout {
    pub fn new(
        num_aisles: usize,
        num_blocks: usize,
        cells_per_subaisle: usize,
        cell_step: Len,
        aisle_gaps: Vec<Len>,
    ) -> Result<Self, ModelError> {
        if num_aisles < 1 || num_blocks < 1 || cells_per_subaisle < 1 {
            return Err(ModelError::EmptyLayout {
                aisles: num_aisles,
                blocks: num_blocks,
                cells: cells_per_subaisle,
            });
        }
        if cell_step <= Len::from_integer(0) || aisle_gaps.iter().any(|g| *g <= Len::from_integer(0)) {
            return Err(ModelError::NonPositiveLength);
        }
        if aisle_gaps.len() != num_aisles - 1 {
            return Err(ModelError::GapCount { expected: num_aisles - 1, got: aisle_gaps.len() });
        }
        Ok(Self { num_aisles, num_blocks, cells_per_subaisle, cell_step, aisle_gaps })
    }

    /// Unit geometry: every length defaults to 1.
    pub fn uniform(num_aisles: usize, num_blocks: usize, cells_per_subaisle: usize) -> Result<Self, ModelError> {
        let one = Len::from_integer(1);
        let gaps = vec![one; num_aisles.saturating_sub(1)];
        Self::new(num_aisles, num_blocks, cells_per_subaisle, one, gaps)
    }

    pub fn num_aisles(&self) -> usize {
        self.num_aisles
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    /// Cross-aisles number `num_blocks + 1`.
    pub fn num_cross_aisles(&self) -> usize {
        self.num_blocks + 1
    }

    pub fn cells_per_subaisle(&self) -> usize {
        self.cells_per_subaisle
    }

    pub fn cell_step(&self) -> Len {
        self.cell_step
    }

    pub fn aisle_gap(&self, left_aisle: usize) -> Len {
        self.aisle_gaps[left_aisle]
    }

    pub fn aisle_gaps(&self) -> &[Len] {
        &self.aisle_gaps
    }

    /// Unit edges per subaisle: intersection, C cells, intersection.
    pub fn slots_per_subaisle(&self) -> usize {
        self.cells_per_subaisle + 1
    }

    pub fn is_outer_subaisle(&self, subaisle: usize) -> Result<bool, ModelError> {
        if subaisle >= self.num_blocks {
            return Err(ModelError::EdgeOutOfBounds(format!("subaisle {subaisle}")));
        }
        Ok(subaisle == 0 || subaisle == self.num_blocks - 1)
    }

    pub fn vertical_edge_count(&self) -> usize {
        self.num_aisles * self.num_blocks * self.slots_per_subaisle()
    }

    pub fn horizontal_edge_count(&self) -> usize {
        self.num_cross_aisles() * (self.num_aisles - 1)
    }

    pub fn edge_count(&self) -> usize {
        self.vertical_edge_count() + self.horizontal_edge_count()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        match v {
            VertexId::Intersection { aisle, cross_aisle } => {
                aisle < self.num_aisles && cross_aisle <= self.num_blocks
            }
            VertexId::Cell { aisle, subaisle, cell } => {
                aisle < self.num_aisles
                    && subaisle < self.num_blocks
                    && cell >= 1
                    && cell <= self.cells_per_subaisle
            }
        }
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        match e {
            EdgeId::VerticalUnit { aisle, subaisle, slot } => {
                aisle < self.num_aisles && subaisle < self.num_blocks && slot <= self.cells_per_subaisle
            }
            EdgeId::HorizontalUnit { cross_aisle, left_aisle } => {
                cross_aisle <= self.num_blocks && self.num_aisles >= 2 && left_aisle <= self.num_aisles - 2
            }
        }
    }

    /// Dense index of an edge: all vertical units first, then horizontal units.
    pub fn edge_index(&self, e: EdgeId) -> usize {
        debug_assert!(self.contains_edge(e), "edge out of bounds: {e}");
        match e {
            EdgeId::VerticalUnit { aisle, subaisle, slot } => {
                (aisle * self.num_blocks + subaisle) * self.slots_per_subaisle() + slot
            }
            EdgeId::HorizontalUnit { cross_aisle, left_aisle } => {
                self.vertical_edge_count() + cross_aisle * (self.num_aisles - 1) + left_aisle
            }
        }
    }

    pub fn edge_at(&self, index: usize) -> EdgeId {
        let nv = self.vertical_edge_count();
        if index < nv {
            let slots = self.slots_per_subaisle();
            let slot = index % slots;
            let rest = index / slots;
            EdgeId::VerticalUnit { aisle: rest / self.num_blocks, subaisle: rest % self.num_blocks, slot }
        } else {
            let h = index - nv;
            let w = self.num_aisles - 1;
            EdgeId::HorizontalUnit { cross_aisle: h / w, left_aisle: h % w }
        }
    }

    /// All edges in dense-index order.
    pub fn enumerate_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count()).map(|i| self.edge_at(i))
    }

    pub fn edge_length(&self, e: EdgeId) -> Result<Len, ModelError> {
        if !self.contains_edge(e) {
            return Err(ModelError::EdgeOutOfBounds(e.to_string()));
        }
        Ok(match e {
            EdgeId::VerticalUnit { .. } => self.cell_step,
            EdgeId::HorizontalUnit { left_aisle, .. } => self.aisle_gaps[left_aisle],
        })
    }

    /// Endpoints of a unit edge. Vertical slot 0 touches the upper
    /// intersection, slot C the lower one.
    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let c = self.cells_per_subaisle;
        match e {
            EdgeId::VerticalUnit { aisle, subaisle, slot } => {
                let top = if slot == 0 {
                    VertexId::Intersection { aisle, cross_aisle: subaisle }
                } else {
                    VertexId::Cell { aisle, subaisle, cell: slot }
                };
                let bottom = if slot == c {
                    VertexId::Intersection { aisle, cross_aisle: subaisle + 1 }
                } else {
                    VertexId::Cell { aisle, subaisle, cell: slot + 1 }
                };
                (top, bottom)
            }
            EdgeId::HorizontalUnit { cross_aisle, left_aisle } => (
                VertexId::Intersection { aisle: left_aisle, cross_aisle },
                VertexId::Intersection { aisle: left_aisle + 1, cross_aisle },
            ),
        }
    }

    /// Edges incident to a vertex, in dense-index order.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        let mut out = Vec::with_capacity(4);
        let c = self.cells_per_subaisle;
        match v {
            VertexId::Cell { aisle, subaisle, cell } => {
                out.push(EdgeId::VerticalUnit { aisle, subaisle, slot: cell - 1 });
                out.push(EdgeId::VerticalUnit { aisle, subaisle, slot: cell });
            }
            VertexId::Intersection { aisle, cross_aisle } => {
                if cross_aisle > 0 {
                    out.push(EdgeId::VerticalUnit { aisle, subaisle: cross_aisle - 1, slot: c });
                }
                if cross_aisle < self.num_blocks {
                    out.push(EdgeId::VerticalUnit { aisle, subaisle: cross_aisle, slot: 0 });
                }
                if aisle > 0 {
                    out.push(EdgeId::HorizontalUnit { cross_aisle, left_aisle: aisle - 1 });
                }
                if aisle + 1 < self.num_aisles {
                    out.push(EdgeId::HorizontalUnit { cross_aisle, left_aisle: aisle });
                }
            }
        }
        out
    }
}

/// A grid vertex: an aisle/cross-aisle intersection or a storage cell.
/// Cells are numbered 1..=C top to bottom within their subaisle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexId {
    Intersection { aisle: usize, cross_aisle: usize },
    Cell { aisle: usize, subaisle: usize, cell: usize },
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Intersection { aisle, cross_aisle } => write!(f, "I({aisle},{cross_aisle})"),
            VertexId::Cell { aisle, subaisle, cell } => write!(f, "C({aisle},{subaisle},{cell})"),
        }
    }
}

/// A unit edge of the grid multigraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeId {
    /// Slot 0 touches the upper intersection of the subaisle, slot C the lower.
    VerticalUnit { aisle: usize, subaisle: usize, slot: usize },
    HorizontalUnit { cross_aisle: usize, left_aisle: usize },
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeId::VerticalUnit { aisle, subaisle, slot } => write!(f, "v({aisle},{subaisle},{slot})"),
            EdgeId::HorizontalUnit { cross_aisle, left_aisle } => write!(f, "h({cross_aisle},{left_aisle})"),
        }
    }
}

/// A layout plus a depot intersection and a nonempty set of pick cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PickInstance {
    layout: WarehouseLayout,
    depot: VertexId,
    picks: Vec<VertexId>,
}

impl PickInstance {
    pub fn new(layout: WarehouseLayout, depot: VertexId, mut picks: Vec<VertexId>) -> Result<Self, ModelError> {
        match depot {
            VertexId::Intersection { .. } => {}
            _ => return Err(ModelError::DepotNotIntersection),
        }
        if !layout.contains_vertex(depot) {
            return Err(ModelError::VertexOutOfBounds(depot.to_string()));
        }
        if picks.is_empty() {
            return Err(ModelError::NoPicks);
        }
        for p in &picks {
            match p {
                VertexId::Cell { .. } => {}
                _ => return Err(ModelError::PickNotCell),
            }
            if !layout.contains_vertex(*p) {
                return Err(ModelError::VertexOutOfBounds(p.to_string()));
            }
        }
        picks.sort();
        picks.dedup();
        Ok(Self { layout, depot, picks })
    }

    pub fn layout(&self) -> &WarehouseLayout {
        &self.layout
    }

    pub fn depot(&self) -> VertexId {
        self.depot
    }

    pub fn depot_position(&self) -> (usize, usize) {
        match self.depot {
            VertexId::Intersection { aisle, cross_aisle } => (aisle, cross_aisle),
            _ => unreachable!("depot is an intersection by construction"),
        }
    }

    /// Sorted, deduplicated pick cells.
    pub fn picks(&self) -> &[VertexId] {
        &self.picks
    }

    /// Aisle indices holding at least one pick. The depot's aisle is not
    /// included by virtue of the depot alone.
    pub fn non_empty_aisles(&self) -> BTreeSet<usize> {
        self.picks
            .iter()
            .map(|p| match p {
                VertexId::Cell { aisle, .. } => *aisle,
                _ => unreachable!(),
            })
            .collect()
    }

    /// Sorted cell positions of the picks in one subaisle.
    pub fn picks_in_subaisle(&self, aisle: usize, subaisle: usize) -> Vec<usize> {
        let mut cells: Vec<usize> = self
            .picks
            .iter()
            .filter_map(|p| match p {
                VertexId::Cell { aisle: a, subaisle: k, cell } if *a == aisle && *k == subaisle => Some(*cell),
                _ => None,
            })
            .collect();
        cells.sort_unstable();
        cells
    }

    /// True iff any pick or the depot sits in the given aisle.
    pub fn aisle_has_requirement(&self, aisle: usize) -> bool {
        self.depot_position().0 == aisle || self.non_empty_aisles().contains(&aisle)
    }
}

// ---------------------------------------------------------------------------
// Instance file schema (JSON-compatible structured text)
// ---------------------------------------------------------------------------

/// Rational number in the instance file: an integer or a "p/q" string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalField(pub Len);

impl Serialize for RationalField {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            ser.serialize_i64(self.0.to_integer())
        } else {
            ser.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl<'de> Deserialize<'de> for RationalField {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(de)? {
            Raw::Int(n) => Ok(RationalField(Len::from_integer(n))),
            Raw::Str(s) => {
                let parts: Vec<&str> = s.split('/').collect();
                let parse = |t: &str| t.trim().parse::<i64>().map_err(D::Error::custom);
                match parts.as_slice() {
                    [n] => Ok(RationalField(Len::from_integer(parse(n)?))),
                    [n, d] => {
                        let d = parse(d)?;
                        if d == 0 {
                            return Err(D::Error::custom("zero denominator"));
                        }
                        Ok(RationalField(Len::new(parse(n)?, d)))
                    }
                    _ => Err(D::Error::custom(format!("bad rational: {s}"))),
                }
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DepotSchema {
    aisle: usize,
    cross: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PickSchema {
    aisle: usize,
    subaisle: usize,
    cell: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceSchema {
    aisles: usize,
    blocks: usize,
    cells: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    cell_step: Option<RationalField>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aisle_gaps: Option<Vec<RationalField>>,
    depot: DepotSchema,
    picks: Vec<PickSchema>,
}

#[derive(Debug, Error)]
pub enum InstanceIoError {
    #[error("instance parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("instance invalid: {0}")]
    Model(#[from] ModelError),
}

impl PickInstance {
    pub fn from_json(text: &str) -> Result<Self, InstanceIoError> {
        let raw: InstanceSchema = serde_json::from_str(text)?;
        let one = Len::from_integer(1);
        let cell_step = raw.cell_step.map(|r| r.0).unwrap_or(one);
        let gaps = match raw.aisle_gaps {
            Some(gs) => gs.into_iter().map(|r| r.0).collect(),
            None => vec![one; raw.aisles.saturating_sub(1)],
        };
        let layout = WarehouseLayout::new(raw.aisles, raw.blocks, raw.cells, cell_step, gaps)?;
        let depot = VertexId::Intersection { aisle: raw.depot.aisle, cross_aisle: raw.depot.cross };
        let picks = raw
            .picks
            .into_iter()
            .map(|p| VertexId::Cell { aisle: p.aisle, subaisle: p.subaisle, cell: p.cell })
            .collect();
        Ok(PickInstance::new(layout, depot, picks)?)
    }

    /// Canonical emission; `from_json(to_json(i)) == i`.
    pub fn to_json(&self) -> String {
        let (da, dj) = self.depot_position();
        let l = &self.layout;
        let one = Len::from_integer(1);
        let schema = InstanceSchema {
            aisles: l.num_aisles,
            blocks: l.num_blocks,
            cells: l.cells_per_subaisle,
            cell_step: (l.cell_step != one).then_some(RationalField(l.cell_step)),
            aisle_gaps: l
                .aisle_gaps
                .iter()
                .any(|g| *g != one)
                .then(|| l.aisle_gaps.iter().map(|g| RationalField(*g)).collect()),
            depot: DepotSchema { aisle: da, cross: dj },
            picks: self
                .picks
                .iter()
                .map(|p| match p {
                    VertexId::Cell { aisle, subaisle, cell } => {
                        PickSchema { aisle: *aisle, subaisle: *subaisle, cell: *cell }
                    }
                    _ => unreachable!(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&schema).expect("instance serialization cannot fail")
    }
}

/// Scaled integer cost model so solver inner loops avoid rational arithmetic.
///
/// Every edge length equals `numer / denom` with a shared denominator.
#[derive(Debug, Clone)]
pub struct CostModel {
    pub denom: i64,
    pub vertical: i64,
    pub gaps: Vec<i64>,
}

impl CostModel {
    pub fn for_layout(layout: &WarehouseLayout) -> Self {
        let mut denom = *layout.cell_step.denom();
        for g in &layout.aisle_gaps {
            denom = denom.lcm(g.denom());
        }
        let scale = |r: &Len| r.numer() * (denom / r.denom());
        CostModel {
            denom,
            vertical: scale(&layout.cell_step),
            gaps: layout.aisle_gaps.iter().map(scale).collect(),
        }
    }

    pub fn to_len(&self, scaled: i64) -> Len {
        Len::new(scaled, self.denom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn non_empty_aisles_from_picks_only() {
        let i = inst(3, 1, 2, (1, 0), &[(0, 0, 1), (2, 0, 2)]);
        assert_eq!(i.non_empty_aisles(), BTreeSet::from([0, 2]));
        let i = inst(2, 1, 2, (0, 0), &[(1, 0, 1)]);
        assert_eq!(i.non_empty_aisles(), BTreeSet::from([1]));
    }

    #[test]
    fn empty_pick_set_rejected_at_construction() {
        let layout = WarehouseLayout::uniform(2, 1, 1).unwrap();
        let err = PickInstance::new(layout, VertexId::Intersection { aisle: 0, cross_aisle: 0 }, vec![]);
        assert_eq!(err.unwrap_err(), ModelError::NoPicks);
    }

    #[test]
    fn outer_subaisle_classification() {
        let b3 = WarehouseLayout::uniform(1, 3, 1).unwrap();
        assert!(!b3.is_outer_subaisle(1).unwrap());
        assert!(b3.is_outer_subaisle(0).unwrap());
        assert!(b3.is_outer_subaisle(2).unwrap());
        let b2 = WarehouseLayout::uniform(1, 2, 1).unwrap();
        assert!(b2.is_outer_subaisle(0).unwrap());
        assert!(b2.is_outer_subaisle(1).unwrap());
        let b1 = WarehouseLayout::uniform(1, 1, 1).unwrap();
        assert!(b1.is_outer_subaisle(0).unwrap());
        assert!(b1.is_outer_subaisle(1).is_err());
    }

    #[test]
    fn edge_lengths() {
        let l = WarehouseLayout::new(
            2,
            1,
            1,
            Len::new(1, 2),
            vec![Len::from_integer(3)],
        )
        .unwrap();
        assert_eq!(
            l.edge_length(EdgeId::VerticalUnit { aisle: 0, subaisle: 0, slot: 1 }).unwrap(),
            Len::new(1, 2)
        );
        assert_eq!(
            l.edge_length(EdgeId::HorizontalUnit { cross_aisle: 0, left_aisle: 0 }).unwrap(),
            Len::from_integer(3)
        );
        assert!(l.edge_length(EdgeId::HorizontalUnit { cross_aisle: 2, left_aisle: 0 }).is_err());
    }

    #[test]
    fn edge_counts() {
        for (a, b, c, nv, nh) in [(1, 1, 1, 2, 0), (2, 1, 3, 8, 2), (3, 2, 2, 18, 6)] {
            let l = WarehouseLayout::uniform(a, b, c).unwrap();
            assert_eq!(l.vertical_edge_count(), nv);
            assert_eq!(l.horizontal_edge_count(), nh);
            assert_eq!(l.enumerate_edges().count(), nv + nh);
        }
    }

    #[test]
    fn edge_index_is_bijective() {
        let l = WarehouseLayout::uniform(3, 2, 2).unwrap();
        for (i, e) in l.enumerate_edges().enumerate() {
            assert_eq!(l.edge_index(e), i);
            assert_eq!(l.edge_at(i), e);
            assert!(l.contains_edge(e));
        }
    }

    #[test]
    fn incidence_degrees_match_grid_structure() {
        let l = WarehouseLayout::uniform(3, 2, 2).unwrap();
        // Corner intersection: 1 vertical + 1 horizontal.
        assert_eq!(l.incident_edges(VertexId::Intersection { aisle: 0, cross_aisle: 0 }).len(), 2);
        // Interior intersection of the middle aisle: 2 vertical + 2 horizontal.
        assert_eq!(l.incident_edges(VertexId::Intersection { aisle: 1, cross_aisle: 1 }).len(), 4);
        // Cells always have exactly two vertical unit edges.
        assert_eq!(l.incident_edges(VertexId::Cell { aisle: 2, subaisle: 1, cell: 1 }).len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{ "aisles": 2, "blocks": 1, "cells": 3,
                        "cell_step": "1/2", "aisle_gaps": [3],
                        "depot": {"aisle": 0, "cross": 1},
                        "picks": [{"aisle": 0, "subaisle": 0, "cell": 2},
                                  {"aisle": 1, "subaisle": 0, "cell": 1}] }"#;
        let inst = PickInstance::from_json(text).unwrap();
        assert_eq!(inst.layout().cell_step(), Len::new(1, 2));
        assert_eq!(inst.layout().aisle_gap(0), Len::from_integer(3));
        let again = PickInstance::from_json(&inst.to_json()).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{ "aisles": 1, "blocks": 1, "cells": 1, "bogus": 1,
                        "depot": {"aisle": 0, "cross": 0},
                        "picks": [{"aisle": 0, "subaisle": 0, "cell": 1}] }"#;
        assert!(matches!(PickInstance::from_json(text), Err(InstanceIoError::Parse(_))));
    }

    #[test]
    fn cost_model_scales_exactly() {
        let l = WarehouseLayout::new(3, 1, 1, Len::new(1, 2), vec![Len::from_integer(3), Len::new(2, 3)]).unwrap();
        let m = CostModel::for_layout(&l);
        assert_eq!(m.to_len(m.vertical), Len::new(1, 2));
        assert_eq!(m.to_len(m.gaps[0]), Len::from_integer(3));
        assert_eq!(m.to_len(m.gaps[1]), Len::new(2, 3));
    }
}
