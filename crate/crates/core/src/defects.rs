//! Punctures and the operators that interrogate them.
//!
//! A puncture is a hole cut into the code by single-qubit measurements:
//!
//! - a *rough* hole measures Z on every edge of its closed footprint, so
//!   Z-strings terminate on it (it condenses e);
//! - a *smooth* hole measures X on every edge touching a footprint cell,
//!   so X-strings terminate on it (it condenses m);
//! - a *mixed* hole measures Z behind its rough segments (the north edge
//!   layer and the east edge layer) and X on its interior edges. Its
//!   boundary runs rough along the north and east sides and smooth along
//!   the south and west, so the two type-change points sit at opposite
//!   corners and both anyon types condense.
//!
//! Measurement byproducts are repaired by conjugating with the witness
//! generator the tableau exposes, which equals a repair string routed to a
//! matching boundary up to stabilizer factors; the state that results is
//! identical and independent of the random draws.
//!
//! A hole moves by one cell at a time: measure the qubits entering the new
//! footprint in the basis their local segment dictates, then re-measure the
//! vacated vertex and plaquette operators at the rear and repair them to +1.
//! Boundary segment types translate rigidly, so transport never rotates the
//! hole's frame.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{BoundaryType, Cell, CodeGeometry, Edge, Side, Vertex};
use crate::pauli::PauliOperator;
use crate::tableau::{StabilizerTableau, TableauError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PunctureId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PunctureType {
    Rough,
    Smooth,
    Mixed,
}

/// Measurement basis a removed qubit is frozen in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasBasis {
    Z,
    X,
}

/// Anyon species as string labels: e moves on Z-strings, m on X-strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnyonKind {
    E,
    M,
}

/// Charge content read from a puncture's pair of detection loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Charge {
    Vacuum,
    E,
    M,
    Epsilon,
    /// At least one detection loop has expectation 0.
    Superposed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dir {
    North,
    South,
    East,
    West,
}

/// A rectangle of cells: rows `r..r+height`, cols `c..c+width`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRect {
    pub r: usize,
    pub c: usize,
    pub height: usize,
    pub width: usize,
}

impl CellRect {
    pub fn new(r: usize, c: usize, height: usize, width: usize) -> Self {
        Self { r, c, height, width }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (self.r..self.r + self.height)
            .flat_map(move |r| (self.c..self.c + self.width).map(move |c| Cell { r, c }))
    }

    pub fn contains(&self, cell: Cell) -> bool {
        (self.r..self.r + self.height).contains(&cell.r)
            && (self.c..self.c + self.width).contains(&cell.c)
    }

    pub fn translated(&self, dir: Dir) -> Option<Self> {
        let (mut r, mut c) = (self.r, self.c);
        match dir {
            Dir::North => r = r.checked_sub(1)?,
            Dir::South => r += 1,
            Dir::West => c = c.checked_sub(1)?,
            Dir::East => c += 1,
        }
        Some(Self { r, c, ..*self })
    }

    /// Grow by one cell on every side (caller guarantees room).
    pub fn ring(&self) -> Self {
        Self { r: self.r - 1, c: self.c - 1, height: self.height + 2, width: self.width + 2 }
    }

    /// Chebyshev distance between the two cell sets (0 when they overlap).
    pub fn chebyshev_distance(&self, other: &Self) -> usize {
        let axis = |a0: usize, a1: usize, b0: usize, b1: usize| {
            if b0 > a1 {
                b0 - a1
            } else { a0.saturating_sub(b1) }
        };
        let dr = axis(self.r, self.r + self.height - 1, other.r, other.r + other.height - 1);
        let dc = axis(self.c, self.c + self.width - 1, other.c, other.c + other.width - 1);
        dr.max(dc)
    }

    /// Smallest rectangle containing both.
    pub fn bounding(&self, other: &Self) -> Self {
        let r = self.r.min(other.r);
        let c = self.c.min(other.c);
        let r1 = (self.r + self.height).max(other.r + other.height);
        let c1 = (self.c + self.width).max(other.c + other.width);
        Self { r, c, height: r1 - r, width: c1 - c }
    }
}

/// A hole defect and the bookkeeping needed to heal or move it.
#[derive(Debug, Clone)]
pub struct Puncture {
    pub id: PunctureId,
    pub ty: PunctureType,
    pub footprint: CellRect,
    /// Net quarter-turns of the hole frame; transport is translation-only,
    /// so braids must return this to its initial value.
    pub orientation_quarter_turns: i32,
    pub removed_qubits: BTreeMap<usize, MeasBasis>,
    pub dead_vertices: BTreeSet<Vertex>,
    pub dead_cells: BTreeSet<Cell>,
}

impl Puncture {
    /// Boundary segments in cyclic order top → right → bottom → left.
    pub fn boundary_segments(&self) -> Vec<(Side, BoundaryType)> {
        match self.ty {
            PunctureType::Rough => vec![
                (Side::Top, BoundaryType::Rough),
                (Side::Right, BoundaryType::Rough),
                (Side::Bottom, BoundaryType::Rough),
                (Side::Left, BoundaryType::Rough),
            ],
            PunctureType::Smooth => vec![
                (Side::Top, BoundaryType::Smooth),
                (Side::Right, BoundaryType::Smooth),
                (Side::Bottom, BoundaryType::Smooth),
                (Side::Left, BoundaryType::Smooth),
            ],
            PunctureType::Mixed => vec![
                (Side::Top, BoundaryType::Rough),
                (Side::Right, BoundaryType::Rough),
                (Side::Bottom, BoundaryType::Smooth),
                (Side::Left, BoundaryType::Smooth),
            ],
        }
    }

    /// Number of rough↔smooth changes around the boundary cycle.
    pub fn type_change_count(&self) -> usize {
        let segs = self.boundary_segments();
        (0..segs.len()).filter(|&i| segs[i].1 != segs[(i + 1) % segs.len()].1).count()
    }

    pub fn condenses(&self, kind: AnyonKind) -> bool {
        matches!(
            (self.ty, kind),
            (PunctureType::Mixed, _)
                | (PunctureType::Rough, AnyonKind::E)
                | (PunctureType::Smooth, AnyonKind::M)
        )
    }
}

/// A path for a string operator: primal paths visit vertices (Z-strings),
/// dual paths visit cells (X-strings).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StringPath {
    Primal(Vec<Vertex>),
    Dual(Vec<Cell>),
}

/// Where a string terminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    OuterSide(Side),
    Puncture(PunctureId),
    /// An open endpoint: the string excites the operator at its end.
    Bulk,
}

/// Which anyon charge a closed loop detects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LoopKind {
    /// X-type loop; its sign is (−1)^(# e enclosed).
    DetectE,
    /// Z-type loop; its sign is (−1)^(# m enclosed).
    DetectM,
}

#[derive(Debug, Error)]
pub enum DefectError {
    #[error("footprint {0:?} leaves the bulk (one clear cell to the outer boundary required)")]
    OutOfBulk(CellRect),
    #[error("clearance violation: {0:?} comes within one cell of puncture {1:?}")]
    Clearance(CellRect, PunctureId),
    #[error("mixed punctures need at least two cells")]
    MixedTooSmall,
    #[error("unknown puncture {0:?}")]
    UnknownPuncture(PunctureId),
    #[error("edge {0:?} does not exist in this geometry")]
    MissingEdge(Edge),
    #[error("string support touches a removed qubit on edge {0:?}")]
    StringCrossesPuncture(Edge),
    #[error("path is not connected at step {0}")]
    DisconnectedPath(usize),
    #[error("endpoint does not condense this string type")]
    CondensationMismatch,
    #[error("loop support touches a removed qubit on edge {0:?}")]
    LoopCrossesPuncture(Edge),
    #[error("region cuts puncture {0:?} in half")]
    RegionSplitsPuncture(PunctureId),
    #[error("region {0:?} out of range for detection loops")]
    RegionOutOfRange(CellRect),
    #[error("no route for the requested string")]
    NoRoute,
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

/// Record of the operations applied to a simulation, for diagrams.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum LogEvent {
    Created { id: PunctureId, ty: PunctureType, footprint: CellRect },
    Removed { id: PunctureId },
    Moved { id: PunctureId, dir: Dir },
    StringApplied { kind: AnyonKind, edges: Vec<Edge> },
    LoopMeasured { kind: LoopKind, region: CellRect, outcome: i8 },
}

/// A planar patch, its live punctures and the evolving stabilizer state.
pub struct Simulation {
    geometry: CodeGeometry,
    state: StabilizerTableau,
    punctures: BTreeMap<usize, Puncture>,
    next_id: usize,
    log: Vec<LogEvent>,
}

impl Simulation {
    /// Ground state of the patch with no defects.
    pub fn new(geometry: CodeGeometry, rng: &mut impl Rng) -> Self {
        let state = geometry.ground_state(rng);
        Self { geometry, state, punctures: BTreeMap::new(), next_id: 0, log: Vec::new() }
    }

    pub fn geometry(&self) -> &CodeGeometry {
        &self.geometry
    }

    pub fn state(&self) -> &StabilizerTableau {
        &self.state
    }

    pub fn punctures(&self) -> impl Iterator<Item = &Puncture> {
        self.punctures.values()
    }

    pub fn puncture(&self, id: PunctureId) -> Result<&Puncture, DefectError> {
        self.punctures.get(&id.0).ok_or(DefectError::UnknownPuncture(id))
    }

    pub fn log(&self) -> &[LogEvent] {
        &self.log
    }

    /// Expectation of an operator on the current state.
    pub fn expectation(&self, op: &PauliOperator) -> i8 {
        self.state.expectation(op)
    }

    pub fn apply(&mut self, op: &PauliOperator) {
        self.state.apply_pauli(op);
    }

    pub fn measure(&mut self, op: &PauliOperator, rng: &mut impl Rng) -> i8 {
        self.state.measure(op, rng).outcome
    }

    pub fn measure_expect(
        &mut self,
        op: &PauliOperator,
        want: i8,
        rng: &mut impl Rng,
    ) -> Result<(), TableauError> {
        self.state.measure_expect(op, want, rng)
    }

    pub fn states_equal(&self, other: &Self) -> Result<bool, TableauError> {
        self.state.states_equal(&other.state)
    }

    // ---- dead-set rules -------------------------------------------------

    /// Removed qubits and their measurement bases for a hole of the given
    /// type over the given footprint.
    fn dead_map(&self, ty: PunctureType, rect: CellRect) -> BTreeMap<usize, MeasBasis> {
        let g = &self.geometry;
        let mut map = BTreeMap::new();
        match ty {
            // every edge of the closed footprint, frozen in Z
            PunctureType::Rough => {
                for cell in rect.cells() {
                    for e in g.cell_edges(cell) {
                        map.insert(g.qubit(e).unwrap(), MeasBasis::Z);
                    }
                }
            }
            // every edge touching a footprint cell, frozen in X
            PunctureType::Smooth => {
                for cell in rect.cells() {
                    for e in g.cell_edges(cell) {
                        map.insert(g.qubit(e).unwrap(), MeasBasis::X);
                    }
                }
            }
            // Z behind the rough north and east layers, X on the interior
            PunctureType::Mixed => {
                for c in rect.c..rect.c + rect.width {
                    map.insert(g.qubit(Edge::horizontal(rect.r, c)).unwrap(), MeasBasis::Z);
                }
                for r in rect.r..rect.r + rect.height {
                    map.insert(
                        g.qubit(Edge::vertical(r, rect.c + rect.width)).unwrap(),
                        MeasBasis::Z,
                    );
                }
                for r in rect.r + 1..rect.r + rect.height {
                    for c in rect.c..rect.c + rect.width {
                        map.insert(g.qubit(Edge::horizontal(r, c)).unwrap(), MeasBasis::X);
                    }
                }
                for c in rect.c + 1..rect.c + rect.width {
                    for r in rect.r..rect.r + rect.height {
                        map.insert(g.qubit(Edge::vertical(r, c)).unwrap(), MeasBasis::X);
                    }
                }
            }
        }
        map
    }

    /// Operator sites disabled by a dead map: vertex operators touching a
    /// Z-frozen edge, plaquettes of the footprint or touching an X-frozen
    /// edge.
    fn dead_sites(
        &self,
        rect: CellRect,
        map: &BTreeMap<usize, MeasBasis>,
    ) -> (BTreeSet<Vertex>, BTreeSet<Cell>) {
        let g = &self.geometry;
        let mut vertices = BTreeSet::new();
        let mut cells: BTreeSet<Cell> = rect.cells().collect();
        for (&q, &basis) in map {
            let e = g.edge_of(q);
            match basis {
                MeasBasis::Z => {
                    for v in edge_endpoints(e) {
                        if g.has_vertex_op(v) {
                            vertices.insert(v);
                        }
                    }
                }
                MeasBasis::X => {
                    for c in edge_faces(e) {
                        if g.has_plaquette(c) {
                            cells.insert(c);
                        }
                    }
                }
            }
        }
        (vertices, cells)
    }

    fn removed_qubit(&self, q: usize) -> bool {
        self.punctures.values().any(|p| p.removed_qubits.contains_key(&q))
    }

    /// Every operator site whose support touches one of the given qubits,
    /// minus an excluded dead set. Used to heal a region: re-measuring a
    /// site that never left the group is a deterministic no-op, so taking
    /// the full neighborhood is safe and leaves no stray constraints.
    fn touching_sites(
        &self,
        qubits: impl IntoIterator<Item = usize>,
        exclude: &(BTreeSet<Vertex>, BTreeSet<Cell>),
    ) -> (BTreeSet<Vertex>, BTreeSet<Cell>) {
        let g = &self.geometry;
        let mut vertices = BTreeSet::new();
        let mut cells = BTreeSet::new();
        for q in qubits {
            let e = g.edge_of(q);
            for v in edge_endpoints(e) {
                if g.has_vertex_op(v) && !exclude.0.contains(&v) {
                    vertices.insert(v);
                }
            }
            for c in edge_faces(e) {
                if g.has_plaquette(c) && !exclude.1.contains(&c) {
                    cells.insert(c);
                }
            }
        }
        (vertices, cells)
    }

    fn revive_sites(
        &mut self,
        vertices: &BTreeSet<Vertex>,
        cells: &BTreeSet<Cell>,
        rng: &mut impl Rng,
    ) -> Result<(), DefectError> {
        for v in vertices {
            let op = self.geometry.vertex_stabilizer(*v).unwrap();
            self.state.measure_expect(&op, 1, rng)?;
        }
        for c in cells {
            let op = self.geometry.plaquette_stabilizer(*c).unwrap();
            self.state.measure_expect(&op, 1, rng)?;
        }
        Ok(())
    }

    fn validate_footprint(
        &self,
        rect: CellRect,
        ignore: Option<PunctureId>,
    ) -> Result<(), DefectError> {
        let (rows, cols) = self.geometry.cell_dims();
        let inside = rect.r >= 1
            && rect.c >= 1
            && rect.r + rect.height < rows
            && rect.c + rect.width < cols;
        if !inside {
            return Err(DefectError::OutOfBulk(rect));
        }
        for p in self.punctures.values() {
            if Some(p.id) == ignore {
                continue;
            }
            if rect.chebyshev_distance(&p.footprint) < 2 {
                return Err(DefectError::Clearance(rect, p.id));
            }
        }
        Ok(())
    }

    // ---- puncture lifecycle ---------------------------------------------

    /// Cut a hole. The interior qubits are measured out in the per-segment
    /// basis with every outcome repaired to +1, so a fresh puncture holds
    /// vacuum: both its detection loops sit at +1.
    pub fn create_puncture(
        &mut self,
        rect: CellRect,
        ty: PunctureType,
        rng: &mut impl Rng,
    ) -> Result<PunctureId, DefectError> {
        if ty == PunctureType::Mixed && rect.height * rect.width < 2 {
            return Err(DefectError::MixedTooSmall);
        }
        self.validate_footprint(rect, None)?;
        let map = self.dead_map(ty, rect);
        for (&q, &basis) in &map {
            let op = match basis {
                MeasBasis::Z => PauliOperator::single_z(self.geometry.n_qubits(), q),
                MeasBasis::X => PauliOperator::single_x(self.geometry.n_qubits(), q),
            };
            self.state.measure_expect(&op, 1, rng)?;
        }
        let (dead_vertices, dead_cells) = self.dead_sites(rect, &map);
        let id = PunctureId(self.next_id);
        self.next_id += 1;
        self.punctures.insert(
            id.0,
            Puncture {
                id,
                ty,
                footprint: rect,
                orientation_quarter_turns: 0,
                removed_qubits: map,
                dead_vertices,
                dead_cells,
            },
        );
        self.log.push(LogEvent::Created { id, ty, footprint: rect });
        Ok(id)
    }

    /// Heal a hole: re-measure the disabled vertex and plaquette operators,
    /// repairing each to +1. A puncture created and immediately removed
    /// leaves the state exactly as it was.
    pub fn remove_puncture(
        &mut self,
        id: PunctureId,
        rng: &mut impl Rng,
    ) -> Result<(), DefectError> {
        let p = self.puncture(id)?.clone();
        let nothing = (BTreeSet::new(), BTreeSet::new());
        let (vertices, cells) =
            self.touching_sites(p.removed_qubits.keys().copied(), &nothing);
        self.revive_sites(&vertices, &cells, rng)?;
        self.punctures.remove(&id.0);
        self.log.push(LogEvent::Removed { id });
        Ok(())
    }

    /// Translate a hole by one cell, extend-then-contract.
    ///
    /// The hole first grows to the union of the old and new footprints so
    /// that old and new interiors share one dead region — in particular a
    /// wall between them that the smaller holes would freeze in Z becomes
    /// X-frozen interior, which is what lets m-type content flow across.
    /// Only then are the contracted hole's walls rebuilt in their final
    /// bases and the vacated operators at the rear re-measured back to +1.
    /// Any string endpoint parked in the hole therefore always has a
    /// representative terminating inside the surviving dead region, and no
    /// revival can collapse it.
    pub fn move_puncture(
        &mut self,
        id: PunctureId,
        dir: Dir,
        rng: &mut impl Rng,
    ) -> Result<(), DefectError> {
        let p = self.puncture(id)?.clone();
        let new_rect = p.footprint.translated(dir).ok_or(DefectError::OutOfBulk(p.footprint))?;
        self.validate_footprint(new_rect, Some(id))?;
        let union_rect = p.footprint.bounding(&new_rect);
        self.validate_footprint(union_rect, Some(id))?;

        let n = self.geometry.n_qubits();
        let freeze = |state: &mut StabilizerTableau, q: usize, basis: MeasBasis, rng: &mut _| {
            let op = match basis {
                MeasBasis::Z => PauliOperator::single_z(n, q),
                MeasBasis::X => PauliOperator::single_x(n, q),
            };
            state.measure_expect(&op, 1, rng)
        };

        // extend: freeze the union hole's dead set (re-measuring any qubit
        // whose basis differs from its current frozen one)
        let old_map = &p.removed_qubits;
        let union_map = self.dead_map(p.ty, union_rect);
        for (&q, &basis) in &union_map {
            if old_map.get(&q) != Some(&basis) {
                freeze(&mut self.state, q, basis, rng)?;
            }
        }
        // contract: rebuild the walls of the destination hole
        let new_map = self.dead_map(p.ty, new_rect);
        for (&q, &basis) in &new_map {
            if union_map.get(&q) != Some(&basis) {
                freeze(&mut self.state, q, basis, rng)?;
            }
        }
        // revive the rear: every site touching a frozen qubit of the move,
        // except those dead for the destination hole
        let mut merged = union_map;
        merged.extend(&new_map);
        let (new_v, new_c) = self.dead_sites(new_rect, &new_map);
        let exclude = (new_v.clone(), new_c.clone());
        let (vertices, cells) = self.touching_sites(merged.keys().copied(), &exclude);
        self.revive_sites(&vertices, &cells, rng)?;
        let entry = self.punctures.get_mut(&id.0).unwrap();
        entry.footprint = new_rect;
        entry.removed_qubits = new_map;
        entry.dead_vertices = new_v;
        entry.dead_cells = new_c;
        self.log.push(LogEvent::Moved { id, dir });
        Ok(())
    }

    /// Check a whole path of single-cell moves for bounds and clearance
    /// before touching the state.
    pub fn validate_path(&self, id: PunctureId, path: &[Dir]) -> Result<(), DefectError> {
        let p = self.puncture(id)?;
        let mut rect = p.footprint;
        for &dir in path {
            rect = rect.translated(dir).ok_or(DefectError::OutOfBulk(rect))?;
            self.validate_footprint(rect, Some(id))?;
        }
        Ok(())
    }

    /// Drive a hole along a path of single-cell moves.
    pub fn move_along(
        &mut self,
        id: PunctureId,
        path: &[Dir],
        rng: &mut impl Rng,
    ) -> Result<(), DefectError> {
        self.validate_path(id, path)?;
        for &dir in path {
            self.move_puncture(id, dir, rng)?;
        }
        Ok(())
    }

    // ---- strings and loops ----------------------------------------------

    /// Build a string operator along an explicit path and check both
    /// endpoints against the condensation rules.
    pub fn string_operator(
        &self,
        kind: AnyonKind,
        path: &StringPath,
        endpoints: (Endpoint, Endpoint),
    ) -> Result<PauliOperator, DefectError> {
        let edges = match (kind, path) {
            (AnyonKind::E, StringPath::Primal(vertices)) => {
                let mut edges = Vec::new();
                for (i, pair) in vertices.windows(2).enumerate() {
                    edges.push(
                        vertex_edge(pair[0], pair[1]).ok_or(DefectError::DisconnectedPath(i))?,
                    );
                }
                let ends = [(endpoints.0, vertices.first()), (endpoints.1, vertices.last())];
                for (end, v) in ends.iter().filter_map(|(e, v)| v.map(|v| (*e, *v))) {
                    self.check_e_endpoint(end, v)?;
                }
                edges
            }
            (AnyonKind::M, StringPath::Dual(cells)) => {
                let mut edges = Vec::new();
                for (i, pair) in cells.windows(2).enumerate() {
                    edges.push(
                        cell_shared_edge(pair[0], pair[1])
                            .ok_or(DefectError::DisconnectedPath(i))?,
                    );
                }
                // an outer-boundary endpoint adds the edge crossed on entry
                let ends = [(endpoints.0, cells.first()), (endpoints.1, cells.last())];
                for (end, cell) in ends.iter().filter_map(|(e, c)| c.map(|c| (*e, *c))) {
                    if let Some(extra) = self.check_m_endpoint(end, cell)? {
                        edges.push(extra);
                    }
                }
                edges
            }
            _ => return Err(DefectError::CondensationMismatch),
        };
        let mut qubits = Vec::with_capacity(edges.len());
        for e in edges {
            let q = self.geometry.qubit(e).ok_or(DefectError::MissingEdge(e))?;
            if self.removed_qubit(q) {
                return Err(DefectError::StringCrossesPuncture(e));
            }
            qubits.push(q);
        }
        let n = self.geometry.n_qubits();
        Ok(match kind {
            AnyonKind::E => PauliOperator::z_string(n, &qubits),
            AnyonKind::M => PauliOperator::x_string(n, &qubits),
        })
    }

    fn check_e_endpoint(&self, end: Endpoint, v: Vertex) -> Result<(), DefectError> {
        match end {
            Endpoint::Bulk => Ok(()),
            Endpoint::OuterSide(side) => {
                if self.geometry.boundary().condenses_e(side) && !self.geometry.has_vertex_op(v) {
                    Ok(())
                } else {
                    Err(DefectError::CondensationMismatch)
                }
            }
            Endpoint::Puncture(id) => {
                let p = self.puncture(id)?;
                if p.condenses(AnyonKind::E) && p.dead_vertices.contains(&v) {
                    Ok(())
                } else {
                    Err(DefectError::CondensationMismatch)
                }
            }
        }
    }

    /// For m-strings the endpoint cell must be charge-absorbing; an outer
    /// endpoint also returns the boundary edge the string crosses to leave.
    fn check_m_endpoint(&self, end: Endpoint, cell: Cell) -> Result<Option<Edge>, DefectError> {
        let (rows, cols) = self.geometry.cell_dims();
        match end {
            Endpoint::Bulk => Ok(None),
            Endpoint::OuterSide(side) => {
                if !self.geometry.boundary().condenses_m(side) {
                    return Err(DefectError::CondensationMismatch);
                }
                let edge = match side {
                    Side::Top if cell.r == 0 => Edge::horizontal(0, cell.c),
                    Side::Bottom if cell.r == rows - 1 => Edge::horizontal(rows, cell.c),
                    Side::Left if cell.c == 0 => Edge::vertical(cell.r, 0),
                    Side::Right if cell.c == cols - 1 => Edge::vertical(cell.r, cols),
                    _ => return Err(DefectError::CondensationMismatch),
                };
                Ok(Some(edge))
            }
            Endpoint::Puncture(id) => {
                let p = self.puncture(id)?;
                if p.condenses(AnyonKind::M) && p.dead_cells.contains(&cell) {
                    Ok(None)
                } else {
                    Err(DefectError::CondensationMismatch)
                }
            }
        }
    }

    /// Closed charge-detection loop around a cell region.
    ///
    /// `DetectE` is the X-product over edges leaving the region's vertex
    /// span (the product of the enclosed vertex operators); `DetectM` is the
    /// Z-product over the region's cell boundary (the product of the
    /// enclosed plaquettes).
    pub fn loop_operator(
        &self,
        kind: LoopKind,
        region: CellRect,
    ) -> Result<PauliOperator, DefectError> {
        let g = &self.geometry;
        let (rows, cols) = g.cell_dims();
        if region.r + region.height > rows || region.c + region.width > cols {
            return Err(DefectError::RegionOutOfRange(region));
        }
        for p in self.punctures.values() {
            let touches = region.chebyshev_distance(&p.footprint) == 0;
            let contains = p.footprint.cells().all(|c| region.contains(c));
            if touches && !contains {
                return Err(DefectError::RegionSplitsPuncture(p.id));
            }
        }
        let in_span = |v: Vertex| {
            (region.r..=region.r + region.height).contains(&v.r)
                && (region.c..=region.c + region.width).contains(&v.c)
        };
        let mut qubits = Vec::new();
        for e in g.edges() {
            let take = match kind {
                LoopKind::DetectE => {
                    let [a, b] = edge_endpoints(e);
                    in_span(a) != in_span(b)
                }
                LoopKind::DetectM => {
                    edge_faces(e).iter().filter(|&&c| region.contains(c)).count() == 1
                }
            };
            if take {
                let q = g.qubit(e).unwrap();
                if self.removed_qubit(q) {
                    return Err(DefectError::LoopCrossesPuncture(e));
                }
                qubits.push(q);
            }
        }
        Ok(match kind {
            LoopKind::DetectE => PauliOperator::x_string(g.n_qubits(), &qubits),
            LoopKind::DetectM => PauliOperator::z_string(g.n_qubits(), &qubits),
        })
    }

    /// The e-detection (X-type) loop one cell out from a puncture.
    pub fn x_detection_loop(&self, id: PunctureId) -> Result<PauliOperator, DefectError> {
        let p = self.puncture(id)?;
        self.loop_operator(LoopKind::DetectE, p.footprint.ring())
    }

    /// The m-detection (Z-type) loop one cell out from a puncture.
    pub fn z_detection_loop(&self, id: PunctureId) -> Result<PauliOperator, DefectError> {
        let p = self.puncture(id)?;
        self.loop_operator(LoopKind::DetectM, p.footprint.ring())
    }

    /// Read the charge content of a puncture from its two detection loops:
    /// (+,+) → vacuum, (−,+) → e, (+,−) → m, (−,−) → ε; any zero means the
    /// content is in superposition with the rest of the state.
    pub fn enclosed_charge(&self, id: PunctureId) -> Result<Charge, DefectError> {
        let x_loop = self.x_detection_loop(id)?;
        let z_loop = self.z_detection_loop(id)?;
        Ok(match (self.state.expectation(&x_loop), self.state.expectation(&z_loop)) {
            (1, 1) => Charge::Vacuum,
            (-1, 1) => Charge::E,
            (1, -1) => Charge::M,
            (-1, -1) => Charge::Epsilon,
            _ => Charge::Superposed,
        })
    }

    /// Pass one anyon from an outer boundary into a puncture by applying
    /// the corresponding string operator; the matching detection loop
    /// flips sign.
    pub fn populate(
        &mut self,
        id: PunctureId,
        kind: AnyonKind,
        from: Side,
    ) -> Result<(), DefectError> {
        let op = self.boundary_string(id, kind, from)?;
        self.state.apply_pauli(&op);
        let edges = op.support().iter().map(|&q| self.geometry.edge_of(q)).collect();
        self.log.push(LogEvent::StringApplied { kind, edges });
        Ok(())
    }

    /// Deterministic string route from an outer side to a puncture.
    pub fn boundary_string(
        &self,
        id: PunctureId,
        kind: AnyonKind,
        from: Side,
    ) -> Result<PauliOperator, DefectError> {
        let p = self.puncture(id)?.clone();
        if !p.condenses(kind) {
            return Err(DefectError::CondensationMismatch);
        }
        let rect = p.footprint;
        let (rows, cols) = self.geometry.cell_dims();
        match kind {
            AnyonKind::E => {
                // terminate on the hole's north rough segment
                let target = Vertex { r: rect.r, c: rect.c };
                let path: Vec<Vertex> = match from {
                    Side::Top => (0..=target.r).map(|r| Vertex { r, c: target.c }).collect(),
                    Side::Bottom => {
                        // up the column just east of the hole, then one step
                        // west onto the north-east dead corner
                        let col = rect.c + rect.width + 1;
                        let mut path: Vec<Vertex> =
                            (rect.r..=rows).rev().map(|r| Vertex { r, c: col }).collect();
                        path.push(Vertex { r: rect.r, c: col - 1 });
                        path
                    }
                    _ => return Err(DefectError::NoRoute),
                };
                self.string_operator(
                    kind,
                    &StringPath::Primal(path),
                    (Endpoint::OuterSide(from), Endpoint::Puncture(id)),
                )
            }
            AnyonKind::M => {
                // enter through the hole's west smooth segment
                let row = rect.r;
                let path: Vec<Cell> = match from {
                    Side::Left => (0..=rect.c).map(|c| Cell { r: row, c }).collect(),
                    Side::Right => {
                        // around beneath the hole; the east side is rough and
                        // cannot condense m
                        let below = rect.r + rect.height;
                        let mut path: Vec<Cell> =
                            (rect.c..cols).rev().map(|c| Cell { r: below, c }).collect();
                        path.push(Cell { r: below - 1, c: rect.c });
                        path
                    }
                    _ => return Err(DefectError::NoRoute),
                };
                self.string_operator(
                    kind,
                    &StringPath::Dual(path),
                    (Endpoint::OuterSide(from), Endpoint::Puncture(id)),
                )
            }
        }
    }

    /// Measure a detection loop (charge projection), logging the outcome.
    pub fn measure_loop(
        &mut self,
        kind: LoopKind,
        region: CellRect,
        rng: &mut impl Rng,
    ) -> Result<i8, DefectError> {
        let op = self.loop_operator(kind, region)?;
        let result = self.state.measure(&op, rng);
        self.log.push(LogEvent::LoopMeasured { kind, region, outcome: result.outcome });
        Ok(result.outcome)
    }
}

fn edge_endpoints(e: Edge) -> [Vertex; 2] {
    match e.kind {
        crate::lattice::EdgeKind::Horizontal => {
            [Vertex { r: e.r, c: e.c }, Vertex { r: e.r, c: e.c + 1 }]
        }
        crate::lattice::EdgeKind::Vertical => {
            [Vertex { r: e.r, c: e.c }, Vertex { r: e.r + 1, c: e.c }]
        }
    }
}

/// The ≤2 in-grid cells an edge borders.
fn edge_faces(e: Edge) -> Vec<Cell> {
    let mut out = Vec::with_capacity(2);
    match e.kind {
        crate::lattice::EdgeKind::Horizontal => {
            if e.r > 0 {
                out.push(Cell { r: e.r - 1, c: e.c });
            }
            out.push(Cell { r: e.r, c: e.c });
        }
        crate::lattice::EdgeKind::Vertical => {
            if e.c > 0 {
                out.push(Cell { r: e.r, c: e.c - 1 });
            }
            out.push(Cell { r: e.r, c: e.c });
        }
    }
    out
}

/// Edge joining two adjacent vertices.
fn vertex_edge(a: Vertex, b: Vertex) -> Option<Edge> {
    if a.r == b.r && a.c.abs_diff(b.c) == 1 {
        Some(Edge::horizontal(a.r, a.c.min(b.c)))
    } else if a.c == b.c && a.r.abs_diff(b.r) == 1 {
        Some(Edge::vertical(a.r.min(b.r), a.c))
    } else {
        None
    }
}

/// Edge shared by two adjacent cells.
fn cell_shared_edge(a: Cell, b: Cell) -> Option<Edge> {
    if a.r == b.r && a.c.abs_diff(b.c) == 1 {
        Some(Edge::vertical(a.r, a.c.max(b.c)))
    } else if a.c == b.c && a.r.abs_diff(b.r) == 1 {
        Some(Edge::horizontal(a.r.max(b.r), a.c))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_geometry, BoundarySpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    fn rrss() -> BoundarySpec {
        BoundarySpec {
            top: BoundaryType::Rough,
            bottom: BoundaryType::Rough,
            left: BoundaryType::Smooth,
            right: BoundaryType::Smooth,
        }
    }

    /// 8×8 patch with rough top/bottom and smooth left/right: room for one
    /// mixed hole plus strings from both boundary flavors.
    fn sim_8x8(seed: u64) -> Simulation {
        let g = build_geometry(8, 8, rrss()).unwrap();
        Simulation::new(g, &mut rng(seed))
    }

    fn mixed_rect() -> CellRect {
        CellRect::new(3, 3, 2, 1)
    }

    #[test]
    fn fresh_rough_puncture_holds_vacuum() {
        let mut sim = sim_8x8(1);
        let id = sim
            .create_puncture(CellRect::new(3, 3, 1, 1), PunctureType::Rough, &mut rng(2))
            .unwrap();
        let x_loop = sim.x_detection_loop(id).unwrap();
        assert_eq!(sim.expectation(&x_loop), 1);
        assert_eq!(sim.enclosed_charge(id).unwrap(), Charge::Vacuum);
    }

    #[test]
    fn fresh_smooth_puncture_holds_vacuum() {
        let mut sim = sim_8x8(1);
        let id = sim
            .create_puncture(CellRect::new(3, 3, 1, 1), PunctureType::Smooth, &mut rng(2))
            .unwrap();
        let z_loop = sim.z_detection_loop(id).unwrap();
        assert_eq!(sim.expectation(&z_loop), 1);
        assert_eq!(sim.enclosed_charge(id).unwrap(), Charge::Vacuum);
    }

    #[test]
    fn fresh_mixed_puncture_both_loops_plus_one() {
        let mut sim = sim_8x8(1);
        let id = sim.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
        assert_eq!(sim.expectation(&sim.x_detection_loop(id).unwrap()), 1);
        assert_eq!(sim.expectation(&sim.z_detection_loop(id).unwrap()), 1);
        let p = sim.puncture(id).unwrap();
        assert_eq!(p.type_change_count(), 2);
    }

    #[test]
    fn create_then_remove_restores_state_exactly() {
        // run the simulator both ways on a 5×5 patch
        let g = build_geometry(5, 5, rrss()).unwrap();
        let before = Simulation::new(g.clone(), &mut rng(7));
        for ty in [PunctureType::Rough, PunctureType::Smooth, PunctureType::Mixed] {
            let mut sim = Simulation::new(g.clone(), &mut rng(7));
            let rect = if ty == PunctureType::Mixed {
                CellRect::new(1, 1, 2, 1)
            } else {
                CellRect::new(2, 1, 1, 1)
            };
            let id = sim.create_puncture(rect, ty, &mut rng(13)).unwrap();
            sim.remove_puncture(id, &mut rng(17)).unwrap();
            assert!(sim.states_equal(&before).unwrap(), "{ty:?}");
        }
    }

    #[test]
    fn creation_rejects_boundary_contact_and_crowding() {
        let mut sim = sim_8x8(1);
        assert!(matches!(
            sim.create_puncture(CellRect::new(0, 3, 1, 1), PunctureType::Rough, &mut rng(1)),
            Err(DefectError::OutOfBulk(_))
        ));
        let _ =
            sim.create_puncture(CellRect::new(3, 3, 1, 1), PunctureType::Rough, &mut rng(1)).unwrap();
        assert!(matches!(
            sim.create_puncture(CellRect::new(3, 4, 1, 1), PunctureType::Rough, &mut rng(1)),
            Err(DefectError::Clearance(..))
        ));
        assert!(matches!(
            sim.create_puncture(CellRect::new(5, 5, 1, 1), PunctureType::Mixed, &mut rng(1)),
            Err(DefectError::MixedTooSmall)
        ));
    }

    #[test]
    fn rough_to_rough_string_commutes_with_all_generators() {
        let sim = sim_8x8(1);
        let path: Vec<Vertex> =
            (0..=sim.geometry().cell_dims().0).map(|r| Vertex { r, c: 2 }).collect();
        let op = sim
            .string_operator(
                AnyonKind::E,
                &StringPath::Primal(path),
                (Endpoint::OuterSide(Side::Top), Endpoint::OuterSide(Side::Bottom)),
            )
            .unwrap();
        for gen in sim.geometry().stabilizer_generators() {
            assert!(gen.commutes_with(&op));
        }
    }

    #[test]
    fn bulk_string_excites_its_endpoints() {
        let sim = sim_8x8(1);
        let path = vec![Vertex { r: 2, c: 2 }, Vertex { r: 3, c: 2 }, Vertex { r: 3, c: 3 }];
        let op = sim
            .string_operator(
                AnyonKind::E,
                &StringPath::Primal(path),
                (Endpoint::Bulk, Endpoint::Bulk),
            )
            .unwrap();
        let mut flipped = Vec::new();
        for v in sim.geometry().vertex_sites() {
            if !sim.geometry().vertex_stabilizer(v).unwrap().commutes_with(&op) {
                flipped.push(v);
            }
        }
        assert_eq!(flipped, vec![Vertex { r: 2, c: 2 }, Vertex { r: 3, c: 3 }]);
    }

    #[test]
    fn string_endpoint_condensation_is_enforced() {
        let sim = sim_8x8(1);
        // e-string cannot terminate on a smooth outer side
        let path = vec![Vertex { r: 3, c: 0 }, Vertex { r: 3, c: 1 }];
        assert!(matches!(
            sim.string_operator(
                AnyonKind::E,
                &StringPath::Primal(path),
                (Endpoint::OuterSide(Side::Left), Endpoint::Bulk)
            ),
            Err(DefectError::CondensationMismatch)
        ));
    }

    #[test]
    fn m_string_into_mixed_smooth_segment() {
        let mut sim = sim_8x8(1);
        let id = sim.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
        let op = sim.boundary_string(id, AnyonKind::M, Side::Left).unwrap();
        // crosses the Z-detection loop once, never the X-detection loop
        assert!(!op.commutes_with(&sim.z_detection_loop(id).unwrap()));
        assert!(op.commutes_with(&sim.x_detection_loop(id).unwrap()));
        // away from its endpoints the string disturbs nothing: every
        // surviving vertex and plaquette site operator commutes
        let p = sim.puncture(id).unwrap().clone();
        for v in sim.geometry().vertex_sites() {
            if !p.dead_vertices.contains(&v) {
                assert!(sim.geometry().vertex_stabilizer(v).unwrap().commutes_with(&op));
            }
        }
        for c in sim.geometry().plaquette_sites() {
            if !p.dead_cells.contains(&c) {
                assert!(sim.geometry().plaquette_stabilizer(c).unwrap().commutes_with(&op), "{c:?}");
            }
        }
    }

    #[test]
    fn detection_loops_commute_with_each_other() {
        let mut sim = sim_8x8(1);
        let id = sim.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
        let x_loop = sim.x_detection_loop(id).unwrap();
        let z_loop = sim.z_detection_loop(id).unwrap();
        assert!(x_loop.commutes_with(&z_loop));
        // disjoint supports in fact
        assert_eq!(x_loop.x_mask().and_count(z_loop.z_mask()), 0);
    }

    #[test]
    fn loop_around_empty_region_reads_vacuum() {
        let sim = sim_8x8(1);
        let region = CellRect::new(2, 2, 2, 2);
        let x_loop = sim.loop_operator(LoopKind::DetectE, region).unwrap();
        let z_loop = sim.loop_operator(LoopKind::DetectM, region).unwrap();
        assert_eq!(sim.expectation(&x_loop), 1);
        assert_eq!(sim.expectation(&z_loop), 1);
    }

    #[test]
    fn populate_flips_matching_loop_and_involutes() {
        let mut sim = sim_8x8(1);
        let id = sim.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
        sim.populate(id, AnyonKind::E, Side::Top).unwrap();
        assert_eq!(sim.enclosed_charge(id).unwrap(), Charge::E);
        // same string class again: back to vacuum
        sim.populate(id, AnyonKind::E, Side::Top).unwrap();
        assert_eq!(sim.enclosed_charge(id).unwrap(), Charge::Vacuum);
    }

    #[test]
    fn charge_detection_is_exhaustive_over_the_four_sectors() {
        for (e_count, m_count, want) in [
            (0, 0, Charge::Vacuum),
            (1, 0, Charge::E),
            (0, 1, Charge::M),
            (1, 1, Charge::Epsilon),
        ] {
            let mut sim = sim_8x8(5);
            let id = sim.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
            for _ in 0..e_count {
                sim.populate(id, AnyonKind::E, Side::Top).unwrap();
            }
            for _ in 0..m_count {
                sim.populate(id, AnyonKind::M, Side::Left).unwrap();
            }
            assert_eq!(sim.enclosed_charge(id).unwrap(), want);
        }
    }

    #[test]
    fn populate_requires_condensing_boundaries() {
        let mut sim = sim_8x8(1);
        let id = sim
            .create_puncture(CellRect::new(3, 3, 1, 1), PunctureType::Rough, &mut rng(2))
            .unwrap();
        assert!(matches!(
            sim.populate(id, AnyonKind::M, Side::Left),
            Err(DefectError::CondensationMismatch)
        ));
    }

    #[test]
    fn mutual_statistics_z_loop_sees_one_m() {
        // an X-string in the bulk makes two m excitations; a Z-loop around
        // exactly one of them reads −1, around none +1
        let mut sim = sim_8x8(3);
        let g = sim.geometry().clone();
        // X on the shared edge of cells (3,3)-(3,4): m at those two cells
        let q = g.qubit(Edge::vertical(3, 4)).unwrap();
        let x_string = PauliOperator::single_x(g.n_qubits(), q);
        sim.apply(&x_string);
        let around_one =
            sim.loop_operator(LoopKind::DetectM, CellRect::new(2, 2, 3, 2)).unwrap();
        assert_eq!(sim.expectation(&around_one), -1);
        let around_none =
            sim.loop_operator(LoopKind::DetectM, CellRect::new(5, 5, 2, 2)).unwrap();
        assert_eq!(sim.expectation(&around_none), 1);
        // symplectic form: a closed Z-loop anticommutes with an X-string
        // crossing it an odd number of times
        assert!(!around_one.commutes_with(&x_string));
        assert!(around_none.commutes_with(&x_string));
    }

    #[test]
    fn self_statistics_e_loop_around_e_is_trivial() {
        // two e excitations; transporting one e around the other is the
        // Z-loop around its region, and e is a boson: expectation +1
        let mut sim = sim_8x8(3);
        let g = sim.geometry().clone();
        let q = g.qubit(Edge::vertical(3, 4)).unwrap();
        sim.apply(&PauliOperator::single_z(g.n_qubits(), q));
        let z_loop = sim.loop_operator(LoopKind::DetectM, CellRect::new(2, 2, 3, 3)).unwrap();
        assert_eq!(sim.expectation(&z_loop), 1);
    }

    #[test]
    fn move_one_step_and_back_restores_state() {
        let mut sim = sim_8x8(11);
        let id = sim.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
        let mut twin = sim_8x8(11);
        let twin_id = twin.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
        assert_eq!(id, twin_id);

        sim.move_puncture(id, Dir::East, &mut rng(5)).unwrap();
        assert!(!sim.states_equal(&twin).unwrap());
        sim.move_puncture(id, Dir::West, &mut rng(6)).unwrap();
        assert!(sim.states_equal(&twin).unwrap());
    }

    #[test]
    fn charge_rides_along_with_the_hole() {
        let mut sim = sim_8x8(11);
        let id = sim.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
        sim.populate(id, AnyonKind::E, Side::Top).unwrap();
        assert_eq!(sim.enclosed_charge(id).unwrap(), Charge::E);
        sim.move_along(id, &[Dir::East, Dir::East, Dir::South], &mut rng(5)).unwrap();
        assert_eq!(sim.enclosed_charge(id).unwrap(), Charge::E);
    }

    #[test]
    fn string_endpoint_drags_with_moved_puncture() {
        let mut sim = sim_8x8(11);
        let id = sim
            .create_puncture(CellRect::new(2, 2, 1, 1), PunctureType::Rough, &mut rng(2))
            .unwrap();
        sim.populate(id, AnyonKind::E, Side::Top).unwrap();
        assert_eq!(sim.enclosed_charge(id).unwrap(), Charge::E);
        sim.move_along(id, &[Dir::South, Dir::South, Dir::East], &mut rng(5)).unwrap();
        // new position still holds the e
        assert_eq!(sim.enclosed_charge(id).unwrap(), Charge::E);
        // loop around the vacated position reads vacuum again
        let old_loop =
            sim.loop_operator(LoopKind::DetectE, CellRect::new(1, 1, 2, 2)).unwrap();
        assert_eq!(sim.expectation(&old_loop), 1);
    }

    #[test]
    fn two_move_routes_with_same_endpoints_agree() {
        // east-then-south vs south-then-east between the same start/end
        let mut a = sim_8x8(21);
        let ida = a.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
        a.move_along(ida, &[Dir::East, Dir::South], &mut rng(3)).unwrap();

        let mut b = sim_8x8(21);
        let idb = b.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
        b.move_along(idb, &[Dir::South, Dir::East], &mut rng(4)).unwrap();

        assert!(a.states_equal(&b).unwrap());
    }

    #[test]
    fn path_validation_reports_before_simulating() {
        let mut sim = sim_8x8(1);
        let id = sim.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
        let before = sim.state().clone();
        // marching west off the bulk must fail without touching the state
        let err = sim.move_along(id, &[Dir::West, Dir::West, Dir::West], &mut rng(3));
        assert!(err.is_err());
        assert!(sim.state().states_equal(&before).unwrap());
    }

    #[test]
    fn orientation_never_changes_under_translation() {
        let mut sim = sim_8x8(1);
        let id = sim.create_puncture(mixed_rect(), PunctureType::Mixed, &mut rng(2)).unwrap();
        sim.move_along(id, &[Dir::East, Dir::South, Dir::West, Dir::North], &mut rng(3))
            .unwrap();
        assert_eq!(sim.puncture(id).unwrap().orientation_quarter_turns, 0);
    }
}
