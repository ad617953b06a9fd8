//! Planar-code substrate: a square patch with qubits on edges and a
//! rough/smooth type chosen per side.
//!
//! Conventions, fixed once and used everywhere downstream:
//!
//! - vertex generators are X-type, plaquette generators Z-type;
//! - e anyons live on vertices and move along Z-strings, which terminate on
//!   rough sides; m anyons live on plaquettes, move along X-strings, and
//!   terminate on smooth sides;
//! - a rough side drops the boundary layer of parallel edges, leaving
//!   dangling perpendicular edges whose outer endpoints carry no vertex
//!   operator and whose cells are weight-3 plaquettes; a smooth side keeps
//!   its boundary edges and truncates the vertex operators instead.
//!
//! Sizing: `rows` is the length of a top↔bottom logical string and `cols`
//! of a left↔right one. With rough top/bottom and smooth left/right this
//! reproduces the familiar distance-d patch: `build_geometry(3, 3, ..)`
//! has 13 qubits, 12 independent generators and one logical qubit.
//!
//! Internally the patch lives on a `cell_rows × cell_cols` grid of cells.
//! Vertices sit at integer corners `(r, c)`, horizontal edges connect
//! `(r,c)-(r,c+1)`, vertical edges `(r,c)-(r+1,c)`. Each side type just
//! restricts which candidate edges and operator sites exist.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::PauliOperator;
use crate::tableau::StabilizerTableau;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryType {
    Rough,
    Smooth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

/// Outer boundary type per side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub top: BoundaryType,
    pub bottom: BoundaryType,
    pub left: BoundaryType,
    pub right: BoundaryType,
}

impl BoundarySpec {
    pub fn uniform(t: BoundaryType) -> Self {
        Self { top: t, bottom: t, left: t, right: t }
    }

    pub fn all_rough() -> Self {
        Self::uniform(BoundaryType::Rough)
    }

    pub fn all_smooth() -> Self {
        Self::uniform(BoundaryType::Smooth)
    }

    pub fn side(&self, s: Side) -> BoundaryType {
        match s {
            Side::Top => self.top,
            Side::Bottom => self.bottom,
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    /// All 16 per-side assignments, in a fixed order.
    pub fn all_specs() -> Vec<BoundarySpec> {
        let types = [BoundaryType::Rough, BoundaryType::Smooth];
        let mut out = Vec::with_capacity(16);
        for &top in &types {
            for &bottom in &types {
                for &left in &types {
                    for &right in &types {
                        out.push(BoundarySpec { top, bottom, left, right });
                    }
                }
            }
        }
        out
    }

    pub fn condenses_e(&self, s: Side) -> bool {
        self.side(s) == BoundaryType::Rough
    }

    pub fn condenses_m(&self, s: Side) -> bool {
        self.side(s) == BoundaryType::Smooth
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Horizontal,
    Vertical,
}

/// A lattice edge named by kind and corner coordinates: `Horizontal (r, c)`
/// connects vertices `(r,c)-(r,c+1)`, `Vertical (r, c)` connects
/// `(r,c)-(r+1,c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub kind: EdgeKind,
    pub r: usize,
    pub c: usize,
}

impl Edge {
    pub fn horizontal(r: usize, c: usize) -> Self {
        Self { kind: EdgeKind::Horizontal, r, c }
    }

    pub fn vertical(r: usize, c: usize) -> Self {
        Self { kind: EdgeKind::Vertical, r, c }
    }
}

/// A vertex (corner) site `(r, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub r: usize,
    pub c: usize,
}

/// A cell (face) site; cell `(r, c)` has corners `(r..=r+1, c..=c+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub r: usize,
    pub c: usize,
}

impl Cell {
    pub fn new(r: usize, c: usize) -> Self {
        Self { r, c }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("degenerate dimensions {0}×{1}: both must be at least 2")]
    DegenerateDimensions(usize, usize),
    #[error("no vertex operator at ({0}, {1})")]
    UnknownVertex(usize, usize),
    #[error("no plaquette at cell ({0}, {1})")]
    UnknownCell(usize, usize),
    #[error("generator set unexpectedly dependent at rank {0}")]
    UnexpectedDependence(usize),
}

/// Serializable summary of a geometry: dimensions, boundary spec and the
/// edge ↔ qubit-id bijection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeometryDescription {
    pub rows: usize,
    pub cols: usize,
    pub boundary: BoundarySpec,
    pub cell_rows: usize,
    pub cell_cols: usize,
    pub n_qubits: usize,
    pub n_generators: usize,
    pub logical_qubits: usize,
    pub qubit_index: Vec<(usize, Edge)>,
}

/// An open-boundary planar patch: immutable once built.
#[derive(Debug, Clone)]
pub struct CodeGeometry {
    rows: usize,
    cols: usize,
    boundary: BoundarySpec,
    cell_rows: usize,
    cell_cols: usize,
    // inclusive ranges of vertex rows/cols that carry vertex operators
    op_row_min: usize,
    op_row_max: usize,
    op_col_min: usize,
    op_col_max: usize,
    n_horizontal: usize,
}

/// Build the patch. `rows, cols ≥ 2`; every one of the 16 boundary specs is
/// valid and yields pairwise-commuting, independent generators.
pub fn build_geometry(
    rows: usize,
    cols: usize,
    boundary: BoundarySpec,
) -> Result<CodeGeometry, GeometryError> {
    if rows < 2 || cols < 2 {
        return Err(GeometryError::DegenerateDimensions(rows, cols));
    }
    let rough = |t: BoundaryType| t == BoundaryType::Rough;
    let both_tb_rough = rough(boundary.top) && rough(boundary.bottom);
    let both_lr_rough = rough(boundary.left) && rough(boundary.right);
    // operator-vertex grid size per direction
    let n_r = rows - usize::from(both_tb_rough);
    let n_c = cols - usize::from(both_lr_rough);
    let cell_rows =
        n_r - 1 + usize::from(rough(boundary.top)) + usize::from(rough(boundary.bottom));
    let cell_cols =
        n_c - 1 + usize::from(rough(boundary.left)) + usize::from(rough(boundary.right));
    let op_row_min = usize::from(rough(boundary.top));
    let op_row_max = cell_rows - usize::from(rough(boundary.bottom));
    let op_col_min = usize::from(rough(boundary.left));
    let op_col_max = cell_cols - usize::from(rough(boundary.right));
    debug_assert_eq!(op_row_max - op_row_min + 1, n_r);
    debug_assert_eq!(op_col_max - op_col_min + 1, n_c);
    let n_horizontal = n_r * cell_cols;
    let g = CodeGeometry {
        rows,
        cols,
        boundary,
        cell_rows,
        cell_cols,
        op_row_min,
        op_row_max,
        op_col_min,
        op_col_max,
        n_horizontal,
    };
    // paranoia: the advertised generator list must be independent
    let gens = g.stabilizer_generators();
    let rank = gf2_rank(&gens);
    if rank != gens.len() {
        return Err(GeometryError::UnexpectedDependence(rank));
    }
    Ok(g)
}

impl CodeGeometry {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn boundary(&self) -> &BoundarySpec {
        &self.boundary
    }

    /// Cell grid dimensions (the coordinates punctures and regions use).
    pub fn cell_dims(&self) -> (usize, usize) {
        (self.cell_rows, self.cell_cols)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_horizontal + self.cell_rows * (self.op_col_max - self.op_col_min + 1)
    }

    pub fn edge_exists(&self, e: Edge) -> bool {
        match e.kind {
            EdgeKind::Horizontal => {
                (self.op_row_min..=self.op_row_max).contains(&e.r) && e.c < self.cell_cols
            }
            EdgeKind::Vertical => {
                e.r < self.cell_rows && (self.op_col_min..=self.op_col_max).contains(&e.c)
            }
        }
    }

    /// Edge → qubit id: horizontal edges first (row-major), then vertical.
    pub fn qubit(&self, e: Edge) -> Option<usize> {
        if !self.edge_exists(e) {
            return None;
        }
        Some(match e.kind {
            EdgeKind::Horizontal => (e.r - self.op_row_min) * self.cell_cols + e.c,
            EdgeKind::Vertical => {
                self.n_horizontal
                    + e.r * (self.op_col_max - self.op_col_min + 1)
                    + (e.c - self.op_col_min)
            }
        })
    }

    pub fn edge_of(&self, qubit: usize) -> Edge {
        assert!(qubit < self.n_qubits(), "qubit {qubit} out of range");
        if qubit < self.n_horizontal {
            Edge::horizontal(qubit / self.cell_cols + self.op_row_min, qubit % self.cell_cols)
        } else {
            let v = qubit - self.n_horizontal;
            let width = self.op_col_max - self.op_col_min + 1;
            Edge::vertical(v / width, v % width + self.op_col_min)
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n_qubits()).map(|q| self.edge_of(q))
    }

    pub fn has_vertex_op(&self, v: Vertex) -> bool {
        (self.op_row_min..=self.op_row_max).contains(&v.r)
            && (self.op_col_min..=self.op_col_max).contains(&v.c)
    }

    pub fn has_plaquette(&self, c: Cell) -> bool {
        c.r < self.cell_rows && c.c < self.cell_cols
    }

    pub fn vertex_sites(&self) -> impl Iterator<Item = Vertex> + '_ {
        (self.op_row_min..=self.op_row_max).flat_map(move |r| {
            (self.op_col_min..=self.op_col_max).map(move |c| Vertex { r, c })
        })
    }

    pub fn plaquette_sites(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.cell_rows).flat_map(move |r| (0..self.cell_cols).map(move |c| Cell { r, c }))
    }

    /// The ≤4 existing edges incident to a vertex.
    pub fn incident_edges(&self, v: Vertex) -> Vec<Edge> {
        let mut out = Vec::with_capacity(4);
        if v.r > 0 {
            out.push(Edge::vertical(v.r - 1, v.c));
        }
        out.push(Edge::vertical(v.r, v.c));
        if v.c > 0 {
            out.push(Edge::horizontal(v.r, v.c - 1));
        }
        out.push(Edge::horizontal(v.r, v.c));
        out.retain(|&e| self.edge_exists(e));
        out
    }

    /// The ≤4 existing edges bounding a cell.
    pub fn cell_edges(&self, c: Cell) -> Vec<Edge> {
        let mut out = vec![
            Edge::horizontal(c.r, c.c),
            Edge::horizontal(c.r + 1, c.c),
            Edge::vertical(c.r, c.c),
            Edge::vertical(c.r, c.c + 1),
        ];
        out.retain(|&e| self.edge_exists(e));
        out
    }

    /// X-product over the edges incident to a vertex site.
    pub fn vertex_stabilizer(&self, v: Vertex) -> Result<PauliOperator, GeometryError> {
        if !self.has_vertex_op(v) {
            return Err(GeometryError::UnknownVertex(v.r, v.c));
        }
        let qubits: Vec<usize> =
            self.incident_edges(v).iter().map(|&e| self.qubit(e).unwrap()).collect();
        Ok(PauliOperator::x_string(self.n_qubits(), &qubits))
    }

    /// Z-product over the edges bounding a cell.
    pub fn plaquette_stabilizer(&self, c: Cell) -> Result<PauliOperator, GeometryError> {
        if !self.has_plaquette(c) {
            return Err(GeometryError::UnknownCell(c.r, c.c));
        }
        let qubits: Vec<usize> =
            self.cell_edges(c).iter().map(|&e| self.qubit(e).unwrap()).collect();
        Ok(PauliOperator::z_string(self.n_qubits(), &qubits))
    }

    /// Independent generator list. When every side is smooth the product of
    /// all vertex operators is the identity, so the last vertex operator
    /// (row-major) is omitted; all-rough likewise omits the last plaquette.
    pub fn stabilizer_generators(&self) -> Vec<PauliOperator> {
        let all_smooth = self.boundary == BoundarySpec::all_smooth();
        let all_rough = self.boundary == BoundarySpec::all_rough();
        let mut gens: Vec<PauliOperator> =
            self.vertex_sites().map(|v| self.vertex_stabilizer(v).unwrap()).collect();
        if all_smooth {
            gens.pop();
        }
        let mut plaquettes: Vec<PauliOperator> =
            self.plaquette_sites().map(|c| self.plaquette_stabilizer(c).unwrap()).collect();
        if all_rough {
            plaquettes.pop();
        }
        gens.extend(plaquettes);
        gens
    }

    /// Number of encoded logical qubits.
    pub fn logical_qubits(&self) -> usize {
        self.n_qubits() - self.stabilizer_generators().len()
    }

    /// Canonical logical pair (Z̄, X̄) for the two specs that encode one
    /// qubit: rough on one opposite side pair and smooth on the other.
    /// Z̄ is the Z-string joining the rough sides at the lowest qubit
    /// coordinates; X̄ the dual X-string joining the smooth sides.
    pub fn logical_pair(&self) -> Option<(PauliOperator, PauliOperator)> {
        if self.logical_qubits() != 1 {
            return None;
        }
        let rough = |t: BoundaryType| t == BoundaryType::Rough;
        let n = self.n_qubits();
        if rough(self.boundary.top) && rough(self.boundary.bottom) {
            let col = self.op_col_min;
            let z_bar: Vec<usize> =
                (0..self.cell_rows).map(|r| self.qubit(Edge::vertical(r, col)).unwrap()).collect();
            let row = 0; // dual path through the top cell row
            let x_bar: Vec<usize> = (self.op_col_min..=self.op_col_max)
                .map(|c| self.qubit(Edge::vertical(row, c)).unwrap())
                .collect();
            Some((PauliOperator::z_string(n, &z_bar), PauliOperator::x_string(n, &x_bar)))
        } else if rough(self.boundary.left) && rough(self.boundary.right) {
            let row = self.op_row_min;
            let z_bar: Vec<usize> = (0..self.cell_cols)
                .map(|c| self.qubit(Edge::horizontal(row, c)).unwrap())
                .collect();
            let x_bar: Vec<usize> = (self.op_row_min..=self.op_row_max)
                .map(|r| self.qubit(Edge::horizontal(r, 0)).unwrap())
                .collect();
            Some((PauliOperator::z_string(n, &z_bar), PauliOperator::x_string(n, &x_bar)))
        } else {
            None
        }
    }

    /// Deterministic reference ground state: start from |0…0⟩ (every
    /// single-qubit Z at +1, hence all plaquettes at +1), measure each
    /// vertex operator and repair any −1 outcome. The repair makes the
    /// result independent of the random draws, and any leftover logical
    /// freedom comes out as the +1 eigenstate of the canonical Z̄ string,
    /// which survives from the initial all-Z group.
    pub fn ground_state(&self, rng: &mut impl Rng) -> StabilizerTableau {
        let mut state = StabilizerTableau::zero_state(self.n_qubits());
        for v in self.vertex_sites() {
            let op = self.vertex_stabilizer(v).unwrap();
            state
                .measure_expect(&op, 1, rng)
                .expect("vertex operator forced measurement cannot be obstructed on |0..0>");
        }
        debug_assert!(self
            .plaquette_sites()
            .all(|c| state.expectation(&self.plaquette_stabilizer(c).unwrap()) == 1));
        state
    }

    pub fn description(&self) -> GeometryDescription {
        GeometryDescription {
            rows: self.rows,
            cols: self.cols,
            boundary: self.boundary,
            cell_rows: self.cell_rows,
            cell_cols: self.cell_cols,
            n_qubits: self.n_qubits(),
            n_generators: self.stabilizer_generators().len(),
            logical_qubits: self.logical_qubits(),
            qubit_index: (0..self.n_qubits()).map(|q| (q, self.edge_of(q))).collect(),
        }
    }
}

/// GF(2) rank of the (x|z) patterns; used as a build-time self check.
fn gf2_rank(ops: &[PauliOperator]) -> usize {
    let mut rows: Vec<(crate::pauli::BitMask, crate::pauli::BitMask)> =
        ops.iter().map(|p| (p.x_mask().clone(), p.z_mask().clone())).collect();
    let n = ops.first().map_or(0, |p| p.n_qubits());
    let mut rank = 0;
    for col in 0..2 * n {
        let bit = |row: &(crate::pauli::BitMask, crate::pauli::BitMask)| {
            if col < n {
                row.0.get(col)
            } else {
                row.1.get(col - n)
            }
        };
        let Some(pivot) = (rank..rows.len()).find(|&r| bit(&rows[r])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if bit(row) {
                row.0.xor_assign(&pivot_row.0);
                row.1.xor_assign(&pivot_row.1);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
