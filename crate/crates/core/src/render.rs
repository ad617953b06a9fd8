//! ASCII and SVG lattice diagrams.
//!
//! Visual language: red solid strokes are Z-type / e-side objects (rough
//! segments, e-strings, m-detection loops), blue dashed strokes are
//! X-type / m-side objects (smooth segments, m-strings, e-detection
//! loops). Output is a pure function of the scene, byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::defects::{CellRect, LogEvent, MeasBasis, PunctureType, Simulation};
use crate::encoding::PunctureQuartet;
use crate::experiments::{shot_rng, ExperimentConfig, ExperimentError};
use crate::lattice::{Edge, EdgeKind};
use crate::pauli::PauliOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Snapshot {
    /// The bare patch, no defects.
    Empty,
    /// Four fresh mixed punctures at their anchors.
    Quartet,
    /// After pair preparation: the quartet with its string pairs drawn.
    Prepared,
    /// After braiding p1 around p3: loops around p1 and p3 plus the
    /// transport trail.
    Braided,
    /// After the regrouped fusion measurement: the two fusion loops.
    Fused,
}

impl std::str::FromStr for Snapshot {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "empty" => Ok(Self::Empty),
            "quartet" => Ok(Self::Quartet),
            "prepared" => Ok(Self::Prepared),
            "braided" => Ok(Self::Braided),
            "fused" => Ok(Self::Fused),
            other => Err(format!(
                "unknown snapshot {other:?} (expected empty|quartet|prepared|braided|fused)"
            )),
        }
    }
}

/// What an overlay marks, in increasing drawing precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OverlayKind {
    /// X-type detection loop (reads e-parity): blue.
    ELoop,
    /// Z-type detection loop (reads m-parity): red.
    MLoop,
    /// X-string: blue.
    MString,
    /// Z-string: red.
    EString,
}

#[derive(Debug, Clone)]
pub struct Scene {
    pub cell_rows: usize,
    pub cell_cols: usize,
    /// Every existing edge with its frozen basis, if any.
    pub edges: Vec<(Edge, Option<MeasBasis>)>,
    pub punctures: Vec<(PunctureType, CellRect)>,
    pub overlays: Vec<(OverlayKind, Vec<Edge>)>,
    /// Cells a moving hole passed through.
    pub trail: Vec<CellRect>,
}

impl Scene {
    pub fn from_simulation(sim: &Simulation) -> Self {
        let g = sim.geometry();
        let frozen: BTreeMap<usize, MeasBasis> = sim
            .punctures()
            .flat_map(|p| p.removed_qubits.iter().map(|(&q, &b)| (q, b)))
            .collect();
        let edges = g
            .edges()
            .map(|e| (e, frozen.get(&g.qubit(e).unwrap()).copied()))
            .collect();
        let (cell_rows, cell_cols) = g.cell_dims();
        Self {
            cell_rows,
            cell_cols,
            edges,
            punctures: sim.punctures().map(|p| (p.ty, p.footprint)).collect(),
            overlays: Vec::new(),
            trail: Vec::new(),
        }
    }

    pub fn overlay_operator(&mut self, sim: &Simulation, kind: OverlayKind, op: &PauliOperator) {
        let edges = op.support().iter().map(|&q| sim.geometry().edge_of(q)).collect();
        self.overlays.push((kind, edges));
    }

    /// Reconstruct hole footprints visited during moves from the log.
    pub fn trail_from_log(&mut self, sim: &Simulation, anchors: &[CellRect]) {
        let mut positions: BTreeMap<usize, CellRect> =
            anchors.iter().enumerate().map(|(i, &r)| (i, r)).collect();
        for event in sim.log() {
            if let LogEvent::Moved { id, dir } = event {
                if let Some(rect) = positions.get_mut(&id.0) {
                    if let Some(next) = rect.translated(*dir) {
                        *rect = next;
                        self.trail.push(next);
                    }
                }
            }
        }
    }
}

/// Rebuild the state pipeline for a snapshot and describe it as a scene.
pub fn snapshot_scene(
    config: &ExperimentConfig,
    snapshot: Snapshot,
) -> Result<Scene, ExperimentError> {
    use rand::SeedableRng;
    let g = config.arena.geometry.build()?;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(config.seed);
    let mut sim = Simulation::new(g, &mut rng);
    if snapshot == Snapshot::Empty {
        return Ok(Scene::from_simulation(&sim));
    }
    let quartet =
        PunctureQuartet::create(&mut sim, &config.arena.anchors.layout(), &mut rng)?;
    if snapshot == Snapshot::Quartet {
        let mut scene = Scene::from_simulation(&sim);
        add_pair_strings(&mut scene, &sim, &quartet);
        return Ok(scene);
    }
    quartet.prepare_quartet(&mut sim, (config.signs[0], config.signs[1]), &mut rng)?;
    match snapshot {
        Snapshot::Prepared => {
            let mut scene = Scene::from_simulation(&sim);
            add_pair_strings(&mut scene, &sim, &quartet);
            Ok(scene)
        }
        Snapshot::Braided => {
            quartet.braid(&mut sim, 1, 3, &mut shot_rng(config.seed, 1))?;
            let mut scene = Scene::from_simulation(&sim);
            add_pair_strings(&mut scene, &sim, &quartet);
            // the braid's net effect: the loop pair around the exchanged holes
            for idx in [0usize, 2] {
                scene.overlay_operator(&sim, OverlayKind::ELoop, &quartet.x_loops[idx]);
                scene.overlay_operator(&sim, OverlayKind::MLoop, &quartet.z_loops[idx]);
            }
            scene.trail_from_log(&sim, &quartet.anchors);
            Ok(scene)
        }
        Snapshot::Fused => {
            quartet.fuse_pairs(&mut sim, &mut shot_rng(config.seed, 1))?;
            let mut scene = Scene::from_simulation(&sim);
            add_pair_strings(&mut scene, &sim, &quartet);
            let region_13 = quartet.anchors[0].bounding(&quartet.anchors[2]).ring();
            let region_24 = quartet.anchors[1].bounding(&quartet.anchors[3]).ring();
            for region in [region_13, region_24] {
                let x = sim.loop_operator(crate::defects::LoopKind::DetectE, region)?;
                let z = sim.loop_operator(crate::defects::LoopKind::DetectM, region)?;
                scene.overlay_operator(&sim, OverlayKind::ELoop, &x);
                scene.overlay_operator(&sim, OverlayKind::MLoop, &z);
            }
            Ok(scene)
        }
        _ => unreachable!(),
    }
}

fn add_pair_strings(scene: &mut Scene, sim: &Simulation, quartet: &PunctureQuartet) {
    for (s_e, s_m) in &quartet.pair_strings {
        scene.overlay_operator(sim, OverlayKind::EString, s_e);
        scene.overlay_operator(sim, OverlayKind::MString, s_m);
    }
}

// ---- ASCII ------------------------------------------------------------------

/// Character grid, one `+` per lattice corner, three columns per cell.
///
/// Legend: `---`/`|` live edge, `zzz`/`z` frozen in Z, `xxx`/`x` frozen in
/// X, `eee` e-string, `mmm` m-string, `EEE`/`MMM` detection loops, `###`
/// puncture interior, ` . ` transport trail.
pub fn render_ascii(scene: &Scene) -> String {
    let rows = scene.cell_rows;
    let cols = scene.cell_cols;
    let width = cols * 4 + 1;
    let height = rows * 2 + 1;
    let mut grid = vec![vec![' '; width]; height];
    for r in 0..=rows {
        for c in 0..=cols {
            grid[r * 2][c * 4] = '+';
        }
    }
    let mut edge_char: BTreeMap<Edge, char> = BTreeMap::new();
    for (edge, frozen) in &scene.edges {
        let ch = match frozen {
            None => match edge.kind {
                EdgeKind::Horizontal => '-',
                EdgeKind::Vertical => '|',
            },
            Some(MeasBasis::Z) => 'z',
            Some(MeasBasis::X) => 'x',
        };
        edge_char.insert(*edge, ch);
    }
    // overlays take precedence in their declared order
    for (kind, edges) in &scene.overlays {
        let ch = match kind {
            OverlayKind::EString => 'e',
            OverlayKind::MString => 'm',
            OverlayKind::ELoop => 'E',
            OverlayKind::MLoop => 'M',
        };
        for e in edges {
            edge_char.insert(*e, ch);
        }
    }
    for (edge, ch) in &edge_char {
        match edge.kind {
            EdgeKind::Horizontal => {
                for k in 1..4 {
                    grid[edge.r * 2][edge.c * 4 + k] = *ch;
                }
            }
            EdgeKind::Vertical => {
                grid[edge.r * 2 + 1][edge.c * 4] = *ch;
            }
        }
    }
    for rect in &scene.trail {
        for cell in rect.cells() {
            grid[cell.r * 2 + 1][cell.c * 4 + 2] = '.';
        }
    }
    for (_, rect) in &scene.punctures {
        for cell in rect.cells() {
            for k in 1..4 {
                grid[cell.r * 2 + 1][cell.c * 4 + k] = '#';
            }
        }
    }
    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str("legend: --- live  zzz frozen-Z  xxx frozen-X  eee e-string  mmm m-string\n");
    out.push_str("        EEE e-detect loop  MMM m-detect loop  ### puncture  . trail\n");
    out
}

// ---- SVG --------------------------------------------------------------------

const SCALE: usize = 28;
const MARGIN: usize = 24;

fn px(v: usize) -> usize {
    MARGIN + v * SCALE
}

fn edge_coords(e: &Edge) -> (usize, usize, usize, usize) {
    match e.kind {
        EdgeKind::Horizontal => (px(e.c), px(e.r), px(e.c + 1), px(e.r)),
        EdgeKind::Vertical => (px(e.c), px(e.r), px(e.c), px(e.r + 1)),
    }
}

/// Self-contained SVG; deterministic byte-for-byte for identical scenes.
pub fn render_svg(scene: &Scene) -> String {
    let w = scene.cell_cols * SCALE + 2 * MARGIN;
    let h = scene.cell_rows * SCALE + 2 * MARGIN + 40;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, r##"<rect width="{w}" height="{h}" fill="#fcfcfc"/>"##);
    // trail beneath everything
    for rect in &scene.trail {
        for cell in rect.cells() {
            let _ = writeln!(
                svg,
                r##"<rect x="{}" y="{}" width="{SCALE}" height="{SCALE}" fill="#f6e3b4" fill-opacity="0.6"/>"##,
                px(cell.c),
                px(cell.r)
            );
        }
    }
    // lattice edges
    for (edge, frozen) in &scene.edges {
        let (x1, y1, x2, y2) = edge_coords(edge);
        let style = match frozen {
            None => r##"stroke="#b8b8b8" stroke-width="2""##,
            Some(MeasBasis::Z) => r##"stroke="#e2b0b0" stroke-width="2" stroke-dasharray="2,3""##,
            Some(MeasBasis::X) => r##"stroke="#b0c4e2" stroke-width="2" stroke-dasharray="2,3""##,
        };
        let _ = writeln!(svg, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>"#);
    }
    // punctures: interior fill plus segment-typed outline
    for (ty, rect) in &scene.punctures {
        let (x, y) = (px(rect.c), px(rect.r));
        let (rw, rh) = (rect.width * SCALE, rect.height * SCALE);
        let _ = writeln!(
            svg,
            r##"<rect x="{x}" y="{y}" width="{rw}" height="{rh}" fill="#e9e9e9"/>"##
        );
        let rough = r##"stroke="#c0392b" stroke-width="3""##;
        let smooth = r##"stroke="#2458a8" stroke-width="3" stroke-dasharray="6,4""##;
        let (top, right, bottom, left) = match ty {
            PunctureType::Rough => (rough, rough, rough, rough),
            PunctureType::Smooth => (smooth, smooth, smooth, smooth),
            PunctureType::Mixed => (rough, rough, smooth, smooth),
        };
        let (x2, y2) = (x + rw, y + rh);
        let _ = writeln!(svg, r#"<line x1="{x}" y1="{y}" x2="{x2}" y2="{y}" {top}/>"#);
        let _ = writeln!(svg, r#"<line x1="{x2}" y1="{y}" x2="{x2}" y2="{y2}" {right}/>"#);
        let _ = writeln!(svg, r#"<line x1="{x}" y1="{y2}" x2="{x2}" y2="{y2}" {bottom}/>"#);
        let _ = writeln!(svg, r#"<line x1="{x}" y1="{y}" x2="{x}" y2="{y2}" {left}/>"#);
    }
    // operator overlays
    for (kind, edges) in &scene.overlays {
        let style = match kind {
            OverlayKind::EString => r##"stroke="#c0392b" stroke-width="4""##,
            OverlayKind::MString => {
                r##"stroke="#2458a8" stroke-width="4" stroke-dasharray="7,4""##
            }
            OverlayKind::ELoop => {
                r##"stroke="#2458a8" stroke-width="3" stroke-opacity="0.55" stroke-dasharray="4,3""##
            }
            OverlayKind::MLoop => r##"stroke="#c0392b" stroke-width="3" stroke-opacity="0.55""##,
        };
        for e in edges {
            let (x1, y1, x2, y2) = edge_coords(e);
            let _ = writeln!(svg, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>"#);
        }
    }
    let ly = scene.cell_rows * SCALE + 2 * MARGIN + 14;
    let _ = writeln!(
        svg,
        r##"<text x="{MARGIN}" y="{ly}" font-family="monospace" font-size="11" fill="#444">red solid: rough / e-side (Z-type) - blue dashed: smooth / m-side (X-type)</text>"##
    );
    let _ = writeln!(svg, "</svg>");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_lattice_is_grid_only() {
        let config = ExperimentConfig { shots: 1, ..Default::default() };
        let scene = snapshot_scene(&config, Snapshot::Empty).unwrap();
        assert!(scene.punctures.is_empty());
        assert!(scene.overlays.is_empty());
        let ascii = render_ascii(&scene);
        let grid: Vec<&str> =
            ascii.lines().take_while(|l| !l.starts_with("legend")).collect();
        assert!(grid.iter().all(|l| !l.contains('#')));
        assert!(grid.iter().any(|l| l.contains('+')));
    }

    #[test]
    fn quartet_snapshot_draws_four_holes() {
        let config = ExperimentConfig { shots: 1, ..Default::default() };
        let scene = snapshot_scene(&config, Snapshot::Quartet).unwrap();
        assert_eq!(scene.punctures.len(), 4);
        let ascii = render_ascii(&scene);
        assert!(ascii.contains('#'));
        assert!(ascii.contains('e') && ascii.contains('m'));
    }

    #[test]
    fn braided_snapshot_includes_loops_and_trail() {
        let config = ExperimentConfig { shots: 1, ..Default::default() };
        let scene = snapshot_scene(&config, Snapshot::Braided).unwrap();
        assert!(scene.overlays.iter().any(|(k, _)| *k == OverlayKind::ELoop));
        assert!(!scene.trail.is_empty());
        let svg = render_svg(&scene);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn renders_are_byte_deterministic() {
        let config = ExperimentConfig { shots: 1, ..Default::default() };
        for snap in [Snapshot::Empty, Snapshot::Prepared, Snapshot::Braided, Snapshot::Fused] {
            let a = snapshot_scene(&config, snap).unwrap();
            let b = snapshot_scene(&config, snap).unwrap();
            assert_eq!(render_ascii(&a), render_ascii(&b));
            assert_eq!(render_svg(&a), render_svg(&b));
        }
    }

    #[test]
    fn snapshot_names_parse() {
        assert_eq!("braided".parse::<Snapshot>().unwrap(), Snapshot::Braided);
        assert!("bogus".parse::<Snapshot>().is_err());
    }
}
