//! The four-puncture logical qubit: non-local pair superpositions, their
//! fusion, and the braid that acts as a logical Pauli-X.
//!
//! Four mixed-boundary holes p1..p4 are paired as (p1,p2) and (p3,p4). Each
//! pair carries a string pair: an e-string joining the rough segments and
//! an m-string joining the smooth segments, routed disjointly. Their
//! product `W = Sᵉ·Sᵐ` toggles the pair content between an e-pair and an
//! m-pair, so after populating the pair with e's and measuring W the pair
//! sits in the equal-amplitude superposition of e-pair and m-pair strings
//! with the measured sign.
//!
//! The logical basis is the even-parity sector {|++⟩, |--⟩} labelled by
//! (⟨W₁₂⟩, ⟨W₃₄⟩). Dragging p1 around p3 and back sweeps each pair string
//! across the other pair's hole, multiplying the mixed branches by the e/m
//! monodromy −1; the net effect is exactly the static operator
//! X-loop(p1)·X-loop(p3), a logical X. Fusing the regrouped pairs (p1,p3)
//! and (p2,p4) instead measures the enclosing loop pairs, whose outcomes
//! are perfectly correlated and uniform on the encoded basis states.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::defects::{
    CellRect, Charge, DefectError, Dir, Endpoint, LoopKind, PunctureId, PunctureType, Simulation,
    StringPath,
};
use crate::lattice::{Cell, Vertex};
use crate::pauli::PauliOperator;
use crate::tableau::TableauError;

#[derive(Debug, Error)]
pub enum EncodingError {
    #[error("pair layout invalid: {0}")]
    Layout(String),
    #[error("puncture is not fresh (holds {0:?})")]
    NotFresh(Charge),
    #[error("fusion outcomes anticorrelated: pair loops read ({0}, {1})")]
    AnticorrelatedFusion(i8, i8),
    #[error("braid path fails to wind once around the target (winding {0})")]
    BadWinding(i32),
    #[error(transparent)]
    Defect(#[from] DefectError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

/// Which pair of the quartet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pair {
    First,
    Second,
}

/// Logical readout defined by (⟨W₁₂⟩, ⟨W₃₄⟩).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LogicalLabel {
    PlusPlus,
    MinusMinus,
    /// Definite signs of opposite parity: the encoded qubit left the
    /// even-parity sector.
    OddSector { w12: i8, w34: i8 },
    /// At least one pair operator has expectation zero.
    Superposed,
}

/// Joint fusion outcome of one regrouped pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FuseOutcome {
    Vacuum,
    Psi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FusionRecord {
    pub pair_13: FuseOutcome,
    pub pair_24: FuseOutcome,
}

/// Geometry request plus the four hole anchors of an experiment.
#[derive(Debug, Clone, Copy)]
pub struct QuartetLayout {
    pub anchors: [CellRect; 4],
}

impl QuartetLayout {
    /// Anchors for a 12×12-cell patch: pairs (p1,p2) and (p3,p4) in two
    /// rows, with room for the fusion loops and the p1-around-p3 braid.
    pub fn compact() -> Self {
        Self {
            anchors: [
                CellRect::new(2, 3, 2, 1),
                CellRect::new(2, 8, 2, 1),
                CellRect::new(6, 3, 2, 1),
                CellRect::new(6, 8, 2, 1),
            ],
        }
    }

    /// Anchors for a 16×16-cell patch: every braid ring (both same-pair
    /// controls and all four cross-pair exchanges) fits with full
    /// clearance.
    pub fn roomy() -> Self {
        Self {
            anchors: [
                CellRect::new(4, 3, 2, 1),
                CellRect::new(4, 9, 2, 1),
                CellRect::new(10, 3, 2, 1),
                CellRect::new(10, 9, 2, 1),
            ],
        }
    }

    fn validate(&self) -> Result<(), EncodingError> {
        for a in &self.anchors {
            if (a.height, a.width) != (2, 1) {
                return Err(EncodingError::Layout(
                    "anchors must be 2×1 vertical mixed holes".into(),
                ));
            }
        }
        if self.anchors[0].r != self.anchors[1].r || self.anchors[2].r != self.anchors[3].r {
            return Err(EncodingError::Layout("pairs must share a row".into()));
        }
        if self.anchors[0].c >= self.anchors[1].c || self.anchors[2].c >= self.anchors[3].c {
            return Err(EncodingError::Layout("pair columns must increase left to right".into()));
        }
        if self.anchors[1].c - self.anchors[0].c < 3 || self.anchors[3].c - self.anchors[2].c < 3 {
            return Err(EncodingError::Layout("pair punctures sit too close".into()));
        }
        Ok(())
    }
}

/// The four holes with their pair-string operators and detection loops,
/// all anchored at the creation positions (braids return the holes there).
pub struct PunctureQuartet {
    pub ids: [PunctureId; 4],
    pub anchors: [CellRect; 4],
    /// (e-string, m-string) joining each pair's matching segments.
    pub pair_strings: [(PauliOperator, PauliOperator); 2],
    /// W = Sᵉ·Sᵐ per pair: Hermitian, commutes with every code stabilizer.
    pub pair_w: [PauliOperator; 2],
    pub x_loops: [PauliOperator; 4],
    pub z_loops: [PauliOperator; 4],
}

impl PunctureQuartet {
    /// Cut the four mixed holes and build the static operator kit.
    pub fn create(
        sim: &mut Simulation,
        layout: &QuartetLayout,
        rng: &mut impl Rng,
    ) -> Result<Self, EncodingError> {
        layout.validate()?;
        let mut ids = Vec::with_capacity(4);
        for rect in layout.anchors {
            ids.push(sim.create_puncture(rect, PunctureType::Mixed, rng)?);
        }
        let ids: [PunctureId; 4] = ids.try_into().unwrap();
        let mut x_loops = Vec::with_capacity(4);
        let mut z_loops = Vec::with_capacity(4);
        for &id in &ids {
            x_loops.push(sim.x_detection_loop(id)?);
            z_loops.push(sim.z_detection_loop(id)?);
        }
        let s12 = pair_strings(sim, ids[0], ids[1])?;
        let s34 = pair_strings(sim, ids[2], ids[3])?;
        let w12 = s12.0.product(&s12.1);
        let w34 = s34.0.product(&s34.1);
        debug_assert!(w12.is_hermitian() && w34.is_hermitian());
        debug_assert!(w12.commutes_with(&w34));
        Ok(Self {
            ids,
            anchors: layout.anchors,
            pair_strings: [s12, s34],
            pair_w: [w12, w34],
            x_loops: x_loops.try_into().unwrap(),
            z_loops: z_loops.try_into().unwrap(),
        })
    }

    fn pair_members(&self, pair: Pair) -> (usize, usize) {
        match pair {
            Pair::First => (0, 1),
            Pair::Second => (2, 3),
        }
    }

    /// Put one pair into the superposition of e-pair and m-pair strings
    /// with the requested relative sign: populate the pair with e's (its
    /// ε-parity loops drop to −1), then measure W; a wrong sign is
    /// corrected by the first hole's X-detection loop, which anticommutes
    /// with W and nothing else in the group.
    pub fn prepare_pair(
        &self,
        sim: &mut Simulation,
        pair: Pair,
        sign: i8,
        rng: &mut impl Rng,
    ) -> Result<(), EncodingError> {
        debug_assert!(sign == 1 || sign == -1);
        let (a, b) = self.pair_members(pair);
        for &member in &[a, b] {
            let charge = sim.enclosed_charge(self.ids[member])?;
            if charge != Charge::Vacuum {
                return Err(EncodingError::NotFresh(charge));
            }
        }
        let (s_e, _) = &self.pair_strings[pair_index(pair)];
        sim.apply(s_e);
        let w = &self.pair_w[pair_index(pair)];
        debug_assert!(!w.commutes_with(&self.x_loops[a]));
        let outcome = sim.measure(w, rng);
        if outcome != sign {
            sim.apply(&self.x_loops[a].clone());
        }
        debug_assert_eq!(sim.expectation(w), sign);
        Ok(())
    }

    /// Prepare both pairs; sign pattern (s₁₂, s₃₄) = (+,+) encodes |++⟩.
    pub fn prepare_quartet(
        &self,
        sim: &mut Simulation,
        signs: (i8, i8),
        rng: &mut impl Rng,
    ) -> Result<(), EncodingError> {
        self.prepare_pair(sim, Pair::First, signs.0, rng)?;
        self.prepare_pair(sim, Pair::Second, signs.1, rng)?;
        Ok(())
    }

    /// Read the logical label from (⟨W₁₂⟩, ⟨W₃₄⟩).
    pub fn read_logical(&self, sim: &Simulation) -> LogicalLabel {
        let w12 = sim.expectation(&self.pair_w[0]);
        let w34 = sim.expectation(&self.pair_w[1]);
        match (w12, w34) {
            (1, 1) => LogicalLabel::PlusPlus,
            (-1, -1) => LogicalLabel::MinusMinus,
            (0, _) | (_, 0) => LogicalLabel::Superposed,
            _ => LogicalLabel::OddSector { w12, w34 },
        }
    }

    /// Static logical X: apply X-loop(p1)·X-loop(p3). Both W operators
    /// anticommute with it, so |++⟩ ↔ |--⟩.
    pub fn logical_x(&self, sim: &mut Simulation) {
        sim.apply(&self.x_loops[0]);
        sim.apply(&self.x_loops[2]);
    }

    /// Logical Z: apply W₁₂ itself. It stabilizes |++⟩ (sign +1) and acts
    /// as −1 on |--⟩; as an operator it anticommutes with the logical X.
    pub fn logical_z(&self, sim: &mut Simulation) {
        sim.apply(&self.pair_w[0].clone());
    }

    /// The logical X as an operator, for algebra checks.
    pub fn logical_x_operator(&self) -> PauliOperator {
        self.x_loops[0].product(&self.x_loops[2])
    }

    pub fn logical_z_operator(&self) -> PauliOperator {
        self.pair_w[0].clone()
    }

    /// Fuse the regrouped pairs (p1,p3) and (p2,p4) by measuring the X and
    /// Z loops enclosing each group. Joint outcomes (+,+) read vacuum and
    /// (−,−) read ψ; the two groups always agree on even-sector states.
    pub fn fuse_pairs(
        &self,
        sim: &mut Simulation,
        rng: &mut impl Rng,
    ) -> Result<FusionRecord, EncodingError> {
        let region_13 = self.anchors[0].bounding(&self.anchors[2]).ring();
        let region_24 = self.anchors[1].bounding(&self.anchors[3]).ring();
        let outcome_13 = self.fuse_region(sim, region_13, rng)?;
        let outcome_24 = self.fuse_region(sim, region_24, rng)?;
        Ok(FusionRecord { pair_13: outcome_13, pair_24: outcome_24 })
    }

    fn fuse_region(
        &self,
        sim: &mut Simulation,
        region: CellRect,
        rng: &mut impl Rng,
    ) -> Result<FuseOutcome, EncodingError> {
        let x = sim.measure_loop(LoopKind::DetectE, region, rng)?;
        let z = sim.measure_loop(LoopKind::DetectM, region, rng)?;
        match (x, z) {
            (1, 1) => Ok(FuseOutcome::Vacuum),
            (-1, -1) => Ok(FuseOutcome::Psi),
            _ => Err(EncodingError::AnticorrelatedFusion(x, z)),
        }
    }

    /// Full exchange: transport `moving` around `around` on a rectangular
    /// ring with one-cell clearance and return it home, translation-only.
    /// On the encoded basis states a cross-pair braid equals the static
    /// logical X; same-pair braids leave the state untouched.
    pub fn braid(
        &self,
        sim: &mut Simulation,
        moving: usize,
        around: usize,
        rng: &mut impl Rng,
    ) -> Result<(), EncodingError> {
        assert!((1..=4).contains(&moving) && (1..=4).contains(&around) && moving != around);
        let home = self.anchors[moving - 1];
        let target = self.anchors[around - 1];
        let waypoints = braid_waypoints(home, target)?;
        let path = expand_waypoints(home, &waypoints);
        check_winding(home, &waypoints, target)?;
        let id = self.ids[moving - 1];
        sim.validate_path(id, &path)?;
        sim.move_along(id, &path, rng)?;
        let p = sim.puncture(id)?;
        debug_assert_eq!(p.footprint, home);
        debug_assert_eq!(p.orientation_quarter_turns, 0);
        Ok(())
    }

    /// Branch-sign pattern of the current state relative to the ee⊗ee
    /// branch: (1, ⟨W₃₄⟩, ⟨W₁₂⟩, ⟨W₁₂·W₃₄⟩), the lattice-side quantity the
    /// amplitude oracle predicts.
    pub fn measured_branch_signs(&self, sim: &Simulation) -> [i8; 4] {
        let w12 = sim.expectation(&self.pair_w[0]);
        let w34 = sim.expectation(&self.pair_w[1]);
        let joint = sim.expectation(&self.pair_w[0].product(&self.pair_w[1]));
        [1, w34, w12, joint]
    }
}

fn pair_index(pair: Pair) -> usize {
    match pair {
        Pair::First => 0,
        Pair::Second => 1,
    }
}

/// Build the disjoint (e-string, m-string) pair joining two holes on the
/// same row: the e-string arcs over the rough north corners, the m-string
/// runs under the smooth south sides.
fn pair_strings(
    sim: &Simulation,
    a: PunctureId,
    b: PunctureId,
) -> Result<(PauliOperator, PauliOperator), EncodingError> {
    let pa = sim.puncture(a)?.footprint;
    let pb = sim.puncture(b)?.footprint;
    let row = pa.r;
    // e-string: NE corner of a, over the top row, down onto NW corner of b
    let mut primal = vec![Vertex { r: row, c: pa.c + 1 }];
    for c in pa.c + 1..=pb.c {
        primal.push(Vertex { r: row - 1, c });
    }
    primal.push(Vertex { r: row, c: pb.c });
    let s_e = sim.string_operator(
        crate::defects::AnyonKind::E,
        &StringPath::Primal(primal),
        (Endpoint::Puncture(a), Endpoint::Puncture(b)),
    )?;
    // m-string: out the south face of a, under the gap, up into b
    let below = row + pa.height;
    let mut dual = vec![Cell { r: below - 1, c: pa.c }];
    for c in pa.c..=pb.c {
        dual.push(Cell { r: below, c });
    }
    dual.push(Cell { r: below - 1, c: pb.c });
    let s_m = sim.string_operator(
        crate::defects::AnyonKind::M,
        &StringPath::Dual(dual),
        (Endpoint::Puncture(a), Endpoint::Puncture(b)),
    )?;
    debug_assert_eq!(s_e.x_mask().and_count(s_m.x_mask()), 0);
    debug_assert_eq!(s_e.z_mask().and_count(s_m.x_mask()), 0);
    Ok((s_e, s_m))
}

/// Rectangular ring corners for a braid of a 2×1 hole around another:
/// side legs two columns out, top/bottom legs three rows out (one cell of
/// clearance everywhere). The route starts and ends at `home`.
fn braid_waypoints(
    home: CellRect,
    target: CellRect,
) -> Result<Vec<(usize, usize)>, EncodingError> {
    let (hr, hc) = (home.r, home.c);
    let (tr, tc) = (target.r, target.c);
    let (l, r) = (tc.checked_sub(2), tc + 2);
    let (t, b) = (tr.checked_sub(3), tr + 3);
    let (l, t) = match (l, t) {
        (Some(l), Some(t)) => (l, t),
        _ => return Err(EncodingError::Layout("target too close to the lattice edge".into())),
    };
    let pts: Vec<(usize, usize)> = if hc == tc && hr < tr {
        // straight above: the home row closes the ring
        vec![(hr, l), (b, l), (b, r), (hr, r), (hr, hc)]
    } else if hr == tr && hc < tc {
        // same row, left of target: drop below, circle, come back
        vec![(b, hc), (b, l), (t, l), (t, r), (b, r), (b, l), (b, hc), (hr, hc)]
    } else if hr == tr && hc > tc {
        vec![(b, hc), (b, r), (t, r), (t, l), (b, l), (b, r), (b, hc), (hr, hc)]
    } else if hr < tr && hc < tc {
        // above-left: approach along the home row to the ring's left column
        vec![(hr, l), (t, l), (b, l), (b, r), (t, r), (t, l), (hr, l), (hr, hc)]
    } else if hr < tr && hc > tc {
        vec![(hr, r), (t, r), (b, r), (b, l), (t, l), (t, r), (hr, r), (hr, hc)]
    } else {
        return Err(EncodingError::Layout(format!(
            "no braid route from {home:?} around {target:?}"
        )));
    };
    Ok(pts)
}

/// Expand rectilinear waypoints into unit moves.
fn expand_waypoints(home: CellRect, waypoints: &[(usize, usize)]) -> Vec<Dir> {
    let mut path = Vec::new();
    let (mut r, mut c) = (home.r, home.c);
    for &(wr, wc) in waypoints {
        while r < wr {
            path.push(Dir::South);
            r += 1;
        }
        while r > wr {
            path.push(Dir::North);
            r -= 1;
        }
        while c < wc {
            path.push(Dir::East);
            c += 1;
        }
        while c > wc {
            path.push(Dir::West);
            c -= 1;
        }
    }
    path
}

/// Winding number of the closed anchor path around the target's center;
/// a braid must wind exactly once (in either orientation).
fn check_winding(
    home: CellRect,
    waypoints: &[(usize, usize)],
    target: CellRect,
) -> Result<(), EncodingError> {
    let cy = target.r as f64 + target.height as f64 / 2.0;
    let cx = target.c as f64 + target.width as f64 / 2.0;
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(waypoints.len() + 1);
    pts.push((home.r as f64, home.c as f64));
    pts.extend(waypoints.iter().map(|&(r, c)| (r as f64, c as f64)));
    let mut winding = 0i32;
    for pair in pts.windows(2) {
        let (r1, c1) = pair[0];
        let (r2, c2) = pair[1];
        // count signed crossings of the ray r = cy, c > cx
        if (r1 <= cy) != (r2 <= cy) {
            let t = (cy - r1) / (r2 - r1);
            let cross_c = c1 + t * (c2 - c1);
            if cross_c > cx {
                winding += if r2 > r1 { 1 } else { -1 };
            }
        }
    }
    if winding.abs() == 1 {
        Ok(())
    } else {
        Err(EncodingError::BadWinding(winding))
    }
}
