//! Reproducible experiment drivers and their JSON report types.
//!
//! Every experiment is a pure function of (config, master seed). State
//! preparation uses sign-forced measurements and is deterministic outright;
//! sampling randomness enters only through per-shot generators derived from
//! the master seed with a splitmix64 step, so shots can run in any order
//! and identical configs always produce byte-identical reports.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::anyon::{self, AnyonModel, Mat2};
use crate::defects::{CellRect, LoopKind, PunctureType, Simulation};
use crate::encoding::{EncodingError, LogicalLabel, PunctureQuartet, QuartetLayout};
use crate::lattice::{build_geometry, BoundarySpec, BoundaryType, CodeGeometry, GeometryError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config schema version {0} unsupported (expected {SCHEMA_VERSION})")]
    SchemaVersion(u32),
    #[error("config invalid: {0}")]
    Invalid(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Defect(#[from] crate::defects::DefectError),
    #[error(transparent)]
    Tableau(#[from] crate::tableau::TableauError),
}

// ---- configuration ----------------------------------------------------------

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub rows: usize,
    pub cols: usize,
    /// Side types in the order top, bottom, left, right.
    pub boundary: [BoundaryType; 4],
}

impl GeometryConfig {
    pub fn spec(&self) -> BoundarySpec {
        BoundarySpec {
            top: self.boundary[0],
            bottom: self.boundary[1],
            left: self.boundary[2],
            right: self.boundary[3],
        }
    }

    pub fn build(&self) -> Result<CodeGeometry, ExperimentError> {
        Ok(build_geometry(self.rows, self.cols, self.spec())?)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorsConfig {
    pub p1: [usize; 2],
    pub p2: [usize; 2],
    pub p3: [usize; 2],
    pub p4: [usize; 2],
}

impl AnchorsConfig {
    pub fn layout(&self) -> QuartetLayout {
        let rect = |rc: [usize; 2]| CellRect::new(rc[0], rc[1], 2, 1);
        QuartetLayout { anchors: [rect(self.p1), rect(self.p2), rect(self.p3), rect(self.p4)] }
    }
}

/// One experiment arena: a patch plus the four hole anchors.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArenaConfig {
    pub geometry: GeometryConfig,
    pub anchors: AnchorsConfig,
}

impl ArenaConfig {
    /// 12×12-cell all-rough patch with the compact quartet: hosts state
    /// preparation, fusion, and the p1-around-p3 braid.
    pub fn compact() -> Self {
        Self {
            geometry: GeometryConfig { rows: 12, cols: 12, boundary: [BoundaryType::Rough; 4] },
            anchors: AnchorsConfig { p1: [2, 3], p2: [2, 8], p3: [6, 3], p4: [6, 8] },
        }
    }

    /// 16×16-cell patch where every pairwise braid ring fits.
    pub fn roomy() -> Self {
        Self {
            geometry: GeometryConfig { rows: 16, cols: 16, boundary: [BoundaryType::Rough; 4] },
            anchors: AnchorsConfig { p1: [4, 3], p2: [4, 9], p3: [10, 3], p4: [10, 9] },
        }
    }
}

/// Top-level experiment configuration, accepted as JSON with unknown keys
/// rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    /// Main arena, used by fusion and the basis-flip braids.
    pub arena: ArenaConfig,
    /// Arena for the braids that need more clearance (same-pair controls
    /// and the remaining cross-pair exchanges).
    pub control_arena: ArenaConfig,
    /// Pair preparation signs (+1 or −1 each).
    pub signs: [i8; 2],
    pub shots: u64,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            arena: ArenaConfig::compact(),
            control_arena: ArenaConfig::roomy(),
            signs: [1, 1],
            shots: 10_000,
            seed: 7,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(json: &str) -> Result<Self, ExperimentError> {
        let config: Self =
            serde_json::from_str(json).map_err(|e| ExperimentError::Invalid(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ExperimentError::SchemaVersion(self.schema_version));
        }
        if self.shots == 0 {
            return Err(ExperimentError::Invalid("shots must be at least 1".into()));
        }
        for s in self.signs {
            if s != 1 && s != -1 {
                return Err(ExperimentError::Invalid(format!("sign {s} must be ±1")));
            }
        }
        // the arenas must admit the quartet: building them runs the
        // footprint and clearance checks
        for arena in [&self.arena, &self.control_arena] {
            let g = arena.geometry.build()?;
            let mut sim = Simulation::new(g, &mut seeded(0));
            for rect in arena.anchors.layout().anchors {
                sim.create_puncture(rect, PunctureType::Mixed, &mut seeded(0))?;
            }
        }
        Ok(())
    }
}

// ---- seeding ------------------------------------------------------------------

/// splitmix64 finalizer; the documented per-shot seed derivation is
/// `mix(master + (shot + 1) · 0x9E3779B97F4A7C15)`.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn shot_seed(master: u64, shot: u64) -> u64 {
    splitmix64(master.wrapping_add((shot + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

pub fn shot_rng(master: u64, shot: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(shot_seed(master, shot))
}

fn seeded(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

// ---- shared report pieces -------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ArenaSummary {
    pub rows: usize,
    pub cols: usize,
    pub boundary: [BoundaryType; 4],
    pub cell_rows: usize,
    pub cell_cols: usize,
    pub n_qubits: usize,
    pub anchors: AnchorsConfig,
}

fn arena_summary(arena: &ArenaConfig, g: &CodeGeometry) -> ArenaSummary {
    let (cell_rows, cell_cols) = g.cell_dims();
    ArenaSummary {
        rows: arena.geometry.rows,
        cols: arena.geometry.cols,
        boundary: arena.geometry.boundary,
        cell_rows,
        cell_cols,
        n_qubits: g.n_qubits(),
        anchors: arena.anchors,
    }
}

// ---- algebra check ---------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct MatrixReport {
    /// Row-major entries as (re, im) pairs.
    pub entries: [[(f64, f64); 2]; 2],
}

impl From<&Mat2> for MatrixReport {
    fn from(m: &Mat2) -> Self {
        let e = |i: usize, j: usize| (m.entries[i][j].re, m.entries[i][j].im);
        Self { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub schema_version: u32,
    pub experiment: &'static str,
    pub tolerance: f64,
    pub relations: Vec<anyon::RelationCheck>,
    pub f_matrix: MatrixReport,
    pub f_unitary: bool,
    pub f_self_inverse: bool,
    pub braid_matrix: MatrixReport,
    pub braid_matrix_matches_expected: bool,
    pub braid_squared_is_minus_i: bool,
    pub all_pass: bool,
}

/// Check the Z2 exchange relations and the Ising F/B matrices. With
/// `tamper_f` set, one F entry is sign-flipped first; the checks must then
/// fail, which is the suite's negative control.
pub fn algebra_report(tamper_f: bool) -> AlgebraReport {
    let mut ising = AnyonModel::ising();
    if tamper_f {
        let mut f = ising.f_sigma.unwrap();
        f.entries[1][1] = -f.entries[1][1];
        ising.f_sigma = Some(f);
    }
    let toric = AnyonModel::toric();
    let relations = anyon::toric_r_checks(&toric);
    let f = ising.f_sigma.unwrap();
    let f_unitary = f.is_unitary(anyon::TOLERANCE);
    let f_self_inverse = f.mul(&f).approx_eq(&Mat2::identity(), anyon::TOLERANCE);
    let braid = ising.braid_matrix().unwrap();
    let braid_matches = braid.approx_eq(&anyon::expected_braid_matrix(), anyon::TOLERANCE);
    let minus_i = Mat2::identity().scaled(-num_complex::Complex64::i());
    let braid_squared = braid.mul(&braid).approx_eq(&minus_i, anyon::TOLERANCE);
    let all = relations.iter().all(|c| c.pass)
        && f_unitary
        && f_self_inverse
        && braid_matches
        && braid_squared;
    AlgebraReport {
        schema_version: SCHEMA_VERSION,
        experiment: "check-algebra",
        tolerance: anyon::TOLERANCE,
        relations,
        f_matrix: MatrixReport::from(&f),
        f_unitary,
        f_self_inverse,
        braid_matrix: MatrixReport::from(&braid),
        braid_matrix_matches_expected: braid_matches,
        braid_squared_is_minus_i: braid_squared,
        all_pass: all,
    }
}

// ---- fusion experiment --------------------------------------------------------------

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ShotRecord {
    pub shot: u64,
    pub seed: u64,
    pub pair_13: &'static str,
    pub pair_24: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct FusionFrequencies {
    pub vac_vac: f64,
    pub psi_psi: f64,
    pub anticorrelated: u64,
    pub standard_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FusionReport {
    pub schema_version: u32,
    pub experiment: &'static str,
    pub arena: ArenaSummary,
    pub signs: [i8; 2],
    pub seed: u64,
    pub shots: u64,
    pub frequencies: FusionFrequencies,
    pub outcomes: Vec<ShotRecord>,
    pub all_pass: bool,
}

/// Prepare the encoded state once, then sample the regrouped fusion loops
/// shot by shot on clones of the tableau.
pub fn run_fusion(config: &ExperimentConfig) -> Result<FusionReport, ExperimentError> {
    config.validate()?;
    let g = config.arena.geometry.build()?;
    let layout = config.arena.anchors.layout();
    let mut setup_rng = seeded(config.seed);
    let mut sim = Simulation::new(g.clone(), &mut setup_rng);
    let quartet = PunctureQuartet::create(&mut sim, &layout, &mut setup_rng)?;
    quartet.prepare_quartet(&mut sim, (config.signs[0], config.signs[1]), &mut setup_rng)?;

    let region_13 = quartet.anchors[0].bounding(&quartet.anchors[2]).ring();
    let region_24 = quartet.anchors[1].bounding(&quartet.anchors[3]).ring();
    let loops = [
        sim.loop_operator(LoopKind::DetectE, region_13)?,
        sim.loop_operator(LoopKind::DetectM, region_13)?,
        sim.loop_operator(LoopKind::DetectE, region_24)?,
        sim.loop_operator(LoopKind::DetectM, region_24)?,
    ];

    let base = sim.state().clone();
    let mut outcomes = Vec::with_capacity(config.shots as usize);
    let mut vac = 0u64;
    let mut anticorrelated = 0u64;
    for shot in 0..config.shots {
        let seed = shot_seed(config.seed, shot);
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut state = base.clone();
        let x13 = state.measure(&loops[0], &mut rng).outcome;
        let z13 = state.measure(&loops[1], &mut rng).outcome;
        let x24 = state.measure(&loops[2], &mut rng).outcome;
        let z24 = state.measure(&loops[3], &mut rng).outcome;
        let label = |x: i8, z: i8| match (x, z) {
            (1, 1) => "vacuum",
            (-1, -1) => "psi",
            _ => "anticorrelated",
        };
        let pair_13 = label(x13, z13);
        let pair_24 = label(x24, z24);
        if pair_13 == "anticorrelated" || pair_24 == "anticorrelated" || pair_13 != pair_24 {
            anticorrelated += 1;
        } else if pair_13 == "vacuum" {
            vac += 1;
        }
        outcomes.push(ShotRecord { shot, seed, pair_13, pair_24 });
    }
    let shots = config.shots as f64;
    let vac_freq = vac as f64 / shots;
    let frequencies = FusionFrequencies {
        vac_vac: vac_freq,
        psi_psi: (config.shots - vac - anticorrelated) as f64 / shots,
        anticorrelated,
        standard_error: (vac_freq * (1.0 - vac_freq) / shots).sqrt(),
    };
    // binomial 3σ band around the ideal 1/2
    let band = 3.0 * (0.25f64 / shots).sqrt();
    let all_pass = anticorrelated == 0
        && (frequencies.vac_vac - 0.5).abs() <= band
        && (frequencies.psi_psi - 0.5).abs() <= band;
    Ok(FusionReport {
        schema_version: SCHEMA_VERSION,
        experiment: "run-fusion",
        arena: arena_summary(&config.arena, &g),
        signs: config.signs,
        seed: config.seed,
        shots: config.shots,
        frequencies,
        outcomes,
        all_pass,
    })
}

// ---- braid experiment -----------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct BraidCase {
    pub name: String,
    pub moving: usize,
    pub around: usize,
    pub initial_label: LogicalLabel,
    pub final_label: LogicalLabel,
    pub expected_label: LogicalLabel,
    /// Exact stabilizer equality with the state prepared directly in the
    /// expected basis label.
    pub states_equal_prepared: bool,
    /// Exact equality with the statically rotated state (X-loop pair);
    /// absent for the identity controls.
    pub states_equal_static_x: Option<bool>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidSection {
    pub arena: ArenaSummary,
    pub cases: Vec<BraidCase>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidReport {
    pub schema_version: u32,
    pub experiment: &'static str,
    pub seed: u64,
    /// p1-around-p3 on both basis states plus the double braid.
    pub main: BraidSection,
    /// Same-pair controls and the remaining cross-pair exchanges.
    pub control: BraidSection,
    pub all_pass: bool,
}

struct PreparedArena {
    sim: Simulation,
    quartet: PunctureQuartet,
}

fn prepared(
    arena: &ArenaConfig,
    signs: (i8, i8),
    seed: u64,
) -> Result<PreparedArena, ExperimentError> {
    let g = arena.geometry.build()?;
    let mut rng = seeded(seed);
    let mut sim = Simulation::new(g, &mut rng);
    let quartet = PunctureQuartet::create(&mut sim, &arena.anchors.layout(), &mut rng)?;
    quartet.prepare_quartet(&mut sim, signs, &mut rng)?;
    Ok(PreparedArena { sim, quartet })
}

fn label_of(signs: (i8, i8)) -> LogicalLabel {
    match signs {
        (1, 1) => LogicalLabel::PlusPlus,
        (-1, -1) => LogicalLabel::MinusMinus,
        (w12, w34) => LogicalLabel::OddSector { w12, w34 },
    }
}

fn braid_case(
    arena: &ArenaConfig,
    name: &str,
    moving: usize,
    around: usize,
    signs: (i8, i8),
    flip: bool,
    seed: u64,
) -> Result<BraidCase, ExperimentError> {
    let mut main = prepared(arena, signs, seed)?;
    let initial_label = main.quartet.read_logical(&main.sim);
    main.quartet.braid(&mut main.sim, moving, around, &mut shot_rng(seed, 1))?;
    let final_label = main.quartet.read_logical(&main.sim);
    let expected_signs = if flip { (-signs.0, -signs.1) } else { signs };
    let expected_label = label_of(expected_signs);

    let reference = prepared(arena, expected_signs, seed)?;
    let states_equal_prepared = main.sim.states_equal(&reference.sim)?;

    let states_equal_static_x = if flip {
        let mut rotated = prepared(arena, signs, seed)?;
        rotated.quartet.logical_x(&mut rotated.sim);
        Some(main.sim.states_equal(&rotated.sim)?)
    } else {
        None
    };
    let pass = final_label == expected_label
        && states_equal_prepared
        && states_equal_static_x.unwrap_or(true);
    Ok(BraidCase {
        name: name.to_string(),
        moving,
        around,
        initial_label,
        final_label,
        expected_label,
        states_equal_prepared,
        states_equal_static_x,
        pass,
    })
}

/// The braid suite: basis-flip braids and the double braid on the main
/// arena, same-pair controls and remaining exchanges on the control arena.
pub fn run_braid(config: &ExperimentConfig) -> Result<BraidReport, ExperimentError> {
    config.validate()?;
    let seed = config.seed;
    let mut main_cases = vec![
        braid_case(&config.arena, "p1_around_p3_on_plus_plus", 1, 3, (1, 1), true, seed)?,
        braid_case(&config.arena, "p1_around_p3_on_minus_minus", 1, 3, (-1, -1), true, seed)?,
    ];
    // double braid: X² = identity on the code space
    let mut double = prepared(&config.arena, (1, 1), seed)?;
    let before = double.sim.state().clone();
    double.quartet.braid(&mut double.sim, 1, 3, &mut shot_rng(seed, 2))?;
    double.quartet.braid(&mut double.sim, 1, 3, &mut shot_rng(seed, 3))?;
    let double_ok = double.sim.state().states_equal(&before)?;
    main_cases.push(BraidCase {
        name: "double_braid_returns".into(),
        moving: 1,
        around: 3,
        initial_label: LogicalLabel::PlusPlus,
        final_label: double.quartet.read_logical(&double.sim),
        expected_label: LogicalLabel::PlusPlus,
        states_equal_prepared: double_ok,
        states_equal_static_x: None,
        pass: double_ok,
    });

    let mut control_cases = Vec::new();
    for (name, moving, around, flip) in [
        ("same_pair_p1_around_p2", 1usize, 2usize, false),
        ("same_pair_p3_around_p4", 3, 4, false),
        ("cross_p1_around_p4", 1, 4, true),
        ("cross_p2_around_p3", 2, 3, true),
        ("cross_p2_around_p4", 2, 4, true),
    ] {
        for signs in [(1i8, 1i8), (-1i8, -1i8)] {
            let case_name = if signs.0 == 1 {
                name.to_string()
            } else {
                format!("{name}_on_minus_minus")
            };
            control_cases.push(braid_case(
                &config.control_arena,
                &case_name,
                moving,
                around,
                signs,
                flip,
                seed,
            )?);
        }
    }

    let g_main = config.arena.geometry.build()?;
    let g_control = config.control_arena.geometry.build()?;
    let all_pass = main_cases.iter().all(|c| c.pass) && control_cases.iter().all(|c| c.pass);
    Ok(BraidReport {
        schema_version: SCHEMA_VERSION,
        experiment: "run-braid",
        seed,
        main: BraidSection { arena: arena_summary(&config.arena, &g_main), cases: main_cases },
        control: BraidSection {
            arena: arena_summary(&config.control_arena, &g_control),
            cases: control_cases,
        },
        all_pass,
    })
}

/// Branch-sign comparison against the amplitude oracle for every defined
/// exchange, run on the control arena.
#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub exchange: (usize, usize),
    pub signs: [i8; 2],
    pub lattice: [i8; 4],
    pub oracle: [i8; 4],
    pub pass: bool,
}

pub fn oracle_comparisons(
    config: &ExperimentConfig,
) -> Result<Vec<OracleComparison>, ExperimentError> {
    let mut out = Vec::new();
    for (moving, around) in [(1usize, 3usize), (1, 4), (2, 3), (2, 4), (1, 2), (3, 4)] {
        for signs in [(1i8, 1i8), (-1, -1)] {
            let mut arena = prepared(&config.control_arena, signs, config.seed)?;
            arena.quartet.braid(&mut arena.sim, moving, around, &mut shot_rng(config.seed, 9))?;
            let lattice = arena.quartet.measured_branch_signs(&arena.sim);
            let oracle = crate::anyon::BranchState::prepare(signs.0, signs.1)
                .braid(moving as u8, around as u8)
                .branch_signs();
            out.push(OracleComparison {
                exchange: (moving, around),
                signs: [signs.0, signs.1],
                lattice,
                oracle,
                pass: lattice == oracle,
            });
        }
    }
    Ok(out)
}
