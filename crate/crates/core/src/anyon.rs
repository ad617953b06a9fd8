//! Abstract anyon data for the Z2 (toric) and Ising models, plus the
//! four-branch amplitude oracle the lattice experiments are checked
//! against.
//!
//! The toric model carries charges {1, e, m, ε}: e and m are bosons that
//! see each other as mutual semions, their composite ε is a fermion. The
//! Ising model carries {1, σ, ψ} with σ×σ = 1 + ψ; the basis change
//! between pairings of four σ's is the self-inverse Hadamard-like
//! F-matrix, and a full exchange of two σ's acts on a fusion-space qubit
//! as B = F·R²·F⁻¹ = e^{-iπ/4}·X.
//!
//! Everything here is exact eighth roots of unity, so all numeric
//! comparisons use a 1e-12 tolerance: anything looser would hide bugs.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, SQRT_2};

use num_complex::Complex64;
use serde::Serialize;

pub const TOLERANCE: f64 = 1e-12;

/// Dense 2×2 complex matrix; all the fusion-space linear algebra we need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub entries: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { entries: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Self::new(Complex64::ONE, Complex64::ZERO, Complex64::ZERO, Complex64::ONE)
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        let e = self.entries;
        Self::new(e[0][0] * s, e[0][1] * s, e[1][0] * s, e[1][1] * s)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (self.entries, other.entries);
        let mut out = [[Complex64::ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { entries: out }
    }

    pub fn adjoint(&self) -> Self {
        let e = self.entries;
        Self::new(e[0][0].conj(), e[1][0].conj(), e[0][1].conj(), e[1][1].conj())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| (x - y).norm() <= tol))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.mul(&self.adjoint()).approx_eq(&Self::identity(), tol)
    }
}

/// Charge labels across both models; each model uses its own subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChargeLabel {
    Vacuum,
    E,
    M,
    Eps,
    Sigma,
    Psi,
}

/// A finite anyon model: label set, fusion table, exchange phases and the
/// one non-scalar F-matrix either of our models needs.
#[derive(Debug, Clone)]
pub struct AnyonModel {
    pub name: &'static str,
    pub charges: Vec<ChargeLabel>,
    fusion: BTreeMap<(ChargeLabel, ChargeLabel), Vec<ChargeLabel>>,
    r_symbols: BTreeMap<(ChargeLabel, ChargeLabel), Complex64>,
    /// Basis change between the (12)(34) and (13)(24) pairings of four σ's;
    /// `None` for the Abelian model where every F is a phase.
    pub f_sigma: Option<Mat2>,
    /// Exchange of two σ's in the {1, ψ} fusion basis.
    pub r_sigma: Option<Mat2>,
}

impl AnyonModel {
    /// Z2 toric-code model: {1, e, m, ε}, group-like fusion, boson/boson/
    /// fermion self-statistics and mutually semionic e and m.
    pub fn toric() -> Self {
        use ChargeLabel::{Eps, Vacuum as V, E, M};
        let one = Complex64::ONE;
        let minus = -Complex64::ONE;
        let charges = [V, E, M, Eps];
        // Z2 × Z2 group multiplication
        let index = |c: ChargeLabel| match c {
            V => (0u8, 0u8),
            E => (1, 0),
            M => (0, 1),
            Eps => (1, 1),
            _ => unreachable!(),
        };
        let of_index = |i: (u8, u8)| match i {
            (0, 0) => V,
            (1, 0) => E,
            (0, 1) => M,
            _ => Eps,
        };
        let mut fusion = BTreeMap::new();
        for &a in &charges {
            for &b in &charges {
                let (ax, az) = index(a);
                let (bx, bz) = index(b);
                fusion.insert((a, b), vec![of_index((ax ^ bx, az ^ bz))]);
            }
        }
        let mut r = BTreeMap::new();
        for &a in &charges {
            r.insert((V, a), one);
            r.insert((a, V), one);
        }
        r.insert((E, E), one);
        r.insert((M, M), one);
        r.insert((Eps, Eps), minus);
        // only the monodromies R_ab·R_ba are physical; this gauge puts the
        // −1 on the second factor
        for (a, b) in [(E, M), (E, Eps), (M, Eps)] {
            r.insert((a, b), one);
            r.insert((b, a), minus);
        }
        Self {
            name: "toric",
            charges: charges.to_vec(),
            fusion,
            r_symbols: r,
            f_sigma: None,
            r_sigma: None,
        }
    }

    /// Ising model: {1, σ, ψ} with σ×σ = 1 + ψ.
    pub fn ising() -> Self {
        use ChargeLabel::{Psi, Sigma, Vacuum as V};
        let one = Complex64::ONE;
        let charges = [V, Sigma, Psi];
        let mut fusion = BTreeMap::new();
        for &a in &charges {
            fusion.insert((V, a), vec![a]);
            fusion.insert((a, V), vec![a]);
        }
        fusion.insert((Psi, Psi), vec![V]);
        fusion.insert((Psi, Sigma), vec![Sigma]);
        fusion.insert((Sigma, Psi), vec![Sigma]);
        fusion.insert((Sigma, Sigma), vec![V, Psi]);
        let mut r = BTreeMap::new();
        for &a in &charges {
            r.insert((V, a), one);
            r.insert((a, V), one);
        }
        r.insert((Psi, Psi), -one);
        // R_ψσ·R_σψ = −1, gauge split as i·i
        r.insert((Psi, Sigma), Complex64::i());
        r.insert((Sigma, Psi), Complex64::i());
        let inv_sqrt2 = Complex64::new(1.0 / SQRT_2, 0.0);
        let f = Mat2::new(inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
        let r_sigma = Mat2::new(Complex64::ONE, Complex64::ZERO, Complex64::ZERO, Complex64::i())
            .scaled(Complex64::from_polar(1.0, -FRAC_PI_8));
        Self {
            name: "ising",
            charges: charges.to_vec(),
            fusion,
            r_symbols: r,
            f_sigma: Some(f),
            r_sigma: Some(r_sigma),
        }
    }

    /// Fusion product a × b as a multiset of outcome charges.
    pub fn fuse(&self, a: ChargeLabel, b: ChargeLabel) -> Option<&[ChargeLabel]> {
        self.fusion.get(&(a, b)).map(Vec::as_slice)
    }

    pub fn r_symbol(&self, a: ChargeLabel, b: ChargeLabel) -> Option<Complex64> {
        self.r_symbols.get(&(a, b)).copied()
    }

    /// Full σ-exchange in the fusion basis: B = F·R²·F⁻¹. For Ising this is
    /// e^{-iπ/4} times the Pauli-X gate.
    pub fn braid_matrix(&self) -> Option<Mat2> {
        let f = self.f_sigma?;
        let r = self.r_sigma?;
        // F is self-inverse, so F⁻¹ = F
        Some(f.mul(&r.mul(&r)).mul(&f))
    }
}

/// One relation report from the Z2 exchange-statistics checks.
#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub value: (f64, f64),
    pub expected: (f64, f64),
    pub pass: bool,
}

/// Verify the five Z2 relations: R_ee = R_mm = 1, R_εε = −1, and the two
/// −1 monodromies of e/m and e/ε.
pub fn toric_r_checks(model: &AnyonModel) -> Vec<RelationCheck> {
    use ChargeLabel::{Eps, E, M};
    let r = |a, b| model.r_symbol(a, b).unwrap();
    let one = Complex64::ONE;
    let checks = [
        ("R_ee", r(E, E), one),
        ("R_mm", r(M, M), one),
        ("R_epseps", r(Eps, Eps), -one),
        ("R_em*R_me", r(E, M) * r(M, E), -one),
        ("R_eeps*R_epse", r(E, Eps) * r(Eps, E), -one),
    ];
    checks
        .into_iter()
        .map(|(name, value, expected)| RelationCheck {
            name: name.to_string(),
            value: (value.re, value.im),
            expected: (expected.re, expected.im),
            pass: (value - expected).norm() <= TOLERANCE,
        })
        .collect()
}

/// Reference value of the σ-exchange: e^{-iπ/4}·X.
pub fn expected_braid_matrix() -> Mat2 {
    let phase = Complex64::from_polar(1.0, -FRAC_PI_4);
    Mat2::new(Complex64::ZERO, phase, phase, Complex64::ZERO)
}

// ---- branch-amplitude oracle ----------------------------------------------

/// A joint string configuration of the two puncture pairs: each pair holds
/// either an e-pair or an m-pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    EeEe,
    EeMm,
    MmEe,
    MmMm,
}

pub const BRANCHES: [Branch; 4] = [Branch::EeEe, Branch::EeMm, Branch::MmEe, Branch::MmMm];

/// Amplitudes over the four branches, indexed as [`BRANCHES`]; the
/// independent oracle for everything the lattice encoding claims.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchState {
    pub amplitudes: [Complex64; 4],
}

/// Puncture index within the quartet: pair one is (1,2), pair two is (3,4).
pub type PunctureIndex = u8;

impl BranchState {
    /// Joint state of two pairs prepared with the given superposition
    /// signs: amplitudes (1, s₃₄, s₁₂, s₁₂·s₃₄)/2.
    pub fn prepare(sign_12: i8, sign_34: i8) -> Self {
        let s12 = f64::from(sign_12);
        let s34 = f64::from(sign_34);
        Self {
            amplitudes: [
                Complex64::new(0.5, 0.0),
                Complex64::new(0.5 * s34, 0.0),
                Complex64::new(0.5 * s12, 0.0),
                Complex64::new(0.5 * s12 * s34, 0.0),
            ],
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn species(branch: Branch, p: PunctureIndex) -> ChargeLabel {
        let first_pair_e = matches!(branch, Branch::EeEe | Branch::EeMm);
        let second_pair_e = matches!(branch, Branch::EeEe | Branch::MmEe);
        let is_e = if p <= 2 { first_pair_e } else { second_pair_e };
        if is_e {
            ChargeLabel::E
        } else {
            ChargeLabel::M
        }
    }

    /// Full exchange of puncture `moving` around `around`: each branch
    /// picks up the monodromy R_ab·R_ba of the species the two punctures
    /// hold there. Cross-pair exchanges flip the mixed branches; same-pair
    /// exchanges always meet equal species and act trivially.
    pub fn braid(&self, moving: PunctureIndex, around: PunctureIndex) -> Self {
        let toric = AnyonModel::toric();
        let mut out = *self;
        for (i, &branch) in BRANCHES.iter().enumerate() {
            let a = Self::species(branch, moving);
            let b = Self::species(branch, around);
            let phase = toric.r_symbol(a, b).unwrap() * toric.r_symbol(b, a).unwrap();
            out.amplitudes[i] *= phase;
        }
        out
    }

    /// Probabilities of the correlated fusion outcomes when the pairs are
    /// regrouped as (1,3)(2,4): vacuum-vacuum collects the equal-species
    /// branches, ψ-ψ the mixed ones; anticorrelated outcomes never occur.
    pub fn fuse_probabilities(&self) -> FusionDistribution {
        let a = &self.amplitudes;
        FusionDistribution {
            vac_vac: a[0].norm_sqr() + a[3].norm_sqr(),
            psi_psi: a[1].norm_sqr() + a[2].norm_sqr(),
        }
    }

    /// Signs of the four branch amplitudes relative to the first; defined
    /// for the real equal-magnitude states this oracle handles.
    pub fn branch_signs(&self) -> [i8; 4] {
        let reference = self.amplitudes[0];
        let mut out = [0i8; 4];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let ratio = a / reference;
            debug_assert!(ratio.im.abs() < TOLERANCE && (ratio.re.abs() - 1.0).abs() < TOLERANCE);
            out[i] = if ratio.re > 0.0 { 1 } else { -1 };
        }
        out
    }

    /// Inner-product modulus with another branch state (global phases are
    /// unobservable).
    pub fn overlap_modulus(&self, other: &Self) -> f64 {
        let dot: Complex64 =
            self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum();
        dot.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FusionDistribution {
    pub vac_vac: f64,
    pub psi_psi: f64,
}
