//! Stabilizer states as signed Pauli tableaux.
//!
//! A pure state on n qubits is held as n stabilizer generators plus n paired
//! destabilizers in the Aaronson–Gottesman style: destabilizer `i`
//! anticommutes with stabilizer `i` and commutes with every other row. The
//! pairing makes Pauli measurement and sign lookup O(n²) bit operations
//! instead of a fresh Gaussian elimination per query.
//!
//! Only two state transformations exist here: applying a Hermitian Pauli and
//! measuring a Hermitian Pauli. That is all hole creation, transport, and
//! loop readout ever need; general Clifford gates are deliberately absent.

use rand::Rng;
use thiserror::Error;

use crate::pauli::PauliOperator;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableauError {
    #[error("generators are dependent over GF(2): row {0} reduced to identity")]
    DependentGenerators(usize),
    #[error("tableau holds -I; sign bookkeeping is corrupt")]
    InconsistentSigns,
    #[error("states on {0} and {1} qubits cannot be compared")]
    SizeMismatch(usize, usize),
    #[error("measurement of {0} is deterministic with sign {1}, cannot force {2}")]
    ForcedOutcomeObstructed(String, i8, i8),
}

/// How a measurement outcome was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    /// The operator was already ± a stabilizer group element; state untouched.
    Deterministic,
    /// The operator anticommuted with the generator now parked at this
    /// destabilizer index; applying that old generator flips the branch.
    Random { witness: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureResult {
    pub outcome: i8,
    pub kind: MeasureKind,
}

/// A pure stabilizer state with sign-exact generators.
#[derive(Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    n_qubits: usize,
    stabs: Vec<PauliOperator>,
    destabs: Vec<PauliOperator>,
}

impl StabilizerTableau {
    /// |0...0⟩: stabilized by +Z on every qubit, destabilized by X.
    pub fn zero_state(n_qubits: usize) -> Self {
        let stabs = (0..n_qubits).map(|q| PauliOperator::single_z(n_qubits, q)).collect();
        let destabs = (0..n_qubits).map(|q| PauliOperator::single_x(n_qubits, q)).collect();
        Self { n_qubits, stabs, destabs }
    }

    /// Rebuild a state from commuting Hermitian generators with recorded
    /// signs. The patterns are measured onto |0...0⟩ first; the signs are
    /// then reached by flipping stabilizer rows through their paired
    /// destabilizers, which is a small GF(2) linear solve. Intended for
    /// tests and fixtures; panics on an inconsistent set.
    pub fn from_generators(n_qubits: usize, generators: &[PauliOperator]) -> Self {
        use crate::pauli::BitMask;

        let mut state = Self::zero_state(n_qubits);
        let mut rng = deterministic_rng();
        for (i, g) in generators.iter().enumerate() {
            assert!(g.is_hermitian(), "generator {g} is not Hermitian");
            for h in &generators[i + 1..] {
                assert!(g.commutes_with(h), "generators {g} and {h} anticommute");
            }
            state.measure(g, &mut rng);
        }
        // express each generator over the current stabilizer rows (the
        // destabilizers flag the subset) and record which signs are off
        let mut equations: Vec<(BitMask, bool)> = Vec::with_capacity(generators.len());
        for g in generators {
            let mut subset = BitMask::zeros(n_qubits);
            for (k, d) in state.destabs.iter().enumerate() {
                if !d.commutes_with(g) {
                    subset.set(k, true);
                }
            }
            equations.push((subset, state.group_sign(g) < 0));
        }
        // flipping stabilizer row k (by conjugating with destabilizer k)
        // toggles every generator whose subset contains k
        let flips = solve_gf2(equations, n_qubits)
            .expect("generators must be mutually consistent");
        for k in flips.ones() {
            let d = &state.destabs[k];
            // conjugation only sees the pattern, so use its Hermitian form
            let fixer = PauliOperator::from_masks(
                d.x_mask().clone(),
                d.z_mask().clone(),
                (d.x_mask().and_count(d.z_mask()) & 3) as u8,
            );
            state.apply_pauli(&fixer);
        }
        debug_assert!(generators.iter().all(|g| state.expectation(g) == 1));
        state
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn stabilizers(&self) -> &[PauliOperator] {
        &self.stabs
    }

    pub fn destabilizers(&self) -> &[PauliOperator] {
        &self.destabs
    }

    /// Conjugate the state by a Hermitian Pauli: generator signs flip where
    /// they anticommute with `p`; the group itself is unchanged.
    pub fn apply_pauli(&mut self, p: &PauliOperator) {
        assert!(p.is_hermitian(), "apply_pauli requires a Hermitian operator, got {p}");
        assert_eq!(p.n_qubits(), self.n_qubits);
        for g in self.stabs.iter_mut().chain(self.destabs.iter_mut()) {
            if !g.commutes_with(p) {
                g.negate();
            }
        }
    }

    /// ⟨p⟩ for Hermitian p: +1 / −1 when ±p is in the stabilizer group,
    /// 0 when p anticommutes with some generator. Does not modify the state.
    pub fn expectation(&self, p: &PauliOperator) -> i8 {
        assert!(p.is_hermitian(), "expectation of a non-Hermitian operator {p}");
        assert_eq!(p.n_qubits(), self.n_qubits);
        if self.stabs.iter().any(|g| !g.commutes_with(p)) {
            return 0;
        }
        self.group_sign(p)
    }

    /// Sign with which `p` (known to commute with every generator) sits in
    /// the group: the destabilizers flag exactly which generators multiply
    /// to its pattern.
    fn group_sign(&self, p: &PauliOperator) -> i8 {
        let mut prod = PauliOperator::identity(self.n_qubits);
        for (d, s) in self.destabs.iter().zip(&self.stabs) {
            if !d.commutes_with(p) {
                prod.mul_assign_right(s);
            }
        }
        assert!(
            prod.x_mask() == p.x_mask() && prod.z_mask() == p.z_mask(),
            "operator {p} commutes with all generators but is not in the group"
        );
        let diff = (prod.phase_exponent().wrapping_sub(p.phase_exponent())) & 3;
        debug_assert!(diff == 0 || diff == 2);
        if diff == 0 {
            1
        } else {
            -1
        }
    }

    /// Measure Hermitian `p`. Anticommuting case: outcome drawn from `rng`,
    /// every anticommuting row is repaired by the witness generator, the
    /// witness moves to the destabilizer side and ±p takes its place.
    /// Commuting case: deterministic outcome, state untouched.
    pub fn measure(&mut self, p: &PauliOperator, rng: &mut impl Rng) -> MeasureResult {
        assert!(p.is_hermitian(), "measurement of a non-Hermitian operator {p}");
        assert_eq!(p.n_qubits(), self.n_qubits);

        let witness = self.stabs.iter().position(|g| !g.commutes_with(p));
        match witness {
            None => MeasureResult {
                outcome: self.group_sign(p),
                kind: MeasureKind::Deterministic,
            },
            Some(k) => {
                let outcome: i8 = if rng.random_bool(0.5) { 1 } else { -1 };
                self.install(p, k, outcome);
                MeasureResult { outcome, kind: MeasureKind::Random { witness: k } }
            }
        }
    }

    /// Measure `p` and force the outcome to `want`: a random −branch is
    /// flipped by applying the witness generator (a stabilizer of the
    /// pre-measurement state, so the result is exactly the wanted branch).
    /// A deterministic outcome of the wrong sign is an obstruction error.
    pub fn measure_expect(
        &mut self,
        p: &PauliOperator,
        want: i8,
        rng: &mut impl Rng,
    ) -> Result<(), TableauError> {
        debug_assert!(want == 1 || want == -1);
        let result = self.measure(p, rng);
        if result.outcome == want {
            return Ok(());
        }
        match result.kind {
            MeasureKind::Random { witness } => {
                let repair = self.destabs[witness].clone();
                self.apply_pauli(&repair);
                Ok(())
            }
            MeasureKind::Deterministic => Err(TableauError::ForcedOutcomeObstructed(
                p.to_string(),
                result.outcome,
                want,
            )),
        }
    }

    /// Shared update for the anticommuting measurement branch.
    fn install(&mut self, p: &PauliOperator, k: usize, outcome: i8) {
        let old = self.stabs[k].clone();
        for (i, g) in self.stabs.iter_mut().enumerate() {
            if i != k && !g.commutes_with(p) {
                g.mul_assign_right(&old);
            }
        }
        for d in self.destabs.iter_mut() {
            if !d.commutes_with(p) {
                d.mul_assign_right(&old);
            }
        }
        self.destabs[k] = old;
        let mut installed = p.clone();
        if outcome < 0 {
            installed.negate();
        }
        self.stabs[k] = installed;
    }

    /// Unique representative: stabilizer rows in reduced row echelon form
    /// over GF(2) with pivot columns ordered X-block first, then Z-block,
    /// qubit index ascending within each block. Signs are propagated through
    /// every row operation, and the destabilizer pairing is maintained.
    pub fn canonical_form(&self) -> Result<Self, TableauError> {
        let mut t = self.clone();
        t.canonicalize_in_place()?;
        Ok(t)
    }

    fn canonicalize_in_place(&mut self) -> Result<(), TableauError> {
        let n = self.n_qubits;
        let mut pivot_row = 0;
        for col in 0..2 * n {
            let bit_of = |g: &PauliOperator| {
                if col < n {
                    g.x_mask().get(col)
                } else {
                    g.z_mask().get(col - n)
                }
            };
            let Some(found) = (pivot_row..self.stabs.len()).find(|&r| bit_of(&self.stabs[r]))
            else {
                continue;
            };
            self.stabs.swap(pivot_row, found);
            self.destabs.swap(pivot_row, found);
            // clear this column from every other row; the destabilizer of the
            // *added* row absorbs the paired update (R_i ← R_i·R_k requires
            // D_k ← D_k·D_i to keep the symplectic pairing intact)
            let pivot = self.stabs[pivot_row].clone();
            let pivot_destab_update: Vec<usize> = (0..self.stabs.len())
                .filter(|&r| r != pivot_row && bit_of(&self.stabs[r]))
                .collect();
            for &r in &pivot_destab_update {
                self.stabs[r].mul_assign_right(&pivot);
                let d = self.destabs[r].clone();
                self.destabs[pivot_row].mul_assign_right(&d);
            }
            pivot_row += 1;
        }
        if let Some(bad) = self.stabs[pivot_row..].iter().position(|g| g.is_identity_pattern()) {
            let row = pivot_row + bad;
            if self.stabs[row].phase_exponent() != 0 {
                return Err(TableauError::InconsistentSigns);
            }
            return Err(TableauError::DependentGenerators(row));
        }
        if pivot_row < self.stabs.len() {
            return Err(TableauError::DependentGenerators(pivot_row));
        }
        Ok(())
    }

    /// Exact state equality up to global phase: canonical forms compared
    /// row by row, signs included.
    pub fn states_equal(&self, other: &Self) -> Result<bool, TableauError> {
        if self.n_qubits != other.n_qubits {
            return Err(TableauError::SizeMismatch(self.n_qubits, other.n_qubits));
        }
        let a = self.canonical_form()?;
        let b = other.canonical_form()?;
        Ok(a.stabs == b.stabs)
    }

    /// Structural invariants: pairwise commuting Hermitian generators,
    /// symplectic destabilizer pairing, independence.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.n_qubits;
        if self.stabs.len() != n || self.destabs.len() != n {
            return Err(format!("expected {n} stabilizers and destabilizers"));
        }
        for (i, g) in self.stabs.iter().enumerate() {
            if !g.is_hermitian() {
                return Err(format!("stabilizer {i} not Hermitian: {g}"));
            }
            for (j, h) in self.stabs.iter().enumerate().skip(i + 1) {
                if !g.commutes_with(h) {
                    return Err(format!("stabilizers {i} and {j} anticommute"));
                }
            }
        }
        for (i, d) in self.destabs.iter().enumerate() {
            for (j, g) in self.stabs.iter().enumerate() {
                let expect_commute = i != j;
                if d.commutes_with(g) != expect_commute {
                    return Err(format!("destabilizer {i} pairing broken against stabilizer {j}"));
                }
            }
        }
        self.canonical_form().map_err(|e| e.to_string())?;
        Ok(())
    }
}

impl std::fmt::Debug for StabilizerTableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "StabilizerTableau on {} qubits", self.n_qubits)?;
        for g in &self.stabs {
            writeln!(f, "  {g}")?;
        }
        Ok(())
    }
}

/// A fixed-seed source for code paths whose outcomes are sign-forced anyway.
fn deterministic_rng() -> rand_chacha::ChaCha12Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha12Rng::seed_from_u64(0)
}

/// Solve `A·f = b` over GF(2); equation rows are (coefficients, rhs).
fn solve_gf2(
    mut rows: Vec<(crate::pauli::BitMask, bool)>,
    n_vars: usize,
) -> Option<crate::pauli::BitMask> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..n_vars {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r].0.get(col)) else {
            continue;
        };
        rows.swap(rank, r);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.0.get(col) {
                row.0.xor_assign(&pivot.0);
                row.1 ^= pivot.1;
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    if rows[rank..].iter().any(|(coeffs, rhs)| *rhs && coeffs.is_zero()) {
        return None;
    }
    let mut f = crate::pauli::BitMask::zeros(n_vars);
    for &(r, c) in &pivots {
        if rows[r].1 {
            f.set(c, true);
        }
    }
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    #[test]
    fn zero_state_expectations() {
        let t = StabilizerTableau::zero_state(2);
        assert_eq!(t.expectation(&p("ZI")), 1);
        assert_eq!(t.expectation(&p("XI")), 0);
        assert_eq!(t.expectation(&p("ZZ")), 1);
        assert_eq!(t.expectation(&p("-ZI")), -1);
    }

    #[test]
    fn apply_x_flips_z_sign() {
        let mut t = StabilizerTableau::zero_state(1);
        t.apply_pauli(&p("X"));
        assert_eq!(t.expectation(&p("Z")), -1);
        t.apply_pauli(&p("Z"));
        assert_eq!(t.expectation(&p("Z")), -1); // Z commutes with its own eigenstate
    }

    #[test]
    fn apply_commuting_pauli_is_identity_on_state() {
        // ⟨Z₁Z₂, X₁X₂⟩ is a Bell state; X₁X₂ is itself a stabilizer.
        let bell = StabilizerTableau::from_generators(2, &[p("ZZ"), p("XX")]);
        let mut moved = bell.clone();
        moved.apply_pauli(&p("XX"));
        assert!(moved.states_equal(&bell).unwrap());
        assert!(dense::states_equal(&moved, &bell));
    }

    #[test]
    fn measure_stabilizer_is_deterministic() {
        let mut t = StabilizerTableau::zero_state(1);
        let r = t.measure(&p("Z"), &mut rng(1));
        assert_eq!(r.outcome, 1);
        assert_eq!(r.kind, MeasureKind::Deterministic);
        assert_eq!(t.expectation(&p("Z")), 1);
    }

    #[test]
    fn measure_anticommuting_is_uniform() {
        // dense oracle: ⟨0|X|0⟩ = 0, so both outcomes carry probability 1/2
        let t = StabilizerTableau::zero_state(1);
        assert_eq!(dense::expectation(&t, &p("X")), 0.0);

        let mut ones = 0usize;
        let trials = 2000;
        let mut r = rng(7);
        for _ in 0..trials {
            let mut fresh = t.clone();
            if fresh.measure(&p("X"), &mut r).outcome == 1 {
                ones += 1;
            }
        }
        // 3σ band around 1000 with σ ≈ 22.4
        assert!((ones as f64 - 1000.0).abs() < 67.0, "got {ones} / {trials}");
    }

    #[test]
    fn measure_twice_repeats_deterministically() {
        let mut t = StabilizerTableau::zero_state(3);
        let mut r = rng(3);
        let op = p("XZX");
        let first = t.measure(&op, &mut r);
        assert!(matches!(first.kind, MeasureKind::Random { .. }));
        let second = t.measure(&op, &mut r);
        assert_eq!(second.kind, MeasureKind::Deterministic);
        assert_eq!(second.outcome, first.outcome);
        t.check_invariants().unwrap();
    }

    #[test]
    fn measure_joint_parity_on_bell_pair() {
        let mut t = StabilizerTableau::from_generators(2, &[p("XX"), p("ZZ")]);
        let r = t.measure(&p("ZZ"), &mut rng(5));
        assert_eq!(r.outcome, 1);
        assert_eq!(r.kind, MeasureKind::Deterministic);
    }

    #[test]
    fn expectation_of_product_on_flipped_pair() {
        let t = StabilizerTableau::from_generators(2, &[p("-ZI"), p("-IZ")]);
        assert_eq!(t.expectation(&p("ZZ")), 1);
        assert_eq!(t.expectation(&p("ZI")), -1);
        assert!((dense::expectation(&t, &p("ZZ")) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn forced_measurement_matches_postselection() {
        for want in [1i8, -1] {
            let mut t = StabilizerTableau::zero_state(2);
            t.measure_expect(&p("XX"), want, &mut rng(11)).unwrap();
            assert_eq!(t.expectation(&p("XX")), want);
            assert_eq!(t.expectation(&p("ZZ")), 1); // ZZ commutes, undisturbed
        }
    }

    #[test]
    fn forced_measurement_obstruction_errors() {
        let mut t = StabilizerTableau::zero_state(1);
        let err = t.measure_expect(&p("Z"), -1, &mut rng(1)).unwrap_err();
        assert!(matches!(err, TableauError::ForcedOutcomeObstructed(_, 1, -1)));
    }

    #[test]
    fn canonical_eliminates_redundant_pattern() {
        // ⟨Z₁Z₂, Z₂⟩ and ⟨Z₁, Z₂⟩ generate the same group
        let a = StabilizerTableau::from_generators(2, &[p("ZZ"), p("IZ")]);
        let canon = a.canonical_form().unwrap();
        assert_eq!(canon.stabilizers()[0], p("ZI"));
        assert_eq!(canon.stabilizers()[1], p("IZ"));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let t = StabilizerTableau::from_generators(3, &[p("XXX"), p("ZZI"), p("IZZ")]);
        let once = t.canonical_form().unwrap();
        let twice = once.canonical_form().unwrap();
        assert_eq!(once.stabilizers(), twice.stabilizers());
    }

    #[test]
    fn states_equal_examples() {
        let a = StabilizerTableau::from_generators(2, &[p("XX"), p("ZZ")]);
        // same group, different presentation: {XX·ZZ, ZZ} = {-YY, ZZ}
        let b = StabilizerTableau::from_generators(2, &[p("XX").product(&p("ZZ")), p("ZZ")]);
        assert!(a.states_equal(&a).unwrap());
        assert!(a.states_equal(&b).unwrap());

        let plus = StabilizerTableau::from_generators(1, &[p("Z")]);
        let minus = StabilizerTableau::from_generators(1, &[p("-Z")]);
        assert!(!plus.states_equal(&minus).unwrap());
    }

    /// Random stabilizer states on ≤3 qubits, reached by seeded random Pauli
    /// measurements with random sign forcing, checked against the dense
    /// projector oracle.
    #[test]
    fn states_equal_agrees_with_dense_oracle() {
        let mut r = rng(2024);
        for n in 1..=3usize {
            for _case in 0..60 {
                let a = random_state(n, &mut r);
                let b = random_state(n, &mut r);
                let fast = a.states_equal(&b).unwrap();
                let slow = dense::states_equal(&a, &b);
                assert_eq!(fast, slow, "disagreement on\n{a:?}\nvs\n{b:?}");
                // reflexivity via an independently re-derived presentation
                let shuffled = reshuffle(&a, &mut r);
                assert!(a.states_equal(&shuffled).unwrap());
                assert!(dense::states_equal(&a, &shuffled));
            }
        }
    }

    fn random_pauli(n: usize, r: &mut impl Rng) -> PauliOperator {
        loop {
            let mut x = crate::pauli::BitMask::zeros(n);
            let mut z = crate::pauli::BitMask::zeros(n);
            for q in 0..n {
                x.set(q, r.random_bool(0.5));
                z.set(q, r.random_bool(0.5));
            }
            let y_count = x.and_count(&z) as u8;
            let phase = (y_count + if r.random_bool(0.5) { 2 } else { 0 }) & 3;
            let op = PauliOperator::from_masks(x, z, phase);
            if !op.is_identity_pattern() {
                return op;
            }
        }
    }

    fn random_state(n: usize, r: &mut impl Rng) -> StabilizerTableau {
        let mut t = StabilizerTableau::zero_state(n);
        for _ in 0..3 * n {
            let op = random_pauli(n, r);
            t.measure(&op, r);
        }
        t.check_invariants().unwrap();
        t
    }

    /// Same state, different generator presentation: random row products.
    fn reshuffle(t: &StabilizerTableau, r: &mut impl Rng) -> StabilizerTableau {
        let gens: Vec<PauliOperator> = t.stabilizers().to_vec();
        let n = gens.len();
        let mut rows = gens.clone();
        for _ in 0..10 {
            let i = r.random_range(0..n);
            let j = r.random_range(0..n);
            if i != j {
                let other = rows[j].clone();
                rows[i].mul_assign_right(&other);
            }
        }
        StabilizerTableau::from_generators(t.n_qubits(), &rows)
    }

    #[test]
    fn invariants_hold_after_measurement_chains() {
        let mut r = rng(99);
        for n in 1..=4usize {
            let mut t = StabilizerTableau::zero_state(n);
            for _ in 0..40 {
                let op = random_pauli(n, &mut r);
                t.measure(&op, &mut r);
            }
            t.check_invariants().unwrap();
        }
    }
}
