//! Dense complex-matrix oracle for small-qubit tests.
//!
//! Everything here is brute force on 2^n × 2^n matrices and exists only to
//! cross-check the bit-packed implementation on ≤3 qubits. Independent of
//! the tableau code paths by construction.

use num_complex::Complex64;

use crate::pauli::PauliOperator;
use crate::tableau::StabilizerTableau;

pub type CMat = Vec<Vec<Complex64>>;

const TOL: f64 = 1e-9;

pub fn identity(dim: usize) -> CMat {
    let mut m = vec![vec![Complex64::ZERO; dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::ONE;
    }
    m
}

pub fn matmul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let mut out = vec![vec![Complex64::ZERO; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == Complex64::ZERO {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let mut out = vec![vec![Complex64::ZERO; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[i / nb][j / nb] * b[i % nb][j % nb];
        }
    }
    out
}

pub fn dagger(a: &CMat) -> CMat {
    let n = a.len();
    let mut out = vec![vec![Complex64::ZERO; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

pub fn scale(a: &CMat, s: Complex64) -> CMat {
    a.iter().map(|row| row.iter().map(|&v| v * s).collect()).collect()
}

pub fn add(a: &CMat, b: &CMat) -> CMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| x + y).collect())
        .collect()
}

pub fn approx_eq(a: &CMat, b: &CMat) -> bool {
    a.iter()
        .zip(b)
        .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| (x - y).norm() < TOL))
}

/// Dense matrix of a Pauli operator in the `i^k · X^x Z^z` convention.
pub fn matrix(p: &PauliOperator) -> CMat {
    let x_mat = vec![
        vec![Complex64::ZERO, Complex64::ONE],
        vec![Complex64::ONE, Complex64::ZERO],
    ];
    let z_mat = vec![
        vec![Complex64::ONE, Complex64::ZERO],
        vec![Complex64::ZERO, -Complex64::ONE],
    ];
    let mut out = identity(1);
    for q in 0..p.n_qubits() {
        let mut factor = identity(2);
        if p.x_mask().get(q) {
            factor = matmul(&factor, &x_mat);
        }
        if p.z_mask().get(q) {
            factor = matmul(&factor, &z_mat);
        }
        out = kron(&out, &factor);
    }
    scale(&out, Complex64::i().powu(p.phase_exponent() as u32))
}

pub fn commute(a: &PauliOperator, b: &PauliOperator) -> bool {
    let ab = matmul(&matrix(a), &matrix(b));
    let ba = matmul(&matrix(b), &matrix(a));
    approx_eq(&ab, &ba)
}

/// Projector onto the stabilized subspace: ∏ (I + g)/2 over the generators.
///
/// For a pure tableau this is a rank-1 projector |ψ⟩⟨ψ|, which identifies
/// the state with the global phase already quotiented out.
pub fn projector(t: &StabilizerTableau) -> CMat {
    let dim = 1usize << t.n_qubits();
    let mut proj = identity(dim);
    for g in t.stabilizers() {
        let term = scale(&add(&identity(dim), &matrix(g)), Complex64::new(0.5, 0.0));
        proj = matmul(&proj, &term);
    }
    proj
}

/// State equality up to global phase, decided by comparing projectors.
pub fn states_equal(a: &StabilizerTableau, b: &StabilizerTableau) -> bool {
    approx_eq(&projector(a), &projector(b))
}

pub fn trace(a: &CMat) -> Complex64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// ⟨p⟩ on the tableau state, computed densely: tr(P_state · p) / tr(P_state).
pub fn expectation(t: &StabilizerTableau, p: &PauliOperator) -> f64 {
    let proj = projector(t);
    let num = trace(&matmul(&proj, &matrix(p)));
    let den = trace(&proj);
    (num / den).re
}
