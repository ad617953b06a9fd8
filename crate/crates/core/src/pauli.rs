//! Bit-packed n-qubit Pauli operators.
//!
//! An operator is stored as `i^k · X^x · Z^z` where `x` and `z` are GF(2)
//! vectors packed into `u64` words and `k` is a phase exponent mod 4. The
//! X block always stands to the left of the Z block, so e.g. the pattern
//! with both bits set on a qubit denotes `XZ = -iY` at phase exponent 0,
//! and `Y` itself is the same pattern at phase exponent 1.
//!
//! Commutation and multiplication reduce to word-wise AND/XOR plus
//! popcounts, which is what keeps tableau updates cheap on lattices with
//! a few thousand qubits.

use std::fmt;
use std::ops::Mul;

/// Dense GF(2) vector packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMask {
    len: usize,
    words: Vec<u64>,
}

impl BitMask {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut mask = Self::zeros(len);
        for &i in indices {
            mask.set(i, true);
        }
        mask
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        if value {
            self.words[i >> 6] |= 1 << (i & 63);
        } else {
            self.words[i >> 6] &= !(1 << (i & 63));
        }
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    /// popcount(self AND other)
    #[inline]
    pub fn and_count(&self, other: &Self) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some((wi << 6) | b)
            })
        })
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }
}

impl fmt::Debug for BitMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// An n-qubit Pauli operator `i^phase_exponent · X^x_mask · Z^z_mask`.
///
/// Hermitian operators satisfy `phase_exponent + |x AND z|  ≡ 0 (mod 2)`;
/// everything a stabilizer group stores (plaquettes, strings, loops) is
/// Hermitian with a definite ±1 sign.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n_qubits: usize,
    x_mask: BitMask,
    z_mask: BitMask,
    phase_exponent: u8,
}

impl PauliOperator {
    pub fn identity(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            x_mask: BitMask::zeros(n_qubits),
            z_mask: BitMask::zeros(n_qubits),
            phase_exponent: 0,
        }
    }

    pub fn from_masks(x_mask: BitMask, z_mask: BitMask, phase_exponent: u8) -> Self {
        assert_eq!(x_mask.len(), z_mask.len(), "x/z masks must cover the same qubits");
        Self { n_qubits: x_mask.len(), x_mask, z_mask, phase_exponent: phase_exponent & 3 }
    }

    pub fn single_x(n_qubits: usize, qubit: usize) -> Self {
        Self::x_string(n_qubits, &[qubit])
    }

    pub fn single_z(n_qubits: usize, qubit: usize) -> Self {
        Self::z_string(n_qubits, &[qubit])
    }

    /// `Y = i·XZ`, Hermitian by construction.
    pub fn single_y(n_qubits: usize, qubit: usize) -> Self {
        Self {
            n_qubits,
            x_mask: BitMask::from_indices(n_qubits, &[qubit]),
            z_mask: BitMask::from_indices(n_qubits, &[qubit]),
            phase_exponent: 1,
        }
    }

    /// Product of X on the given qubits, sign +1.
    pub fn x_string(n_qubits: usize, qubits: &[usize]) -> Self {
        Self {
            n_qubits,
            x_mask: BitMask::from_indices(n_qubits, qubits),
            z_mask: BitMask::zeros(n_qubits),
            phase_exponent: 0,
        }
    }

    /// Product of Z on the given qubits, sign +1.
    pub fn z_string(n_qubits: usize, qubits: &[usize]) -> Self {
        Self {
            n_qubits,
            x_mask: BitMask::zeros(n_qubits),
            z_mask: BitMask::from_indices(n_qubits, qubits),
            phase_exponent: 0,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> &BitMask {
        &self.x_mask
    }

    pub fn z_mask(&self) -> &BitMask {
        &self.z_mask
    }

    pub fn phase_exponent(&self) -> u8 {
        self.phase_exponent
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        let mut w = 0;
        for (a, b) in self.x_mask.words.iter().zip(&self.z_mask.words) {
            w += (a | b).count_ones() as usize;
        }
        w
    }

    pub fn is_identity_pattern(&self) -> bool {
        self.x_mask.is_zero() && self.z_mask.is_zero()
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase_exponent as usize + self.x_mask.and_count(&self.z_mask)).is_multiple_of(2)
    }

    /// Sign relative to the Hermitian representative `i^|x∧z| · X^x Z^z`
    /// (the convention in which overlapping X and Z bits read as +Y).
    ///
    /// Panics if the operator is not Hermitian.
    pub fn sign(&self) -> i8 {
        assert!(self.is_hermitian(), "sign() of a non-Hermitian operator");
        let y_count = self.x_mask.and_count(&self.z_mask) as u8;
        if (self.phase_exponent.wrapping_sub(y_count)) & 3 == 0 {
            1
        } else {
            -1
        }
    }

    /// Flip the overall sign.
    pub fn negate(&mut self) {
        self.phase_exponent = (self.phase_exponent + 2) & 3;
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.negate();
        p
    }

    /// Symplectic-form commutation test; true iff the operators commute.
    pub fn commutes_with(&self, other: &Self) -> bool {
        assert_eq!(
            self.n_qubits, other.n_qubits,
            "commutation between operators on {} and {} qubits",
            self.n_qubits, other.n_qubits
        );
        (self.x_mask.and_count(&other.z_mask) + self.z_mask.and_count(&other.x_mask)).is_multiple_of(2)
    }

    /// Exact group product `self · other`, phase included:
    /// moving `other`'s X block past `self`'s Z block contributes
    /// `(-1)^|self.z ∧ other.x|`.
    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(
            self.n_qubits, other.n_qubits,
            "product of operators on {} and {} qubits",
            self.n_qubits, other.n_qubits
        );
        let mut out = self.clone();
        out.mul_assign_right(other);
        out
    }

    /// In-place `self ← self · other`.
    pub fn mul_assign_right(&mut self, other: &Self) {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        let swaps = self.z_mask.and_count(&other.x_mask);
        self.phase_exponent =
            (self.phase_exponent + other.phase_exponent + 2 * (swaps as u8 & 1)) & 3;
        self.x_mask.xor_assign(&other.x_mask);
        self.z_mask.xor_assign(&other.z_mask);
    }

    /// Qubits in the support, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|&q| self.x_mask.get(q) || self.z_mask.get(q))
            .collect()
    }
}

impl Mul for &PauliOperator {
    type Output = PauliOperator;

    fn mul(self, rhs: &PauliOperator) -> PauliOperator {
        self.product(rhs)
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PauliOperator {
    /// Renders in the XZ/Y convention: `+XIZ`, `-IYI`, `+iXZI`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let y_count = self.x_mask.and_count(&self.z_mask) as u8;
        match (self.phase_exponent.wrapping_sub(y_count)) & 3 {
            0 => write!(f, "+")?,
            1 => write!(f, "+i")?,
            2 => write!(f, "-")?,
            3 => write!(f, "-i")?,
            _ => unreachable!(),
        }
        for q in 0..self.n_qubits {
            let c = match (self.x_mask.get(q), self.z_mask.get(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PauliOperator {
    type Err = String;

    /// Parses strings like `XIZ`, `+YZ`, `-XX`, `-iZI`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (sign, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1u8, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3u8, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0u8, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2u8, rest)
        } else {
            (0u8, s)
        };
        let n = body.chars().count();
        let mut x = BitMask::zeros(n);
        let mut z = BitMask::zeros(n);
        let mut phase = sign;
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' | '.' => {}
                'X' => x.set(q, true),
                'Z' => z.set(q, true),
                'Y' => {
                    x.set(q, true);
                    z.set(q, true);
                    phase = (phase + 1) & 3;
                }
                other => return Err(format!("unexpected Pauli character {other:?}")),
            }
        }
        Ok(Self { n_qubits: n, x_mask: x, z_mask: z, phase_exponent: phase })
    }
}
