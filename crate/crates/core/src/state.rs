//! Dense N-qubit pure states and single-qubit unitaries.
//!
//! Basis convention, shared by every module in the crate: qubit 1 is the
//! most significant bit of the linear index, so the bit of qubit `m` in an
//! `n`-qubit index `idx` is `(idx >> (n - m)) & 1`. This matches reading a
//! ket `|i1 i2 ... iN>` from left to right as a binary number.
//!
//! Qubits are numbered from 1 everywhere in the public API.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 12;

/// Inputs whose squared norm deviates from 1 by more than this are
/// normalized with a warning.
pub const NORM_TOLERANCE: f64 = 1e-8;

pub const UNITARITY_TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Mask selecting qubit `m` (1-based) in an `n`-qubit index.
#[inline]
pub fn qubit_mask(n: usize, m: usize) -> usize {
    1 << (n - m)
}

#[inline]
pub fn bit_of(idx: usize, n: usize, m: usize) -> u8 {
    ((idx >> (n - m)) & 1) as u8
}

pub fn bits_to_index(bits: &[u8]) -> Result<usize> {
    check_qubit_count(bits.len())?;
    bits.iter().try_fold(0usize, |acc, &b| match b {
        0 | 1 => Ok((acc << 1) | b as usize),
        _ => Err(Error::InvalidArgument(format!(
            "bit value {b} is not 0 or 1"
        ))),
    })
}

pub fn index_to_bits(idx: usize, n: usize) -> Result<Vec<u8>> {
    check_qubit_count(n)?;
    if idx >= 1 << n {
        return Err(Error::InvalidArgument(format!(
            "index {idx} out of range for {n} qubits"
        )));
    }
    Ok((1..=n).map(|m| bit_of(idx, n, m)).collect())
}

pub(crate) fn check_qubit_count(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCount(n))
    }
}

pub(crate) fn check_qubit(qubit: usize, n: usize) -> Result<()> {
    if (1..=n).contains(&qubit) {
        Ok(())
    } else {
        Err(Error::QubitOutOfRange { qubit, n })
    }
}

/// Bit labels `(i1, ..., iN)` of one computational basis ket.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitIndex {
    bits: Vec<u8>,
}

impl QubitIndex {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        bits_to_index(&bits)?;
        Ok(Self { bits })
    }

    pub fn from_index(idx: usize, n: usize) -> Result<Self> {
        Ok(Self {
            bits: index_to_bits(idx, n)?,
        })
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Bit of qubit `m` (1-based).
    pub fn bit(&self, m: usize) -> u8 {
        self.bits[m - 1]
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }
}

impl fmt::Display for QubitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        write!(f, ">")
    }
}

/// `|sum |a|^2 - 1|` for a raw amplitude vector.
pub fn norm_deviation(amp: &[Complex64]) -> f64 {
    (amp.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs()
}

/// Normalized pure state of `n` qubits stored as a dense amplitude vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n: usize,
    amp: Vec<Complex64>,
}

impl PureState {
    /// Builds a state from raw amplitudes, normalizing them. A warning is
    /// logged when the input norm is off by more than [`NORM_TOLERANCE`].
    pub fn new(n: usize, amp: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n)?;
        if amp.len() != 1 << n {
            return Err(Error::AmplitudeCount {
                expected: 1 << n,
                found: amp.len(),
            });
        }
        if amp.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidArgument(
                "amplitudes must be finite".to_string(),
            ));
        }
        let norm_sqr: f64 = amp.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let deviation = (norm_sqr - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            log::warn!(
                "input state norm^2 = {norm_sqr} deviates from 1 by {deviation:e}; normalizing"
            );
        }
        // Already unit to rounding: keep the amplitudes bit-for-bit.
        if deviation <= 8.0 * f64::EPSILON {
            return Ok(Self { n, amp });
        }
        let scale = norm_sqr.sqrt().recip();
        Ok(Self {
            n,
            amp: amp.into_iter().map(|a| a * scale).collect(),
        })
    }

    pub fn basis(n: usize, idx: usize) -> Result<Self> {
        check_qubit_count(n)?;
        if idx >= 1 << n {
            return Err(Error::InvalidArgument(format!(
                "basis index {idx} out of range for {n} qubits"
            )));
        }
        let mut amp = vec![ZERO; 1 << n];
        amp[idx] = ONE;
        Ok(Self { n, amp })
    }

    // Used by transformations that preserve the norm exactly or to
    // roundoff; renormalizing would hide the roundoff we want to measure.
    fn from_parts(n: usize, amp: Vec<Complex64>) -> Self {
        Self { n, amp }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    #[inline]
    pub fn amplitude(&self, idx: usize) -> Complex64 {
        self.amp[idx]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies a single-qubit unitary to its target qubit.
    pub fn apply(&self, lu: &LocalUnitary) -> Result<Self> {
        check_qubit(lu.qubit, self.n)?;
        let mask = qubit_mask(self.n, lu.qubit);
        let u = &lu.u;
        let mut out = self.amp.clone();
        for i0 in (0..self.dim()).filter(|i| i & mask == 0) {
            let i1 = i0 | mask;
            let (a0, a1) = (self.amp[i0], self.amp[i1]);
            out[i0] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
            out[i1] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
        }
        Ok(Self::from_parts(self.n, out))
    }

    /// Applies every unitary in order.
    pub fn apply_all<'a>(&self, lus: impl IntoIterator<Item = &'a LocalUnitary>) -> Result<Self> {
        lus.into_iter()
            .try_fold(self.clone(), |state, lu| state.apply(lu))
    }

    /// Relabels qubits: qubit `m` of `self` becomes qubit `perm[m - 1]` of
    /// the result, so `out[bits'] = self[bits]` with `bits'[perm[m]] = bits[m]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let n = self.n;
        let mut out = vec![ZERO; self.dim()];
        for (idx, &a) in self.amp.iter().enumerate() {
            let mut target = 0;
            for (m, &dest) in (1..=n).zip(perm) {
                if idx & qubit_mask(n, m) != 0 {
                    target |= qubit_mask(n, dest);
                }
            }
            out[target] = a;
        }
        Ok(Self::from_parts(n, out))
    }

    /// `self ⊗ other`, with the qubits of `self` first.
    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        let n = self.n + other.n;
        check_qubit_count(n)?;
        let amp = self
            .amp
            .iter()
            .flat_map(|&a| other.amp.iter().map(move |&b| a * b))
            .collect();
        Ok(Self::from_parts(n, amp))
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidArgument(format!(
            "permutation has {} entries, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n + 1];
    for &dest in perm {
        if !(1..=n).contains(&dest) || std::mem::replace(&mut seen[dest], true) {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation of 1..={n}"
            )));
        }
    }
    Ok(())
}

/// Inverse of a permutation in the convention of [`PureState::permute`].
pub fn inverse_permutation(perm: &[usize]) -> Result<Vec<usize>> {
    check_permutation(perm, perm.len())?;
    let mut inv = vec![0; perm.len()];
    for (m, &dest) in (1..).zip(perm) {
        inv[dest - 1] = m;
    }
    Ok(inv)
}

/// Permutation sending the listed qubits to positions `1, 2, ...` in order
/// and the remaining qubits, in ascending order, to the positions after them.
pub fn leading_permutation(n: usize, leading: &[usize]) -> Result<Vec<usize>> {
    let mut perm = vec![0; n];
    let mut next = 1;
    for &q in leading {
        check_qubit(q, n)?;
        if perm[q - 1] != 0 {
            return Err(Error::InvalidArgument(format!("qubit {q} listed twice")));
        }
        perm[q - 1] = next;
        next += 1;
    }
    for slot in perm.iter_mut().filter(|s| **s == 0) {
        *slot = next;
        next += 1;
    }
    Ok(perm)
}

/// Named benchmark states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedState {
    Ghz,
    W,
    Bell,
    /// The four-qubit state with maximal pair entanglement used as a
    /// benchmark for the pair invariants.
    Chi,
    Basis(usize),
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "ghz" => Ok(Self::Ghz),
            "w" => Ok(Self::W),
            "bell" => Ok(Self::Bell),
            "chi" => Ok(Self::Chi),
            _ => lower
                .strip_prefix("basis:")
                .and_then(|idx| idx.parse().ok())
                .map(Self::Basis)
                .ok_or_else(|| Error::UnknownState(s.to_string())),
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ghz => write!(f, "ghz"),
            Self::W => write!(f, "w"),
            Self::Bell => write!(f, "bell"),
            Self::Chi => write!(f, "chi"),
            Self::Basis(idx) => write!(f, "basis:{idx}"),
        }
    }
}

pub fn named_state(name: NamedState, n: usize) -> Result<PureState> {
    check_qubit_count(n)?;
    let incompatible = |requirement: &str| Error::IncompatibleQubitCount {
        name: name.to_string(),
        requirement: requirement.to_string(),
        n,
    };
    let dim = 1usize << n;
    let mut amp = vec![ZERO; dim];
    match name {
        NamedState::Ghz => {
            if n < 2 {
                return Err(incompatible("n >= 2"));
            }
            amp[0] = ONE;
            amp[dim - 1] = ONE;
        }
        NamedState::W => {
            if n < 2 {
                return Err(incompatible("n >= 2"));
            }
            for m in 1..=n {
                amp[qubit_mask(n, m)] = ONE;
            }
        }
        NamedState::Bell => {
            if n != 2 {
                return Err(incompatible("n = 2"));
            }
            amp[0b00] = ONE;
            amp[0b11] = ONE;
        }
        NamedState::Chi => {
            if n != 4 {
                return Err(incompatible("n = 4"));
            }
            for (idx, sign) in [
                (0b0000, 1.0),
                (0b1111, 1.0),
                (0b0011, -1.0),
                (0b1100, 1.0),
                (0b1010, 1.0),
                (0b0101, -1.0),
                (0b0110, 1.0),
                (0b1001, 1.0),
            ] {
                amp[idx] = Complex64::new(sign, 0.0);
            }
        }
        NamedState::Basis(idx) => return PureState::basis(n, idx),
    }
    let weight = amp.iter().filter(|a| a.norm_sqr() > 0.0).count() as f64;
    let scale = weight.recip().sqrt();
    PureState::new(n, amp.into_iter().map(|a| a * scale).collect())
}

/// Standard complex Gaussian amplitudes, normalized: uniform on the unit sphere.
pub fn sample_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PureState> {
    check_qubit_count(n)?;
    let amp = (0..1usize << n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    PureState::new(n, amp)
}

pub fn random_state(n: usize, seed: u64) -> Result<PureState> {
    sample_state(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A 2×2 unitary acting on one qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalUnitary {
    qubit: usize,
    u: Matrix2<Complex64>,
}

impl LocalUnitary {
    pub fn new(qubit: usize, u: Matrix2<Complex64>) -> Result<Self> {
        if qubit == 0 {
            return Err(Error::QubitOutOfRange { qubit, n: 0 });
        }
        let deviation = (u.adjoint() * u - Matrix2::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if deviation > UNITARITY_TOLERANCE {
            return Err(Error::NotUnitary(deviation));
        }
        Ok(Self { qubit, u })
    }

    pub fn identity(qubit: usize) -> Result<Self> {
        Self::new(qubit, Matrix2::identity())
    }

    /// `(1 + |x|^2)^{-1/2} [[1, -x*], [x, 1]]`, the one-parameter family used
    /// by the font transformation rules. `x = 0` gives the identity exactly.
    pub fn from_x(qubit: usize, x: Complex64) -> Result<Self> {
        let c = (1.0 + x.norm_sqr()).sqrt().recip();
        let u = Matrix2::new(ONE, -x.conj(), x, ONE).map(|z| z * c);
        Self::new(qubit, u)
    }

    /// Haar-random element of SU(2): a uniform point `(a, b)` on the unit
    /// 3-sphere mapped to `[[a, -b*], [b, a*]]`.
    pub fn sample_su2<R: Rng + ?Sized>(qubit: usize, rng: &mut R) -> Result<Self> {
        let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        let a = Complex64::new(g[0], g[1]) / norm;
        let b = Complex64::new(g[2], g[3]) / norm;
        Self::new(qubit, Matrix2::new(a, -b.conj(), b, a.conj()))
    }

    /// Haar-random element of U(2): an SU(2) sample times a uniform phase.
    pub fn sample_u2<R: Rng + ?Sized>(qubit: usize, rng: &mut R) -> Result<Self> {
        let su2 = Self::sample_su2(qubit, rng)?;
        let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        Self::new(qubit, su2.u * phase)
    }

    pub fn haar_su2(qubit: usize, seed: u64) -> Result<Self> {
        Self::sample_su2(qubit, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn haar_u2(qubit: usize, seed: u64) -> Result<Self> {
        Self::sample_u2(qubit, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn qubit(&self) -> usize {
        self.qubit
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.u
    }

    pub fn determinant(&self) -> Complex64 {
        self.u[(0, 0)] * self.u[(1, 1)] - self.u[(0, 1)] * self.u[(1, 0)]
    }

    /// The same matrix acting on a different qubit.
    pub fn on_qubit(&self, qubit: usize) -> Result<Self> {
        Self::new(qubit, self.u)
    }
}
