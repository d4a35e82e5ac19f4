//! Negativity fonts: 2×2 matrices of amplitudes whose determinants are the
//! building blocks of every invariant in this crate.
//!
//! A font is fixed by a target qubit `p`, a set of *varying* qubits that
//! contains `p`, and a base ket `i`. Let `j` be `i` with every varying qubit
//! flipped. The font matrix is
//!
//! ```text
//! [ a(i)            a(j with p = i_p) ]
//! [ a(i with p = j_p)   a(j)          ]
//! ```
//!
//! Rows are indexed by the bit of `p`, columns by whether the other varying
//! qubits take their values from `i` or from `j`. Qubits outside the varying
//! set are spectators and keep the bit they have in `i`. `K = |vary|` is the
//! "way" of the font.
//!
//! Swapping rows (flipping `i_p`) or swapping columns (flipping every other
//! varying qubit) negates the determinant, so each font appears four times
//! among base kets up to sign. The canonical representative has `i_p = 0`
//! and `i_r = 0` for the smallest varying qubit `r != p`.

use std::collections::BTreeMap;

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{bit_of, check_qubit, check_qubit_count, qubit_mask, PureState};

/// Label of one negativity font.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FontSpec {
    n: usize,
    p: usize,
    vary: usize,
    base: usize,
}

impl FontSpec {
    /// `bits` is the full base ket `(i1, ..., iN)`: superscript bits on the
    /// varying qubits, fixed values on the spectators.
    pub fn new(n: usize, p: usize, vary: &[usize], bits: &[u8]) -> Result<Self> {
        check_qubit_count(n)?;
        check_qubit(p, n)?;
        if bits.len() != n {
            return Err(Error::InvalidFont(format!(
                "base ket has {} bits, expected {n}",
                bits.len()
            )));
        }
        let mut vary_mask = 0;
        for &m in vary {
            check_qubit(m, n)?;
            vary_mask |= qubit_mask(n, m);
        }
        let base = crate::state::bits_to_index(bits)?;
        Self::from_masks(n, p, vary_mask, base)
    }

    /// Paper-style label: the spectators with their fixed bits, and the
    /// superscript bits of the remaining (varying) qubits in ascending order.
    pub fn from_labels(n: usize, p: usize, spectators: &[(usize, u8)], sup: &[u8]) -> Result<Self> {
        check_qubit_count(n)?;
        let mut bits = vec![2u8; n];
        for &(m, b) in spectators {
            check_qubit(m, n)?;
            bits[m - 1] = b;
        }
        let vary: Vec<usize> = (1..=n).filter(|&m| bits[m - 1] == 2).collect();
        if vary.len() != sup.len() {
            return Err(Error::InvalidFont(format!(
                "{} superscript bits for {} varying qubits",
                sup.len(),
                vary.len()
            )));
        }
        for (&m, &b) in vary.iter().zip(sup) {
            bits[m - 1] = b;
        }
        Self::new(n, p, &vary, &bits)
    }

    pub(crate) fn from_masks(n: usize, p: usize, vary: usize, base: usize) -> Result<Self> {
        let spec = Self { n, p, vary, base };
        if vary >= 1 << n || base >= 1 << n {
            return Err(Error::InvalidFont("mask out of range".to_string()));
        }
        if vary & spec.p_mask() == 0 {
            return Err(Error::InvalidFont(format!(
                "target qubit {p} is not among the varying qubits"
            )));
        }
        if spec.k() < 2 {
            return Err(Error::InvalidFont(format!(
                "a font needs at least 2 varying qubits, got {}",
                spec.k()
            )));
        }
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn k(&self) -> usize {
        self.vary.count_ones() as usize
    }

    pub fn vary(&self) -> Vec<usize> {
        (1..=self.n).filter(|&m| self.varies(m)).collect()
    }

    pub fn varies(&self, m: usize) -> bool {
        self.vary & qubit_mask(self.n, m) != 0
    }

    pub fn spectators(&self) -> Vec<(usize, u8)> {
        (1..=self.n)
            .filter(|&m| !self.varies(m))
            .map(|m| (m, bit_of(self.base, self.n, m)))
            .collect()
    }

    /// Bits of the base ket on the varying qubits, in ascending qubit order.
    pub fn superscript(&self) -> Vec<u8> {
        self.vary()
            .into_iter()
            .map(|m| bit_of(self.base, self.n, m))
            .collect()
    }

    pub fn base_index(&self) -> usize {
        self.base
    }

    fn p_mask(&self) -> usize {
        qubit_mask(self.n, self.p)
    }

    fn partner_mask(&self) -> usize {
        self.vary & !self.p_mask()
    }

    /// Smallest varying qubit other than the target.
    fn first_partner(&self) -> usize {
        (1..=self.n)
            .find(|&m| m != self.p && self.varies(m))
            .expect("k >= 2 guarantees a partner")
    }

    /// Linear indices of the four amplitudes, row-major.
    pub fn indices(&self) -> [usize; 4] {
        let i = self.base;
        let j = i ^ self.vary;
        let pm = self.p_mask();
        [i, j ^ pm, i ^ pm, j]
    }

    /// Same font with rows swapped (negated determinant).
    pub fn flip_target(&self) -> Self {
        Self {
            base: self.base ^ self.p_mask(),
            ..*self
        }
    }

    /// Same font with columns swapped (negated determinant).
    pub fn flip_partners(&self) -> Self {
        Self {
            base: self.base ^ self.partner_mask(),
            ..*self
        }
    }

    /// Flips the superscript bit of one varying qubit.
    pub fn flip_bit(&self, m: usize) -> Result<Self> {
        check_qubit(m, self.n)?;
        Ok(Self {
            base: self.base ^ qubit_mask(self.n, m),
            ..*self
        })
    }

    pub fn is_canonical(&self) -> bool {
        let r0 = qubit_mask(self.n, self.first_partner());
        self.base & (self.p_mask() | r0) == 0
    }

    /// Canonical representative and the sign `s` with `det(self) = s * det(canonical)`.
    pub fn canonical(&self) -> (Self, f64) {
        let mut spec = *self;
        let mut sign = 1.0;
        if spec.base & spec.p_mask() != 0 {
            spec = spec.flip_target();
            sign = -sign;
        }
        if spec.base & qubit_mask(spec.n, spec.first_partner()) != 0 {
            spec = spec.flip_partners();
            sign = -sign;
        }
        (spec, sign)
    }

    fn check_state(&self, state: &PureState) -> Result<()> {
        if state.n() != self.n {
            return Err(Error::InvalidFont(format!(
                "font is defined for {} qubits, state has {}",
                self.n,
                state.n()
            )));
        }
        Ok(())
    }
}

/// A font together with its determinant on some state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FontValue {
    pub spec: FontSpec,
    pub d: Complex64,
}

pub fn font_matrix(state: &PureState, spec: &FontSpec) -> Result<Matrix2<Complex64>> {
    spec.check_state(state)?;
    let [a, b, c, d] = spec.indices().map(|idx| state.amplitude(idx));
    Ok(Matrix2::new(a, b, c, d))
}

#[inline]
pub(crate) fn det_unchecked(state: &PureState, spec: &FontSpec) -> Complex64 {
    let [a, b, c, d] = spec.indices().map(|idx| state.amplitude(idx));
    a * d - b * c
}

pub fn font_det(state: &PureState, spec: &FontSpec) -> Result<Complex64> {
    spec.check_state(state)?;
    Ok(det_unchecked(state, spec))
}

pub fn font_value(state: &PureState, spec: FontSpec) -> Result<FontValue> {
    Ok(FontValue {
        spec,
        d: font_det(state, &spec)?,
    })
}

/// Number of canonical `K`-way fonts with a given target: the varying set is
/// `p` plus `K - 1` of the other qubits, spectators are free, and all but two
/// superscript bits are free.
pub fn canonical_font_count(n: usize, k: usize) -> usize {
    binomial(n - 1, k - 1) << (n - 2)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All canonical `K`-way fonts with target `p`, ordered by varying set then base ket.
pub fn enumerate_fonts(n: usize, p: usize, k: usize) -> Result<Vec<FontSpec>> {
    check_qubit_count(n)?;
    check_qubit(p, n)?;
    if !(2..=n).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "font way K = {k} outside 2..={n}"
        )));
    }
    let p_mask = qubit_mask(n, p);
    let mut out = Vec::with_capacity(canonical_font_count(n, k));
    for vary in (0..1usize << n).filter(|v| v & p_mask != 0 && v.count_ones() as usize == k) {
        let probe = FontSpec {
            n,
            p,
            vary,
            base: 0,
        };
        let fixed = p_mask | qubit_mask(n, probe.first_partner());
        for base in (0..1usize << n).filter(|b| b & fixed == 0) {
            out.push(FontSpec { n, p, vary, base });
        }
    }
    Ok(out)
}

/// Checks both sign relations of an N-way font: flipping the target bit and
/// flipping all partner bits each negate the determinant.
pub fn sign_relations_check(state: &PureState, spec: &FontSpec) -> Result<bool> {
    spec.check_state(state)?;
    if spec.k() != spec.n {
        return Err(Error::InvalidFont(format!(
            "sign relations are checked on N-way fonts, got K = {}",
            spec.k()
        )));
    }
    const TOL: f64 = 1e-12;
    let d = det_unchecked(state, spec);
    let partners = det_unchecked(state, &spec.flip_partners());
    let target = det_unchecked(state, &spec.flip_target());
    Ok((d + partners).norm() <= TOL && (d + target).norm() <= TOL)
}

/// Four fonts tied together by a unitary on a non-target qubit `q`.
///
/// Starting from an outer font whose varying set contains `p` and `q` with
/// `i_p = i_q = 0`:
/// * `d0`: the outer font,
/// * `d1`: the outer font with `i_q = 1`,
/// * `f0`, `f1`: the fonts with one fewer varying qubit, `q` demoted to a
///   spectator fixed at 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FontQuartet {
    pub d0: Complex64,
    pub d1: Complex64,
    pub f0: Complex64,
    pub f1: Complex64,
}

impl FontQuartet {
    /// The four labels `[d0, d1, f0, f1]` for an outer font and qubit `q`.
    pub fn specs(outer: &FontSpec, q: usize) -> Result<[FontSpec; 4]> {
        let n = outer.n;
        check_qubit(q, n)?;
        if q == outer.p {
            return Err(Error::InvalidArgument(format!(
                "transformed qubit {q} equals the font target"
            )));
        }
        if !outer.varies(q) {
            return Err(Error::InvalidFont(format!("qubit {q} is not varying")));
        }
        if outer.k() < 3 {
            return Err(Error::InvalidFont(
                "demoting a qubit needs an outer font with K >= 3".to_string(),
            ));
        }
        let qm = qubit_mask(n, q);
        let base = outer.base & !qm & !outer.p_mask();
        let inner = outer.vary & !qm;
        Ok([
            FontSpec::from_masks(n, outer.p, outer.vary, base)?,
            FontSpec::from_masks(n, outer.p, outer.vary, base | qm)?,
            FontSpec::from_masks(n, outer.p, inner, base)?,
            FontSpec::from_masks(n, outer.p, inner, base | qm)?,
        ])
    }

    pub fn evaluate(state: &PureState, outer: &FontSpec, q: usize) -> Result<Self> {
        outer.check_state(state)?;
        let [d0, d1, f0, f1] = Self::specs(outer, q)?.map(|s| det_unchecked(state, &s));
        Ok(Self { d0, d1, f0, f1 })
    }

    pub fn values(&self) -> [Complex64; 4] {
        [self.d0, self.d1, self.f0, self.f1]
    }

    /// Determinants after `LocalUnitary::from_x(q, x)`, computed from the
    /// current determinants alone.
    ///
    /// Expanding the transformed columns gives four rules; note the minus
    /// sign on the `x*` term in `f0'`:
    /// ```text
    /// d0' = (d0 - |x|^2 d1 + x f0 - x* f1) / (1 + |x|^2)
    /// d1' = (d1 - |x|^2 d0 + x f0 - x* f1) / (1 + |x|^2)
    /// f0' = (f0 - x* (d0 + d1) + x*^2 f1)  / (1 + |x|^2)
    /// f1' = (f1 + x  (d0 + d1) + x^2 f0)   / (1 + |x|^2)
    /// ```
    pub fn transformed(&self, x: Complex64) -> Self {
        let scale = (1.0 + x.norm_sqr()).recip();
        let xc = x.conj();
        let x2 = x.norm_sqr();
        let mixed = x * self.f0 - xc * self.f1;
        let sum = self.d0 + self.d1;
        Self {
            d0: (self.d0 - self.d1 * x2 + mixed) * scale,
            d1: (self.d1 - self.d0 * x2 + mixed) * scale,
            f0: (self.f0 - xc * sum + xc * xc * self.f1) * scale,
            f1: (self.f1 + x * sum + x * x * self.f0) * scale,
        }
    }

    pub fn difference(&self) -> Complex64 {
        self.d0 - self.d1
    }

    pub fn sum_combination(&self) -> Complex64 {
        let s = self.d0 + self.d1;
        s * s - 4.0 * self.f0 * self.f1
    }

    pub fn product_combination(&self) -> Complex64 {
        self.d0 * self.d1 - self.f0 * self.f1
    }
}

/// Two-qubit-unitary invariants of one font quartet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairInvariants {
    /// `d0 - d1`
    pub difference: Complex64,
    /// `(d0 + d1)^2 - 4 f0 f1`
    pub sum_combo: Complex64,
    /// `d0 d1 - f0 f1`
    pub prod_combo: Complex64,
}

fn n_way_outer(n: usize, p: usize, rest: usize) -> Result<FontSpec> {
    FontSpec::from_masks(n, p, (1 << n) - 1, rest)
}

fn check_pair(n: usize, p: usize, q: usize) -> Result<()> {
    check_qubit(p, n)?;
    check_qubit(q, n)?;
    if p == q {
        return Err(Error::InvalidArgument(format!(
            "qubits p and q must differ (both {p})"
        )));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "font quartets need n >= 3, got {n}"
        )));
    }
    Ok(())
}

/// Spreads `bits` (ascending qubit order) over the qubits other than `p`, `q`.
fn rest_index(n: usize, p: usize, q: usize, bits: &[u8]) -> Result<usize> {
    if bits.len() != n - 2 {
        return Err(Error::InvalidArgument(format!(
            "expected {} superscript bits for the remaining qubits, got {}",
            n - 2,
            bits.len()
        )));
    }
    let mut idx = 0;
    for (m, &b) in (1..=n).filter(|&m| m != p && m != q).zip(bits) {
        match b {
            0 => {}
            1 => idx |= qubit_mask(n, m),
            _ => return Err(Error::InvalidArgument(format!("bit value {b}"))),
        }
    }
    Ok(idx)
}

/// Primed determinants after `from_x(x)` on qubit `q`, for every N-way font
/// with target `p` and `i_p = 0` and every `(N-1)`-way font with `q` as the
/// spectator, derived from the unprimed determinants through
/// [`FontQuartet::transformed`].
pub fn transform_fonts(
    state: &PureState,
    p: usize,
    q: usize,
    x: Complex64,
) -> Result<BTreeMap<FontSpec, Complex64>> {
    let n = state.n();
    check_pair(n, p, q)?;
    let fixed = qubit_mask(n, p) | qubit_mask(n, q);
    let mut out = BTreeMap::new();
    for rest in (0..1usize << n).filter(|r| r & fixed == 0) {
        let outer = n_way_outer(n, p, rest)?;
        let specs = FontQuartet::specs(&outer, q)?;
        let primed = FontQuartet::evaluate(state, &outer, q)?.transformed(x);
        for (spec, value) in specs.into_iter().zip(primed.values()) {
            out.insert(spec, value);
        }
    }
    Ok(out)
}

/// Invariants of `U^{A_p} U^{A_q}` built from the N-way fonts with
/// `i_p = i_q = 0` and the remaining superscript bits `sup_rest`.
pub fn pairwise_unitary_invariants(
    state: &PureState,
    p: usize,
    q: usize,
    sup_rest: &[u8],
) -> Result<PairInvariants> {
    let n = state.n();
    check_pair(n, p, q)?;
    let outer = n_way_outer(n, p, rest_index(n, p, q, sup_rest)?)?;
    let quartet = FontQuartet::evaluate(state, &outer, q)?;
    Ok(PairInvariants {
        difference: quartet.difference(),
        sum_combo: quartet.sum_combination(),
        prod_combo: quartet.product_combination(),
    })
}
