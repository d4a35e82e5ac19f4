//! Polynomial local-unitary invariants and the entanglement monotones built
//! from them.
//!
//! Every formula is written in terms of font determinants with qubit 1 as
//! the target. Invariants for other qubit pairs are obtained by relabeling
//! qubits so that the requested pair lands on the anchor positions.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeTuple, Serializer};

use crate::error::{Error, Result};
use crate::fonts::{canonical_font_count, det_unchecked, enumerate_fonts, FontSpec};
use crate::state::{check_permutation, check_qubit, leading_permutation, PureState};
use crate::tolerance;
use crate::transpose::{global_pt, negativity, reduced_negativity};

/// Largest qubit count for which the report diagonalizes the full partial
/// transpose; above it the reduced-state formula is used.
pub const EIGEN_NEGATIVITY_MAX_QUBITS: usize = 8;

/// Determinant of a font with target qubit 1, labeled by its superscript
/// string over the varying qubits and the fixed spectator bits.
fn font(state: &PureState, sup: &str, spectators: &[(usize, u8)]) -> Complex64 {
    let bits: Vec<u8> = sup.bytes().map(|b| b - b'0').collect();
    let spec = FontSpec::from_labels(state.n(), 1, spectators, &bits)
        .expect("formula labels are valid for the checked qubit count");
    det_unchecked(state, &spec)
}

fn require_n(state: &PureState, n: usize, what: &str) -> Result<()> {
    if state.n() == n {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{what} is defined for {n} qubits, state has {}",
            state.n()
        )))
    }
}

fn require_parity(state: &PureState, even: bool, what: &str) -> Result<()> {
    if state.n().is_multiple_of(2) == even {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{what} needs an {} qubit count, state has {}",
            if even { "even" } else { "odd" },
            state.n()
        )))
    }
}

fn distinct_pair(n: usize, p: usize, q: usize) -> Result<()> {
    check_qubit(p, n)?;
    check_qubit(q, n)?;
    if p == q {
        return Err(Error::InvalidArgument(format!(
            "pair ({p}, {q}) repeats a qubit"
        )));
    }
    Ok(())
}

fn parity_sign(bits: usize) -> f64 {
    if bits.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Degree-2 N-way invariant for even `n`: signed sum of the N-way fonts with
/// target `p` and `i_p = i_q = 0`, the sign being the parity of the other bits.
pub fn i_n_even(state: &PureState, p: usize, q: usize) -> Result<Complex64> {
    require_parity(state, true, "the even N-way invariant")?;
    let n = state.n();
    distinct_pair(n, p, q)?;
    let fixed = crate::state::qubit_mask(n, p) | crate::state::qubit_mask(n, q);
    let all = (1usize << n) - 1;
    let mut sum = Complex64::new(0.0, 0.0);
    for base in (0..1usize << n).filter(|b| b & fixed == 0) {
        let spec = FontSpec::from_masks(n, p, all, base)?;
        sum += det_unchecked(state, &spec) * parity_sign(base);
    }
    Ok(sum)
}

/// N-tangle for even `n`, `4 |I_N|^2`, with witness pair `(1, 2)`.
pub fn tau_n_even(state: &PureState) -> Result<f64> {
    tau_n_even_at(state, 1, 2)
}

pub fn tau_n_even_at(state: &PureState, p: usize, q: usize) -> Result<f64> {
    Ok(4.0 * i_n_even(state, p, q)?.norm_sqr())
}

/// `4 |det nu^00|^2` for two qubits.
pub fn tau2(state: &PureState) -> Result<f64> {
    require_n(state, 2, "tau2")?;
    Ok(4.0 * font(state, "00", &[]).norm_sqr())
}

/// `I4 = D^0000 + D^0011 - D^0010 - D^0001`.
pub fn i4(state: &PureState) -> Result<Complex64> {
    require_n(state, 4, "I4")?;
    let d = |sup| font(state, sup, &[]);
    Ok(d("0000") + d("0011") - d("0010") - d("0001"))
}

pub fn tau4(state: &PureState) -> Result<f64> {
    Ok(4.0 * i4(state)?.norm_sqr())
}

// Pair invariant anchored on qubits (1, 2).
fn j12(s: &PureState) -> Complex64 {
    let d = |sup, spec: &[(usize, u8)]| font(s, sup, spec);
    let four = d("0000", &[]) - d("0100", &[]) + d("0010", &[]) - d("0110", &[]);
    four * four
        + 8.0 * d("00", &[(3, 0), (4, 0)]) * d("00", &[(3, 1), (4, 1)])
        + 8.0 * d("00", &[(3, 1), (4, 0)]) * d("00", &[(3, 0), (4, 1)])
        - 4.0
            * (d("000", &[(3, 0)]) - d("010", &[(3, 0)]))
            * (d("000", &[(3, 1)]) - d("010", &[(3, 1)]))
        - 4.0
            * (d("000", &[(4, 0)]) - d("010", &[(4, 0)]))
            * (d("000", &[(4, 1)]) - d("010", &[(4, 1)]))
}

fn j13(s: &PureState) -> Complex64 {
    let d = |sup, spec: &[(usize, u8)]| font(s, sup, spec);
    let four = d("0000", &[]) - d("0010", &[]) + d("0001", &[]) - d("0011", &[]);
    four * four
        + 8.0 * d("00", &[(2, 0), (4, 0)]) * d("00", &[(2, 1), (4, 1)])
        + 8.0 * d("00", &[(2, 1), (4, 0)]) * d("00", &[(2, 0), (4, 1)])
        - 4.0
            * (d("000", &[(2, 0)]) - d("010", &[(2, 0)]))
            * (d("000", &[(2, 1)]) - d("010", &[(2, 1)]))
        - 4.0
            * (d("000", &[(4, 0)]) - d("001", &[(4, 0)]))
            * (d("000", &[(4, 1)]) - d("001", &[(4, 1)]))
}

fn j14(s: &PureState) -> Complex64 {
    let d = |sup, spec: &[(usize, u8)]| font(s, sup, spec);
    let four = d("0000", &[]) - d("0001", &[]) + d("0010", &[]) - d("0011", &[]);
    four * four
        + 8.0 * d("00", &[(2, 0), (3, 0)]) * d("00", &[(2, 1), (3, 1)])
        + 8.0 * d("00", &[(2, 1), (3, 0)]) * d("00", &[(2, 0), (3, 1)])
        - 4.0
            * (d("000", &[(2, 0)]) - d("001", &[(2, 0)]))
            * (d("000", &[(2, 1)]) - d("001", &[(2, 1)]))
        - 4.0
            * (d("000", &[(3, 0)]) - d("001", &[(3, 0)]))
            * (d("000", &[(3, 1)]) - d("001", &[(3, 1)]))
}

fn ordered_pair(n: usize, pair: (usize, usize)) -> Result<(usize, usize)> {
    distinct_pair(n, pair.0, pair.1)?;
    Ok((pair.0.min(pair.1), pair.0.max(pair.1)))
}

/// Four-qubit degree-4 invariant detecting the entanglement of a qubit pair
/// with its complement. Pairs containing qubit 1 use their own explicit form;
/// the rest are relabeled onto `(1, 2)`.
pub fn j_pair(state: &PureState, pair: (usize, usize)) -> Result<Complex64> {
    require_n(state, 4, "the pair invariant J")?;
    match ordered_pair(4, pair)? {
        (1, 2) => Ok(j12(state)),
        (1, 3) => Ok(j13(state)),
        (1, 4) => Ok(j14(state)),
        (a, b) => Ok(j12(&state.permute(&leading_permutation(4, &[a, b])?)?)),
    }
}

/// `(4/3) |J|`.
pub fn beta_pair(state: &PureState, pair: (usize, usize)) -> Result<f64> {
    Ok(4.0 / 3.0 * j_pair(state, pair)?.norm())
}

/// `|I4^2 - (J12 + J13 + J14) / 3|`.
pub fn sum_rule_residual(state: &PureState) -> Result<f64> {
    let i = i4(state)?;
    let j_sum = j12(state) + j13(state) + j14(state);
    Ok((i * i - j_sum / 3.0).norm())
}

/// `(D^000 - D^001)^2 - 4 D_{(A2)0}^00 D_{(A2)1}^00`.
pub fn i3(state: &PureState) -> Result<Complex64> {
    require_n(state, 3, "the three-qubit invariant")?;
    let d = |sup, spec: &[(usize, u8)]| font(state, sup, spec);
    let diff = d("000", &[]) - d("001", &[]);
    Ok(diff * diff - 4.0 * d("00", &[(2, 0)]) * d("00", &[(2, 1)]))
}

pub fn tau3(state: &PureState) -> Result<f64> {
    Ok(4.0 * i3(state)?.norm())
}

/// Relabeling that sends `first` to qubit 1, `last` to qubit `n` and keeps
/// the remaining qubits in ascending order in between.
fn anchor_permutation(n: usize, first: usize, last: usize) -> Result<Vec<usize>> {
    distinct_pair(n, first, last)?;
    let mut perm = vec![0; n];
    perm[first - 1] = 1;
    perm[last - 1] = n;
    for (next, slot) in (2..).zip(perm.iter_mut().filter(|s| **s == 0)) {
        *slot = next;
    }
    check_permutation(&perm, n)?;
    Ok(perm)
}

fn relabeled(state: &PureState, first: usize, last: usize) -> Result<PureState> {
    let n = state.n();
    if first == 1 && last == n {
        distinct_pair(n, first, last)?;
        return Ok(state.clone());
    }
    state.permute(&anchor_permutation(n, first, last)?)
}

/// The four component sums for odd `n`, anchored on target 1 and singled-out
/// qubit `n`: `(I_0, I_1)` over N-way fonts with `i_n = 0, 1`, and
/// `(F_0, F_1)` over (N-1)-way fonts with qubit `n` a spectator at 0, 1. All
/// sums run over `i_3 .. i_{n-1}` with `i_1 = i_2 = 0` and parity signs.
fn odd_components(state: &PureState) -> Result<[Complex64; 4]> {
    let n = state.n();
    let all = (1usize << n) - 1;
    let without_last = all & !1;
    let mut sums = [Complex64::new(0.0, 0.0); 4];
    for rest in 0..1usize << (n - 3) {
        let base = rest << 1;
        let sign = parity_sign(rest);
        let specs = [
            FontSpec::from_masks(n, 1, all, base)?,
            FontSpec::from_masks(n, 1, all, base | 1)?,
            FontSpec::from_masks(n, 1, without_last, base)?,
            FontSpec::from_masks(n, 1, without_last, base | 1)?,
        ];
        for (sum, spec) in sums.iter_mut().zip(&specs) {
            *sum += det_unchecked(state, spec) * sign;
        }
    }
    Ok(sums)
}

/// Degree-4 invariant for odd `n` built from qubit `p1` (font target) and
/// the singled-out qubit `p2`: `(I_0 + I_1)^2 - 4 F_0 F_1`.
pub fn i_n_odd_pair(state: &PureState, p1: usize, p2: usize) -> Result<Complex64> {
    require_parity(state, false, "the odd N-qubit invariant")?;
    if state.n() < 3 {
        return Err(Error::InvalidArgument(
            "the odd N-qubit invariant needs n >= 3".to_string(),
        ));
    }
    let [i0, i1, f0, f1] = odd_components(&relabeled(state, p1, p2)?)?;
    let s = i0 + i1;
    Ok(s * s - 4.0 * f0 * f1)
}

/// `4 |I_{N-odd}^{p1 p2}|`.
pub fn tau_n_odd_pair(state: &PureState, p1: usize, p2: usize) -> Result<f64> {
    Ok(4.0 * i_n_odd_pair(state, p1, p2)?.norm())
}

fn i5_anchored(s: &PureState) -> Complex64 {
    let d = |sup, spec: &[(usize, u8)]| font(s, sup, spec);
    let five = d("00000", &[]) - d("00010", &[]) + d("00110", &[]) - d("00100", &[])
        + d("00001", &[])
        - d("00011", &[])
        + d("00111", &[])
        - d("00101", &[]);
    let four = |b: u8| {
        let spec = [(5, b)];
        d("0000", &spec) - d("0001", &spec) - d("0010", &spec) + d("0011", &spec)
    };
    five * five - 4.0 * four(0) * four(1)
}

/// Five-qubit degree-4 invariant for the pair `(p, q)`, `p` the font target.
pub fn i5_pair(state: &PureState, p: usize, q: usize) -> Result<Complex64> {
    require_n(state, 5, "I5")?;
    Ok(i5_anchored(&relabeled(state, p, q)?))
}

pub fn tau5_pair(state: &PureState, p: usize, q: usize) -> Result<f64> {
    Ok(4.0 * i5_pair(state, p, q)?.norm())
}

/// `tau5` for the anchor pair `(1, 5)`.
pub fn tau5(state: &PureState) -> Result<f64> {
    tau5_pair(state, 1, 5)
}

/// `|sum_{i_2..i_N} (-1)^{i_2+..+i_N} D^{0 i_2 .. i_N}|` for odd `n`, which
/// cancels pairwise under the sign relations.
pub fn vanish_odd_check(state: &PureState) -> Result<f64> {
    require_parity(state, false, "the odd vanishing check")?;
    let n = state.n();
    if n < 3 {
        return Err(Error::InvalidArgument("needs n >= 3".to_string()));
    }
    let all = (1usize << n) - 1;
    let p_mask = crate::state::qubit_mask(n, 1);
    let mut sum = Complex64::new(0.0, 0.0);
    for base in (0..1usize << n).filter(|b| b & p_mask == 0) {
        sum += det_unchecked(state, &FontSpec::from_masks(n, 1, all, base)?) * parity_sign(base);
    }
    Ok(sum.norm())
}

/// A report value: monotones are real, invariants keep their phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Real(f64),
    Complex(Complex64),
}

impl Value {
    pub fn modulus(&self) -> f64 {
        match self {
            Value::Real(v) => v.abs(),
            Value::Complex(z) => z.norm(),
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Value::Real(v) => Some(*v),
            Value::Complex(_) => None,
        }
    }

    pub fn as_complex(&self) -> Complex64 {
        match self {
            Value::Real(v) => Complex64::new(*v, 0.0),
            Value::Complex(z) => *z,
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Real(v) => serializer.serialize_f64(*v),
            Value::Complex(z) => {
                let mut t = serializer.serialize_tuple(2)?;
                t.serialize_element(&z.re)?;
                t.serialize_element(&z.im)?;
                t.end()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ReportEntry {
    pub value: Value,
    /// Human-readable definition of the entry.
    pub formula: String,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct StateMeta {
    pub n: usize,
    pub source: String,
    pub norm_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct InvariantReport {
    pub state_meta: StateMeta,
    pub entries: BTreeMap<String, ReportEntry>,
    /// Number of non-vanishing canonical fonts, keyed `p{p}_K{K}`.
    pub font_census: BTreeMap<String, usize>,
}

impl InvariantReport {
    pub fn get(&self, key: &str) -> Option<Value> {
        self.entries.get(key).map(|e| e.value)
    }

    fn real(&mut self, key: impl Into<String>, value: f64, formula: &str) {
        self.entries.insert(
            key.into(),
            ReportEntry {
                value: Value::Real(value),
                formula: formula.to_string(),
            },
        );
    }

    fn complex(&mut self, key: impl Into<String>, value: Complex64, formula: &str) {
        self.entries.insert(
            key.into(),
            ReportEntry {
                value: Value::Complex(value),
                formula: formula.to_string(),
            },
        );
    }

    pub fn with_source(mut self, source: impl Into<String>, norm_deviation: f64) -> Self {
        self.state_meta.source = source.into();
        self.state_meta.norm_deviation = norm_deviation;
        self
    }
}

/// Every invariant and monotone that applies to the state's qubit count.
pub fn full_report(state: &PureState) -> Result<InvariantReport> {
    let n = state.n();
    let mut report = InvariantReport {
        state_meta: StateMeta {
            n,
            source: String::new(),
            norm_deviation: 0.0,
        },
        entries: BTreeMap::new(),
        font_census: BTreeMap::new(),
    };

    for p in 1..=n {
        let neg = if n <= EIGEN_NEGATIVITY_MAX_QUBITS {
            negativity(&global_pt(state, p)?)?
        } else {
            reduced_negativity(state, p)?
        };
        report.real(format!("negativity_{p}"), neg, "||rho^{T_p}||_1 - 1");
    }

    if n >= 2 && n.is_multiple_of(2) {
        report.real(
            "tauN",
            tau_n_even(state)?,
            "4|sum_s (-1)^{|s|} D^{00 s}|^2 (target 1, pair qubit 2)",
        );
    }
    if n >= 3 && n % 2 == 1 {
        for p in 1..=n {
            for q in (p + 1)..=n {
                report.real(
                    format!("tauN_{p}{q}"),
                    tau_n_odd_pair(state, p, q)?,
                    "4|(I_0 + I_1)^2 - 4 F_0 F_1| (target p, singled-out q)",
                );
            }
        }
    }
    match n {
        2 => report.real("tau2", tau2(state)?, "4|det nu^00|^2"),
        3 => report.real(
            "tau3",
            tau3(state)?,
            "4|(D^000 - D^001)^2 - 4 D_(A2)0^00 D_(A2)1^00|",
        ),
        4 => {
            report.complex("I4", i4(state)?, "D^0000 + D^0011 - D^0010 - D^0001");
            report.real("tau4", tau4(state)?, "4|I4|^2");
            for p in 1..=4 {
                for q in (p + 1)..=4 {
                    let j = j_pair(state, (p, q))?;
                    report.complex(format!("J_{p}{q}"), j, "degree-4 pair invariant");
                    report.real(format!("beta_{p}{q}"), 4.0 / 3.0 * j.norm(), "(4/3)|J_pq|");
                }
            }
            report.real(
                "sum_rule_residual",
                sum_rule_residual(state)?,
                "|I4^2 - (J_12 + J_13 + J_14)/3|",
            );
        }
        5 => report.real("tau5", tau5(state)?, "4|I5^{A1 A5}|"),
        _ => {}
    }

    for p in 1..=n {
        for k in 2..=n {
            let fonts = enumerate_fonts(n, p, k)?;
            debug_assert_eq!(fonts.len(), canonical_font_count(n, k));
            let live = fonts
                .iter()
                .filter(|f| det_unchecked(state, f).norm() > tolerance::EXACT)
                .count();
            report.font_census.insert(format!("p{p}_K{k}"), live);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{named_state, random_state, LocalUnitary, NamedState};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ghz(n: usize) -> PureState {
        named_state(NamedState::Ghz, n).unwrap()
    }

    fn w(n: usize) -> PureState {
        named_state(NamedState::W, n).unwrap()
    }

    fn chi() -> PureState {
        named_state(NamedState::Chi, 4).unwrap()
    }

    fn bell_bell() -> PureState {
        let bell = named_state(NamedState::Bell, 2).unwrap();
        bell.tensor(&bell).unwrap()
    }

    fn close(z: Complex64, re: f64) -> bool {
        (z - Complex64::new(re, 0.0)).norm() < 1e-12
    }

    #[test]
    fn even_invariant_examples() {
        assert!(close(i_n_even(&ghz(4), 1, 2).unwrap(), 0.5));
        let bell = named_state(NamedState::Bell, 2).unwrap();
        assert!(close(i_n_even(&bell, 1, 2).unwrap(), 0.5));
        assert!((tau2(&bell).unwrap() - 1.0).abs() < 1e-12);
        assert!(i_n_even(&chi(), 1, 2).unwrap().norm() < 1e-12);
        assert!(i_n_even(&ghz(3), 1, 2).is_err());
        assert!(i_n_even(&ghz(4), 2, 2).is_err());
    }

    #[test]
    fn four_tangle_examples() {
        assert!((tau_n_even(&ghz(4)).unwrap() - 1.0).abs() < 1e-12);
        assert!(tau_n_even(&w(4)).unwrap().abs() < 1e-12);
        assert!((tau_n_even(&bell_bell()).unwrap() - 1.0).abs() < 1e-12);
        assert!(close(i4(&bell_bell()).unwrap(), 0.5));
        for seed in 0..10 {
            let s = random_state(4, seed).unwrap();
            assert!((i4(&s).unwrap() - i_n_even(&s, 1, 2).unwrap()).norm() < 1e-14);
        }
    }

    #[test]
    fn pair_invariants_of_chi() {
        let s = chi();
        for (pair, j) in [
            ((1, 2), -0.25),
            ((1, 3), -0.25),
            ((2, 4), -0.25),
            ((3, 4), -0.25),
            ((1, 4), 0.5),
            ((2, 3), 0.5),
        ] {
            assert!(close(j_pair(&s, pair).unwrap(), j), "{pair:?}");
            assert!((beta_pair(&s, pair).unwrap() - 4.0 / 3.0 * j.abs()).abs() < 1e-12);
        }
        assert!(close(j_pair(&s, (4, 1)).unwrap(), 0.5));
        assert!(sum_rule_residual(&s).unwrap() < 1e-12);
    }

    #[test]
    fn pair_invariants_of_ghz_and_product() {
        let zero = PureState::basis(4, 0).unwrap();
        for p in 1..=4 {
            for q in (p + 1)..=4 {
                assert!(close(j_pair(&ghz(4), (p, q)).unwrap(), 0.25));
                assert!((beta_pair(&ghz(4), (p, q)).unwrap() - 1.0 / 3.0).abs() < 1e-12);
                assert_eq!(j_pair(&zero, (p, q)).unwrap(), Complex64::new(0.0, 0.0));
            }
        }
        assert!(sum_rule_residual(&ghz(4)).unwrap() < 1e-12);
        assert!(j_pair(&ghz(4), (2, 2)).is_err());
        assert!(j_pair(&ghz(4), (0, 2)).is_err());
        assert!(j_pair(&ghz(3), (1, 2)).is_err());
    }

    #[test]
    fn sum_rule_on_random_states() {
        for seed in 0..100 {
            assert!(sum_rule_residual(&random_state(4, seed).unwrap()).unwrap() < 1e-10);
        }
    }

    #[test]
    fn explicit_pair_forms_agree_with_relabeling() {
        for seed in 0..20 {
            let s = random_state(4, 500 + seed).unwrap();
            for q in [3, 4] {
                let relabeled = s
                    .permute(&leading_permutation(4, &[1, q]).unwrap())
                    .unwrap();
                assert!((j_pair(&s, (1, q)).unwrap() - j12(&relabeled)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn complement_symmetry() {
        for seed in 0..50 {
            let s = random_state(4, 900 + seed).unwrap();
            for (a, b) in [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))] {
                let diff = j_pair(&s, a).unwrap() - j_pair(&s, b).unwrap();
                assert!(diff.norm() < 1e-10);
            }
        }
    }

    #[test]
    fn three_tangle() {
        assert!((tau3(&ghz(3)).unwrap() - 1.0).abs() < 1e-12);
        assert!(tau3(&w(3)).unwrap() < 1e-12);
        assert_eq!(tau3(&PureState::basis(3, 5).unwrap()).unwrap(), 0.0);
        assert!(tau3(&ghz(4)).is_err());
        for seed in 0..20 {
            let s = random_state(3, seed).unwrap();
            for (p1, p2) in [(1, 2), (1, 3), (2, 3), (3, 1)] {
                let odd = tau_n_odd_pair(&s, p1, p2).unwrap();
                assert!((odd - tau3(&s).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn five_qubit_invariants() {
        assert!(close(i5_pair(&ghz(5), 1, 5).unwrap(), 0.25));
        assert!((tau5(&ghz(5)).unwrap() - 1.0).abs() < 1e-12);
        assert!(tau5(&w(5)).unwrap() < 1e-12);
        assert_eq!(tau5(&PureState::basis(5, 9).unwrap()).unwrap(), 0.0);
        for seed in 0..10 {
            let s = random_state(5, seed).unwrap();
            for p in 1..=5 {
                for q in (1..=5).filter(|&q| q != p) {
                    let diff = i5_pair(&s, p, q).unwrap() - i_n_odd_pair(&s, p, q).unwrap();
                    assert!(diff.norm() < 1e-10);
                }
            }
        }
        assert!(i5_pair(&ghz(5), 3, 3).is_err());
        assert!(i5_pair(&ghz(4), 1, 2).is_err());
        assert!(i_n_odd_pair(&ghz(4), 1, 2).is_err());
    }

    #[test]
    fn odd_invariant_vanishes() {
        for n in [3, 5, 7] {
            for seed in 0..10 {
                assert!(vanish_odd_check(&random_state(n, seed).unwrap()).unwrap() <= 1e-12);
            }
        }
        assert_eq!(vanish_odd_check(&ghz(5)).unwrap(), 0.0);
        assert!(vanish_odd_check(&ghz(4)).is_err());
    }

    #[test]
    fn witness_independence() {
        for n in [2, 4, 6] {
            let s = random_state(n, 31 * n as u64).unwrap();
            let reference = tau_n_even(&s).unwrap();
            for p in 1..=n {
                for q in (1..=n).filter(|&q| q != p) {
                    assert!((tau_n_even_at(&s, p, q).unwrap() - reference).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn odd_invariant_is_su2_invariant_at_seven_qubits() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let s = random_state(7, 4).unwrap();
        let lus: Vec<LocalUnitary> = (1..=7)
            .map(|q| LocalUnitary::sample_su2(q, &mut rng).unwrap())
            .collect();
        let moved = s.apply_all(&lus).unwrap();
        for (p1, p2) in [(1, 7), (2, 5), (6, 3)] {
            let diff = i_n_odd_pair(&s, p1, p2).unwrap() - i_n_odd_pair(&moved, p1, p2).unwrap();
            assert!(diff.norm() < 1e-9);
        }
    }

    #[test]
    fn reports_of_benchmarks() {
        let r = full_report(&ghz(4)).unwrap();
        assert!((r.get("tau4").unwrap().modulus() - 1.0).abs() < 1e-12);
        for p in 1..=4 {
            for q in (p + 1)..=4 {
                let beta = r.get(&format!("beta_{p}{q}")).unwrap().as_real().unwrap();
                assert!((beta - 1.0 / 3.0).abs() < 1e-12);
            }
        }
        assert!(r.get("sum_rule_residual").unwrap().modulus() < 1e-10);
        assert_eq!(r.font_census["p1_K4"], 1);

        let r = full_report(&chi()).unwrap();
        assert!(r.get("tau4").unwrap().modulus() < 1e-12);
        assert!((r.get("beta_12").unwrap().modulus() - 1.0 / 3.0).abs() < 1e-12);
        assert!((r.get("beta_14").unwrap().modulus() - 2.0 / 3.0).abs() < 1e-12);

        for n in 1..=6 {
            let r = full_report(&PureState::basis(n, 0).unwrap()).unwrap();
            assert!(
                r.entries.values().all(|e| e.value.modulus() == 0.0),
                "n={n}"
            );
            assert!(r.font_census.values().all(|&c| c == 0));
        }
    }

    #[test]
    fn report_monotones_are_bounded_on_benchmarks() {
        let states = [
            ghz(3),
            ghz(4),
            ghz(5),
            w(3),
            w(4),
            chi(),
            bell_bell(),
            ghz(6),
        ];
        for s in &states {
            let r = full_report(s).unwrap();
            for (key, entry) in &r.entries {
                if let Some(v) = entry.value.as_real() {
                    assert!(v >= 0.0, "{key}");
                    if key.starts_with("tau") || key.starts_with("beta") || key.starts_with("neg") {
                        assert!(v <= 1.0 + 1e-9, "{key} = {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn report_uses_reduced_negativity_for_large_states() {
        let r = full_report(&ghz(9)).unwrap();
        for p in 1..=9 {
            assert!((r.get(&format!("negativity_{p}")).unwrap().modulus() - 1.0).abs() < 1e-12);
        }
        assert!((r.get("tauN_19").unwrap().modulus() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn report_serializes_complex_as_pairs() {
        let json = serde_json::to_value(full_report(&chi()).unwrap()).unwrap();
        let j = &json["entries"]["J_14"]["value"];
        assert!((j[0].as_f64().unwrap() - 0.5).abs() < 1e-12);
        assert!(json["entries"]["tau4"]["value"].is_number());
        assert_eq!(json["state_meta"]["n"], 4);
    }
}
