//! Randomized verification harness.
//!
//! Each check draws its randomness from a generator keyed by the master
//! seed, a fixed per-check stream id and the trial index, so results do not
//! depend on the order in which checks or trials are run.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fonts::{
    enumerate_fonts, font_det, pairwise_unitary_invariants, transform_fonts, FontSpec,
};
use crate::invariants::{
    beta_pair, i3, i4, i5_pair, i_n_even, i_n_odd_pair, j_pair, sum_rule_residual, tau3, tau4,
    tau5, tau_n_even, tau_n_even_at, tau_n_odd_pair, vanish_odd_check,
};
use crate::state::{
    leading_permutation, named_state, sample_state, LocalUnitary, NamedState, PureState,
};
use crate::tolerance;
use crate::transpose::{
    decomposition_residual, font_submatrix_min_eig, global_pt, negativity, reduced_negativity,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub trials: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub seed: u64,
}

impl CheckResult {
    pub fn new(
        name: impl Into<String>,
        trials: usize,
        max_deviation: f64,
        tolerance: f64,
        seed: u64,
    ) -> Self {
        Self {
            name: name.into(),
            trials,
            max_deviation,
            tolerance,
            // NaN deviations fail.
            passed: max_deviation <= tolerance,
            seed,
        }
    }

    /// Same check judged against a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.max_deviation <= tolerance;
        self
    }
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

/// Generator for one trial of one check.
pub fn trial_rng(seed: u64, stream: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((stream << 32) | trial as u64);
    rng
}

fn check_suite_n(n: usize) -> Result<()> {
    if (2..=6).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "verification suites support 2 <= n <= 6, got {n}"
        )))
    }
}

/// Runs `trial` for every trial index and keeps the largest deviation.
fn run_trials(
    name: impl Into<String>,
    trials: usize,
    seed: u64,
    stream: u64,
    tolerance: f64,
    mut trial: impl FnMut(&mut ChaCha8Rng) -> Result<f64>,
) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for t in 0..trials {
        let dev = trial(&mut trial_rng(seed, stream, t))?;
        worst = if dev.is_nan() {
            f64::NAN
        } else {
            worst.max(dev)
        };
        if worst.is_nan() {
            break;
        }
    }
    Ok(CheckResult::new(name, trials, worst, tolerance, seed))
}

type InvariantFn = Box<dyn Fn(&PureState) -> Result<Complex64>>;

/// Every local-unitary invariant implemented for `n` qubits.
pub fn invariant_catalogue(n: usize) -> Vec<(String, InvariantFn)> {
    let mut out: Vec<(String, InvariantFn)> = Vec::new();
    let real = |v: f64| Complex64::new(v, 0.0);
    for p in 1..=n {
        out.push((
            format!("negativity_{p}"),
            Box::new(move |s| Ok(real(negativity(&global_pt(s, p)?)?))),
        ));
    }
    if n.is_multiple_of(2) {
        out.push(("I_N".to_string(), Box::new(|s| i_n_even(s, 1, 2))));
    } else if n >= 3 {
        for p in 1..=n {
            for q in (p + 1)..=n {
                out.push((
                    format!("I_odd_{p}{q}"),
                    Box::new(move |s| i_n_odd_pair(s, p, q)),
                ));
            }
        }
    }
    match n {
        3 => out.push(("I3".to_string(), Box::new(i3))),
        4 => {
            out.push(("I4".to_string(), Box::new(i4)));
            for p in 1..=4 {
                for q in (p + 1)..=4 {
                    out.push((format!("J_{p}{q}"), Box::new(move |s| j_pair(s, (p, q)))));
                }
            }
        }
        5 => {
            for p in 1..=5 {
                for q in (p + 1)..=5 {
                    out.push((format!("I5_{p}{q}"), Box::new(move |s| i5_pair(s, p, q))));
                }
            }
        }
        _ => {}
    }
    out
}

/// Invariance of every catalogued invariant under random local unitaries:
/// moduli under independent Haar U(2) on every qubit, complex values under
/// Haar SU(2) on every qubit.
pub fn lu_invariance_suite(n: usize, trials: usize, seed: u64) -> Result<Vec<CheckResult>> {
    check_suite_n(n)?;
    let catalogue = invariant_catalogue(n);
    let mut u2_dev = vec![0.0f64; catalogue.len()];
    let mut su2_dev = vec![0.0f64; catalogue.len()];
    for t in 0..trials {
        let mut rng = trial_rng(seed, 1, t);
        let state = sample_state(n, &mut rng)?;
        let u2: Vec<LocalUnitary> = (1..=n)
            .map(|q| LocalUnitary::sample_u2(q, &mut rng))
            .collect::<Result<_>>()?;
        let su2: Vec<LocalUnitary> = (1..=n)
            .map(|q| LocalUnitary::sample_su2(q, &mut rng))
            .collect::<Result<_>>()?;
        let by_u2 = state.apply_all(&u2)?;
        let by_su2 = state.apply_all(&su2)?;
        for (k, (_, f)) in catalogue.iter().enumerate() {
            let before = f(&state)?;
            u2_dev[k] = u2_dev[k].max((f(&by_u2)?.norm() - before.norm()).abs());
            su2_dev[k] = su2_dev[k].max((f(&by_su2)? - before).norm());
        }
    }
    let mut out = Vec::new();
    for (k, (name, _)) in catalogue.iter().enumerate() {
        out.push(CheckResult::new(
            format!("lu_u2_modulus/{name}"),
            trials,
            u2_dev[k],
            tolerance::ORBIT,
            seed,
        ));
        out.push(CheckResult::new(
            format!("lu_su2_value/{name}"),
            trials,
            su2_dev[k],
            tolerance::ORBIT,
            seed,
        ));
    }
    Ok(out)
}

fn distinct_pair(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let p = rng.random_range(1..=n);
    let q = loop {
        let q = rng.random_range(1..=n);
        if q != p {
            break q;
        }
    };
    (p, q)
}

fn random_x(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))
}

/// Largest `|lambda_min - (-|det|)|` over every canonical font of one target.
pub fn font_eigenvalue_deviation(state: &PureState, p: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 2..=state.n() {
        for spec in enumerate_fonts(state.n(), p, k)? {
            let (min, det) = font_submatrix_min_eig(state, &spec)?;
            worst = worst.max((min - det).abs());
        }
    }
    Ok(worst)
}

/// Largest deviation between the font transformation rules and direct
/// recomputation on the transformed amplitudes.
pub fn transform_deviation(state: &PureState, p: usize, q: usize, x: Complex64) -> Result<f64> {
    let moved = state.apply(&LocalUnitary::from_x(q, x)?)?;
    let mut worst: f64 = 0.0;
    for (spec, primed) in transform_fonts(state, p, q, x)? {
        worst = worst.max((primed - font_det(&moved, &spec)?).norm());
    }
    Ok(worst)
}

/// Algebraic identities between fonts, partial transposes and invariants.
pub fn identity_suite(n: usize, trials: usize, seed: u64) -> Result<Vec<CheckResult>> {
    check_suite_n(n)?;
    let mut out = Vec::new();

    out.push(run_trials(
        "decomposition",
        trials,
        seed,
        10,
        tolerance::DECOMPOSITION,
        |rng| {
            let s = sample_state(n, rng)?;
            (1..=n).try_fold(0.0f64, |w, p| Ok(w.max(decomposition_residual(&s, p)?)))
        },
    )?);

    out.push(run_trials(
        "font_eigenvalue",
        trials,
        seed,
        11,
        tolerance::IDENTITY,
        |rng| {
            let s = sample_state(n, rng)?;
            font_eigenvalue_deviation(&s, rng.random_range(1..=n))
        },
    )?);

    out.push(run_trials(
        "sign_relations",
        trials,
        seed,
        12,
        tolerance::EXACT,
        |rng| {
            let s = sample_state(n, rng)?;
            let p = rng.random_range(1..=n);
            let mut worst: f64 = 0.0;
            for spec in enumerate_fonts(n, p, n)? {
                let d = font_det(&s, &spec)?;
                worst = worst
                    .max((d + font_det(&s, &spec.flip_target())?).norm())
                    .max((d + font_det(&s, &spec.flip_partners())?).norm());
            }
            Ok(worst)
        },
    )?);

    out.push(run_trials(
        "negativity_routes",
        trials,
        seed,
        13,
        tolerance::IDENTITY,
        |rng| {
            let s = sample_state(n, rng)?;
            (1..=n).try_fold(0.0f64, |w, p| {
                let eig = negativity(&global_pt(&s, p)?)?;
                Ok(w.max((eig - reduced_negativity(&s, p)?).abs()))
            })
        },
    )?);

    if n >= 3 {
        out.push(run_trials(
            "transform_equations",
            trials,
            seed,
            14,
            tolerance::IDENTITY,
            |rng| {
                let s = sample_state(n, rng)?;
                let (p, q) = distinct_pair(rng, n);
                transform_deviation(&s, p, q, random_x(rng))
            },
        )?);

        out.push(run_trials(
            "pairwise_invariants",
            trials,
            seed,
            15,
            tolerance::IDENTITY,
            |rng| {
                let s = sample_state(n, rng)?;
                let (p, q) = distinct_pair(rng, n);
                let sup: Vec<u8> = (0..n - 2).map(|_| rng.random_range(0..=1)).collect();
                let moved = s.apply_all(&[
                    LocalUnitary::from_x(p, random_x(rng))?,
                    LocalUnitary::from_x(q, random_x(rng))?,
                ])?;
                let a = pairwise_unitary_invariants(&s, p, q, &sup)?;
                let b = pairwise_unitary_invariants(&moved, p, q, &sup)?;
                Ok((a.difference - b.difference)
                    .norm()
                    .max((a.sum_combo - b.sum_combo).norm())
                    .max((a.prod_combo - b.prod_combo).norm()))
            },
        )?);
    }

    if n.is_multiple_of(2) {
        out.push(run_trials(
            "witness_independence",
            trials,
            seed,
            16,
            tolerance::IDENTITY,
            |rng| {
                let s = sample_state(n, rng)?;
                let reference = tau_n_even(&s)?;
                let mut worst: f64 = 0.0;
                for p in 1..=n {
                    for q in (1..=n).filter(|&q| q != p) {
                        worst = worst.max((tau_n_even_at(&s, p, q)? - reference).abs());
                    }
                }
                Ok(worst)
            },
        )?);
    } else {
        out.push(run_trials(
            "odd_vanishing",
            trials,
            seed,
            17,
            tolerance::EXACT,
            |rng| vanish_odd_check(&sample_state(n, rng)?),
        )?);
    }

    match n {
        2 => {
            let nu = FontSpec::from_labels(2, 1, &[], &[0, 0])?;
            out.push(run_trials(
                "two_qubit_negativity",
                trials,
                seed,
                20,
                tolerance::IDENTITY,
                |rng| {
                    let s = sample_state(2, rng)?;
                    let neg = negativity(&global_pt(&s, 1)?)?;
                    Ok((neg * neg - 4.0 * font_det(&s, &nu)?.norm_sqr()).abs())
                },
            )?);
        }
        3 => {
            out.push(run_trials(
                "three_qubit_consistency",
                trials,
                seed,
                21,
                tolerance::IDENTITY,
                |rng| {
                    let s = sample_state(3, rng)?;
                    let reference = tau3(&s)?;
                    let mut worst: f64 = 0.0;
                    for p in 1..=3 {
                        for q in (1..=3).filter(|&q| q != p) {
                            worst = worst.max((tau_n_odd_pair(&s, p, q)? - reference).abs());
                        }
                    }
                    Ok(worst)
                },
            )?);
        }
        4 => {
            out.push(run_trials(
                "sum_rule",
                trials,
                seed,
                22,
                tolerance::IDENTITY,
                |rng| sum_rule_residual(&sample_state(4, rng)?),
            )?);
            out.push(run_trials(
                "complement_symmetry",
                trials,
                seed,
                23,
                tolerance::IDENTITY,
                |rng| {
                    let s = sample_state(4, rng)?;
                    let mut worst: f64 = 0.0;
                    for (a, b) in [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))] {
                        worst = worst.max((j_pair(&s, a)? - j_pair(&s, b)?).norm());
                    }
                    Ok(worst)
                },
            )?);
            out.push(run_trials(
                "pair_relabeling",
                trials,
                seed,
                24,
                tolerance::IDENTITY,
                |rng| {
                    let s = sample_state(4, rng)?;
                    let mut worst: f64 = 0.0;
                    for q in [3, 4] {
                        let moved = s.permute(&leading_permutation(4, &[1, q])?)?;
                        worst = worst.max((j_pair(&s, (1, q))? - j_pair(&moved, (1, 2))?).norm());
                    }
                    Ok(worst)
                },
            )?);
        }
        5 => {
            out.push(run_trials(
                "five_qubit_consistency",
                trials,
                seed,
                25,
                tolerance::IDENTITY,
                |rng| {
                    let s = sample_state(5, rng)?;
                    let mut worst: f64 = 0.0;
                    for p in 1..=5 {
                        for q in (1..=5).filter(|&q| q != p) {
                            worst =
                                worst.max((i5_pair(&s, p, q)? - i_n_odd_pair(&s, p, q)?).norm());
                        }
                    }
                    Ok(worst)
                },
            )?);
        }
        _ => {}
    }
    Ok(out)
}

/// Named states used by the benchmark table.
pub fn benchmark_state(name: &str) -> Result<PureState> {
    match name {
        "ghz3" => named_state(NamedState::Ghz, 3),
        "ghz4" => named_state(NamedState::Ghz, 4),
        "ghz5" => named_state(NamedState::Ghz, 5),
        "w3" => named_state(NamedState::W, 3),
        "w4" => named_state(NamedState::W, 4),
        "chi" => named_state(NamedState::Chi, 4),
        "bell_bell" => {
            let bell = named_state(NamedState::Bell, 2)?;
            bell.tensor(&bell)
        }
        other => Err(Error::UnknownState(other.to_string())),
    }
}

type Expectation = (&'static str, f64, Box<dyn Fn(&PureState) -> Result<f64>>);

fn pairs4() -> impl Iterator<Item = (usize, usize)> {
    (1..=4).flat_map(|p| ((p + 1)..=4).map(move |q| (p, q)))
}

fn expectations(name: &str) -> Vec<Expectation> {
    let mut out: Vec<Expectation> = Vec::new();
    match name {
        "ghz3" => out.push(("tau3", 1.0, Box::new(tau3))),
        "w3" => out.push(("tau3", 0.0, Box::new(tau3))),
        "ghz5" => out.push(("tau5", 1.0, Box::new(tau5))),
        "w4" => out.push(("tau4", 0.0, Box::new(tau4))),
        "bell_bell" => out.push(("tau4", 1.0, Box::new(tau4))),
        "ghz4" => {
            out.push(("tau4", 1.0, Box::new(tau4)));
            for pair in pairs4() {
                out.push(("beta", 1.0 / 3.0, Box::new(move |s| beta_pair(s, pair))));
            }
        }
        "chi" => {
            out.push(("tau4", 0.0, Box::new(tau4)));
            for pair in pairs4() {
                let j = if matches!(pair, (1, 4) | (2, 3)) {
                    0.5
                } else {
                    -0.25
                };
                out.push(("J", j, Box::new(move |s| Ok(j_pair(s, pair)?.re))));
                out.push(("J_imag", 0.0, Box::new(move |s| Ok(j_pair(s, pair)?.im))));
                out.push((
                    "beta",
                    4.0 / 3.0 * j.abs(),
                    Box::new(move |s| beta_pair(s, pair)),
                ));
            }
        }
        _ => {}
    }
    out
}

pub const BENCHMARKS: [&str; 7] = ["ghz3", "ghz4", "ghz5", "w3", "w4", "chi", "bell_bell"];

/// Exact values on the named benchmark states, one row per state.
pub fn benchmark_suite() -> Result<Vec<CheckResult>> {
    BENCHMARKS
        .iter()
        .map(|&name| {
            let state = benchmark_state(name)?;
            let worst = expectations(name)
                .iter()
                .try_fold(0.0f64, |w, (_, want, f)| {
                    Ok::<_, Error>(w.max((f(&state)? - want).abs()))
                })?;
            Ok(CheckResult::new(
                format!("benchmark/{name}"),
                1,
                worst,
                tolerance::EXACT,
                0,
            ))
        })
        .collect()
}
