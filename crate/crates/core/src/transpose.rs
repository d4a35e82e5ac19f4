//! Partial transposes of pure-state density matrices and their negativity.
//!
//! The global partial transpose with respect to qubit `p` has elements
//! `<I| rho^{T_p} |J> = <I with p = J_p| rho |J with p = I_p>`. The K-way
//! partial transpose applies that swap only to elements whose bra and ket
//! differ in exactly `K` qubits including `p`, and leaves every other element
//! equal to `rho`.
//!
//! Elements that differ only at `p` belong to no class with `K >= 2`. They are
//! folded into the 2-way transpose, which makes
//! `sum_{K=2..N} rho_K^{T_p} - (N - 2) rho = rho_G^{T_p}` hold element by
//! element. This fold is a reconstruction: it is the unique assignment under
//! which that decomposition is exact.

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fonts::{det_unchecked, FontSpec};
use crate::state::{check_qubit, qubit_mask, PureState};

pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransposeKind {
    Global,
    KWay(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransposedMatrix {
    kind: TransposeKind,
    p: usize,
    matrix: DMatrix<Complex64>,
}

impl TransposedMatrix {
    /// Wraps an arbitrary matrix, e.g. one read from elsewhere. It must be
    /// square and Hermitian to within [`HERMITIAN_TOLERANCE`].
    pub fn new(kind: TransposeKind, p: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidArgument(format!(
                "matrix is {}x{}, expected square",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let tm = Self { kind, p, matrix };
        let err = tm.hermiticity_error();
        if err > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian(err));
        }
        Ok(tm)
    }

    pub fn kind(&self) -> TransposeKind {
        self.kind
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `max |m - m^H|` over all elements.
    pub fn hermiticity_error(&self) -> f64 {
        let m = &self.matrix;
        let dim = m.nrows();
        let mut err: f64 = 0.0;
        for r in 0..dim {
            for c in r..dim {
                err = err.max((m[(r, c)] - m[(c, r)].conj()).norm());
            }
        }
        err
    }

    /// Real eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self
            .matrix
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        values.sort_by(f64::total_cmp);
        values
    }
}

pub fn density_matrix(state: &PureState) -> DMatrix<Complex64> {
    let a = state.amplitudes();
    DMatrix::from_fn(state.dim(), state.dim(), |r, c| a[r] * a[c].conj())
}

#[inline]
fn pt_element(a: &[Complex64], p_mask: usize, bra: usize, ket: usize) -> Complex64 {
    let swap = (bra ^ ket) & p_mask;
    a[bra ^ swap] * a[ket ^ swap].conj()
}

pub fn global_pt(state: &PureState, p: usize) -> Result<TransposedMatrix> {
    check_qubit(p, state.n())?;
    let a = state.amplitudes();
    let pm = qubit_mask(state.n(), p);
    let dim = state.dim();
    Ok(TransposedMatrix {
        kind: TransposeKind::Global,
        p,
        matrix: DMatrix::from_fn(dim, dim, |r, c| pt_element(a, pm, r, c)),
    })
}

pub fn kway_pt(state: &PureState, p: usize, k: usize) -> Result<TransposedMatrix> {
    let n = state.n();
    check_qubit(p, n)?;
    if !(2..=n).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "K = {k} outside 2..={n} for a K-way partial transpose"
        )));
    }
    let a = state.amplitudes();
    let pm = qubit_mask(n, p);
    let dim = state.dim();
    let transposed = |r: usize, c: usize| {
        let diff = r ^ c;
        let way = diff.count_ones() as usize;
        diff & pm != 0 && (way == k || (k == 2 && way == 1))
    };
    Ok(TransposedMatrix {
        kind: TransposeKind::KWay(k),
        p,
        matrix: DMatrix::from_fn(dim, dim, |r, c| {
            if transposed(r, c) {
                pt_element(a, pm, r, c)
            } else {
                a[r] * a[c].conj()
            }
        }),
    })
}

/// `||m||_1 - 1`, from a Hermitian eigendecomposition.
pub fn negativity(tm: &TransposedMatrix) -> Result<f64> {
    let err = tm.hermiticity_error();
    if err > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian(err));
    }
    let trace_norm: f64 = tm
        .matrix
        .symmetric_eigenvalues()
        .iter()
        .map(|l| l.abs())
        .sum();
    Ok((trace_norm - 1.0).max(0.0))
}

/// Negativity across the cut `p | rest` from the single-qubit reduced state:
/// with Schmidt coefficients `s0, s1`, `||rho^{T_p}||_1 = (s0 + s1)^2`, so the
/// negativity is `2 s0 s1 = 2 sqrt(det rho_p)`. Needs no `2^n × 2^n` matrix.
pub fn reduced_negativity(state: &PureState, p: usize) -> Result<f64> {
    let n = state.n();
    check_qubit(p, n)?;
    let pm = qubit_mask(n, p);
    let a = state.amplitudes();
    let (mut r00, mut r11, mut r01) = (0.0, 0.0, Complex64::new(0.0, 0.0));
    for i in (0..state.dim()).filter(|i| i & pm == 0) {
        let (a0, a1) = (a[i], a[i | pm]);
        r00 += a0.norm_sqr();
        r11 += a1.norm_sqr();
        r01 += a0 * a1.conj();
    }
    let det = (r00 * r11 - r01.norm_sqr()).max(0.0);
    Ok(2.0 * det.sqrt())
}

/// Largest elementwise deviation of `sum_K rho_K^{T_p} - (n - 2) rho` from
/// the global partial transpose.
pub fn decomposition_residual(state: &PureState, p: usize) -> Result<f64> {
    let n = state.n();
    check_qubit(p, n)?;
    if n < 2 {
        return Err(Error::InvalidArgument(
            "K-way decomposition needs n >= 2".to_string(),
        ));
    }
    let mut total = density_matrix(state) * Complex64::new(-((n - 2) as f64), 0.0);
    for k in 2..=n {
        total += kway_pt(state, p, k)?.matrix;
    }
    let global = global_pt(state, p)?.matrix;
    Ok(total
        .iter()
        .zip(global.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

/// Minimum eigenvalue of the 4×4 principal submatrix of the global partial
/// transpose (w.r.t. the font target) spanned by the font's four kets,
/// paired with `-|det|` of the font.
pub fn font_submatrix_min_eig(state: &PureState, spec: &FontSpec) -> Result<(f64, f64)> {
    if spec.n() != state.n() {
        return Err(Error::InvalidFont(format!(
            "font is defined for {} qubits, state has {}",
            spec.n(),
            state.n()
        )));
    }
    let a = state.amplitudes();
    let pm = qubit_mask(state.n(), spec.p());
    let [i, _, ip, j] = spec.indices();
    let kets = [i, j, ip, j ^ pm];
    let sub = Matrix4::from_fn(|r, c| pt_element(a, pm, kets[r], kets[c]));
    let min = sub
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok((min, -det_unchecked(state, spec).norm()))
}
