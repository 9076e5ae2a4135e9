//! Brute-force reference: explicit partial transposition and a cyclic Jacobi
//! eigensolver. Nothing here uses the block structure that [`crate::analytic`]
//! relies on.

use crate::analytic::{BlockCoefficients, Coefficient};
use crate::error::{Error, Result};
use crate::state::{mix_with_white_noise, to_dense, DenseOperator, GhzDiagonalState};
use crate::subsets::{enumerate_bipartitions, Bipartition, SubsetMask};

/// Largest dimension the eigensolver accepts.
pub const MAX_EIGEN_DIM: usize = 1024;
/// Largest qubit count for the dense PPT comparisons.
pub const MAX_ORACLE_QUBITS: usize = 8;
const MAX_SWEEPS: usize = 100;

/// Every tolerance used on the dense side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleTolerances {
    /// A spectrum is positive when its minimum is at least `-psd`.
    pub psd: f64,
    /// Jacobi stops once the off-diagonal norm falls below `convergence × ‖M‖_F`.
    pub convergence: f64,
    /// Bisection width for dense threshold searches.
    pub bisection: f64,
}

impl Default for OracleTolerances {
    fn default() -> Self {
        Self { psd: 1e-9, convergence: 1e-12, bisection: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    /// `max_k ‖M v_k − e_k v_k‖_∞`.
    pub residual: f64,
    pub sweeps: usize,
}

/// `ρ^{T_α}`: swaps the `α` bits between row and column index.
pub fn partial_transpose(rho: &DenseOperator, alpha: SubsetMask) -> Result<DenseOperator> {
    if alpha.n() != rho.n() {
        return Err(Error::QubitMismatch { left: alpha.n(), right: rho.n() });
    }
    let m = alpha.bits() as usize;
    Ok(DenseOperator::from_upper(rho.n(), |r, c| rho.get((r & !m) | (c & m), (c & !m) | (r & m))))
}

/// Full spectrum of a real symmetric matrix by cyclic Jacobi rotations.
pub fn eigenvalues_symmetric(matrix: &DenseOperator) -> Result<SpectrumResult> {
    eigenvalues_symmetric_with(matrix, &OracleTolerances::default())
}

pub fn eigenvalues_symmetric_with(matrix: &DenseOperator, tol: &OracleTolerances) -> Result<SpectrumResult> {
    let n = matrix.dim();
    if n > MAX_EIGEN_DIM {
        return Err(Error::QubitCount { n: matrix.n(), min: 1, max: MAX_EIGEN_DIM.trailing_zeros() as usize });
    }
    let mut a = matrix.data().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let target = tol.convergence * matrix.frobenius_norm();
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    let mut off_norm = off(&a);
    while off_norm > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        off_norm = off(&a);
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a[i * n + i], i)).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let residual = residual(matrix, &v, &pairs);
    let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    Ok(SpectrumResult { min_eigenvalue: eigenvalues[0], eigenvalues, residual, sweeps })
}

/// One Jacobi rotation zeroing `a[p][q]`, accumulated into the columns of `v`.
fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        if akp == 0.0 && akq == 0.0 {
            continue;
        }
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        if apk == 0.0 && aqk == 0.0 {
            continue;
        }
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        if vkp == 0.0 && vkq == 0.0 {
            continue;
        }
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

fn residual(m: &DenseOperator, v: &[f64], pairs: &[(f64, usize)]) -> f64 {
    let n = m.dim();
    // M V, skipping zero entries of M
    let mut mv = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let mik = m.get(i, k);
            if mik == 0.0 {
                continue;
            }
            let (row, vk) = (&mut mv[i * n..(i + 1) * n], &v[k * n..(k + 1) * n]);
            for (x, y) in row.iter_mut().zip(vk) {
                *x += mik * y;
            }
        }
    }
    let mut worst = 0.0f64;
    for &(e, col) in pairs {
        for i in 0..n {
            worst = worst.max((mv[i * n + col] - e * v[i * n + col]).abs());
        }
    }
    worst
}

fn check_oracle_n(n: usize) -> Result<()> {
    if !(2..=MAX_ORACLE_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, min: 2, max: MAX_ORACLE_QUBITS });
    }
    Ok(())
}

/// Minimum eigenvalue of `X^{T_{α₁}}`, from the dense matrix.
pub fn min_pt_eigenvalue(state: &GhzDiagonalState, partition: Bipartition) -> Result<f64> {
    let rho = to_dense(state)?;
    let pt = partial_transpose(&rho, partition.alpha1())?;
    Ok(eigenvalues_symmetric(&pt)?.min_eigenvalue)
}

/// Dense PPT verdict: `λ_min(X^{T_{α₁}}) ≥ −1e−9`.
pub fn is_ppt_dense(state: &GhzDiagonalState, partition: Bipartition) -> Result<bool> {
    check_oracle_n(state.n())?;
    Ok(min_pt_eigenvalue(state, partition)? >= -OracleTolerances::default().psd)
}

/// Dense verdicts for every split, reusing one dense matrix.
pub fn dense_verdicts(state: &GhzDiagonalState) -> Result<Vec<(Bipartition, f64)>> {
    check_oracle_n(state.n())?;
    let rho = to_dense(state)?;
    enumerate_bipartitions(state.n())?
        .into_iter()
        .map(|p| {
            let pt = partial_transpose(&rho, p.alpha1())?;
            Ok((p, eigenvalues_symmetric(&pt)?.min_eigenvalue))
        })
        .collect()
}

/// Compares the sorted dense spectrum of `X^{T_{α₁}}` with the sorted
/// multiset `{B, C, D, E}/2` over one class per block, and returns the
/// largest absolute deviation.
pub fn pt_spectrum_vs_coefficients(state: &GhzDiagonalState, partition: Bipartition) -> Result<f64> {
    check_oracle_n(state.n())?;
    let rho = to_dense(state)?;
    let pt = partial_transpose(&rho, partition.alpha1())?;
    let dense = eigenvalues_symmetric(&pt)?.eigenvalues;

    let a2 = partition.alpha2().bits() as usize;
    let mut predicted = Vec::with_capacity(dense.len());
    for i in 0..state.weights().len() {
        let j = i ^ a2;
        if j < i {
            continue;
        }
        let block = BlockCoefficients::new(state.weights()[i], state.weights()[j]);
        predicted.extend(Coefficient::ALL.iter().map(|&c| block.get(c) / 2.0));
    }
    predicted.sort_by(f64::total_cmp);
    if predicted.len() != dense.len() {
        return Err(Error::MatrixShape { expected: dense.len(), got: predicted.len() });
    }
    Ok(dense.iter().zip(&predicted).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}

/// Bisects the smallest `p` for which `pred(mix(state, p))` holds, assuming
/// `pred` is monotone in `p` and true at `p = 1`.
fn bisect_noise(
    state: &GhzDiagonalState,
    width: f64,
    mut pred: impl FnMut(&GhzDiagonalState) -> Result<bool>,
) -> Result<f64> {
    if pred(state)? {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if pred(&mix_with_white_noise(state, mid)?)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Dense counterpart of [`crate::analytic::noise_threshold`].
pub fn dense_noise_threshold(state: &GhzDiagonalState, partition: Bipartition) -> Result<f64> {
    let width = OracleTolerances::default().bisection;
    bisect_noise(state, width, |s| is_ppt_dense(s, partition))
}

/// Dense counterpart of [`crate::analytic::full_entanglement_threshold`]:
/// smallest `p` for which some split is PPT.
pub fn dense_full_entanglement_threshold(state: &GhzDiagonalState) -> Result<f64> {
    let tol = OracleTolerances::default();
    bisect_noise(state, tol.bisection, |s| Ok(dense_verdicts(s)?.iter().any(|&(_, e)| e >= -tol.psd)))
}
