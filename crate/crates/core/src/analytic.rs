//! PPT decisions for GHZ-diagonal states without dense matrices.
//!
//! Fix a split `α₁|α₂`. For every class `β` the four vectors `Ψ_β^±` and
//! `Φ_β^±` span a block that is invariant under the state and under partial
//! transposition on `α₁`. `Φ_β^±` is `Ψ_{β'}^±` up to sign with
//! `β' = β ⊕ α₂`, so the block carries the weights `λ = (λ⁺_β, λ⁻_β)` and
//! `η = (λ⁺_{β'}, λ⁻_{β'})`. Inside the block the partial transpose exchanges
//! the two coherences, and its eigenvalues are `B/2, C/2, D/2, E/2` with
//!
//! ```text
//! B = λ⁺ − λ⁻ + η⁺ + η⁻     C = λ⁺ + λ⁻ − η⁺ + η⁻
//! D = λ⁺ + λ⁻ + η⁺ − η⁻     E = −λ⁺ + λ⁻ + η⁺ + η⁻
//! ```
//!
//! The state is PPT across the split iff all four are nonnegative for every
//! `β`, and for GHZ-diagonal states that is equivalent to biseparability
//! across the split.
//!
//! The blocks for `β` and `β'` are the same block, so only one class per
//! `{β, β'}` pair is scanned.

use rayon::prelude::*;
use std::fmt;

use crate::error::{Error, Result};
use crate::state::{GhzDiagonalState, WeightPair};
use crate::subsets::{canonical_beta, enumerate_bipartitions, Bipartition, SubsetMask};

/// A coefficient counts as nonnegative when it is at least `-PPT_TOLERANCE`.
pub const PPT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficient {
    B,
    C,
    D,
    E,
}

impl Coefficient {
    pub const ALL: [Coefficient; 4] = [Coefficient::B, Coefficient::C, Coefficient::D, Coefficient::E];

    pub fn as_str(self) -> &'static str {
        match self {
            Coefficient::B => "B",
            Coefficient::C => "C",
            Coefficient::D => "D",
            Coefficient::E => "E",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockCoefficients {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub eta_plus: f64,
    pub eta_minus: f64,
}

// Each coefficient is evaluated as (pair sum) ± (pair difference). With this
// grouping the coefficients of the partner block are bit-identical
// permutations of these: B↔D and C↔E.
impl BlockCoefficients {
    pub fn new(lambda: WeightPair, eta: WeightPair) -> Self {
        Self { lambda_plus: lambda.plus, lambda_minus: lambda.minus, eta_plus: eta.plus, eta_minus: eta.minus }
    }

    #[inline]
    fn sums_and_diffs(&self) -> (f64, f64, f64, f64) {
        (
            self.lambda_plus + self.lambda_minus,
            self.lambda_plus - self.lambda_minus,
            self.eta_plus + self.eta_minus,
            self.eta_plus - self.eta_minus,
        )
    }

    #[inline]
    pub fn b(&self) -> f64 {
        let (_, ld, es, _) = self.sums_and_diffs();
        es + ld
    }

    #[inline]
    pub fn c(&self) -> f64 {
        let (ls, _, _, ed) = self.sums_and_diffs();
        ls - ed
    }

    #[inline]
    pub fn d(&self) -> f64 {
        let (ls, _, _, ed) = self.sums_and_diffs();
        ls + ed
    }

    #[inline]
    pub fn e(&self) -> f64 {
        let (_, ld, es, _) = self.sums_and_diffs();
        es - ld
    }

    /// `[B, C, D, E]`.
    #[inline]
    pub fn values(&self) -> [f64; 4] {
        let (ls, ld, es, ed) = self.sums_and_diffs();
        [es + ld, ls - ed, ls + ed, es - ld]
    }

    pub fn get(&self, which: Coefficient) -> f64 {
        self.values()[which as usize]
    }

    /// Block mass `A = λ⁺ + λ⁻ + η⁺ + η⁻`.
    pub fn mass(&self) -> f64 {
        self.lambda_plus + self.lambda_minus + self.eta_plus + self.eta_minus
    }

    /// Smallest coefficient; ties go to the earlier of B, C, D, E.
    pub fn min(&self) -> (Coefficient, f64) {
        let v = self.values();
        let mut best = 0;
        for k in 1..4 {
            if v[k] < v[best] {
                best = k;
            }
        }
        (Coefficient::ALL[best], v[best])
    }
}

fn check_compat(state: &GhzDiagonalState, n: usize) -> Result<()> {
    if state.n() != n {
        return Err(Error::QubitMismatch { left: state.n(), right: n });
    }
    Ok(())
}

/// `(η⁺_β, η⁻_β) = (⟨Φ_β^+|X|Φ_β^+⟩, ⟨Φ_β^-|X|Φ_β^-⟩)`, read off as the weights
/// of the class of `β ⊕ α₂`.
pub fn eta_pair(state: &GhzDiagonalState, beta: SubsetMask, partition: Bipartition) -> Result<WeightPair> {
    check_compat(state, beta.n())?;
    check_compat(state, partition.n())?;
    Ok(state.weight(canonical_beta(beta.xor(partition.alpha2()))))
}

pub fn block_coefficients(
    state: &GhzDiagonalState,
    beta: SubsetMask,
    partition: Bipartition,
) -> Result<BlockCoefficients> {
    let eta = eta_pair(state, beta, partition)?;
    Ok(BlockCoefficients::new(state.weight(beta), eta))
}

/// The most negative coefficient found for a split.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub beta: SubsetMask,
    pub coefficient: Coefficient,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionVerdict {
    pub partition: Bipartition,
    pub is_ppt: bool,
    pub worst: Witness,
}

/// PPT test across one split with the default tolerance.
pub fn is_ppt(state: &GhzDiagonalState, partition: Bipartition) -> Result<PartitionVerdict> {
    is_ppt_with_tolerance(state, partition, PPT_TOLERANCE)
}

pub fn is_ppt_with_tolerance(state: &GhzDiagonalState, partition: Bipartition, tol: f64) -> Result<PartitionVerdict> {
    check_compat(state, partition.n())?;
    Ok(scan_partition(state, partition, tol))
}

/// Visits one class per `{β, β'}` pair, in increasing `l(β)`.
#[inline]
fn for_each_block(state: &GhzDiagonalState, partition: Bipartition, mut f: impl FnMut(usize, BlockCoefficients)) {
    // α₂ never holds qubit 1, so β ⊕ α₂ is already canonical.
    let a2 = partition.alpha2().bits() as usize;
    let half = state.weights().len();
    for i in 0..half {
        let j = i ^ a2;
        if j < i {
            continue;
        }
        f(i, BlockCoefficients::new(state.weight_at(i), state.weight_at(j)));
    }
}

fn scan_partition(state: &GhzDiagonalState, partition: Bipartition, tol: f64) -> PartitionVerdict {
    let mut best = (0usize, Coefficient::B, f64::INFINITY);
    for_each_block(state, partition, |i, block| {
        let (which, value) = block.min();
        if value < best.2 {
            best = (i, which, value);
        }
    });
    let beta = SubsetMask::new(state.n(), best.0 as u64).expect("canonical index fits");
    PartitionVerdict { partition, is_ppt: best.2 >= -tol, worst: Witness { beta, coefficient: best.1, value: best.2 } }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub n: usize,
    /// One record per split, in [`enumerate_bipartitions`] order.
    pub partitions: Vec<PartitionVerdict>,
    pub full_entangled: bool,
    /// Splits across which the state is PPT, hence biseparable.
    pub ppt_partitions: Vec<Bipartition>,
}

impl ClassificationReport {
    fn from_verdicts(n: usize, partitions: Vec<PartitionVerdict>) -> Self {
        let ppt_partitions: Vec<_> = partitions.iter().filter(|v| v.is_ppt).map(|v| v.partition).collect();
        Self { n, full_entangled: ppt_partitions.is_empty(), partitions, ppt_partitions }
    }
}

/// Checks every split; the state is full `n`-partite entangled iff none is PPT.
pub fn classify(state: &GhzDiagonalState) -> Result<ClassificationReport> {
    classify_with_tolerance(state, PPT_TOLERANCE)
}

pub fn classify_with_tolerance(state: &GhzDiagonalState, tol: f64) -> Result<ClassificationReport> {
    let verdicts = enumerate_bipartitions(state.n())?.into_iter().map(|p| scan_partition(state, p, tol)).collect();
    Ok(ClassificationReport::from_verdicts(state.n(), verdicts))
}

/// Same report as [`classify_with_tolerance`], with splits evaluated on the
/// rayon pool.
pub fn classify_parallel(state: &GhzDiagonalState, tol: f64) -> Result<ClassificationReport> {
    let verdicts = enumerate_bipartitions(state.n())?.into_par_iter().map(|p| scan_partition(state, p, tol)).collect();
    Ok(ClassificationReport::from_verdicts(state.n(), verdicts))
}

/// Smallest white-noise fraction `p` at which the split becomes PPT.
///
/// Under `λ ↦ (1 − p)λ + p/2^n` every coefficient moves to
/// `(1 − p)c + 2p/2^n`, so each negative coefficient has a single root
/// `−c / (2/2^n − c)`; the threshold is the largest such root.
pub fn noise_threshold(state: &GhzDiagonalState, partition: Bipartition) -> Result<f64> {
    check_compat(state, partition.n())?;
    let floor = 2.0 / (1u64 << state.n()) as f64;
    let mut threshold = 0.0f64;
    for_each_block(state, partition, |_, block| {
        for c in block.values() {
            if c < 0.0 {
                threshold = threshold.max(-c / (floor - c));
            }
        }
    });
    Ok(threshold.clamp(0.0, 1.0))
}

/// Per-split thresholds in [`enumerate_bipartitions`] order.
pub fn noise_thresholds(state: &GhzDiagonalState) -> Result<Vec<(Bipartition, f64)>> {
    enumerate_bipartitions(state.n())?.into_iter().map(|p| Ok((p, noise_threshold(state, p)?))).collect()
}

/// Noise level at which full `n`-partite entanglement is first lost: the
/// minimum over splits of [`noise_threshold`].
pub fn full_entanglement_threshold(state: &GhzDiagonalState) -> Result<f64> {
    Ok(noise_thresholds(state)?.into_iter().map(|(_, t)| t).fold(f64::INFINITY, f64::min))
}

/// `2^n / (2^n + 2)`, the threshold of the pure GHZ state for every split.
pub fn ghz_closed_form_threshold(n: usize) -> f64 {
    let d = (1u64 << n) as f64;
    d / (d + 2.0)
}
