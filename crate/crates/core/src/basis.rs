//! GHZ basis vectors as two-entry sparse vectors.
//!
//! `|Ψ_β^±⟩ = (|l(β)⟩ ± |l(β) ⊕ 1…1⟩)/√2`. The amplitude on the smaller basis
//! index is always `+1/√2`, so `β` and its complement produce the same vector
//! and the sign label sits on the larger index.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::subsets::{Bipartition, SubsetMask};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    #[inline]
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A real state vector stored as `(basis index, amplitude)` pairs with
/// strictly increasing indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseStateVector {
    n: usize,
    entries: Vec<(u64, f64)>,
}

impl SparseStateVector {
    /// Sorts `entries` by index; rejects duplicates and out-of-range indices.
    pub fn new(n: usize, mut entries: Vec<(u64, f64)>) -> Result<Self> {
        entries.sort_by_key(|e| e.0);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Format("duplicate basis index in sparse vector".into()));
        }
        if let Some(&(idx, _)) = entries.iter().find(|e| e.0 >> n != 0) {
            return Err(Error::MaskOutOfRange { bits: idx, n });
        }
        Ok(Self { n, entries })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entries(&self) -> &[(u64, f64)] {
        &self.entries
    }

    pub fn support(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.0).collect()
    }

    pub fn norm_squared(&self) -> f64 {
        self.entries.iter().map(|e| e.1 * e.1).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|&(i, a)| (i, a * factor)).collect() }
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut v = vec![0.0; 1 << self.n];
        for &(i, a) in &self.entries {
            v[i as usize] = a;
        }
        v
    }
}

fn pair(n: usize, first: u64, second: u64, sign: Sign) -> SparseStateVector {
    let (lo, hi) = if first < second { (first, second) } else { (second, first) };
    let entries = vec![(lo, FRAC_1_SQRT_2), (hi, sign.factor() * FRAC_1_SQRT_2)];
    SparseStateVector { n, entries }
}

/// `|Ψ_β^±⟩`.
pub fn ghz_vector(beta: SubsetMask, sign: Sign) -> SparseStateVector {
    let l = u64::from(beta.bits());
    pair(beta.n(), l, u64::from(beta.complement().bits()), sign)
}

/// `|Φ_β^±⟩ = (|B_β(α₁)⟩|B̄_β(α₂)⟩ ± |B̄_β(α₁)⟩|B_β(α₂)⟩)/√2` for the given split.
///
/// The `+1/√2` amplitude sits on `l(β) ⊕ α₂` and the signed one on
/// `l(β) ⊕ α₁`, as written; entries are then stored in index order. The
/// result equals `±ghz_vector(β ⊕ α₂, sign)`.
pub fn phi_vector(beta: SubsetMask, sign: Sign, partition: Bipartition) -> Result<SparseStateVector> {
    if beta.n() != partition.n() {
        return Err(Error::QubitMismatch { left: beta.n(), right: partition.n() });
    }
    let first = u64::from(beta.xor(partition.alpha2()).bits());
    let second = u64::from(beta.xor(partition.alpha1()).bits());
    let mut entries = vec![(first, FRAC_1_SQRT_2), (second, sign.factor() * FRAC_1_SQRT_2)];
    entries.sort_by_key(|e| e.0);
    Ok(SparseStateVector { n: beta.n(), entries })
}

pub fn inner_product(a: &SparseStateVector, b: &SparseStateVector) -> Result<f64> {
    if a.n != b.n {
        return Err(Error::QubitMismatch { left: a.n, right: b.n });
    }
    let (mut i, mut j, mut acc) = (0, 0, 0.0);
    while i < a.entries.len() && j < b.entries.len() {
        let (ia, va) = a.entries[i];
        let (ib, vb) = b.entries[j];
        match ia.cmp(&ib) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += va * vb;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(acc)
}
