//! Qubit subsets as bitmasks.
//!
//! Qubit `m` (1-based) lives at bit position `n - m`, so qubit 1 is the most
//! significant bit and the numeric value of a mask is the integer whose binary
//! expansion `l_1 l_2 ... l_n` marks membership. That integer doubles as a
//! computational basis index.

use std::fmt;

use crate::error::{Error, Result};

/// Largest qubit count a mask can describe.
pub const MAX_QUBITS: usize = 24;

/// A subset of the qubits `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u32,
    n: u8,
}

impl SubsetMask {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        check_n(n, 1)?;
        if bits >> n != 0 {
            return Err(Error::MaskOutOfRange { bits, n });
        }
        Ok(Self { bits: bits as u32, n: n as u8 })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn full(n: usize) -> Result<Self> {
        Self::new(n, (1u64 << n) - 1)
    }

    /// Builds a mask from 1-based qubit labels.
    pub fn from_qubits(n: usize, qubits: &[usize]) -> Result<Self> {
        check_n(n, 1)?;
        let mut bits = 0u64;
        for &q in qubits {
            if q == 0 || q > n {
                return Err(Error::QubitOutOfRange { qubit: q, n });
            }
            bits |= 1 << (n - q);
        }
        Self::new(n, bits)
    }

    /// Parses an `l_1 ... l_n` bit-string (`'1'` marks membership).
    pub fn parse_bits(s: &str) -> Result<Self> {
        let n = s.len();
        if n == 0 || n > MAX_QUBITS || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::BitString(s.to_string()));
        }
        let bits = u64::from_str_radix(s, 2).map_err(|_| Error::BitString(s.to_string()))?;
        Self::new(n, bits)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    #[inline]
    fn full_bits(self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    #[inline]
    pub fn complement(self) -> Self {
        Self { bits: !self.bits & self.full_bits(), n: self.n }
    }

    /// Symmetric difference. Panics if the qubit counts differ.
    #[inline]
    pub fn xor(self, other: Self) -> Self {
        assert_eq!(self.n, other.n, "xor of masks over different qubit counts");
        Self { bits: self.bits ^ other.bits, n: self.n }
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        assert_eq!(self.n, other.n, "union of masks over different qubit counts");
        Self { bits: self.bits | other.bits, n: self.n }
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        assert_eq!(self.n, other.n, "intersection of masks over different qubit counts");
        Self { bits: self.bits & other.bits, n: self.n }
    }

    #[inline]
    pub fn contains(self, qubit: usize) -> bool {
        qubit >= 1 && qubit <= self.n() && self.bits >> (self.n() - qubit) & 1 == 1
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(self) -> bool {
        self.bits == self.full_bits()
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Member qubits in increasing label order.
    pub fn qubits(self) -> Vec<usize> {
        (1..=self.n()).filter(|&q| self.contains(q)).collect()
    }

    /// Whether this is the canonical representative of its `{β, N∖β}` class,
    /// i.e. it excludes qubit 1.
    #[inline]
    pub fn is_canonical_beta(self) -> bool {
        self.bits >> (self.n - 1) == 0
    }

    /// The bit-string `l_1 ... l_n`.
    pub fn to_bit_string(self) -> String {
        format!("{:0width$b}", self.bits, width = self.n())
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// The integer `l(β)` whose binary digits mark the members of `beta`.
#[inline]
pub fn l_of_beta(beta: SubsetMask) -> u64 {
    u64::from(beta.bits)
}

/// Picks whichever of `beta` and its complement leaves out qubit 1.
#[inline]
pub fn canonical_beta(beta: SubsetMask) -> SubsetMask {
    if beta.is_canonical_beta() {
        beta
    } else {
        beta.complement()
    }
}

/// All `2^(n-1)` canonical classes ordered by `l(β)`, starting at `∅`.
pub fn enumerate_canonical_betas(n: usize) -> Result<Vec<SubsetMask>> {
    check_n(n, 1)?;
    Ok((0..1u32 << (n - 1)).map(|bits| SubsetMask { bits, n: n as u8 }).collect())
}

/// A two-way split of the qubits, stored by the side that holds qubit 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    alpha1: SubsetMask,
}

impl Bipartition {
    /// Accepts either side of the split and canonicalizes it.
    pub fn new(side: SubsetMask) -> Result<Self> {
        if side.n() < 2 || side.is_empty() || side.is_full() {
            return Err(Error::TrivialPartition(side.to_bit_string()));
        }
        let alpha1 = if side.contains(1) { side } else { side.complement() };
        Ok(Self { alpha1 })
    }

    pub fn from_qubits(n: usize, alpha1: &[usize]) -> Result<Self> {
        Self::new(SubsetMask::from_qubits(n, alpha1)?)
    }

    #[inline]
    pub fn alpha1(self) -> SubsetMask {
        self.alpha1
    }

    #[inline]
    pub fn alpha2(self) -> SubsetMask {
        self.alpha1.complement()
    }

    #[inline]
    pub fn n(self) -> usize {
        self.alpha1.n()
    }

    /// Human-readable `"1|23"` form; labels are comma separated once any
    /// label needs two digits.
    pub fn split_string(self) -> String {
        let sep = if self.n() >= 10 { "," } else { "" };
        let join = |m: SubsetMask| m.qubits().iter().map(|q| q.to_string()).collect::<Vec<_>>().join(sep);
        format!("{}|{}", join(self.alpha1()), join(self.alpha2()))
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.split_string())
    }
}

/// All `2^(n-1) - 1` bipartitions, ordered by the `l` value of `α₁`.
pub fn enumerate_bipartitions(n: usize) -> Result<Vec<Bipartition>> {
    check_n(n, 2)?;
    let top = 1u32 << (n - 1);
    let full = ((1u64 << n) - 1) as u32;
    Ok((top..full).map(|bits| Bipartition { alpha1: SubsetMask { bits, n: n as u8 } }).collect())
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, min, max: MAX_QUBITS });
    }
    Ok(())
}
