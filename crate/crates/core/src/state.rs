//! GHZ-diagonal states and their dense matrix form.
//!
//! Weights are stored once per canonical class `β` (qubit 1 excluded), in
//! increasing `l(β)` order, so the weight pair for `β` lives at index
//! `l(β)`. They sum to 1. The alternative convention with one entry per
//! subset and a global factor `½` is handled at the boundary, see
//! [`GhzDiagonalState::from_subset_weights`].

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp1};

use crate::basis::{ghz_vector, Sign, SparseStateVector};
use crate::error::{Error, Result};
use crate::oracle;
use crate::subsets::{canonical_beta, SubsetMask, MAX_QUBITS};

/// Weights in `[-CLAMP_TOLERANCE, 0)` are treated as round-off and set to 0.
pub const CLAMP_TOLERANCE: f64 = 1e-12;
/// Allowed deviation of the weight sum from 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;
/// Largest qubit count that may be expanded to a dense matrix.
pub const MAX_DENSE_QUBITS: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct WeightPair {
    pub plus: f64,
    pub minus: f64,
}

impl WeightPair {
    pub const fn new(plus: f64, minus: f64) -> Self {
        Self { plus, minus }
    }

    #[inline]
    pub fn get(self, sign: Sign) -> f64 {
        match sign {
            Sign::Plus => self.plus,
            Sign::Minus => self.minus,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GhzDiagonalState {
    n: usize,
    weights: Vec<WeightPair>,
}

impl GhzDiagonalState {
    /// Validates and stores canonical weights (`2^(n-1)` pairs).
    pub fn from_weights(n: usize, mut weights: Vec<WeightPair>) -> Result<Self> {
        check_state_n(n)?;
        let expected = 1usize << (n - 1);
        if weights.len() != expected {
            return Err(Error::WeightCount { expected, got: weights.len() });
        }
        let mut sum = 0.0;
        for (i, w) in weights.iter_mut().enumerate() {
            for (sign, value) in [(Sign::Plus, &mut w.plus), (Sign::Minus, &mut w.minus)] {
                *value = clamp_weight(*value, || {
                    let beta = SubsetMask::new(n, i as u64).expect("index below 2^(n-1)");
                    format!("weights[{beta}].{}", sign_name(sign))
                })?;
            }
            sum += w.plus + w.minus;
        }
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE || !sum.is_finite() {
            return Err(Error::Normalization { sum });
        }
        Ok(Self { n, weights })
    }

    /// Builds a state from weights given per subset `β ⊂ {1..n}` under the
    /// convention `X = ½ Σ_β (λ⁺_β Ψ⁺_β + λ⁻_β Ψ⁻_β)` with `½ Σ_β (λ⁺_β + λ⁻_β) = 1`.
    /// The canonical weight of a class is the mean of its two subset entries.
    pub fn from_subset_weights(n: usize, entries: &[(SubsetMask, WeightPair)]) -> Result<Self> {
        check_state_n(n)?;
        let mut weights = vec![WeightPair::default(); 1 << (n - 1)];
        for &(beta, w) in entries {
            if beta.n() != n {
                return Err(Error::QubitMismatch { left: beta.n(), right: n });
            }
            let slot = &mut weights[canonical_beta(beta).bits() as usize];
            slot.plus += 0.5 * w.plus;
            slot.minus += 0.5 * w.minus;
        }
        Self::from_weights(n, weights)
    }

    /// `|GHZ⟩ = (|0…0⟩ + |1…1⟩)/√2`.
    pub fn pure_ghz(n: usize) -> Result<Self> {
        check_state_n(n)?;
        let mut weights = vec![WeightPair::default(); 1 << (n - 1)];
        weights[0].plus = 1.0;
        Ok(Self { n, weights })
    }

    /// The maximally mixed state `I / 2^n`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_state_n(n)?;
        let w = 1.0 / (1u64 << n) as f64;
        Ok(Self { n, weights: vec![WeightPair::new(w, w); 1 << (n - 1)] })
    }

    /// Two-qubit Bell-diagonal state `δ₁ψ⁺ + δ₂ψ⁻ + δ₃φ⁺ + δ₄φ⁻`, where
    /// `ψ± = (|11⟩ ± |00⟩)/√2` and `φ± = (|10⟩ ± |01⟩)/√2` up to global phases.
    pub fn bell_diagonal(delta: [f64; 4]) -> Result<Self> {
        Self::from_weights(2, vec![WeightPair::new(delta[0], delta[1]), WeightPair::new(delta[2], delta[3])])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weights(&self) -> &[WeightPair] {
        &self.weights
    }

    /// Weight pair of the class containing `beta` (either representative).
    #[inline]
    pub fn weight(&self, beta: SubsetMask) -> WeightPair {
        self.weights[canonical_beta(beta).bits() as usize]
    }

    #[inline]
    pub(crate) fn weight_at(&self, index: usize) -> WeightPair {
        self.weights[index]
    }

    pub fn is_pure_ghz(&self, tol: f64) -> bool {
        (self.weights[0].plus - 1.0).abs() <= tol
            && self.weights[0].minus.abs() <= tol
            && self.weights[1..].iter().all(|w| w.plus.abs() <= tol && w.minus.abs() <= tol)
    }
}

fn sign_name(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "plus",
        Sign::Minus => "minus",
    }
}

fn clamp_weight(value: f64, field: impl FnOnce() -> String) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -CLAMP_TOLERANCE {
        Ok(0.0)
    } else {
        Err(Error::NegativeWeight { field: field(), value })
    }
}

fn check_state_n(n: usize) -> Result<()> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, min: 2, max: MAX_QUBITS });
    }
    Ok(())
}

/// A real symmetric `2^n × 2^n` matrix, row-major, indexed by `l_1 … l_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n: usize,
    data: Vec<f64>,
}

impl DenseOperator {
    /// Rejects data that is not exactly symmetric.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_QUBITS {
            return Err(Error::QubitCount { n, min: 1, max: MAX_DENSE_QUBITS });
        }
        let dim = 1usize << n;
        if data.len() != dim * dim {
            return Err(Error::MatrixShape { expected: dim * dim, got: data.len() });
        }
        for r in 0..dim {
            for c in r + 1..dim {
                if data[r * dim + c] != data[c * dim + r] {
                    return Err(Error::NotSymmetric { row: r, col: c });
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_QUBITS {
            return Err(Error::QubitCount { n, min: 1, max: MAX_DENSE_QUBITS });
        }
        let dim = 1usize << n;
        Ok(Self { n, data: vec![0.0; dim * dim] })
    }

    pub fn identity_scaled(n: usize, value: f64) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        let dim = m.dim();
        for i in 0..dim {
            m.data[i * dim + i] = value;
        }
        Ok(m)
    }

    /// `|v⟩⟨v|` for a sparse vector.
    pub fn outer(v: &SparseStateVector) -> Result<Self> {
        let mut m = Self::zeros(v.n())?;
        m.add_outer(v, 1.0);
        Ok(m)
    }

    /// Fills the upper triangle from `f` and mirrors it.
    pub(crate) fn from_upper(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let dim = 1usize << n;
        let mut data = vec![0.0; dim * dim];
        for r in 0..dim {
            for c in r..dim {
                let v = f(r, c);
                data[r * dim + c] = v;
                data[c * dim + r] = v;
            }
        }
        Self { n, data }
    }

    pub(crate) fn add_outer(&mut self, v: &SparseStateVector, scale: f64) {
        let dim = self.dim();
        for &(i, a) in v.entries() {
            for &(j, b) in v.entries() {
                self.data[i as usize * dim + j as usize] += scale * a * b;
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim() + col]
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `self + other * scale`.
    pub fn add_scaled(&self, other: &DenseOperator, scale: f64) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::QubitMismatch { left: self.n, right: other.n });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + scale * b).collect();
        Ok(Self { n: self.n, data })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * factor).collect() }
    }

    /// `⟨v|M|v⟩`.
    pub fn quadratic_form(&self, v: &SparseStateVector) -> Result<f64> {
        if v.n() != self.n {
            return Err(Error::QubitMismatch { left: v.n(), right: self.n });
        }
        let mut acc = 0.0;
        for &(i, a) in v.entries() {
            for &(j, b) in v.entries() {
                acc += a * b * self.get(i as usize, j as usize);
            }
        }
        Ok(acc)
    }

    /// Row-major text, 17 significant digits per entry.
    pub fn debug_dump(&self) -> String {
        let dim = self.dim();
        let mut out = String::new();
        for r in 0..dim {
            let row: Vec<String> = (0..dim).map(|c| format!("{:.16e}", self.get(r, c))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Expands a state into its `2^n × 2^n` matrix. Each row has at most two
/// nonzero entries, on the diagonal and the anti-diagonal.
pub fn to_dense(state: &GhzDiagonalState) -> Result<DenseOperator> {
    if state.n > MAX_DENSE_QUBITS {
        return Err(Error::QubitCount { n: state.n, min: 2, max: MAX_DENSE_QUBITS });
    }
    let mut m = DenseOperator::zeros(state.n)?;
    let dim = m.dim();
    let top = dim - 1;
    for (i, w) in state.weights.iter().enumerate() {
        let j = top ^ i;
        let diag = 0.5 * (w.plus + w.minus);
        let coherence = 0.5 * (w.plus - w.minus);
        m.data[i * dim + i] = diag;
        m.data[j * dim + j] = diag;
        m.data[i * dim + j] = coherence;
        m.data[j * dim + i] = coherence;
    }
    Ok(m)
}

/// `λ_β^± = ⟨Ψ_β^±|ρ|Ψ_β^±⟩`.
pub fn extract_lambda(rho: &DenseOperator, beta: SubsetMask, sign: Sign) -> Result<f64> {
    rho.quadratic_form(&ghz_vector(beta, sign))
}

/// Result of projecting a dense state onto the GHZ-diagonal family.
#[derive(Clone, Debug, PartialEq)]
pub struct Twirl {
    pub state: GhzDiagonalState,
    /// Frobenius norm of the part of the input that was dropped.
    pub discarded: f64,
}

/// Keeps only the diagonal of `rho` in the GHZ basis.
///
/// Positivity of `rho` is not checked here; see [`twirl_to_ghz_diagonal_strict`].
pub fn twirl_to_ghz_diagonal(rho: &DenseOperator) -> Result<Twirl> {
    let n = rho.n();
    if n < 2 {
        return Err(Error::QubitCount { n, min: 2, max: MAX_DENSE_QUBITS });
    }
    let dim = rho.dim();
    let top = dim - 1;
    let mut raw = Vec::with_capacity(dim / 2);
    for b in 0..dim / 2 {
        let beta = SubsetMask::new(n, b as u64)?;
        raw.push(WeightPair::new(extract_lambda(rho, beta, Sign::Plus)?, extract_lambda(rho, beta, Sign::Minus)?));
    }

    let mut discarded_sq = 0.0;
    for r in 0..dim {
        for c in 0..dim {
            let kept = if c == r {
                let w = raw[r.min(top ^ r)];
                0.5 * (w.plus + w.minus)
            } else if c == top ^ r {
                let w = raw[r.min(c)];
                0.5 * (w.plus - w.minus)
            } else {
                0.0
            };
            let d = rho.get(r, c) - kept;
            discarded_sq += d * d;
        }
    }

    let sum: f64 = raw.iter().map(|w| w.plus + w.minus).sum();
    if sum > 0.0 {
        for w in &mut raw {
            w.plus /= sum;
            w.minus /= sum;
        }
    }
    Ok(Twirl { state: GhzDiagonalState::from_weights(n, raw)?, discarded: discarded_sq.sqrt() })
}

/// Like [`twirl_to_ghz_diagonal`] but first checks `rho ≥ 0` with the dense
/// eigensolver.
pub fn twirl_to_ghz_diagonal_strict(rho: &DenseOperator) -> Result<Twirl> {
    let spectrum = oracle::eigenvalues_symmetric(rho)?;
    if spectrum.min_eigenvalue < -oracle::OracleTolerances::default().psd {
        return Err(Error::NotPositive(spectrum.min_eigenvalue));
    }
    twirl_to_ghz_diagonal(rho)
}

/// A uniformly random point of the weight simplex, reproducible from `seed`.
///
/// Draws `2^n` unit-rate exponentials and normalizes them, i.e. a
/// `Dirichlet(1, …, 1)` sample. Pair `i` takes draws `2i` (plus) and `2i + 1`
/// (minus).
pub fn random_state(n: usize, seed: u64) -> Result<GhzDiagonalState> {
    check_state_n(n)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut weights: Vec<WeightPair> = (0..1usize << (n - 1))
        .map(|_| {
            let plus: f64 = Exp1.sample(&mut rng);
            let minus: f64 = Exp1.sample(&mut rng);
            WeightPair::new(plus, minus)
        })
        .collect();
    let sum: f64 = weights.iter().map(|w| w.plus + w.minus).sum();
    for w in &mut weights {
        w.plus /= sum;
        w.minus /= sum;
    }
    Ok(GhzDiagonalState { n, weights })
}

/// `count` reproducible random states; state `k` gets its own seed drawn from
/// a generator seeded with `seed`.
pub fn random_corpus(n: usize, seed: u64, count: usize) -> Result<Vec<GhzDiagonalState>> {
    use rand::RngCore;
    let mut master = ChaCha20Rng::seed_from_u64(seed);
    (0..count).map(|_| random_state(n, master.next_u64())).collect()
}

/// `(1 - p) X + p I / 2^n`.
pub fn mix_with_white_noise(state: &GhzDiagonalState, p: f64) -> Result<GhzDiagonalState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(p));
    }
    let floor = p / (1u64 << state.n) as f64;
    let keep = 1.0 - p;
    let weights =
        state.weights.iter().map(|w| WeightPair::new(keep * w.plus + floor, keep * w.minus + floor)).collect();
    Ok(GhzDiagonalState { n: state.n, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::enumerate_canonical_betas;
    use proptest::prelude::*;

    fn m(n: usize, q: &[usize]) -> SubsetMask {
        SubsetMask::from_qubits(n, q).unwrap()
    }

    /// `Σ λ |Ψ⟩⟨Ψ|` accumulated from outer products of sparse vectors.
    fn dense_by_projectors(state: &GhzDiagonalState) -> DenseOperator {
        let mut acc = DenseOperator::zeros(state.n()).unwrap();
        for beta in enumerate_canonical_betas(state.n()).unwrap() {
            let w = state.weight(beta);
            for s in Sign::BOTH {
                acc.add_outer(&ghz_vector(beta, s), w.get(s));
            }
        }
        acc
    }

    fn weights_3(entries: &[(usize, f64, f64)]) -> GhzDiagonalState {
        let mut w = vec![WeightPair::default(); 4];
        for &(i, p, q) in entries {
            w[i] = WeightPair::new(p, q);
        }
        GhzDiagonalState::from_weights(3, w).unwrap()
    }

    #[test]
    fn to_dense_examples() {
        let bell = to_dense(&GhzDiagonalState::pure_ghz(2).unwrap()).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let expect = if (r == 0 || r == 3) && (c == 0 || c == 3) { 0.5 } else { 0.0 };
                assert_eq!(bell.get(r, c), expect);
            }
        }

        for n in 2..=6 {
            let mixed = to_dense(&GhzDiagonalState::maximally_mixed(n).unwrap()).unwrap();
            let id = DenseOperator::identity_scaled(n, 1.0 / (1 << n) as f64).unwrap();
            assert_eq!(mixed, id);
        }

        let classical = weights_3(&[(0, 0.5, 0.5)]);
        let d = to_dense(&classical).unwrap();
        for r in 0..8 {
            for c in 0..8 {
                let expect = if r == c && (r == 0 || r == 7) { 0.5 } else { 0.0 };
                assert!((d.get(r, c) - expect).abs() < 1e-15);
            }
        }
        assert!(to_dense(&GhzDiagonalState::pure_ghz(11).unwrap()).is_err());
    }

    #[test]
    fn to_dense_matches_projector_sum() {
        for n in 2..=6 {
            let s = random_state(n, 100 + n as u64).unwrap();
            let a = to_dense(&s).unwrap();
            let b = dense_by_projectors(&s);
            let diff = a.add_scaled(&b, -1.0).unwrap().max_abs();
            assert!(diff < 1e-15, "n={n} diff={diff}");
            assert!((a.trace() - 1.0).abs() < 1e-12);
            let dim = a.dim();
            for r in 0..dim {
                let nnz = (0..dim).filter(|&c| a.get(r, c) != 0.0).count();
                assert!(nnz <= 2);
            }
        }
    }

    #[test]
    fn extract_examples() {
        let ghz = to_dense(&GhzDiagonalState::pure_ghz(3).unwrap()).unwrap();
        assert!((extract_lambda(&ghz, m(3, &[]), Sign::Plus).unwrap() - 1.0).abs() < 1e-15);

        let mixed = to_dense(&GhzDiagonalState::maximally_mixed(3).unwrap()).unwrap();
        for beta in 0..8 {
            for s in Sign::BOTH {
                let v = extract_lambda(&mixed, SubsetMask::new(3, beta).unwrap(), s).unwrap();
                assert!((v - 0.125).abs() < 1e-15);
            }
        }

        let mix = weights_3(&[(0, 0.7, 0.0), (1, 0.0, 0.3)]);
        let rho = dense_by_projectors(&mix);
        let v = extract_lambda(&rho, m(3, &[3]), Sign::Minus).unwrap();
        assert!((v - 0.3).abs() < 1e-15);
    }

    #[test]
    fn twirl_examples() {
        let s = random_state(4, 3).unwrap();
        let t = twirl_to_ghz_diagonal(&to_dense(&s).unwrap()).unwrap();
        assert!(t.discarded < 1e-15);
        for (a, b) in t.state.weights().iter().zip(s.weights()) {
            assert!((a.plus - b.plus).abs() < 1e-15 && (a.minus - b.minus).abs() < 1e-15);
        }

        let mut data = vec![0.0; 64];
        data[0] = 1.0;
        let zero = DenseOperator::new(3, data).unwrap();
        let t = twirl_to_ghz_diagonal(&zero).unwrap();
        assert!((t.state.weights()[0].plus - 0.5).abs() < 1e-15);
        assert!((t.state.weights()[0].minus - 0.5).abs() < 1e-15);
        assert!(t.state.weights()[1..].iter().all(|w| w.plus == 0.0 && w.minus == 0.0));
        // |000⟩⟨000| keeps ½(|000⟩⟨000| + |111⟩⟨111|); the remainder has
        // entries ±½ on both diagonal corners.
        assert!((t.discarded - (0.5f64).sqrt()).abs() < 1e-15);

        let id = DenseOperator::identity_scaled(3, 0.125).unwrap();
        let t = twirl_to_ghz_diagonal(&id).unwrap();
        assert!(t.state.weights().iter().all(|w| (w.plus - 0.125).abs() < 1e-15 && (w.minus - 0.125).abs() < 1e-15));
        assert!(t.discarded < 1e-15);
    }

    #[test]
    fn strict_twirl_rejects_non_positive() {
        let mut data = vec![0.0; 16];
        data[0] = 1.5;
        data[15] = -0.5;
        let rho = DenseOperator::new(2, data).unwrap();
        assert!(twirl_to_ghz_diagonal(&rho).is_ok());
        assert!(matches!(twirl_to_ghz_diagonal_strict(&rho), Err(Error::NotPositive(_))));
        let ok = to_dense(&random_state(3, 1).unwrap()).unwrap();
        assert!(twirl_to_ghz_diagonal_strict(&ok).is_ok());
    }

    #[test]
    fn validation() {
        let bad_sum = GhzDiagonalState::from_weights(2, vec![WeightPair::new(0.5, 0.2), WeightPair::new(0.1, 0.1)]);
        assert!(matches!(bad_sum, Err(Error::Normalization { .. })));
        let neg = GhzDiagonalState::from_weights(2, vec![WeightPair::new(1.1, -0.1), WeightPair::new(0.0, 0.0)]);
        assert_eq!(neg.unwrap_err().to_string(), "weights[00].minus: negative weight -0.1");
        let clamped =
            GhzDiagonalState::from_weights(2, vec![WeightPair::new(1.0, -1e-13), WeightPair::new(0.0, 0.0)]).unwrap();
        assert_eq!(clamped.weights()[0].minus, 0.0);
        assert!(GhzDiagonalState::from_weights(2, vec![WeightPair::new(1.0, 0.0)]).is_err());
        assert!(GhzDiagonalState::pure_ghz(1).is_err());
        assert!(DenseOperator::new(1, vec![0.0, 1.0, 0.5, 0.0]).is_err());
    }

    #[test]
    fn subset_convention() {
        // subset-style: both representatives carry the class weight
        let entries = [
            (m(2, &[]), WeightPair::new(0.6, 0.0)),
            (m(2, &[1, 2]), WeightPair::new(0.6, 0.0)),
            (m(2, &[2]), WeightPair::new(0.0, 0.4)),
            (m(2, &[1]), WeightPair::new(0.0, 0.4)),
        ];
        let s = GhzDiagonalState::from_subset_weights(2, &entries).unwrap();
        assert_eq!(s.weights(), &[WeightPair::new(0.6, 0.0), WeightPair::new(0.0, 0.4)]);
    }

    #[test]
    fn random_state_properties() {
        let a = random_state(5, 42).unwrap();
        let b = random_state(5, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_state(5, 43).unwrap());
        let sum: f64 = a.weights().iter().map(|w| w.plus + w.minus).sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert!(a.weights().iter().all(|w| w.plus >= 0.0 && w.minus >= 0.0));

        let corpus = random_corpus(3, 7, 4).unwrap();
        assert_eq!(corpus, random_corpus(3, 7, 4).unwrap());
        assert_ne!(corpus[0], corpus[1]);
    }

    #[test]
    fn random_state_dirichlet_moments() {
        // Dirichlet(1,…,1) on 8 coordinates: mean 1/8, variance (1/8)(7/8)/9.
        let samples = 10_000;
        let mut means = [0.0f64; 8];
        for seed in 0..samples {
            let s = random_state(3, seed).unwrap();
            for (i, w) in s.weights().iter().enumerate() {
                means[2 * i] += w.plus;
                means[2 * i + 1] += w.minus;
            }
        }
        let se = ((1.0 / 8.0) * (7.0 / 8.0) / 9.0f64).sqrt() / (samples as f64).sqrt();
        for mean in means.iter().map(|m| m / samples as f64) {
            assert!((mean - 0.125).abs() < 3.0 * se, "mean {mean} se {se}");
        }
    }

    #[test]
    fn white_noise_examples() {
        let ghz = GhzDiagonalState::pure_ghz(3).unwrap();
        assert_eq!(mix_with_white_noise(&ghz, 0.0).unwrap(), ghz);
        let full = mix_with_white_noise(&ghz, 1.0).unwrap();
        assert!(full.weights().iter().all(|w| w.plus == 0.125 && w.minus == 0.125));
        assert!(mix_with_white_noise(&ghz, 1.5).is_err());
        assert!(mix_with_white_noise(&ghz, -0.1).is_err());

        let noisy = mix_with_white_noise(&ghz, 0.8).unwrap();
        // independent route: dense convex combination, then extraction
        let dense = to_dense(&ghz)
            .unwrap()
            .scale(0.2)
            .add_scaled(&DenseOperator::identity_scaled(3, 1.0 / 8.0).unwrap(), 0.8)
            .unwrap();
        for beta in enumerate_canonical_betas(3).unwrap() {
            for s in Sign::BOTH {
                let expect = if beta.is_empty() && s == Sign::Plus { 0.3 } else { 0.1 };
                let via_dense = extract_lambda(&dense, beta, s).unwrap();
                assert!((noisy.weight(beta).get(s) - expect).abs() < 1e-15);
                assert!((via_dense - expect).abs() < 1e-15);
            }
        }
    }

    proptest! {
        #[test]
        fn extract_round_trip(n in 2usize..=8, seed in any::<u64>()) {
            let s = random_state(n, seed).unwrap();
            let rho = to_dense(&s).unwrap();
            for beta in enumerate_canonical_betas(n).unwrap() {
                for sign in Sign::BOTH {
                    let v = extract_lambda(&rho, beta, sign).unwrap();
                    prop_assert!((v - s.weight(beta).get(sign)).abs() < 1e-12);
                    let other = extract_lambda(&rho, beta.complement(), sign).unwrap();
                    prop_assert!((other - v).abs() < 1e-15);
                }
            }
        }

        #[test]
        fn noise_composes_affinely(n in 2usize..=8, seed in any::<u64>(), p in 0.0f64..=1.0, q in 0.0f64..=1.0) {
            let s = random_state(n, seed).unwrap();
            let twice = mix_with_white_noise(&mix_with_white_noise(&s, p).unwrap(), q).unwrap();
            let once = mix_with_white_noise(&s, 1.0 - (1.0 - p) * (1.0 - q)).unwrap();
            for (a, b) in twice.weights().iter().zip(once.weights()) {
                prop_assert!((a.plus - b.plus).abs() < 1e-12);
                prop_assert!((a.minus - b.minus).abs() < 1e-12);
            }
        }

        #[test]
        fn twirl_preserves_trace(entries in proptest::collection::vec(-1.0f64..1.0, 10)) {
            // diagonally dominant, hence positive, then unit trace
            let mut data = vec![0.0; 16];
            let mut k = 0;
            for r in 0..4 {
                for c in r..4 {
                    data[r * 4 + c] = entries[k];
                    data[c * 4 + r] = entries[k];
                    k += 1;
                }
                data[r * 4 + r] += 4.0;
            }
            let raw = DenseOperator::new(2, data).unwrap();
            let rho = raw.scale(1.0 / raw.trace());
            let t = twirl_to_ghz_diagonal(&rho).unwrap();
            let back = to_dense(&t.state).unwrap();
            prop_assert!((back.trace() - rho.trace()).abs() < 1e-12);
            let again = twirl_to_ghz_diagonal(&back).unwrap();
            prop_assert!(again.discarded < 1e-15);
        }
    }
}
