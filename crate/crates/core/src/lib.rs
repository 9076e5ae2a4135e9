//! Entanglement classification of multiqubit states that are diagonal in the
//! GHZ basis.
//!
//! A GHZ-diagonal state on `n` qubits is fixed by `2^n` nonnegative weights,
//! one per GHZ basis vector. For such states, positivity of the partial
//! transpose across a bipartition is equivalent to biseparability across that
//! bipartition, so the full-entanglement question reduces to a sign test on
//! four linear combinations of weights per GHZ class and per split.
//!
//! The crate is split into:
//!
//! - [`subsets`]: bitmask algebra for qubit subsets and bipartitions.
//! - [`basis`]: sparse GHZ basis vectors and their partition-relative partners.
//! - [`state`]: the GHZ-diagonal state, its dense form, twirling, sampling and noise.
//! - [`analytic`]: the `O(2^n)`-per-split PPT test, classification and noise thresholds.
//! - [`oracle`]: brute-force partial transposition and a Jacobi eigensolver used
//!   to cross-check everything in [`analytic`].
//! - [`json`]: the on-disk state format and the report format.

pub mod analytic;
pub mod basis;
mod error;
pub mod json;
pub mod oracle;
pub mod state;
pub mod subsets;

pub use analytic::{
    block_coefficients, classify, classify_parallel, classify_with_tolerance, eta_pair, full_entanglement_threshold,
    ghz_closed_form_threshold, is_ppt, is_ppt_with_tolerance, noise_threshold, noise_thresholds, BlockCoefficients,
    ClassificationReport, Coefficient, PartitionVerdict, Witness, PPT_TOLERANCE,
};
pub use basis::{ghz_vector, inner_product, phi_vector, Sign, SparseStateVector};
pub use error::{Error, Result};
pub use oracle::{
    dense_full_entanglement_threshold, dense_noise_threshold, dense_verdicts, eigenvalues_symmetric, is_ppt_dense,
    min_pt_eigenvalue, partial_transpose, pt_spectrum_vs_coefficients, OracleTolerances, SpectrumResult,
};
pub use state::{
    extract_lambda, mix_with_white_noise, random_corpus, random_state, to_dense, twirl_to_ghz_diagonal, DenseOperator,
    GhzDiagonalState, Twirl, WeightPair,
};
pub use subsets::{
    canonical_beta, enumerate_bipartitions, enumerate_canonical_betas, l_of_beta, Bipartition, SubsetMask, MAX_QUBITS,
};
