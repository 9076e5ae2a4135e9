//! Shared workloads for the criterion benches.

use ghzppt::{random_state, GhzDiagonalState};

/// Qubit counts for the analytic classifier.
pub const ANALYTIC_SIZES: [usize; 5] = [8, 10, 12, 13, 14];
/// Qubit counts for the dense single-split oracle.
pub const DENSE_SIZES: [usize; 5] = [4, 5, 6, 7, 8];

/// A fixed random state per size so that runs are comparable.
pub fn workload(n: usize) -> GhzDiagonalState {
    random_state(n, 0x5eed ^ n as u64).expect("valid qubit count")
}
