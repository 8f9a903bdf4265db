//! Parameter sets shared by the benchmarks.

use lmec::CodeParams;

/// Table sizes from small to the largest used by the recurrence checks.
pub fn gamma_grid() -> Vec<CodeParams> {
    [(5, 1, 4), (7, 2, 8), (7, 2, 12), (7, 1, 12)]
        .into_iter()
        .map(|(q, l, n)| CodeParams::new(q, l, n).expect("valid parameters"))
        .collect()
}

/// Instances the exact solver handles in well under a second.
pub fn oracle_grid() -> Vec<CodeParams> {
    [(3, 1, 3), (4, 1, 3), (5, 1, 2), (5, 2, 3)]
        .into_iter()
        .map(|(q, l, n)| CodeParams::new(q, l, n).expect("valid parameters"))
        .collect()
}
