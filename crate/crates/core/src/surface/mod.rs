//! Surface-code quantum memory: planar lattice, i.i.d. Z noise, syndrome
//! extraction, minimum-weight perfect-matching decoding, Monte Carlo
//! threshold estimation, union-bound checks, and code-condition verification.

pub mod decode;
pub mod lattice;
pub mod trials;
pub mod verify;

pub use decode::{
    cut_parity, decode_mwpm, decode_mwpm_weighted, is_logical_failure, matching_weight,
    sample_errors, syndrome_of, ErrorChain, Syndrome,
};
pub use lattice::{SurfaceLattice, VertexClass, MAX_DISTANCE, MIN_DISTANCE};
pub use trials::{
    exhaustive_logical_rate, run_trials, threshold_estimate, union_bound, wilson_interval,
    PairCrossing, ThresholdEstimate, TrialStats,
};
pub use verify::{
    check_error_pair, enumerate_errors, verify_code_conditions, CodeConditionReport, CodeStates,
    PauliError, Violation,
};
