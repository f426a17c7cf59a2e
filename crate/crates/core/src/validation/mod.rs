//! Checks that the generator has the transition law and concentration the
//! theory assumes.

mod concentration;
mod enumerate;
mod oracle;
mod transitions;

pub use concentration::{
    concentration_sweep, wn_scaling, ConcentrationOptions, ConcentrationReport, ConcentrationRow,
    WnPoint, WnScaling, DEFAULT_DELTA,
};
pub use enumerate::{
    degree_triangle_profile, enumerate_steps, exact_transition, pick_probabilities,
    step_leaf_count, step_outcomes, Enumeration, ExactTransition, StepOutcome, MAX_DEPTH,
    MAX_LEAVES,
};
pub use oracle::{compare_with_monte_carlo, OracleRow, Quantity};
pub use transitions::{
    check_transitions, PairTransition, TransitionEstimate, VertexTransition, EXACT_LEAF_LIMIT,
};

/// Per-task seed derived from a base seed, so that parallel work splits do
/// not depend on thread scheduling.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard score of `observed` against `expected` with standard error `se`.
/// A zero standard error scores 0 on an exact match and infinity otherwise.
pub fn z_score(observed: f64, expected: f64, se: f64) -> f64 {
    let diff = observed - expected;
    if se > 0.0 {
        diff / se
    } else if diff.abs() <= 1e-12 * expected.abs().max(1.0) {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    }
}

/// z-score of an empirical frequency against a known probability.
pub fn binomial_z(p_hat: f64, p: f64, trials: u64) -> f64 {
    z_score(p_hat, p, (p * (1.0 - p) / trials as f64).sqrt())
}
