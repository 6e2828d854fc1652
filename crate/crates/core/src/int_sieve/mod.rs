//! Sieve-driven statistics of φ(n)/n over the integers.

mod assumption;
mod interval;
mod sieve;
mod stats;

pub use assumption::{assumption_correlation_test, AssumptionMatrix};
pub use interval::{
    discrete_average_r0, discrete_meansq_r0, discrete_moments_r0, floor_pow_root, geometric_checkpoints,
    interval_variance, interval_variance_checkpoints, interval_variances, remainder_r0, Exponent,
    FloorRootTracker, IntervalLengths, IntervalSpec, R0Moments,
};
pub use sieve::{fill_segment, totient_ratio_sieve, PrefixCursor, TotientRatio, TotientStream, DEFAULT_BLOCK_SIZE};
pub use stats::{inv_zeta2, StatAccumulator, ZETA2};

/// Closed-form targets, evaluated with ζ(2) = π²/6.
pub mod limits {
    use super::ZETA2;

    /// Limit of the discrete average of R_0.
    pub fn average_r0() -> f64 {
        1.0 / (2.0 * ZETA2)
    }

    /// Limit of the discrete mean square of R_0.
    pub fn mean_square_r0() -> f64 {
        1.0 / (12.0 * ZETA2) + 1.0 / (6.0 * ZETA2 * ZETA2)
    }

    /// Conjectured variance for H = x and H = ⌊x^δ⌋.
    pub fn variance_h() -> f64 {
        1.0 / (6.0 * ZETA2) - 1.0 / (6.0 * ZETA2 * ZETA2)
    }

    /// Variance for H = 2⌊x^δ⌋.
    pub fn variance_even_h() -> f64 {
        1.0 / (6.0 * ZETA2) - 2.0 / (9.0 * ZETA2 * ZETA2)
    }

    /// Variance for H = 2⌊x^δ⌋ + 1.
    pub fn variance_odd_h() -> f64 {
        1.0 / (6.0 * ZETA2) - 1.0 / (9.0 * ZETA2 * ZETA2)
    }

}
