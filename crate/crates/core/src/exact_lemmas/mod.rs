//! Exact evaluation of the fractional-part, Möbius and gcd sums behind the
//! integer variance constants.

mod exact_sum;
mod mobius;
mod pairs;
mod series;

pub use exact_sum::sum_inverse_squares;
pub use mobius::{
    gcd_double_limit, gcd_double_sum, mobius_square_limit, mobius_square_sum, Parity, GCD_SUM_MAX_CUTOFF,
};
pub use pairs::{
    average_shifted_pair, closed_form_pair_sum, frac_pair_period_sum, shifted_pair_limit, FracPairSpec, Shift,
};
pub use series::{
    pair_bracket, series_assembly, series_limit, theorem_series_value, SeriesVariant, SERIES_MAX_CUTOFF,
};
