//! Characters modulo T^m, their L-polynomials and the character sums M(m; βχ).

mod character;
mod lfun;
mod sums;
mod transform;
mod unit_group;

pub use character::{
    char_value, char_value_residue, enumerate_characters, enumerate_even_characters, even_census, even_index,
    Character,
};
pub use lfun::{
    even_l_coefficients, even_l_data, l_coefficients, l_polynomial, ldata_csv_row, LData, LDATA_CSV_HEADER,
};
pub use sums::{
    char_sum_m, relative_gap, weighted_sum_s, weighted_sum_s_closed, weighted_sums_batch, BetaWeights, ZERO_FLOOR,
};
pub use transform::even_character_sums;
pub use unit_group::{build_unit_group, residue_index, UnitGroupTable, UNIT_GROUP_MAX_ORDER};
