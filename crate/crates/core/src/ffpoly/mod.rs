//! Polynomials over a prime field F_q: arithmetic, factorization, the
//! polynomial totient, monic enumeration and short intervals.

mod enumerate;
mod factor;
mod field;
mod poly;
mod totient;

pub use enumerate::{enumerate_monic, enumerate_monic_range, interval, interval_key, MonicIter};
pub use factor::{
    distinct_degree, equal_degree, factorize, factorize_with, is_irreducible, squarefree_decomposition,
    Factorization, SPLIT_SEED,
};
pub use field::{FieldCtx, MAX_FIELD_SIZE};
pub use poly::Poly;
pub use totient::{beta, csv_row, totient, totient_divisor_sum_check, TotientTable, CSV_HEADER};
