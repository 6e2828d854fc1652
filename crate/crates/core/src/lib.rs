//! Variance of the normalized Euler totient φ(n)/n in short intervals, over the
//! integers and over F_q[T].

pub mod arith;
pub mod charlfun;
pub mod error;
pub mod exact_lemmas;
pub mod ffpoly;
pub mod int_sieve;
pub mod variance;

pub use error::{Error, Result};
