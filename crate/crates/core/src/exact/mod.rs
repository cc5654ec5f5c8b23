//! Exact integer linear algebra and the number theory the analysis needs.
//!
//! Nothing in this crate touches floating point. Determinants go through
//! fraction-free elimination and orders through exact factorization; when a
//! factorization would exceed its budget the caller gets an error instead of
//! a guess.

mod matrix;
mod primes;

pub use matrix::{det_exact, IntMatrix};
pub use primes::{
    factorize, is_primitive_root_2, is_primitive_root_2_with_budget, is_probable_prime,
    multiplicative_order, multiplicative_order_with_budget, DEFAULT_FACTOR_BUDGET,
};
