//! Feedback-with-carry registers over F2 and F2^n, and their 2-adic analysis.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: exact determinants, primality, multiplicative orders.
//! * [`gf`]: F2[X]/(P) and its integer lift, multiplication matrices, norms.
//! * [`registers`]: Fibonacci, Galois and ring registers as state machines.
//! * [`adic`]: connection integers and norms, rational reconstruction of
//!   output sequences, carry bounds.
//! * [`search`]: exhaustive family enumeration, maximal-period matrix search
//!   and connection-triplet checks.
//!
//! ```
//! use vfcr::gf::{BinaryPolynomial, FieldElement};
//! use vfcr::registers::{detect_cycle, Base, RegisterSpec, RegisterState};
//! use vfcr::adic::ring_connection_norm;
//!
//! let p = BinaryPolynomial::quadratic();
//! let e = |s: &str| FieldElement::parse(s, 2).unwrap();
//! let spec = RegisterSpec::general(
//!     Base::Vectorial(p),
//!     vec![vec![e("01"), e("01")], vec![e("11"), e("00")]],
//! )
//! .unwrap();
//!
//! let (det, q) = ring_connection_norm(&spec.transition_matrix());
//! assert_eq!((det, q), ((-61).into(), 61u32.into()));
//!
//! let init = RegisterState::new(vec![1, 1, 1, 0], vec![0, 0, 0, 1]).unwrap();
//! assert_eq!(detect_cycle(&spec, &init).unwrap().period, 60);
//! ```

pub mod adic;
pub mod error;
pub mod exact;
pub mod gf;
pub mod registers;
pub mod search;
pub mod serial;

pub use error::{Error, Result};
