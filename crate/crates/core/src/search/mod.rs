//! Design-space search.
//!
//! * [`enumerate_family`] walks every register of a small family and records
//!   its connection norm and the longest cell period it can produce.
//! * [`find_l_sequence_matrices`] looks for transition matrices whose norm is
//!   a prime with 2 as primitive root.
//! * [`check_triplet`] validates a connection triplet `(q~, u, v)`.
//! * [`basic_stats`] gives descriptive statistics of an output sequence.

mod family;
mod lseq;
mod stats;
mod triplet;

pub use family::{
    encode_coefficients, encode_matrix, enumerate_family, Family, FamilyReport, Witness, DEFAULT_BOX_BUDGET,
};
pub use lseq::{find_l_sequence_matrices, LSequenceHit, SearchSpace};
pub use stats::{basic_stats, SequenceStats};
pub use triplet::{check_triplet, PrimitiveRootFlag, TripletReport};
