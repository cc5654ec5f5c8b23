//! 2-adic analysis of register output.
//!
//! Every output coordinate of a register with non-negative carries is
//! eventually periodic, hence the 2-adic expansion of a rational with odd
//! denominator. The denominator divides the connection norm
//! `q~ = |det(I - 2T)|`, which for Fibonacci and Galois registers equals
//! `|N(q)|` for the connection integer `q = sum q_i 2^i - 1`.
//!
//! Carries are bounded too: with `w` the column sums of the expanded
//! transition matrix, a carry inside `[0, w_j)` never leaves it.

mod connection;
mod memory;
mod rational;
mod report;

pub use connection::{
    connection_integer, connection_matrix, connection_norm, connection_vector, ring_connection_norm,
    theorem3_numerator,
};
pub use memory::{check_containment, in_box, memory_bounds, ContainmentReport, CoordinateContainment};
pub use rational::{sequence_to_rational, Rational2Adic};
pub use report::{analyze, cell_rationals, AnalysisBudget, AnalysisReport, CellRational, OrderBound};
