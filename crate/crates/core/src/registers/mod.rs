//! Feedback-with-carry registers as exact state machines.
//!
//! Three modes are supported over F2 and over F2[X]/(P):
//!
//! * **Fibonacci**: the register shifts by one cell per step and a single
//!   carry vector feeds the new last cell.
//! * **Galois**: cell 0 is fed back into every cell at once, each cell with
//!   its own carry.
//! * **Ring**: an arbitrary `r x r` transition matrix `T`. The state update is
//!   `sigma = a T + m`, `a' = sigma mod 2`, `m' = sigma div 2`, computed on
//!   coordinates via the block expansion of `T` ([`VectorialTransitionMatrix`]).
//!
//! Fibonacci and Galois registers are the ring registers of their companion
//! matrices, see [`RegisterSpec::field_matrix`] and
//! [`RegisterState::to_ring_layout`].

mod cycle;
mod matrix;
mod spec;
mod state;
mod step;

pub use cycle::{detect_cycle, detect_cycle_with_budget, minimal_period, Cycle, DEFAULT_STEP_BUDGET};
pub use matrix::VectorialTransitionMatrix;
pub use spec::{Base, Connection, Mode, RegisterSpec, SpecDocument};
pub use state::RegisterState;
pub use step::{
    run, step, step_fcr_binary, step_fibonacci, step_galois, step_vfcr, Register, Trajectory,
};

pub(crate) use step::ring_step;

#[cfg(test)]
pub(crate) use spec::golden_spec;

use crate::error::Result;

/// Block expansion of a transition matrix over F2[X]/(P).
pub fn expand(
    t: &[Vec<crate::gf::FieldElement>],
    p: &crate::gf::BinaryPolynomial,
) -> Result<VectorialTransitionMatrix> {
    VectorialTransitionMatrix::expand(t, p)
}

impl RegisterSpec {
    /// Block expansion of [`RegisterSpec::field_matrix`].
    pub fn transition_matrix(&self) -> VectorialTransitionMatrix {
        VectorialTransitionMatrix::expand(&self.field_matrix(), &self.poly())
            .expect("validated spec expands")
    }

    /// The ring register with the same transition matrix.
    pub fn to_ring(&self) -> RegisterSpec {
        RegisterSpec::general(self.base().clone(), self.field_matrix()).expect("validated spec")
    }
}
