use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::mult_matrix;

use super::matrix::VectorialTransitionMatrix;
use super::spec::{Mode, RegisterSpec};
use super::state::RegisterState;

/// A spec compiled into integer kernels for repeated stepping.
#[derive(Debug, Clone)]
pub struct Register {
    spec: RegisterSpec,
    n: usize,
    r: usize,
    kernel: Kernel,
}

#[derive(Debug, Clone)]
enum Kernel {
    /// `taps[i]` multiplies cell `i`: the matrix of `q_(r-i)`.
    Fibonacci { taps: Vec<Vec<i64>> },
    /// `taps[i]` feeds cell 0 into cell `i`: the matrix of `q_(i+1)`.
    Galois { taps: Vec<Vec<i64>> },
    Ring(VectorialTransitionMatrix),
}

impl Register {
    pub fn new(spec: &RegisterSpec) -> Self {
        let n = spec.n();
        let r = spec.r();
        let p = spec.poly();
        let block = |e: &crate::gf::FieldElement| -> Vec<i64> {
            mult_matrix(&e.lift(), &p)
                .expect("validated spec")
                .to_i64_rows()
                .expect("small entries")
                .concat()
        };
        let kernel = match (spec.mode(), spec.coefficients()) {
            (Mode::Fibonacci, Some(q)) => Kernel::Fibonacci {
                taps: (0..r).map(|i| block(&q[r - 1 - i])).collect(),
            },
            (Mode::Galois, Some(q)) => Kernel::Galois {
                taps: q.iter().map(block).collect(),
            },
            _ => Kernel::Ring(
                VectorialTransitionMatrix::expand(&spec.field_matrix(), &p).expect("validated spec"),
            ),
        };
        Self {
            spec: spec.clone(),
            n,
            r,
            kernel,
        }
    }

    pub fn spec(&self) -> &RegisterSpec {
        &self.spec
    }

    pub fn step(&self, s: &RegisterState) -> RegisterState {
        let mut next = s.clone();
        self.step_into(s, &mut next);
        next
    }

    /// Writes the successor of `s` into `out`, which must have the same shape.
    pub fn step_into(&self, s: &RegisterState, out: &mut RegisterState) {
        let n = self.n;
        let r = self.r;
        match &self.kernel {
            Kernel::Ring(t) => ring_step(t, &s.a, &s.m, &mut out.a, &mut out.m),
            Kernel::Fibonacci { taps } => {
                out.a[..(r - 1) * n].copy_from_slice(&s.a[n..]);
                for k in 0..n {
                    let mut sigma = s.m[k];
                    for (i, tap) in taps.iter().enumerate() {
                        for l in 0..n {
                            sigma += i64::from(s.a[i * n + l]) * tap[l * n + k];
                        }
                    }
                    out.a[(r - 1) * n + k] = sigma.rem_euclid(2) as u8;
                    out.m[k] = sigma.div_euclid(2);
                }
            }
            Kernel::Galois { taps } => {
                for (i, tap) in taps.iter().enumerate() {
                    for k in 0..n {
                        let idx = i * n + k;
                        let mut sigma = s.m[idx];
                        for l in 0..n {
                            sigma += i64::from(s.a[l]) * tap[l * n + k];
                        }
                        if i + 1 < r {
                            sigma += i64::from(s.a[idx + n]);
                        }
                        out.a[idx] = sigma.rem_euclid(2) as u8;
                        out.m[idx] = sigma.div_euclid(2);
                    }
                }
            }
        }
    }

    pub fn run(&self, init: &RegisterState, steps: usize) -> Result<Trajectory> {
        init.check_for(&self.spec)?;
        let mut bits = vec![Vec::with_capacity(steps + 1); init.a.len()];
        let mut memory = vec![Vec::with_capacity(steps + 1); init.m.len()];
        let mut state = init.clone();
        let mut next = init.clone();
        for t in 0..=steps {
            for (row, &b) in bits.iter_mut().zip(&state.a) {
                row.push(b);
            }
            for (row, &c) in memory.iter_mut().zip(&state.m) {
                row.push(c);
            }
            if t < steps {
                self.step_into(&state, &mut next);
                std::mem::swap(&mut state, &mut next);
            }
        }
        Ok(Trajectory { bits, memory })
    }
}

/// `sigma = a T + m`, then `a' = sigma mod 2`, `m' = floor(sigma / 2)`.
pub(crate) fn ring_step(
    t: &VectorialTransitionMatrix,
    a: &[u8],
    m: &[i64],
    out_a: &mut [u8],
    out_m: &mut [i64],
) {
    let dim = t.dim();
    let entries = t.entries();
    for k in 0..dim {
        let mut sigma = m[k];
        for (i, &bit) in a.iter().enumerate() {
            if bit == 1 {
                sigma += entries[i * dim + k];
            }
        }
        out_a[k] = sigma.rem_euclid(2) as u8;
        out_m[k] = sigma.div_euclid(2);
    }
}

/// Output rows of a run: `bits[k][t]` is coordinate `k` of the main register
/// after `t` steps, `memory[k][t]` the matching carry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    pub bits: Vec<Vec<u8>>,
    pub memory: Vec<Vec<i64>>,
}

/// One step of a (vectorial) feedback-with-carry register in ring form.
pub fn step_vfcr(s: &RegisterState, t: &VectorialTransitionMatrix) -> Result<RegisterState> {
    let dim = t.dim();
    for len in [s.a.len(), s.m.len()] {
        if len != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: len });
        }
    }
    let mut next = s.clone();
    ring_step(t, &s.a, &s.m, &mut next.a, &mut next.m);
    Ok(next)
}

/// One step of a binary FCR (`n = 1`).
pub fn step_fcr_binary(s: &RegisterState, t: &VectorialTransitionMatrix) -> Result<RegisterState> {
    if t.n() != 1 {
        return Err(Error::UnsupportedMode("vectorial matrices; use step_vfcr"));
    }
    step_vfcr(s, t)
}

pub fn step_fibonacci(s: &RegisterState, spec: &RegisterSpec) -> Result<RegisterState> {
    if spec.mode() != Mode::Fibonacci {
        return Err(Error::UnsupportedMode("non-Fibonacci specs"));
    }
    step(spec, s)
}

pub fn step_galois(s: &RegisterState, spec: &RegisterSpec) -> Result<RegisterState> {
    if spec.mode() != Mode::Galois {
        return Err(Error::UnsupportedMode("non-Galois specs"));
    }
    step(spec, s)
}

/// One step in whatever mode `spec` describes.
pub fn step(spec: &RegisterSpec, s: &RegisterState) -> Result<RegisterState> {
    s.check_for(spec)?;
    Ok(Register::new(spec).step(s))
}

/// Runs `steps` steps from `init`; the trajectory has `steps + 1` columns.
pub fn run(spec: &RegisterSpec, init: &RegisterState, steps: usize) -> Result<Trajectory> {
    Register::new(spec).run(init, steps)
}
