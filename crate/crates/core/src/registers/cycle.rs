use serde::Serialize;

use crate::error::{Error, Result};

use super::spec::RegisterSpec;
use super::state::RegisterState;
use super::step::Register;

pub const DEFAULT_STEP_BUDGET: u64 = 100_000_000;

/// `state(preperiod + period) == state(preperiod)`, both minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub preperiod: usize,
    pub period: usize,
}

pub fn detect_cycle(spec: &RegisterSpec, init: &RegisterState) -> Result<Cycle> {
    detect_cycle_with_budget(spec, init, DEFAULT_STEP_BUDGET)
}

/// Brent's cycle detection on full register states.
pub fn detect_cycle_with_budget(spec: &RegisterSpec, init: &RegisterState, budget: u64) -> Result<Cycle> {
    init.check_for(spec)?;
    let reg = Register::new(spec);
    let mut spent = 0u64;
    let mut tick = || {
        spent += 1;
        if spent > budget {
            Err(Error::StepBudget { budget })
        } else {
            Ok(())
        }
    };

    let mut power = 1usize;
    let mut period = 1usize;
    let mut tortoise = init.clone();
    let mut hare = reg.step(init);
    tick()?;
    while tortoise != hare {
        if power == period {
            tortoise = hare.clone();
            power *= 2;
            period = 0;
        }
        hare = reg.step(&hare);
        tick()?;
        period += 1;
    }

    let mut tortoise = init.clone();
    let mut hare = init.clone();
    for _ in 0..period {
        hare = reg.step(&hare);
        tick()?;
    }
    let mut preperiod = 0;
    while tortoise != hare {
        tortoise = reg.step(&tortoise);
        hare = reg.step(&hare);
        tick()?;
        preperiod += 1;
    }
    Ok(Cycle { preperiod, period })
}

/// Least `d` dividing `period` such that `seq` repeats with step `d` from `start` on.
///
/// `seq` must hold at least `start + period` entries and be periodic with
/// `period` from `start`.
pub fn minimal_period<T: PartialEq>(seq: &[T], start: usize, period: usize) -> usize {
    assert!(period >= 1 && seq.len() >= start + period);
    let window = &seq[start..start + period];
    (1..=period)
        .filter(|d| period % d == 0)
        .find(|&d| (0..period).all(|i| window[i] == window[(i + d) % period]))
        .unwrap_or(period)
}
