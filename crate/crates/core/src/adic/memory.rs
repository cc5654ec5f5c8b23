use serde::Serialize;

use crate::registers::VectorialTransitionMatrix;

/// Column sums `w` of the expanded transition matrix. Once a carry coordinate
/// lies in `[0, w)` it stays there.
pub fn memory_bounds(t: &VectorialTransitionMatrix) -> Vec<i64> {
    t.column_sums()
}

/// Whether `m` lies in the box. A zero weight admits only the value 0: its
/// half-open interval is empty, and 0 is where such a carry settles.
pub fn in_box(m: &[i64], w: &[i64]) -> bool {
    m.len() == w.len() && m.iter().zip(w).all(|(&x, &wj)| coordinate_inside(x, wj))
}

fn coordinate_inside(x: i64, w: i64) -> bool {
    if w == 0 {
        x == 0
    } else {
        (0..w).contains(&x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinateContainment {
    pub weight: i64,
    /// First step at which the carry is inside its interval.
    pub entry_step: Option<usize>,
    /// The carry never leaves the interval after `entry_step`.
    pub stays_inside: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub coordinates: Vec<CoordinateContainment>,
}

impl ContainmentReport {
    /// Every coordinate entered its interval and stayed.
    pub fn holds(&self) -> bool {
        self.coordinates
            .iter()
            .all(|c| c.entry_step.is_some() && c.stays_inside)
    }

    /// The step from which the whole carry vector is inside the box.
    pub fn absorbed_at(&self) -> Option<usize> {
        if !self.holds() {
            return None;
        }
        self.coordinates.iter().map(|c| c.entry_step).max().flatten()
    }
}

/// Checks memory rows (`trace[k][t]`, one row per carry coordinate) against `w`.
///
/// # Panics
/// If the number of rows differs from `w.len()`.
pub fn check_containment(trace: &[Vec<i64>], w: &[i64]) -> ContainmentReport {
    assert_eq!(trace.len(), w.len(), "one trace row per weight");
    let coordinates = trace
        .iter()
        .zip(w)
        .map(|(row, &weight)| {
            let entry_step = row.iter().position(|&x| coordinate_inside(x, weight));
            let stays_inside = entry_step
                .map(|s| row[s..].iter().all(|&x| coordinate_inside(x, weight)))
                .unwrap_or(false);
            CoordinateContainment {
                weight,
                entry_step,
                stays_inside,
            }
        })
        .collect();
    ContainmentReport { coordinates }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registers::{golden_spec, run, RegisterState};

    #[test]
    fn golden_weights() {
        assert_eq!(memory_bounds(&golden_spec().transition_matrix()), vec![3, 5, 1, 2]);
    }

    #[test]
    fn zero_matrix_admits_only_zero() {
        let t = VectorialTransitionMatrix::from_rows(2, &[vec![0, 0], vec![0, 0]]).unwrap();
        let w = memory_bounds(&t);
        assert_eq!(w, vec![0, 0]);
        assert!(in_box(&[0, 0], &w));
        assert!(!in_box(&[1, 0], &w));
        let rep = check_containment(&[vec![3, 1, 0, 0], vec![0, 0, 0, 0]], &w);
        assert!(rep.holds());
        assert_eq!(rep.absorbed_at(), Some(2));
    }

    #[test]
    fn golden_trace_is_contained() {
        let spec = golden_spec();
        let init = RegisterState::new(vec![1, 1, 1, 0], vec![0, 0, 0, 1]).unwrap();
        let tr = run(&spec, &init, 200).unwrap();
        let rep = check_containment(&tr.memory, &[3, 5, 1, 2]);
        assert!(rep.holds());
        assert_eq!(rep.absorbed_at(), Some(0));
    }

    #[test]
    fn leaving_the_box_is_reported() {
        let rep = check_containment(&[vec![5, 1, 2, 0], vec![9, 9, 9, 9]], &[2, 3]);
        assert_eq!(rep.coordinates[0].entry_step, Some(1));
        assert!(!rep.coordinates[0].stays_inside);
        assert_eq!(rep.coordinates[1].entry_step, None);
        assert!(!rep.holds());
        assert_eq!(rep.absorbed_at(), None);
    }
}
