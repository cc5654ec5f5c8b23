use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{det_exact, multiplicative_order_with_budget, IntMatrix};
use crate::registers::{detect_cycle_with_budget, run, Cycle, Mode, RegisterSpec, RegisterState};
use crate::serial::{decimal_vec, DecimalInt};

use super::connection::{connection_integer, connection_matrix, connection_norm, ring_connection_norm};
use super::memory::memory_bounds;
use super::rational::{sequence_to_rational, Rational2Adic};

/// Period bound `ord_q(2)`, or why it could not be computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderBound {
    Known(BigInt),
    Unavailable(String),
}

impl Serialize for OrderBound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OrderBound::Known(v) => s.serialize_str(&v.to_string()),
            OrderBound::Unavailable(why) => s.serialize_str(&format!("unavailable: {why}")),
        }
    }
}

/// The 2-adic value of one output coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellRational {
    pub cell: usize,
    pub coordinate: usize,
    pub reduced: Rational2Adic,
    /// `p` with value `p / q~`; absent if the reduced denominator does not divide `q~`.
    pub numerator_over_norm: Option<DecimalInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub mode: Mode,
    pub general: bool,
    pub n: usize,
    pub r: usize,
    /// Coordinates of `q` in Z[X]/(P); coefficient modes only.
    pub connection_integer: Option<Vec<DecimalInt>>,
    pub connection_vector: Option<Vec<DecimalInt>>,
    pub connection_norm: DecimalInt,
    /// Signed `det(I - 2T)`.
    pub determinant: DecimalInt,
    /// Multiplication by `-q`, `I - 2G^t`, or `I - 2T` in ring mode.
    pub connection_matrix: IntMatrix,
    pub connection_matrix_det: DecimalInt,
    /// `|N(q)| == |det(I - 2T)|`, checked for coefficient modes.
    pub norms_agree: Option<bool>,
    pub top_right_nonzero: bool,
    pub order: OrderBound,
    pub memory_weights: Vec<i64>,
    pub cycle: Option<Cycle>,
    pub cells: Option<Vec<CellRational>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisBudget {
    pub factor: u64,
    pub steps: u64,
}

impl Default for AnalysisBudget {
    fn default() -> Self {
        Self {
            factor: crate::exact::DEFAULT_FACTOR_BUDGET,
            steps: crate::registers::DEFAULT_STEP_BUDGET,
        }
    }
}

/// Full analysis of `spec`; with `init`, also the cycle and per-cell rationals.
///
/// A factoring budget overrun only marks the order unavailable; a step budget
/// overrun during cycle detection is an error.
pub fn analyze(spec: &RegisterSpec, init: Option<&RegisterState>, budget: AnalysisBudget) -> Result<AnalysisReport> {
    let t = spec.transition_matrix();
    let (det, q_tilde) = ring_connection_norm(&t);

    let (q_int, q_vec, norms_agree, matrix) = match spec.coefficients() {
        Some(q) => {
            let q_int = connection_integer(q, &spec.poly())?;
            let mut q_vec = q_int.coords().to_vec();
            q_vec[0] += 1;
            let agree = connection_norm(spec)? == q_tilde;
            (
                Some(decimal_vec(q_int.coords())),
                Some(decimal_vec(&q_vec)),
                Some(agree),
                connection_matrix(spec)?,
            )
        }
        None => (None, None, None, t.to_int_matrix().identity_minus_twice()),
    };
    let matrix_det = det_exact(&matrix);

    let order = if q_tilde.is_one() {
        OrderBound::Known(BigInt::one())
    } else {
        match multiplicative_order_with_budget(&BigInt::from(2), &q_tilde, budget.factor) {
            Ok(v) => OrderBound::Known(v),
            Err(Error::FactorizationBudget { budget }) => {
                OrderBound::Unavailable(format!("factorization budget {budget} exceeded"))
            }
            Err(e) => return Err(e),
        }
    };

    let (cycle, cells) = match init {
        Some(init) => {
            let cycle = detect_cycle_with_budget(spec, init, budget.steps)?;
            let cells = cell_rationals(spec, init, cycle, &q_tilde)?;
            (Some(cycle), Some(cells))
        }
        None => (None, None),
    };

    Ok(AnalysisReport {
        mode: spec.mode(),
        general: spec.is_general(),
        n: spec.n(),
        r: spec.r(),
        connection_integer: q_int,
        connection_vector: q_vec,
        connection_norm: DecimalInt(q_tilde),
        determinant: DecimalInt(det),
        connection_matrix: matrix,
        connection_matrix_det: DecimalInt(matrix_det),
        norms_agree,
        top_right_nonzero: spec.top_right_nonzero(),
        order,
        memory_weights: memory_bounds(&t),
        cycle,
        cells,
    })
}

/// Reconstructs the rational of every output coordinate from one full cycle.
pub fn cell_rationals(
    spec: &RegisterSpec,
    init: &RegisterState,
    cycle: Cycle,
    q_tilde: &BigInt,
) -> Result<Vec<CellRational>> {
    let steps = cycle.preperiod + cycle.period;
    let tr = run(spec, init, steps)?;
    let n = spec.n();
    tr.bits
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let reduced = sequence_to_rational(row, cycle.preperiod, cycle.period)?;
            let numerator_over_norm = if !q_tilde.is_zero() && q_tilde.is_multiple_of(reduced.denominator()) {
                Some(DecimalInt(reduced.numerator() * (q_tilde / reduced.denominator())))
            } else {
                None
            };
            Ok(CellRational {
                cell: k / n,
                coordinate: k % n,
                reduced,
                numerator_over_norm,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{BinaryPolynomial, FieldElement};
    use crate::registers::{golden_spec, Base};

    fn fe(s: &str) -> FieldElement {
        FieldElement::parse(s, s.len()).unwrap()
    }

    #[test]
    fn golden_report() {
        let spec = golden_spec();
        let init = RegisterState::new(vec![1, 1, 1, 0], vec![0, 0, 0, 1]).unwrap();
        let rep = analyze(&spec, Some(&init), AnalysisBudget::default()).unwrap();
        assert_eq!(rep.determinant.0, BigInt::from(-61));
        assert_eq!(rep.connection_norm.0, BigInt::from(61));
        assert_eq!(rep.connection_matrix_det.0, BigInt::from(-61));
        assert_eq!(rep.order, OrderBound::Known(60.into()));
        assert_eq!(rep.memory_weights, vec![3, 5, 1, 2]);
        assert_eq!(rep.cycle.unwrap().period, 60);
        assert!(rep.connection_integer.is_none());
        let cells = rep.cells.clone().unwrap();
        assert_eq!(cells.len(), 4);
        for c in &cells {
            assert!(BigInt::from(61).is_multiple_of(c.reduced.denominator()));
            assert!(c.numerator_over_norm.is_some());
        }
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"determinant\":\"-61\""));
        assert!(json.contains("\"order\":\"60\""));
    }

    #[test]
    fn coefficient_modes_cross_check_norms() {
        let p = BinaryPolynomial::quadratic();
        for mode in [Mode::Fibonacci, Mode::Galois] {
            let q = vec![fe("01"), fe("10")];
            let spec = match mode {
                Mode::Fibonacci => RegisterSpec::fibonacci(Base::Vectorial(p.clone()), q),
                _ => RegisterSpec::galois(Base::Vectorial(p.clone()), q),
            }
            .unwrap();
            let rep = analyze(&spec, None, AnalysisBudget::default()).unwrap();
            assert_eq!(rep.norms_agree, Some(true));
            assert_eq!(rep.connection_norm.0, BigInt::from(11));
            assert_eq!(rep.order, OrderBound::Known(10.into()));
            assert!(rep.cells.is_none());
        }
    }

    #[test]
    fn trivial_norm_has_order_one() {
        let spec = RegisterSpec::galois(Base::Binary, vec![fe("1")]).unwrap();
        // q = 2 - 1 = 1
        let rep = analyze(&spec, Some(&RegisterState::new(vec![1], vec![0]).unwrap()), AnalysisBudget::default()).unwrap();
        assert_eq!(rep.connection_norm.0, BigInt::one());
        assert_eq!(rep.order, OrderBound::Known(BigInt::one()));
        let cells = rep.cells.unwrap();
        assert!(cells[0].reduced.denominator().is_one());
    }

    #[test]
    fn step_budget_is_an_error() {
        let spec = golden_spec();
        let init = RegisterState::new(vec![1, 1, 1, 0], vec![0, 0, 0, 1]).unwrap();
        let budget = AnalysisBudget { factor: 10, steps: 5 };
        assert_eq!(
            analyze(&spec, Some(&init), budget),
            Err(Error::StepBudget { budget: 5 })
        );
    }
}
