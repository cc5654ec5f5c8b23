use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use vfcr::adic::{
    cell_rationals, connection_integer, in_box, memory_bounds, ring_connection_norm, sequence_to_rational,
};
use vfcr::exact::{det_exact, is_probable_prime, multiplicative_order};
use vfcr::gf::{mult_matrix, norm, BinaryPolynomial, FieldElement, LiftedVector};
use vfcr::registers::{detect_cycle, run, step_vfcr, Base, RegisterSpec, RegisterState, VectorialTransitionMatrix};
use vfcr::search::check_triplet;

fn quad() -> BinaryPolynomial {
    BinaryPolynomial::quadratic()
}

fn matrix_strategy(max_r: usize) -> impl Strategy<Value = Vec<Vec<FieldElement>>> {
    (1..=max_r).prop_flat_map(|r| {
        prop::collection::vec(prop::collection::vec((0u64..4).prop_map(|b| FieldElement::from_bits(b, 2)), r), r)
    })
}

fn state_strategy(dim: usize, top: i64) -> impl Strategy<Value = RegisterState> {
    (prop::collection::vec(0u8..=1, dim), prop::collection::vec(0..=top, dim))
        .prop_map(|(a, m)| RegisterState::new(a, m).unwrap())
}

#[test]
fn fibonacci_connection_determinant_is_the_norm() {
    let p = quad();
    for u in -8i64..=8 {
        for v in -8i64..=8 {
            let q = LiftedVector::from_i64(&[u, v]);
            let m = mult_matrix(&q.neg(), &p).unwrap();
            // (-1)^n N(q) with n = 2
            assert_eq!(det_exact(&m), norm(&q, &p).unwrap(), "({u}, {v})");
        }
    }
}

#[test]
fn quadratic_norm_is_the_form() {
    let p = quad();
    for u in -8i64..=8 {
        for v in -8i64..=8 {
            let n = norm(&LiftedVector::from_i64(&[u, v]), &p).unwrap();
            assert_eq!(n, BigInt::from(u * u + u * v - v * v));
        }
    }
}

#[test]
fn prime_norms_bound_every_cell_period() {
    let p = quad();
    let e = |b| FieldElement::from_bits(b, 2);
    for bits in 0..256u64 {
        let t: Vec<Vec<_>> = (0..2).map(|i| (0..2).map(|j| e((bits >> (2 * (2 * i + j))) & 3)).collect()).collect();
        let spec = RegisterSpec::general(Base::Vectorial(p.clone()), t).unwrap();
        let (_, q) = ring_connection_norm(&spec.transition_matrix());
        if q <= BigInt::from(2) || !is_probable_prime(&q) {
            continue;
        }
        let ord = multiplicative_order(&BigInt::from(2), &q).unwrap();
        let init = RegisterState::new(vec![1, 0, 1, 1], vec![1, 0, 0, 0]).unwrap();
        let c = detect_cycle(&spec, &init).unwrap();
        assert!(ord.is_multiple_of(&BigInt::from(c.period)), "T bits {bits}: period {} vs ord {ord}", c.period);
    }
}

#[test]
fn golden_rows_reduce_over_61() {
    let e = |s: &str| FieldElement::parse(s, 2).unwrap();
    let spec = RegisterSpec::general(
        Base::Vectorial(quad()),
        vec![vec![e("01"), e("01")], vec![e("11"), e("00")]],
    )
    .unwrap();
    let init = RegisterState::new(vec![1, 1, 1, 0], vec![0, 0, 0, 1]).unwrap();
    let c = detect_cycle(&spec, &init).unwrap();
    let tr = run(&spec, &init, c.preperiod + c.period).unwrap();
    for row in &tr.bits {
        let r = sequence_to_rational(row, c.preperiod, c.period).unwrap();
        assert_eq!(r.denominator(), &BigInt::from(61));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn norms_are_odd(t in matrix_strategy(3)) {
        let tm = VectorialTransitionMatrix::expand(&t, &quad()).unwrap();
        prop_assert!(ring_connection_norm(&tm).1.is_odd());
    }

    #[test]
    fn reduced_denominators_divide_the_norm(t in matrix_strategy(3), seed in any::<u64>()) {
        let spec = RegisterSpec::general(Base::Vectorial(quad()), t).unwrap();
        let (_, q) = ring_connection_norm(&spec.transition_matrix());
        let dim = 2 * spec.r();
        let a: Vec<u8> = (0..dim).map(|i| ((seed >> i) & 1) as u8).collect();
        let m: Vec<i64> = (0..dim).map(|i| ((seed >> (16 + 2 * i)) & 3) as i64).collect();
        let init = RegisterState::new(a, m).unwrap();
        let c = detect_cycle(&spec, &init).unwrap();
        for cell in cell_rationals(&spec, &init, c, &q).unwrap() {
            prop_assert!(q.is_multiple_of(cell.reduced.denominator()));
            prop_assert!(cell.numerator_over_norm.is_some());
        }
    }

    #[test]
    fn carries_inside_the_box_stay_inside(t in matrix_strategy(3), seed in any::<u64>()) {
        let tm = VectorialTransitionMatrix::expand(&t, &quad()).unwrap();
        let w = memory_bounds(&tm);
        let dim = tm.dim();
        let a: Vec<u8> = (0..dim).map(|i| ((seed >> i) & 1) as u8).collect();
        let m: Vec<i64> = w.iter().enumerate().map(|(i, &wj)| if wj == 0 { 0 } else { (seed >> (8 + 3 * i)) as i64 % wj }).collect();
        let next = step_vfcr(&RegisterState::new(a, m).unwrap(), &tm).unwrap();
        prop_assert!(in_box(next.m(), &w));
    }

    #[test]
    fn carries_above_the_box_never_grow(t in matrix_strategy(3), s in state_strategy(6, 60)) {
        // Above the closed box [0, w] the largest excess over w shrinks or
        // stays; the closed box itself is invariant.
        let tm = VectorialTransitionMatrix::expand(&t, &quad()).unwrap();
        let w = memory_bounds(&tm);
        let dim = tm.dim();
        let s = RegisterState::new(s.a()[..dim].to_vec(), s.m()[..dim].to_vec()).unwrap();
        let excess = |st: &RegisterState| st.m().iter().zip(&w).map(|(&x, &wj)| (x - wj).max(0)).max().unwrap();
        let next = step_vfcr(&s, &tm).unwrap();
        prop_assert!(excess(&next) <= excess(&s));
        if excess(&s) > 0 {
            let mut cur = s.clone();
            for _ in 0..64 {
                cur = step_vfcr(&cur, &tm).unwrap();
            }
            prop_assert_eq!(excess(&cur), 0);
        }
    }

    #[test]
    fn mode_embedding_matches(q in prop::collection::vec(0u64..4, 1..=3), s in state_strategy(6, 3), galois in any::<bool>()) {
        prop_assume!(*q.last().unwrap() != 0);
        let q: Vec<_> = q.into_iter().map(|b| FieldElement::from_bits(b, 2)).collect();
        let r = q.len();
        let base = Base::Vectorial(quad());
        let spec = if galois { RegisterSpec::galois(base, q) } else { RegisterSpec::fibonacci(base, q) }.unwrap();
        let init = RegisterState::new(s.a()[..2 * r].to_vec(), s.m()[..spec.memory_len()].to_vec()).unwrap();
        let direct = run(&spec, &init, 50).unwrap();
        let embedded = run(&spec.to_ring(), &init.to_ring_layout(&spec).unwrap(), 50).unwrap();
        prop_assert_eq!(direct.bits, embedded.bits);
    }

    #[test]
    fn norm_derived_triplets_satisfy_the_form(bits in prop::collection::vec(0u64..4, 1..=6)) {
        prop_assume!(*bits.last().unwrap() != 0);
        let p = quad();
        let q: Vec<_> = bits.into_iter().map(|b| FieldElement::from_bits(b, 2)).collect();
        let q_int = connection_integer(&q, &p).unwrap();
        let n = norm(&q_int, &p).unwrap();
        let (u, v) = (q_int.coords()[0].clone(), q_int.coords()[1].clone());
        let pos = check_triplet(&n, &u, &v, 1);
        let neg = check_triplet(&-n, &u, &v, 1);
        prop_assert!(pos.form_ok || neg.form_ok);
    }
}
