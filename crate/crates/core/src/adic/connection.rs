use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{det_exact, IntMatrix};
use crate::gf::{mult_matrix, norm, BinaryPolynomial, FieldElement, LiftedVector};
use crate::registers::{Mode, RegisterSpec, RegisterState, VectorialTransitionMatrix};

use super::rational::Rational2Adic;

/// `q = q_r 2^r + ... + q_1 2 - 1` in Z[X]/(P).
pub fn connection_integer(q: &[FieldElement], p: &BinaryPolynomial) -> Result<LiftedVector> {
    let n = p.degree();
    let mut acc = LiftedVector::one(n).neg();
    for (i, qi) in q.iter().enumerate() {
        if qi.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: qi.dim(),
            });
        }
        acc = acc.add(&qi.lift().scale(&(BigInt::one() << (i + 1))))?;
    }
    Ok(acc)
}

/// `(q~_0, ..., q~_(n-1))` with `q~_j = sum_i q^i_j 2^i`; the connection
/// integer has coordinates `(q~_0 - 1, q~_1, ...)`.
pub fn connection_vector(q: &[FieldElement], p: &BinaryPolynomial) -> Result<Vec<BigInt>> {
    let mut v = connection_integer(q, p)?.coords().to_vec();
    v[0] += 1;
    Ok(v)
}

/// `|N(q)|` for a Fibonacci or Galois register.
pub fn connection_norm(spec: &RegisterSpec) -> Result<BigInt> {
    let q = spec
        .coefficients()
        .ok_or(Error::UnsupportedMode("ring specs; use ring_connection_norm"))?;
    Ok(norm(&connection_integer(q, &spec.poly())?, &spec.poly())?.abs())
}

/// Matrix of the linear system satisfied by the 2-adic output vector:
/// multiplication by `-q` for Fibonacci, `I - 2 G^t` for Galois.
pub fn connection_matrix(spec: &RegisterSpec) -> Result<IntMatrix> {
    let p = spec.poly();
    match (spec.mode(), spec.coefficients()) {
        (Mode::Fibonacci, Some(q)) => mult_matrix(&connection_integer(q, &p)?.neg(), &p),
        (Mode::Galois, Some(_)) => Ok(spec
            .transition_matrix()
            .to_int_matrix()
            .transpose()
            .identity_minus_twice()),
        _ => Err(Error::UnsupportedMode("ring specs; use det(I - 2T) directly")),
    }
}

/// `(det(I - 2T), |det(I - 2T)|)`.
pub fn ring_connection_norm(t: &VectorialTransitionMatrix) -> (BigInt, BigInt) {
    let det = det_exact(&t.to_int_matrix().identity_minus_twice());
    let abs = det.abs();
    (det, abs)
}

/// The rational `p/q` whose 2-adic expansion is the cell-0 output of a binary
/// Fibonacci or Galois register, with `q` the connection integer. Unreduced.
pub fn theorem3_numerator(spec: &RegisterSpec, init: &RegisterState) -> Result<Rational2Adic> {
    if spec.n() != 1 {
        return Err(Error::UnsupportedMode("vectorial specs; use sequence_to_rational"));
    }
    let q_bits: Vec<i64> = match spec.coefficients() {
        Some(q) => q.iter().map(|e| e.bits() as i64).collect(),
        None => return Err(Error::UnsupportedMode("ring specs; use sequence_to_rational")),
    };
    init.check_for(spec)?;
    let r = spec.r();
    let a: Vec<BigInt> = init.a().iter().map(|&b| BigInt::from(b)).collect();
    let pow2 = |i: usize| BigInt::one() << i;

    let mut minus_p: BigInt = (0..r).map(|i| &a[i] * pow2(i)).sum();
    match spec.mode() {
        Mode::Fibonacci => {
            minus_p += BigInt::from(init.m()[0]) * pow2(r);
            for i in 1..r {
                for j in 1..=i {
                    minus_p -= BigInt::from(q_bits[j - 1]) * &a[i - j] * pow2(i);
                }
            }
        }
        Mode::Galois => {
            for (i, &m) in init.m().iter().enumerate() {
                minus_p += BigInt::from(m) * pow2(i + 1);
            }
        }
        Mode::Ring => unreachable!("ring specs carry no coefficients"),
    }

    let q = connection_integer(spec.coefficients().unwrap(), &spec.poly())?.coords()[0].clone();
    Rational2Adic::new(-minus_p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::registers::{golden_spec, run, Base};

    fn norms_agree(spec: &RegisterSpec) -> Result<bool> {
        let (_, by_det) = ring_connection_norm(&spec.transition_matrix());
        Ok(by_det == connection_norm(spec)?)
    }

    fn fe(s: &str) -> FieldElement {
        FieldElement::parse(s, s.len()).unwrap()
    }

    fn big(v: i64) -> BigInt {
        v.into()
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn binary_connection_integer() {
        let p = BinaryPolynomial::binary();
        let q = connection_integer(&[fe("1"), fe("1")], &p).unwrap();
        assert_eq!(q.coords(), bigs(&[5]).as_slice());
        assert_eq!(connection_vector(&[fe("1"), fe("1")], &p).unwrap(), bigs(&[6]));
    }

    #[test]
    fn vectorial_connection_integer() {
        let p = BinaryPolynomial::quadratic();
        let q = connection_integer(&[fe("10"), fe("00")], &p).unwrap();
        assert_eq!(q.coords(), bigs(&[1, 0]).as_slice());
        assert_eq!(connection_vector(&[fe("10"), fe("00")], &p).unwrap(), bigs(&[2, 0]));
        // q_1 = 1 + X, q_2 = X: q = (2 - 1, 2 + 4) = (1, 6).
        let q = connection_integer(&[fe("11"), fe("01")], &p).unwrap();
        assert_eq!(q.coords(), bigs(&[1, 6]).as_slice());
    }

    #[test]
    fn quadratic_norm_three_two_is_eleven() {
        // q_1 = X, q_2 = 1: q = (4 - 1, 2) = (3, 2).
        let p = BinaryPolynomial::quadratic();
        let spec = RegisterSpec::galois(Base::Vectorial(p.clone()), vec![fe("01"), fe("10")]).unwrap();
        let q = connection_integer(spec.coefficients().unwrap(), &p).unwrap();
        assert_eq!(q.coords(), bigs(&[3, 2]).as_slice());
        assert_eq!(connection_norm(&spec).unwrap(), big(11));
        assert!(norms_agree(&spec).unwrap());
    }

    #[test]
    fn fibonacci_connection_matrix_is_multiplication_by_minus_q() {
        let p = BinaryPolynomial::quadratic();
        let spec = RegisterSpec::fibonacci(Base::Vectorial(p.clone()), vec![fe("01"), fe("10")]).unwrap();
        let m = connection_matrix(&spec).unwrap();
        assert_eq!(m.to_i64_rows().unwrap(), vec![vec![-3, -2], vec![-2, -5]]);
        assert_eq!(det_exact(&m), big(11));
    }

    #[test]
    fn trivial_binary_connection_matrix() {
        let spec = RegisterSpec::fibonacci(Base::Binary, vec![fe("1")]).unwrap();
        let m = connection_matrix(&spec).unwrap();
        assert_eq!(m.to_i64_rows().unwrap(), vec![vec![-1]]);
        assert_eq!(det_exact(&m), big(-1));
    }

    #[test]
    fn galois_connection_matrix_shape() {
        let p = BinaryPolynomial::quadratic();
        let spec = RegisterSpec::galois(
            Base::Vectorial(p),
            vec![fe("11"), fe("01"), fe("10")],
        )
        .unwrap();
        let m = connection_matrix(&spec).unwrap().to_i64_rows().unwrap();
        // First block column: I - 2 M_q^t entries; identity below; -2 I on
        // the block superdiagonal.
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let (bi, bj) = (i / 2, j / 2);
                if bj == 0 {
                    continue;
                }
                let expected = if i == j {
                    1
                } else if bj == bi + 1 && i % 2 == j % 2 {
                    -2
                } else {
                    0
                };
                assert_eq!(x, expected, "({i}, {j})");
            }
        }
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!((x - i64::from(i == j)) % 2, 0);
            }
        }
        assert!(connection_matrix(&golden_spec()).is_err());
    }

    #[test]
    fn golden_ring_norm() {
        let (det, q) = ring_connection_norm(&golden_spec().transition_matrix());
        assert_eq!((det, q), (big(-61), big(61)));
        let zero = VectorialTransitionMatrix::from_rows(2, &[vec![0; 4], vec![0; 4], vec![0; 4], vec![0; 4]]).unwrap();
        assert_eq!(ring_connection_norm(&zero), (big(1), big(1)));
    }

    #[test]
    fn theorem3_examples() {
        let galois = RegisterSpec::galois(Base::Binary, vec![fe("1"), fe("1")]).unwrap();
        let zero = RegisterState::zero(&galois);
        assert!(theorem3_numerator(&galois, &zero).unwrap().numerator().is_zero());

        let init = RegisterState::new(vec![1, 0], vec![0, 0]).unwrap();
        let r = theorem3_numerator(&galois, &init).unwrap();
        assert_eq!((r.numerator(), r.denominator()), (&big(-1), &big(5)));
        let out = run(&galois, &init, 15).unwrap();
        assert_eq!(r.expand_bits(16), out.bits[0]);

        let fib = RegisterSpec::fibonacci(Base::Binary, vec![fe("1"), fe("1")]).unwrap();
        let init = RegisterState::new(vec![1, 0], vec![0]).unwrap();
        let r = theorem3_numerator(&fib, &init).unwrap();
        assert_eq!((r.numerator(), r.denominator()), (&big(1), &big(5)));
        let out = run(&fib, &init, 15).unwrap();
        assert_eq!(r.expand_bits(16), out.bits[0]);
    }

    #[test]
    fn theorem3_rejects_other_specs() {
        assert!(theorem3_numerator(&golden_spec(), &RegisterState::zero(&golden_spec())).is_err());
        let p = BinaryPolynomial::quadratic();
        let spec = RegisterSpec::galois(Base::Vectorial(p), vec![fe("01")]).unwrap();
        assert!(theorem3_numerator(&spec, &RegisterState::zero(&spec)).is_err());
    }
}
