use std::collections::HashSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adic::ring_connection_norm;
use crate::error::{Error, Result};
use crate::exact::{is_primitive_root_2_with_budget, is_probable_prime, DEFAULT_FACTOR_BUDGET};
use crate::gf::{BinaryPolynomial, FieldElement};
use crate::registers::{Base, RegisterSpec};
use crate::serial::DecimalInt;

/// Largest search space scanned exhaustively once random draws run out.
const EXHAUSTIVE_LIMIT_BITS: usize = 24;

/// Which transition matrices the search may return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchSpace {
    /// Ring registers: `t[i+1][i] = 1` and `t[0][r-1] != 0`.
    Ring,
    /// Any matrix.
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LSequenceHit {
    pub spec: RegisterSpec,
    pub q_tilde: DecimalInt,
    /// `ord_q~(2) = q~ - 1`.
    pub order: DecimalInt,
}

/// Finds up to `count` matrices whose `q~ = |det(I - 2T)|` is prime with 2 as
/// a primitive root; such registers output l-sequences of period `q~ - 1`.
///
/// `draws` random matrices are tried first (ChaCha8 seeded with `seed`); if
/// fewer than `count` hits turn up and the space is small enough, the rest is
/// scanned in order. Hits are unique and reproducible for a fixed seed.
pub fn find_l_sequence_matrices(
    r: usize,
    p: &BinaryPolynomial,
    count: usize,
    seed: u64,
    space: SearchSpace,
    draws: u64,
) -> Result<Vec<LSequenceHit>> {
    if r == 0 || count == 0 {
        return Err(Error::InvalidSpec("search needs r >= 1 and count >= 1".into()));
    }
    let n = p.degree();
    let slots = free_slots(r, space);
    let base = if n == 1 {
        Base::Binary
    } else {
        Base::Vectorial(p.clone())
    };

    let mut seen = HashSet::new();
    let mut hits = Vec::new();
    let mut tried = 0u64;
    let mut consider = |t: Vec<Vec<FieldElement>>, hits: &mut Vec<LSequenceHit>| -> Result<()> {
        tried += 1;
        let key: Vec<u64> = t.iter().flatten().map(FieldElement::bits).collect();
        if !seen.insert(key) {
            return Ok(());
        }
        let spec = match space {
            SearchSpace::Ring => RegisterSpec::ring(base.clone(), t)?,
            SearchSpace::General => RegisterSpec::general(base.clone(), t)?,
        };
        if let Some(hit) = qualify(spec)? {
            hits.push(hit);
        }
        Ok(())
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = (1u64 << n) - 1;
    for _ in 0..draws {
        if hits.len() >= count {
            break;
        }
        let t = build(r, n, p, space, |k| {
            let nonzero = space == SearchSpace::Ring && k == top_right_slot(r, &slots);
            loop {
                let v = rng.gen::<u64>() & mask;
                if !nonzero || v != 0 {
                    break v;
                }
            }
        }, &slots);
        consider(t, &mut hits)?;
    }

    let bits = slots.len() * n;
    if hits.len() < count && bits <= EXHAUSTIVE_LIMIT_BITS {
        for index in 0..1u64 << bits {
            if hits.len() >= count {
                break;
            }
            let t = build(r, n, p, space, |k| (index >> (k * n)) & mask, &slots);
            if space == SearchSpace::Ring && t[0][r - 1].is_zero() {
                continue;
            }
            consider(t, &mut hits)?;
        }
    }

    if hits.is_empty() {
        return Err(Error::SearchExhausted { tried });
    }
    Ok(hits)
}

fn qualify(spec: RegisterSpec) -> Result<Option<LSequenceHit>> {
    let (_, q) = ring_connection_norm(&spec.transition_matrix());
    if q <= BigInt::from(2) || !is_probable_prime(&q) {
        return Ok(None);
    }
    match is_primitive_root_2_with_budget(&q, DEFAULT_FACTOR_BUDGET) {
        Ok(true) => Ok(Some(LSequenceHit {
            spec,
            order: DecimalInt(&q - 1u32),
            q_tilde: DecimalInt(q),
        })),
        Ok(false) | Err(Error::FactorizationBudget { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Matrix positions chosen freely, row-major.
fn free_slots(r: usize, space: SearchSpace) -> Vec<(usize, usize)> {
    (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .filter(|&(i, j)| space == SearchSpace::General || i != j + 1)
        .collect()
}

fn top_right_slot(r: usize, slots: &[(usize, usize)]) -> usize {
    slots.iter().position(|&s| s == (0, r - 1)).expect("top-right entry is free")
}

fn build(
    r: usize,
    n: usize,
    p: &BinaryPolynomial,
    space: SearchSpace,
    mut value: impl FnMut(usize) -> u64,
    slots: &[(usize, usize)],
) -> Vec<Vec<FieldElement>> {
    let mut t = vec![vec![FieldElement::zero(n); r]; r];
    if space == SearchSpace::Ring {
        for i in 0..r - 1 {
            t[i + 1][i] = p.one();
        }
    }
    for (k, &(i, j)) in slots.iter().enumerate() {
        t[i][j] = FieldElement::from_bits(value(k), n);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registers::{detect_cycle, RegisterState};

    #[test]
    fn degenerate_binary_space_has_no_hit() {
        let p = BinaryPolynomial::binary();
        assert!(matches!(
            find_l_sequence_matrices(1, &p, 1, 0, SearchSpace::Ring, 100),
            Err(Error::SearchExhausted { .. })
        ));
    }

    #[test]
    fn binary_size_two_finds_five() {
        let p = BinaryPolynomial::binary();
        let hits = find_l_sequence_matrices(2, &p, 8, 1, SearchSpace::General, 50).unwrap();
        assert!(hits.iter().any(|h| h.q_tilde.0 == BigInt::from(5) && h.order.0 == BigInt::from(4)));
        assert!(hits.iter().all(|h| h.q_tilde.0 == BigInt::from(5) || h.q_tilde.0 == BigInt::from(3)));
    }

    #[test]
    fn golden_matrix_is_found_by_exhaustive_fallback() {
        let p = BinaryPolynomial::quadratic();
        let hits = find_l_sequence_matrices(2, &p, 1000, 7, SearchSpace::General, 0).unwrap();
        let golden = crate::registers::golden_spec();
        assert!(hits.iter().any(|h| h.spec == golden));
        assert!(hits.iter().all(|h| {
            let q = &h.q_tilde.0;
            *q > BigInt::from(2) && is_probable_prime(q)
        }));
    }

    #[test]
    fn ring_hits_respect_the_constraint_and_have_full_period() {
        let p = BinaryPolynomial::quadratic();
        let hits = find_l_sequence_matrices(2, &p, 5, 3, SearchSpace::Ring, 1000).unwrap();
        assert!(!hits.is_empty());
        for h in &hits {
            assert!(!h.spec.is_general());
            assert!(h.spec.top_right_nonzero());
            let mut a = vec![0u8; 4];
            a[0] = 1;
            let c = detect_cycle(&h.spec, &RegisterState::new(a, vec![0; 4]).unwrap()).unwrap();
            assert_eq!(BigInt::from(c.period), h.order.0);
        }
    }

    #[test]
    fn reproducible_for_a_seed() {
        let p = BinaryPolynomial::quadratic();
        let a = find_l_sequence_matrices(3, &p, 4, 42, SearchSpace::Ring, 10_000).unwrap();
        let b = find_l_sequence_matrices(3, &p, 4, 42, SearchSpace::Ring, 10_000).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
    }
}
