use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::serial::DecimalInt;

/// A rational `p/q` with odd positive `q`, read as a 2-adic integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational2Adic {
    p: BigInt,
    q: BigInt,
}

impl Rational2Adic {
    /// Unreduced `p/q`; `q` is made positive, and must be odd.
    pub fn new(p: BigInt, q: BigInt) -> Result<Self> {
        if q.is_even() {
            return Err(Error::InvalidModulus);
        }
        Ok(if q.is_negative() {
            Self { p: -p, q: -q }
        } else {
            Self { p, q }
        })
    }

    pub fn integer(p: BigInt) -> Self {
        Self { p, q: BigInt::one() }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.p
    }

    pub fn denominator(&self) -> &BigInt {
        &self.q
    }

    pub fn is_reduced(&self) -> bool {
        self.p.gcd(&self.q).is_one()
    }

    pub fn reduced(&self) -> Self {
        let g = self.p.gcd(&self.q);
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self {
            p: &self.p / &g,
            q: &self.q / &g,
        }
    }

    /// First `len` digits of the 2-adic expansion, by long division.
    pub fn expand_bits(&self, len: usize) -> Vec<u8> {
        let mut p = self.p.clone();
        let mut bits = Vec::with_capacity(len);
        for _ in 0..len {
            // q is odd, so p/q = p (mod 2).
            let bit = u8::from(p.is_odd());
            if bit == 1 {
                p -= &self.q;
            }
            p /= 2;
            bits.push(bit);
        }
        bits
    }
}

impl fmt::Display for Rational2Adic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl fmt::Debug for Rational2Adic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational2Adic({self})")
    }
}

impl Serialize for Rational2Adic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            p: DecimalInt,
            q: DecimalInt,
        }
        Doc {
            p: DecimalInt(self.p.clone()),
            q: DecimalInt(self.q.clone()),
        }
        .serialize(s)
    }
}

/// The 2-adic value of an eventually periodic bit sequence, reduced.
///
/// With prefix `a_0 .. a_(s-1)` and repeating block `b_0 .. b_(T-1)` the value
/// is `A + 2^s B / (1 - 2^T)` where `A` and `B` read the bits little-endian.
pub fn sequence_to_rational(bits: &[u8], preperiod: usize, period: usize) -> Result<Rational2Adic> {
    if period == 0 {
        return Err(Error::InsufficientBits { needed: preperiod + 1, got: bits.len() });
    }
    let needed = preperiod + period;
    if bits.len() < needed {
        return Err(Error::InsufficientBits {
            needed,
            got: bits.len(),
        });
    }
    let read = |s: &[u8]| {
        s.iter()
            .rev()
            .fold(BigInt::zero(), |acc, &b| (acc << 1u32) + u32::from(b & 1))
    };
    let prefix = read(&bits[..preperiod]);
    let block = read(&bits[preperiod..needed]);
    let denom = (BigInt::one() << period) - 1u32;
    // A + 2^s B / (1 - 2^T) = (A (2^T - 1) - 2^s B) / (2^T - 1)
    let numer = &prefix * &denom - (block << preperiod);
    Ok(Rational2Adic::new(numer, denom)?.reduced())
}
