//! Arithmetic in F2[X]/(P) and in its integer lift Z[X]/(P).
//!
//! Everything is expressed in the power basis `1, X, ..., X^(n-1)`. Elements
//! of the field are `n`-bit coordinate vectors; elements of the lift carry
//! arbitrary integer coordinates.
//!
//! The lift of `P = X^n + p_(n-1) X^(n-1) + ... + p_0` is taken to be
//! `X^n - p_(n-1) X^(n-1) - ... - p_0`, which is the same polynomial modulo 2
//! and makes the reduction rule `X^n = sum p_i X^i` non-negative. For the
//! quadratic case this is `X^2 - X - 1`, whose norm form is `u^2 + uv - v^2`.
//!
//! Matrices act on row vectors: the image of `v` under multiplication by `q`
//! is `v * M_q`, so row `k` of `M_q` holds the coordinates of `X^k q`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{det_exact, IntMatrix};

pub const MAX_DEGREE: usize = 63;

/// Primitivity is only checked exactly up to this degree.
pub const PRIMITIVITY_CHECK_MAX_DEGREE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Primitivity {
    Verified,
    Unverified,
}

/// A monic binary polynomial with nonzero constant term, irreducible over F2.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BinaryPolynomial {
    /// Bit `i` is the coefficient of `X^i`.
    bits: u64,
    degree: usize,
    primitivity: Primitivity,
}

impl BinaryPolynomial {
    /// `X + 1`, the modulus used for plain binary registers (`F2` itself).
    pub fn binary() -> Self {
        Self::from_bits(0b11).unwrap()
    }

    /// `X^2 + X + 1`, lifted as `X^2 - X - 1`.
    pub fn quadratic() -> Self {
        Self::from_bits(0b111).unwrap()
    }

    /// Validates irreducibility (always) and primitivity (up to degree 20).
    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits < 2 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        let degree = 63 - bits.leading_zeros() as usize;
        if degree > MAX_DEGREE {
            return Err(Error::InvalidPolynomial(format!(
                "degree {degree} exceeds {MAX_DEGREE}"
            )));
        }
        if bits & 1 == 0 {
            return Err(Error::InvalidPolynomial("constant term must be 1".into()));
        }
        if !is_irreducible(bits, degree) {
            return Err(Error::InvalidPolynomial(format!(
                "{} is reducible over F2",
                bit_string(bits, degree + 1)
            )));
        }
        let primitivity = if degree <= PRIMITIVITY_CHECK_MAX_DEGREE {
            if !is_primitive(bits, degree) {
                return Err(Error::InvalidPolynomial(format!(
                    "{} is irreducible but not primitive",
                    bit_string(bits, degree + 1)
                )));
            }
            Primitivity::Verified
        } else {
            Primitivity::Unverified
        };
        Ok(Self {
            bits,
            degree,
            primitivity,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn primitivity(&self) -> Primitivity {
        self.primitivity
    }

    /// Integer coefficients `c_i` with `X^n = sum c_i X^i` in Z[X]/(P).
    pub fn reduction(&self) -> Vec<i64> {
        (0..self.degree).map(|i| ((self.bits >> i) & 1) as i64).collect()
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_bits(1, self.degree)
    }

    pub fn generator(&self) -> FieldElement {
        // For n = 1 the class of X is 1.
        let bits = if self.degree == 1 { 1 } else { 0b10 };
        FieldElement::from_bits(bits, self.degree)
    }

    /// All `2^n` field elements in increasing coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        assert!(self.degree < 32, "field too large to enumerate");
        (0..1u64 << self.degree).map(|b| FieldElement::from_bits(b, self.degree))
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bit_string(self.bits, self.degree + 1))
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({self})")
    }
}

impl FromStr for BinaryPolynomial {
    type Err = Error;

    /// Coefficients as a bit string, constant term first: `"111"` is `X^2 + X + 1`.
    fn from_str(s: &str) -> Result<Self> {
        let bits = parse_bits(s).map_err(Error::InvalidPolynomial)?;
        if s.len() > MAX_DEGREE + 1 {
            return Err(Error::InvalidPolynomial(format!(
                "degree {} exceeds {MAX_DEGREE}",
                s.len() - 1
            )));
        }
        if !s.ends_with('1') {
            return Err(Error::InvalidPolynomial("leading coefficient must be 1".into()));
        }
        Self::from_bits(bits)
    }
}

impl TryFrom<String> for BinaryPolynomial {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BinaryPolynomial> for String {
    fn from(p: BinaryPolynomial) -> String {
        p.to_string()
    }
}

/// An element of F2[X]/(P) as `n` coordinate bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    bits: u64,
    n: usize,
}

impl FieldElement {
    pub fn from_bits(bits: u64, n: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&n), "invalid field dimension {n}");
        assert!(bits >> n == 0, "coordinates do not fit in {n} bits");
        Self { bits, n }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_bits(0, n)
    }

    /// Parses coordinates `a_0 a_1 ... a_(n-1)` written as a bit string.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        if s.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.len(),
            });
        }
        let bits = parse_bits(s).map_err(Error::Parse)?;
        Ok(Self::from_bits(bits, n))
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn coord(&self, j: usize) -> u8 {
        ((self.bits >> j) & 1) as u8
    }

    pub fn coords(&self) -> Vec<u8> {
        (0..self.n).map(|j| self.coord(j)).collect()
    }

    pub fn from_coords(coords: &[u8]) -> Self {
        let bits = coords
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &c)| acc | (u64::from(c & 1) << j));
        Self::from_bits(bits, coords.len())
    }

    /// The canonical lift: the same coordinates read as integers.
    pub fn lift(&self) -> LiftedVector {
        LiftedVector::new(
            self.coords()
                .into_iter()
                .map(BigInt::from)
                .collect(),
        )
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bit_string(self.bits, self.n))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

/// Product in F2[X]/(P).
pub fn gf_mul(a: &FieldElement, b: &FieldElement, p: &BinaryPolynomial) -> Result<FieldElement> {
    check_dim(a.n, p)?;
    check_dim(b.n, p)?;
    let bits = poly_mod(clmul(a.bits, b.bits), p.bits, p.degree);
    Ok(FieldElement::from_bits(bits, p.degree))
}

/// An element of Z[X]/(P) by its integer coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LiftedVector {
    coords: Vec<BigInt>,
}

impl LiftedVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(coords.iter().copied().map(BigInt::from).collect())
    }

    pub fn one(n: usize) -> Self {
        let mut coords = vec![BigInt::zero(); n];
        coords[0] = BigInt::one();
        Self { coords }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Self::new(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coords.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|a| -a).collect())
    }

    /// Product in Z[X]/(P).
    pub fn mul(&self, other: &Self, p: &BinaryPolynomial) -> Result<Self> {
        check_dim(self.dim(), p)?;
        check_dim(other.dim(), p)?;
        let n = p.degree;
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            for (j, b) in other.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let red = p.reduction();
        for k in (n..prod.len()).rev() {
            let top = std::mem::take(&mut prod[k]);
            if top.is_zero() {
                continue;
            }
            for (i, &c) in red.iter().enumerate() {
                if c != 0 {
                    prod[k - n + i] += &top * c;
                }
            }
        }
        prod.truncate(n);
        Ok(Self::new(prod))
    }

    /// Coordinates modulo 2 as a field element.
    pub fn reduce(&self) -> FieldElement {
        let coords: Vec<u8> = self
            .coords
            .iter()
            .map(|c| u8::from(num_integer::Integer::is_odd(c)))
            .collect();
        FieldElement::from_coords(&coords)
    }
}

/// Matrix of `v -> v q` on Z[X]/(P); row `k` holds the coordinates of `X^k q`.
pub fn mult_matrix(q: &LiftedVector, p: &BinaryPolynomial) -> Result<IntMatrix> {
    check_dim(q.dim(), p)?;
    let n = p.degree;
    let red = p.reduction();
    let mut rows = Vec::with_capacity(n);
    let mut current = q.coords.clone();
    for _ in 0..n {
        rows.push(current.clone());
        // Multiply by X: shift up, fold the overflow back through the reduction.
        let top = current.pop().unwrap();
        current.insert(0, BigInt::zero());
        for (i, &c) in red.iter().enumerate() {
            if c != 0 {
                current[i] += &top * c;
            }
        }
    }
    IntMatrix::from_rows(&rows)
}

/// Field norm `N(q) = det M_q`.
pub fn norm(q: &LiftedVector, p: &BinaryPolynomial) -> Result<BigInt> {
    Ok(det_exact(&mult_matrix(q, p)?))
}

fn check_dim(found: usize, p: &BinaryPolynomial) -> Result<()> {
    if found != p.degree {
        return Err(Error::DimensionMismatch {
            expected: p.degree,
            found,
        });
    }
    Ok(())
}

pub(crate) fn parse_bits(s: &str) -> std::result::Result<u64, String> {
    if s.is_empty() {
        return Err("empty bit string".into());
    }
    if s.len() > 64 {
        return Err(format!("bit string of length {} is too long", s.len()));
    }
    s.chars().enumerate().try_fold(0u64, |acc, (i, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << i),
        other => Err(format!("unexpected character {other:?} in bit string")),
    })
}

pub(crate) fn bit_string(bits: u64, len: usize) -> String {
    (0..len)
        .map(|i| if (bits >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

// Polynomial arithmetic over F2 on machine words.

fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= (a as u128) << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn poly_mod(mut a: u128, p: u64, degree: usize) -> u64 {
    let p = p as u128;
    while a != 0 {
        let da = 127 - a.leading_zeros() as usize;
        if da < degree {
            break;
        }
        a ^= p << (da - degree);
    }
    a as u64
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let db = 63 - b.leading_zeros() as usize;
        a = poly_mod(a as u128, b, db);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn pow_mod(base: u64, mut e: u128, p: u64, degree: usize) -> u64 {
    let mut result = 1u64;
    let mut b = poly_mod(base as u128, p, degree);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mod(clmul(result, b), p, degree);
        }
        b = poly_mod(clmul(b, b), p, degree);
        e >>= 1;
    }
    result
}

/// Ben-Or: P is irreducible iff gcd(X^(2^i) - X, P) = 1 for i <= n/2.
fn is_irreducible(p: u64, degree: usize) -> bool {
    if degree == 1 {
        return true;
    }
    let mut x = 0b10u64;
    for _ in 0..degree / 2 {
        x = poly_mod(clmul(x, x), p, degree);
        if poly_gcd(p, x ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

fn is_primitive(p: u64, degree: usize) -> bool {
    let order = (1u128 << degree) - 1;
    let mut rest = order;
    let mut d = 2u128;
    let mut primes = Vec::new();
    while d * d <= rest {
        if rest % d == 0 {
            primes.push(d);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    pow_mod(0b10, order, p, degree) == 1
        && primes
            .iter()
            .all(|&q| pow_mod(0b10, order / q, p, degree) != 1)
}
