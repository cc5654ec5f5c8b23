use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::exact::{is_primitive_root_2_with_budget, is_probable_prime};
use crate::serial::DecimalInt;

/// Outcome of the primitive-root test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimitiveRootFlag {
    Yes,
    No,
    /// Not attempted, e.g. because `q~` is not prime.
    NotApplicable,
    Skipped(String),
}

impl PrimitiveRootFlag {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            PrimitiveRootFlag::Yes => Some(true),
            PrimitiveRootFlag::No => Some(false),
            _ => None,
        }
    }
}

impl Serialize for PrimitiveRootFlag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PrimitiveRootFlag::Yes => s.serialize_bool(true),
            PrimitiveRootFlag::No => s.serialize_bool(false),
            PrimitiveRootFlag::NotApplicable => s.serialize_none(),
            PrimitiveRootFlag::Skipped(why) => s.serialize_str(&format!("skipped: {why}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripletReport {
    pub q_tilde: DecimalInt,
    pub u: DecimalInt,
    pub v: DecimalInt,
    /// `u^2 + uv - v^2`.
    pub form_value: DecimalInt,
    pub form_ok: bool,
    pub prime: bool,
    pub primitive_root: PrimitiveRootFlag,
    /// Size of a binary register with connection integer `q~`.
    pub l_q: u64,
    /// Size of a quadratic register with connection vector `(u + 1, v)`.
    pub l_uv: u64,
}

impl TripletReport {
    /// Form, primality and primitive root all hold.
    pub fn valid(&self) -> bool {
        self.form_ok && self.prime && self.primitive_root == PrimitiveRootFlag::Yes
    }
}

/// Register size needed for a connection-vector coordinate `x = sum_(i>=1) x_i 2^i`.
fn register_len(x: &BigInt) -> u64 {
    x.bits().saturating_sub(1)
}

/// Validates a connection triplet: `q~ = u^2 + uv - v^2`, `q~` prime, and 2
/// primitive modulo `q~`. The primitive-root test is skipped with a reason
/// when factoring `q~ - 1` exceeds `factor_budget`.
///
/// Lengths are register sizes: `q~ = sum q_i 2^i - 1` needs `bitlen(q~ + 1) - 1`
/// cells, and the pair uses `q~_0 = u + 1`, `q~_1 = v`.
pub fn check_triplet(q: &BigInt, u: &BigInt, v: &BigInt, factor_budget: u64) -> TripletReport {
    let form = u * u + u * v - v * v;
    let form_ok = &form == q;
    let prime = q > &BigInt::from(2) && is_probable_prime(q);
    let primitive_root = if !prime {
        PrimitiveRootFlag::NotApplicable
    } else {
        match is_primitive_root_2_with_budget(q, factor_budget) {
            Ok(true) => PrimitiveRootFlag::Yes,
            Ok(false) => PrimitiveRootFlag::No,
            Err(Error::FactorizationBudget { .. }) => PrimitiveRootFlag::Skipped("factorization budget".into()),
            Err(e) => PrimitiveRootFlag::Skipped(e.to_string()),
        }
    };
    let l_q = register_len(&(q.abs() + BigInt::one()));
    let l_uv = register_len(&(u.abs() + BigInt::one())).max(register_len(&v.abs()));
    TripletReport {
        q_tilde: DecimalInt(q.clone()),
        u: DecimalInt(u.clone()),
        v: DecimalInt(v.clone()),
        form_value: DecimalInt(form),
        form_ok,
        prime,
        primitive_root,
        l_q,
        l_uv,
    }
}
