use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::adic::ring_connection_norm;
use crate::error::{Error, Result};
use crate::exact::{is_primitive_root_2, is_probable_prime};
use crate::gf::{bit_string, BinaryPolynomial, FieldElement};
use crate::registers::{
    minimal_period, ring_step, Base, RegisterSpec, VectorialTransitionMatrix,
};
use crate::serial::DecimalInt;

/// Largest state box simulated per model unless a budget says otherwise.
pub const DEFAULT_BOX_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Every `r x r` matrix over F2.
    BinaryFcr,
    /// Every Fibonacci coefficient set over F4, including `q_r = 0`.
    VfcsrQFib,
    /// Every Galois coefficient set over F4, including `q_r = 0`.
    VfcsrQGalois,
    /// Every `r x r` matrix over F4.
    VfcrQ,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::BinaryFcr, Family::VfcsrQFib, Family::VfcsrQGalois, Family::VfcrQ];

    pub fn name(self) -> &'static str {
        match self {
            Family::BinaryFcr => "binary-fcr",
            Family::VfcsrQFib => "vfcsr-q-fib",
            Family::VfcsrQGalois => "vfcsr-q-galois",
            Family::VfcrQ => "vfcr-q",
        }
    }

    pub fn poly(self) -> BinaryPolynomial {
        match self {
            Family::BinaryFcr => BinaryPolynomial::binary(),
            _ => BinaryPolynomial::quadratic(),
        }
    }

    fn is_matrix_family(self) -> bool {
        matches!(self, Family::BinaryFcr | Family::VfcrQ)
    }

    /// Number of free bits describing one model.
    fn free_bits(self, r: usize) -> usize {
        let n = self.poly().degree();
        if self.is_matrix_family() {
            n * r * r
        } else {
            n * r
        }
    }

    /// Field matrix of model number `index`; bits are consumed entry by entry,
    /// low bits first.
    fn model(self, r: usize, index: u64) -> Vec<Vec<FieldElement>> {
        let p = self.poly();
        let n = p.degree();
        let mask = (1u64 << n) - 1;
        let elem = |k: usize| FieldElement::from_bits((index >> (k * n)) & mask, n);
        let zero = FieldElement::zero(n);
        let one = p.one();
        match self {
            Family::BinaryFcr | Family::VfcrQ => (0..r)
                .map(|i| (0..r).map(|j| elem(i * r + j)).collect())
                .collect(),
            Family::VfcsrQFib => {
                let mut f = vec![vec![zero; r]; r];
                for i in 0..r {
                    if i + 1 < r {
                        f[i + 1][i] = one;
                    }
                    f[i][r - 1] = elem(r - 1 - i);
                }
                f
            }
            Family::VfcsrQGalois => {
                let mut g = vec![vec![zero; r]; r];
                for (j, slot) in g[0].iter_mut().enumerate() {
                    *slot = elem(j);
                }
                for i in 0..r - 1 {
                    g[i + 1][i] = one;
                }
                g
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnsupportedFamily(s.to_string()))
    }
}

/// One model realising a `(q~, maximal period)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub q_tilde: DecimalInt,
    pub max_period: u64,
    /// Compact description, see [`encode_matrix`] and [`encode_coefficients`].
    pub spec: String,
    #[serde(skip)]
    matrix: Vec<Vec<FieldElement>>,
    #[serde(skip)]
    poly: BinaryPolynomial,
}

impl Witness {
    /// The witness as a general ring register with the same transition matrix.
    pub fn to_spec(&self) -> RegisterSpec {
        let base = if self.poly.degree() == 1 {
            Base::Binary
        } else {
            Base::Vectorial(self.poly.clone())
        };
        RegisterSpec::general(base, self.matrix.clone()).expect("enumerated models are well formed")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    pub r: usize,
    pub n: usize,
    pub model_count: u64,
    /// Distinct `|det(I - 2T)|`, ascending.
    pub q_tilde: Vec<DecimalInt>,
    /// Maximal periods equal to `q~ - 1`, i.e. models producing l-sequences.
    pub l_sequence_periods: Vec<u64>,
    /// Every per-model maximal period, except the confirmed constant tails
    /// of `q~ = 1` models.
    pub all_periods: Vec<u64>,
    /// Every model with prime `q~` and 2 primitive reaches period `q~ - 1`.
    pub order_consistent: bool,
    pub witnesses: Vec<Witness>,
}

impl FamilyReport {
    pub fn q_tilde_values(&self) -> Vec<BigInt> {
        self.q_tilde.iter().map(|d| d.0.clone()).collect()
    }

    /// CSV with a header line, one row per witness.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,r,n,q_tilde,max_period,witness_spec\n");
        for w in &self.witnesses {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.family, self.r, self.n, w.q_tilde.0, w.max_period, w.spec
            ));
        }
        out
    }
}

struct ModelResult {
    q_tilde: BigInt,
    max_period: u64,
}

/// Enumerates every model of `family` with `r` cells.
///
/// Each model's maximal period is measured by simulating every state with
/// `a` in `{0,1}^(rn)` and carries in `[0, w)`, a box closed under the step
/// map. `budget` caps the box size of a single model.
pub fn enumerate_family(family: Family, r: usize, budget: u64) -> Result<FamilyReport> {
    if r == 0 {
        return Err(Error::InvalidSpec("register size must be at least 1".into()));
    }
    let bits = family.free_bits(r);
    if bits > 40 {
        return Err(Error::StepBudget { budget });
    }
    let p = family.poly();
    let model_count = 1u64 << bits;

    let results: Vec<ModelResult> = (0..model_count)
        .into_par_iter()
        .map(|index| {
            let t = VectorialTransitionMatrix::expand(&family.model(r, index), &p)?;
            let (_, q_tilde) = ring_connection_norm(&t);
            let max_period = max_cell_period(&t, budget)?;
            Ok(ModelResult { q_tilde, max_period })
        })
        .collect::<Result<_>>()?;

    let mut generates: BTreeMap<BigInt, bool> = BTreeMap::new();
    let mut q_set = BTreeSet::new();
    let mut l_periods = BTreeSet::new();
    let mut all_periods = BTreeSet::new();
    let mut witness_index: BTreeMap<(BigInt, u64), u64> = BTreeMap::new();
    let mut order_consistent = true;

    for (index, res) in results.iter().enumerate() {
        let q = &res.q_tilde;
        q_set.insert(q.clone());
        let gen = *generates
            .entry(q.clone())
            .or_insert_with(|| *q > BigInt::from(2) && is_probable_prime(q) && is_primitive_root_2(q).unwrap_or(false));
        let full = BigInt::from(res.max_period) + 1u32 == *q;
        if full {
            l_periods.insert(res.max_period);
        }
        if gen && !full {
            order_consistent = false;
        }
        let constant_tail = *q == BigInt::from(1) && res.max_period == 1;
        if !constant_tail {
            all_periods.insert(res.max_period);
        }
        witness_index
            .entry((q.clone(), res.max_period))
            .or_insert(index as u64);
    }

    let witnesses = witness_index
        .into_iter()
        .map(|((q, period), index)| {
            let matrix = family.model(r, index);
            let spec = if family.is_matrix_family() {
                encode_matrix(&matrix)
            } else {
                let n = p.degree();
                let mask = (1u64 << n) - 1;
                let q: Vec<_> = (0..r)
                    .map(|k| FieldElement::from_bits((index >> (k * n)) & mask, n))
                    .collect();
                encode_coefficients(&q)
            };
            Witness {
                q_tilde: DecimalInt(q),
                max_period: period,
                spec,
                matrix,
                poly: p.clone(),
            }
        })
        .collect();

    Ok(FamilyReport {
        family,
        r,
        n: p.degree(),
        model_count,
        q_tilde: q_set.into_iter().map(DecimalInt).collect(),
        l_sequence_periods: l_periods.into_iter().collect(),
        all_periods: all_periods.into_iter().collect(),
        order_consistent,
        witnesses,
    })
}

/// `T=` rows joined by `;`, entries by `:`, each entry a coordinate bit string.
pub fn encode_matrix(t: &[Vec<FieldElement>]) -> String {
    let rows: Vec<String> = t
        .iter()
        .map(|row| row.iter().map(|e| bit_string(e.bits(), e.dim())).collect::<Vec<_>>().join(":"))
        .collect();
    format!("T={}", rows.join(";"))
}

/// `q=` coefficients `q_1 .. q_r` joined by `:`.
pub fn encode_coefficients(q: &[FieldElement]) -> String {
    let parts: Vec<String> = q.iter().map(|e| bit_string(e.bits(), e.dim())).collect();
    format!("q={}", parts.join(":"))
}

/// Largest cell-sequence period over all cycles of the step map on the box.
fn max_cell_period(t: &VectorialTransitionMatrix, budget: u64) -> Result<u64> {
    let dim = t.dim();
    let n = t.n();
    let radix: Vec<u64> = t.column_sums().iter().map(|&w| w.max(1) as u64).collect();
    let size = radix
        .iter()
        .try_fold(1u64 << dim, |acc, &b| acc.checked_mul(b))
        .filter(|&s| s <= budget)
        .ok_or(Error::StepBudget { budget })?;
    let size = size as usize;

    let decode = |mut idx: u64, a: &mut [u8], m: &mut [i64]| {
        for bit in a.iter_mut() {
            *bit = (idx & 1) as u8;
            idx >>= 1;
        }
        for (x, &b) in m.iter_mut().zip(&radix) {
            *x = (idx % b) as i64;
            idx /= b;
        }
    };
    let encode = |a: &[u8], m: &[i64]| -> u64 {
        let mut idx = 0u64;
        for (&x, &b) in m.iter().zip(&radix).rev() {
            debug_assert!((0..b as i64).contains(&x), "carry left the box");
            idx = idx * b + x as u64;
        }
        for &bit in a.iter().rev() {
            idx = (idx << 1) | u64::from(bit);
        }
        idx
    };

    let (mut a, mut m) = (vec![0u8; dim], vec![0i64; dim]);
    let (mut a2, mut m2) = (vec![0u8; dim], vec![0i64; dim]);
    let next = |idx: u64, a: &mut [u8], m: &mut [i64], a2: &mut [u8], m2: &mut [i64]| -> u64 {
        decode(idx, a, m);
        ring_step(t, a, m, a2, m2);
        encode(a2, m2)
    };

    // 0: unvisited; otherwise the walk that first reached the state.
    let mut walk_of = vec![0u32; size];
    let mut best = 1u64;
    let mut path = Vec::new();
    for start in 0..size {
        if walk_of[start] != 0 {
            continue;
        }
        let walk = start as u32 + 1;
        path.clear();
        let mut s = start as u64;
        while walk_of[s as usize] == 0 {
            walk_of[s as usize] = walk;
            path.push(s);
            s = next(s, &mut a, &mut m, &mut a2, &mut m2);
        }
        if walk_of[s as usize] != walk {
            continue;
        }
        let cycle = &path[path.iter().position(|&x| x == s).expect("on path")..];
        let cells: Vec<Vec<u64>> = cycle
            .iter()
            .map(|&idx| {
                decode(idx, &mut a, &mut m);
                a.chunks(n)
                    .map(|c| c.iter().rev().fold(0u64, |acc, &b| (acc << 1) | u64::from(b)))
                    .collect()
            })
            .collect();
        for cell in 0..dim / n {
            let seq: Vec<u64> = cells.iter().map(|c| c[cell]).collect();
            best = best.max(minimal_period(&seq, 0, seq.len()) as u64);
        }
    }
    Ok(best)
}
