use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default Pollard-rho iteration budget for [`multiplicative_order`].
pub const DEFAULT_FACTOR_BUDGET: u64 = 1_000_000;

const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

/// Miller-Rabin with the first 13 prime bases is exact below this bound.
const DETERMINISTIC_BOUND: &str = "3317044064679887385961981";
const DETERMINISTIC_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const RANDOM_ROUNDS: usize = 64;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

fn deterministic_bound() -> &'static BigUint {
    static BOUND: OnceLock<BigUint> = OnceLock::new();
    BOUND.get_or_init(|| DETERMINISTIC_BOUND.parse().unwrap())
}

/// Primality of `|n|`. Exact below 3.3e24; above that, 64 Miller-Rabin rounds
/// with pseudo-random bases drawn from a fixed seed, so the answer is
/// reproducible and wrong with probability below 2^-128.
pub fn is_probable_prime(n: &BigInt) -> bool {
    is_probable_prime_u(n.magnitude())
}

pub(crate) fn is_probable_prime_u(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
    }
    for &p in &small_primes()[..64] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }

    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let witness = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            return false;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                return false;
            }
        }
        true
    };

    if n < deterministic_bound() {
        return !DETERMINISTIC_BASES
            .iter()
            .any(|&a| witness(&BigUint::from(a)));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x2AD1C);
    let two = BigUint::from(2u32);
    (0..RANDOM_ROUNDS).all(|_| {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        !witness(&a)
    })
}

/// Prime factorization with a shared Pollard-rho budget.
struct Factorizer {
    budget: u64,
    spent: u64,
}

impl Factorizer {
    fn new(budget: u64) -> Self {
        Self { budget, spent: 0 }
    }

    fn factor(&mut self, n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        let mut rest = n.clone();
        if rest.is_zero() {
            return Err(Error::InvalidModulus);
        }
        for &p in small_primes() {
            let pb = BigUint::from(p);
            if &pb * &pb > rest {
                break;
            }
            let mut e = 0;
            while (&rest % &pb).is_zero() {
                rest /= &pb;
                e += 1;
            }
            if e > 0 {
                factors.push((pb, e));
            }
        }
        if !rest.is_one() {
            let mut large = Vec::new();
            self.split(rest, &mut large)?;
            for p in large {
                match factors.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, e)) => *e += 1,
                    None => factors.push((p, 1)),
                }
            }
        }
        factors.sort();
        Ok(factors)
    }

    fn split(&mut self, n: BigUint, out: &mut Vec<BigUint>) -> Result<()> {
        if n.is_one() {
            return Ok(());
        }
        if is_probable_prime_u(&n) {
            out.push(n);
            return Ok(());
        }
        let mut c = 1u32;
        let d = loop {
            if let Some(d) = self.brent_rho(&n, &BigUint::from(c))? {
                break d;
            }
            c += 1;
        };
        let other = &n / &d;
        self.split(d, out)?;
        self.split(other, out)
    }

    /// Brent's variant of Pollard rho with batched gcds. `None` means the
    /// walk collapsed onto `n` itself and another constant should be tried.
    fn brent_rho(&mut self, n: &BigUint, c: &BigUint) -> Result<Option<BigUint>> {
        const BATCH: u64 = 128;
        let f = |x: &BigUint| (x * x + c) % n;
        let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };

        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r = 1u64;

        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            self.charge(r)?;
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    q = q * abs_diff(&x, &y) % n;
                }
                self.charge(steps)?;
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }

        if &g == n {
            loop {
                ys = f(&ys);
                self.charge(1)?;
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        Ok(if &g == n { None } else { Some(g) })
    }

    fn charge(&mut self, steps: u64) -> Result<()> {
        self.spent += steps;
        if self.spent > self.budget {
            Err(Error::FactorizationBudget {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

/// Prime factorization of `n >= 1`: trial division to 10^6, then Pollard rho
/// limited to `budget` iterations in total.
pub fn factorize(n: &BigUint, budget: u64) -> Result<Vec<(BigUint, u32)>> {
    Factorizer::new(budget).factor(n)
}

/// Least `t > 0` with `base^t = 1 (mod q)`, using the default factoring budget.
pub fn multiplicative_order(base: &BigInt, q: &BigInt) -> Result<BigInt> {
    multiplicative_order_with_budget(base, q, DEFAULT_FACTOR_BUDGET)
}

pub fn multiplicative_order_with_budget(base: &BigInt, q: &BigInt, budget: u64) -> Result<BigInt> {
    if q.sign() != Sign::Plus || q.is_one() || q.is_even() {
        return Err(Error::InvalidModulus);
    }
    let modulus = q.magnitude();
    let b = base.mod_floor(q).magnitude().clone();
    if !b.gcd(modulus).is_one() {
        return Err(Error::NotCoprime);
    }

    let mut factorizer = Factorizer::new(budget);
    let exponent = group_exponent(modulus, &mut factorizer)?;
    let mut order = exponent.clone();
    for (p, _) in factorizer.factor(&exponent)? {
        while (&order % &p).is_zero() {
            let candidate = &order / &p;
            if b.modpow(&candidate, modulus).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(BigInt::from(order))
}

/// Carmichael exponent of (Z/qZ)*, for odd q > 1.
fn group_exponent(q: &BigUint, factorizer: &mut Factorizer) -> Result<BigUint> {
    if is_probable_prime_u(q) {
        return Ok(q - 1u32);
    }
    let mut lambda = BigUint::one();
    for (p, e) in factorizer.factor(q)? {
        let term = (&p - 1u32) * p.pow(e - 1);
        lambda = lambda.lcm(&term);
    }
    Ok(lambda)
}

/// Whether 2 generates the multiplicative group modulo the odd prime `q`.
pub fn is_primitive_root_2(q: &BigInt) -> Result<bool> {
    is_primitive_root_2_with_budget(q, DEFAULT_FACTOR_BUDGET)
}

pub fn is_primitive_root_2_with_budget(q: &BigInt, budget: u64) -> Result<bool> {
    if q.sign() != Sign::Plus || q.is_even() || q.is_one() {
        return Err(Error::InvalidModulus);
    }
    if !is_probable_prime(q) {
        return Err(Error::NotPrime);
    }
    let two = BigInt::from(2);
    Ok(multiplicative_order_with_budget(&two, q, budget)? == q - 1)
}
