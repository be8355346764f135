//! Exact integer primitives: factorization, radicals, p-adic valuations,
//! n-th-power-free splitting and prime-power detection.
//!
//! Everything here is exact. Quantities larger than 64 bits (such as `k^z`)
//! are never factored directly; raise the factorization of the base instead
//! with [`Factorization::pow`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division bound used by [`factorize`].
pub const DEFAULT_TRIAL_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    pub trial_limit: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_limit: DEFAULT_TRIAL_LIMIT,
        }
    }
}

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// The factorization of 1.
    pub fn one() -> Self {
        Factorization {
            value: BigUint::one(),
            factors: Vec::new(),
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Factorization of `value^e`, without refactoring.
    pub fn pow(&self, e: u32) -> Factorization {
        if e == 0 {
            return Factorization::one();
        }
        Factorization {
            value: Pow::pow(&self.value, e),
            factors: self
                .factors
                .iter()
                .map(|(p, k)| (p.clone(), k * e))
                .collect(),
        }
    }

    /// Factorization of the product of two factored integers.
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut factors: Vec<(BigUint, u32)> = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            let take_left = match (self.factors.get(i), other.factors.get(j)) {
                (Some((p, _)), Some((q, _))) => {
                    if p == q {
                        factors.push((p.clone(), self.factors[i].1 + other.factors[j].1));
                        i += 1;
                        j += 1;
                        continue;
                    }
                    p < q
                }
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                factors.push(self.factors[i].clone());
                i += 1;
            } else {
                factors.push(other.factors[j].clone());
                j += 1;
            }
        }
        Factorization {
            value: &self.value * &other.value,
            factors,
        }
    }

    pub fn radical(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, _)| acc * p)
    }

    /// Exponent of `p` in this factorization (0 if absent).
    pub fn ord(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    /// True if the factorization is internally consistent: product matches,
    /// primes strictly increase and are prime, exponents are positive.
    pub fn is_valid(&self) -> bool {
        let product = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * Pow::pow(p, *e));
        product == self.value
            && self.factors.windows(2).all(|w| w[0].0 < w[1].0)
            && self
                .factors
                .iter()
                .all(|(p, e)| *e >= 1 && is_prime(p).unwrap_or(false))
    }
}

/// Factor `m` with the default budget.
pub fn factorize(m: &BigUint) -> Result<Factorization> {
    factorize_with(m, FactorBudget::default())
}

pub fn factorize_u64(m: u64) -> Result<Factorization> {
    factorize(&BigUint::from(m))
}

/// Trial division up to `budget.trial_limit`, then a deterministic
/// Miller-Rabin certificate for the remaining cofactor when it fits in 64 bits.
pub fn factorize_with(m: &BigUint, budget: FactorBudget) -> Result<Factorization> {
    if m.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut factors = Vec::new();
    let mut rest = m.clone();

    if let Some(small) = rest.to_u64() {
        let (fs, cofactor) = trial_divide_u64(small, budget.trial_limit);
        factors.extend(fs.into_iter().map(|(p, e)| (BigUint::from(p), e)));
        rest = BigUint::from(cofactor);
    } else {
        let mut d = 2u64;
        while d <= budget.trial_limit {
            let dd = BigUint::from(d);
            if &dd * &dd > rest {
                break;
            }
            let mut e = 0u32;
            loop {
                let (q, r) = rest.div_rem(&dd);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                factors.push((dd, e));
            }
            d += if d == 2 { 1 } else { 2 };
            if let Some(small) = rest.to_u64() {
                let (fs, cofactor) = trial_divide_from(small, d, budget.trial_limit);
                factors.extend(fs.into_iter().map(|(p, e)| (BigUint::from(p), e)));
                rest = BigUint::from(cofactor);
                break;
            }
        }
    }

    if !rest.is_one() {
        let limit = BigUint::from(budget.trial_limit);
        if &limit * &limit >= rest || rest.to_u64().is_some_and(is_prime_u64) {
            factors.push((rest, 1));
        } else if let Some((r, e)) = prime_power_root(&rest) {
            factors.push((r, e));
        } else {
            return Err(Error::BudgetExceeded {
                cofactor: rest.to_string(),
                trial_limit: budget.trial_limit,
            });
        }
    }

    Ok(Factorization {
        value: m.clone(),
        factors,
    })
}

// `m = r^e` with `e >= 2` and `r` a 64-bit prime.
fn prime_power_root(m: &BigUint) -> Option<(BigUint, u32)> {
    // Largest exponent first, so the root found is the smallest.
    for e in (2..=m.bits() as u32).rev() {
        let r = m.nth_root(e);
        if r < BigUint::from(2u32) {
            continue;
        }
        if Pow::pow(&r, e) == *m {
            return r.to_u64().is_some_and(is_prime_u64).then_some((r, e));
        }
    }
    None
}

fn trial_divide_u64(m: u64, limit: u64) -> (Vec<(u64, u32)>, u64) {
    trial_divide_from(m, 2, limit)
}

// Divides out every d in [start, limit] with d*d <= remaining.
// Returns the remaining cofactor, which is 1 or has no factor <= min(limit, sqrt).
fn trial_divide_from(mut m: u64, start: u64, limit: u64) -> (Vec<(u64, u32)>, u64) {
    let mut out = Vec::new();
    let mut d = start;
    while d <= limit && (d as u128) * (d as u128) <= m as u128 {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // If the loop ran past sqrt(m), the cofactor is prime; if it stopped at
    // the limit, the caller certifies or rejects it.
    (out, m)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve primes as witnesses are
/// sufficient for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary-size input. Inputs above 64 bits are decided only
/// when trial division finds a factor; otherwise the budget is exceeded.
pub fn is_prime(n: &BigUint) -> Result<bool> {
    if let Some(small) = n.to_u64() {
        return Ok(is_prime_u64(small));
    }
    let f = factorize(n)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}

pub fn radical(m: &BigUint) -> Result<BigUint> {
    Ok(factorize(m)?.radical())
}

pub fn radical_u64(m: u64) -> Result<u64> {
    Ok(radical(&BigUint::from(m))?
        .to_u64()
        .expect("radical of a u64 fits in u64"))
}

/// Largest `e` with `p^e | m`.
pub fn ord_p(m: &BigInt, p: &BigUint) -> Result<u64> {
    if m.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if !is_prime(p)? {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(valuation(m.magnitude(), p))
}

/// Valuation without the primality check; `m` must be nonzero and `p > 1`.
pub(crate) fn valuation(m: &BigUint, p: &BigUint) -> u64 {
    debug_assert!(!m.is_zero() && *p > BigUint::one());
    if *p == BigUint::from(2u32) {
        return m.trailing_zeros().unwrap_or(0);
    }
    let mut e = 0;
    let mut rest = m.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        rest = q;
        e += 1;
    }
}

pub fn ord2(m: &BigUint) -> u64 {
    m.trailing_zeros().unwrap_or(0)
}

/// `m = f * g^n` with `f` n-th-power free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerFreeSplit {
    pub m: BigUint,
    pub n: u32,
    pub f: BigUint,
    pub g: BigUint,
}

impl PowerFreeSplit {
    pub fn reconstructs(&self) -> bool {
        &self.f * Pow::pow(&self.g, self.n) == self.m
    }
}

pub fn power_free_split(m: &BigUint, n: u32) -> Result<PowerFreeSplit> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("power-free split needs n >= 2, got {n}")));
    }
    Ok(power_free_split_factored(&factorize(m)?, n))
}

/// Split an already factored integer; used for `k^z` where only `k` is factored.
pub fn power_free_split_factored(m: &Factorization, n: u32) -> PowerFreeSplit {
    assert!(n >= 2, "power-free split needs n >= 2");
    let mut f = BigUint::one();
    let mut g = BigUint::one();
    for (p, e) in &m.factors {
        f *= Pow::pow(p, e % n);
        g *= Pow::pow(p, e / n);
    }
    PowerFreeSplit {
        m: m.value.clone(),
        n,
        f,
        g,
    }
}

/// `Some((p, e))` when `m = p^e` for an odd prime `p`.
pub fn is_odd_prime_power(m: &BigUint) -> Result<Option<(BigUint, u32)>> {
    if m.is_zero() || m.is_even() || m.is_one() {
        return Ok(None);
    }
    let f = factorize(m)?;
    Ok(match f.factors.as_slice() {
        [(p, e)] => Some((p.clone(), *e)),
        _ => None,
    })
}

/// `(floor(sqrt(m)), m is a perfect square)`.
pub fn integer_sqrt(m: &BigUint) -> (BigUint, bool) {
    let s = m.sqrt();
    let exact = &s * &s == *m;
    (s, exact)
}

/// `ceil(sqrt(m))`.
pub fn ceil_sqrt(m: &BigUint) -> BigUint {
    let (s, exact) = integer_sqrt(m);
    if exact {
        s
    } else {
        s + 1u32
    }
}

pub fn is_square(m: &BigUint) -> bool {
    integer_sqrt(m).1
}

/// Floor square root on `u128`, exact.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Cheap necessary condition for `n` to be a square: residues mod 64, 63, 65.
pub fn maybe_square(n: u128) -> bool {
    const fn table<const M: usize>() -> [bool; M] {
        let mut t = [false; M];
        let mut i = 0;
        while i < M {
            t[(i * i) % M] = true;
            i += 1;
        }
        t
    }
    const SQ64: [bool; 64] = table::<64>();
    const SQ63: [bool; 63] = table::<63>();
    const SQ65: [bool; 65] = table::<65>();
    SQ64[(n % 64) as usize] && SQ63[(n % 63) as usize] && SQ65[(n % 65) as usize]
}

/// Exponent `e` with `base^e = value`, if any. `base` must be at least 2.
pub fn exact_log(value: &BigUint, base: &BigUint) -> Option<u32> {
    if value.is_zero() || *base < BigUint::from(2u32) {
        return None;
    }
    let mut acc = BigUint::one();
    let mut e = 0;
    while acc < *value {
        acc *= base;
        e += 1;
    }
    (acc == *value).then_some(e)
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
