//! The equation `X^2 - D Y^2 = (-q)^Z` with `gcd(X, Y) = 1`.
//!
//! Every solution factors as `(X1 + lambda Y1 sqrt(D))^t (u + v sqrt(D))`
//! where `(X1, Y1, Z1)` is the least solution, `Z = Z1 t`, `Z1` divides the
//! class number `h(4D)`, and `(u, v)` solves Pell's equation. The least
//! solution is the one with
//!
//! ```text
//! 1 < |(X1 + Y1 sqrt(D)) / (X1 - Y1 sqrt(D))| < u1 + v1 sqrt(D)
//! ```
//!
//! Since the middle quantity equals `(X1 + Y1 sqrt(D))^2 / q^Z1`, this gives
//! the search box `X1 + Y1 sqrt(D) < sqrt(q^Z1 (u1 + v1 sqrt(D)))`.
//!
//! A hypothetical solution of `x^2 + q^i = k^z` with `k = c^2 D` gives
//! `x^2 - D (c k^((z-1)/2))^2 = (-q)^i`. Reducing the `sqrt(D)` coefficient
//! of the factorization modulo a prime dividing both `v1` and `k` forces
//! `g = 0 (mod m)` for `(f + g sqrt(D)) = (X1 + Y1 sqrt(D))^t`; computing `g`
//! refutes the solution when that fails.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{self, divisors, is_odd_prime_power, isqrt_u128, maybe_square};
use crate::error::{Error, Result};
use crate::pell::{pell_least, PellFundamental};
use crate::qform::{class_number_4d, ClassCount};
use crate::serde_big;

/// Default cap on the number of `Y` values scanned per exponent.
pub const DEFAULT_SEARCH_CAP: u64 = 2_000_000_000;

/// `f + g sqrt(D)` in `Z[sqrt(D)]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingElement {
    pub d: u64,
    #[serde(with = "serde_big::int")]
    pub f: BigInt,
    #[serde(with = "serde_big::int")]
    pub g: BigInt,
}

impl RingElement {
    pub fn new(d: u64, f: BigInt, g: BigInt) -> Self {
        RingElement { d, f, g }
    }

    pub fn from_i64(d: u64, f: i64, g: i64) -> Self {
        RingElement::new(d, BigInt::from(f), BigInt::from(g))
    }

    pub fn one(d: u64) -> Self {
        RingElement::from_i64(d, 1, 0)
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        assert_eq!(self.d, other.d, "multiplying elements of different rings");
        let d = BigInt::from(self.d);
        RingElement {
            d: self.d,
            f: &self.f * &other.f + d * &self.g * &other.g,
            g: &self.f * &other.g + &other.f * &self.g,
        }
    }

    /// Square-and-multiply power; `pow(0)` is 1.
    pub fn pow(&self, t: u32) -> RingElement {
        let mut acc = RingElement::one(self.d);
        let mut base = self.clone();
        let mut e = t;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn conj(&self) -> RingElement {
        RingElement::new(self.d, self.f.clone(), -&self.g)
    }

    /// True when `f + g sqrt(D) > 0` as a real number.
    pub fn is_positive(&self) -> bool {
        sign_with_sqrt(&self.f, &self.g, self.d) == Sign::Plus
    }

    /// `f^2 - D g^2`.
    pub fn norm(&self) -> BigInt {
        &self.f * &self.f - BigInt::from(self.d) * &self.g * &self.g
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.f, self.g, self.d)
    }
}

/// `base^t` in `Z[sqrt(D)]`.
pub fn ring_power(base: &RingElement, t: u32) -> Result<RingElement> {
    if t == 0 {
        return Err(Error::InvalidArgument("ring power exponent must be >= 1".into()));
    }
    Ok(base.pow(t))
}

/// Sign of `a + b sqrt(d)` for `d` a nonsquare.
pub fn sign_with_sqrt(a: &BigInt, b: &BigInt, d: u64) -> Sign {
    let d = BigInt::from(d);
    match (a.sign(), b.sign()) {
        (Sign::NoSign, s) | (s, Sign::NoSign) => s,
        (Sign::Plus, Sign::Plus) => Sign::Plus,
        (Sign::Minus, Sign::Minus) => Sign::Minus,
        // Opposite signs: compare a^2 with d b^2 (never equal, d nonsquare).
        (sa, _) => {
            if a * a > d * b * b {
                sa
            } else {
                -sa
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntiPellLeast {
    pub d: u64,
    pub q: u64,
    #[serde(with = "serde_big::uint")]
    pub x1: BigUint,
    #[serde(with = "serde_big::uint")]
    pub y1: BigUint,
    pub z1: u32,
}

impl AntiPellLeast {
    pub fn as_ring(&self) -> RingElement {
        RingElement::new(
            self.d,
            BigInt::from(self.x1.clone()),
            BigInt::from(self.y1.clone()),
        )
    }

    /// `X1^2 - D Y1^2 = (-q)^Z1` and `gcd(X1, Y1) = 1`.
    pub fn satisfies_equation(&self) -> bool {
        let rhs: BigInt = Pow::pow(BigInt::from(-(self.q as i64)), self.z1);
        self.as_ring().norm() == rhs && self.x1.gcd(&self.y1).is_one()
    }

    pub fn satisfies_least_bounds(&self, fund: &PellFundamental) -> bool {
        least_bounds_hold(&self.x1, &self.y1, self.d, self.q, self.z1, fund)
    }
}

// 1 < (X + Y sqrt D)^2 / N < u1 + v1 sqrt D, with N = q^Z.
fn least_bounds_hold(x: &BigUint, y: &BigUint, d: u64, q: u64, z: u32, fund: &PellFundamental) -> bool {
    let x = BigInt::from(x.clone());
    let y = BigInt::from(y.clone());
    let n: BigInt = Pow::pow(BigInt::from(q), z);
    let dd = BigInt::from(d);
    let sq_rational = &x * &x + &dd * &y * &y;
    let sq_irrational = BigInt::from(2u32) * &x * &y;
    let lower = sign_with_sqrt(&(&sq_rational - &n), &sq_irrational, d) == Sign::Plus;
    let u1 = BigInt::from(fund.u1.clone());
    let v1 = BigInt::from(fund.v1.clone());
    let upper = sign_with_sqrt(&(&n * u1 - &sq_rational), &(&n * v1 - &sq_irrational), d)
        == Sign::Plus;
    lower && upper
}

/// `floor(sqrt(q^z (u1 + v1 sqrt(D))))`, the box for `X1 + Y1 sqrt(D)`.
pub fn least_solution_bound(q: u64, z: u32, fund: &PellFundamental) -> BigUint {
    let n: BigUint = Pow::pow(BigUint::from(q), z);
    let irrational = (&n * &n * &fund.v1 * &fund.v1 * BigUint::from(fund.d)).sqrt();
    (&n * &fund.u1 + irrational).sqrt()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentSearch {
    pub z: u32,
    /// Floor of the bound on `X1 + Y1 sqrt(D)`.
    #[serde(with = "serde_big::uint")]
    pub bound: BigUint,
    pub y_scanned: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntiPellSearch {
    pub d: u64,
    pub q: u64,
    pub pell: PellFundamental,
    pub exponents: Vec<ExponentSearch>,
    pub least: Option<AntiPellLeast>,
}

/// Least solution with `Z1` among `allowed_z` (ascending), or `None`.
pub fn antipell_least(d: u64, q: u64, allowed_z: &[u32]) -> Result<Option<AntiPellLeast>> {
    Ok(antipell_search(d, q, allowed_z, DEFAULT_SEARCH_CAP)?.least)
}

/// Exhaustive search for the least solution, keeping per-exponent bounds.
pub fn antipell_search(d: u64, q: u64, allowed_z: &[u32], cap: u64) -> Result<AntiPellSearch> {
    let pell = pell_least(d)?;
    if allowed_z.is_empty() {
        return Err(Error::InvalidArgument("allowed exponent list is empty".into()));
    }
    if is_odd_prime_power(&BigUint::from(q))?.is_none() {
        return Err(Error::InvalidArgument(format!("q = {q} is not an odd prime power")));
    }
    let g = d.gcd(&q);
    if g != 1 {
        return Err(Error::NotCoprime {
            d: d.to_string(),
            q: q.to_string(),
            gcd: g.to_string(),
        });
    }
    let mut zs = allowed_z.to_vec();
    zs.sort_unstable();
    zs.dedup();

    let mut exponents = Vec::new();
    for &z in &zs {
        if z == 0 {
            return Err(Error::InvalidArgument("exponent Z must be positive".into()));
        }
        let bound = least_solution_bound(q, z, &pell);
        let (found, y_scanned) = scan_exponent(d, q, z, &bound, &pell, cap)?;
        exponents.push(ExponentSearch { z, bound, y_scanned });
        if let Some((x1, y1)) = found {
            let least = AntiPellLeast { d, q, x1, y1, z1: z };
            debug_assert!(least.satisfies_equation() && least.satisfies_least_bounds(&pell));
            return Ok(AntiPellSearch { d, q, pell, exponents, least: Some(least) });
        }
    }
    Ok(AntiPellSearch { d, q, pell, exponents, least: None })
}

// Scans Y >= 1 with D Y^2 < (bound + 1)^2 for X^2 = D Y^2 -/+ q^z (sign by
// parity of z) with gcd 1 and the least-solution inequalities. Returns the
// first hit (smallest Y).
fn scan_exponent(
    d: u64,
    q: u64,
    z: u32,
    bound: &BigUint,
    pell: &PellFundamental,
    cap: u64,
) -> Result<(Option<(BigUint, BigUint)>, u64)> {
    let n: BigUint = Pow::pow(BigUint::from(q), z);
    let limit_sq = (bound + 1u32).pow(2u32);
    // Y_max = largest Y with D Y^2 < limit_sq.
    let y_max = ((&limit_sq - 1u32) / BigUint::from(d)).sqrt();
    let y_max_u64 = y_max
        .to_u64()
        .filter(|&y| y <= cap)
        .ok_or_else(|| Error::SearchTooLarge(format!("Y range up to {y_max} exceeds cap {cap}")))?;
    let odd = z % 2 == 1;

    let check = |x: BigUint, y: BigUint| -> Option<(BigUint, BigUint)> {
        (x.gcd(&y).is_one() && least_bounds_hold(&x, &y, d, q, z, pell)).then_some((x, y))
    };

    let fits = limit_sq.bits() < 126 && n.bits() < 126;
    if fits {
        let n = n.to_u128().expect("checked width");
        let d = d as u128;
        for y in 1..=y_max_u64 as u128 {
            let dy2 = d * y * y;
            let x2 = if odd {
                match dy2.checked_sub(n) {
                    Some(v) if v > 0 => v,
                    _ => continue,
                }
            } else {
                dy2 + n
            };
            if !maybe_square(x2) {
                continue;
            }
            let x = isqrt_u128(x2);
            if x * x != x2 {
                continue;
            }
            if let Some(hit) = check(BigUint::from(x), BigUint::from(y)) {
                return Ok((Some(hit), y as u64));
            }
        }
    } else {
        let dd = BigUint::from(d);
        for y in 1..=y_max_u64 {
            let y = BigUint::from(y);
            let dy2 = &dd * &y * &y;
            let x2 = if odd {
                if dy2 <= n {
                    continue;
                }
                dy2 - &n
            } else {
                dy2 + &n
            };
            let (x, exact) = arith::integer_sqrt(&x2);
            if !exact {
                continue;
            }
            let yu = y.to_u64().unwrap_or(u64::MAX);
            if let Some(hit) = check(x, y) {
                return Ok((Some(hit), yu));
            }
        }
    }
    Ok((None, y_max_u64))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchResidue {
    pub lambda: i8,
    /// `(X1 + lambda Y1 sqrt(D))^t = f + lambda g sqrt(D)`.
    #[serde(with = "serde_big::int")]
    pub f: BigInt,
    #[serde(with = "serde_big::int")]
    pub g: BigInt,
    pub g_mod: u64,
    /// `u^2 mod m` for every Pell solution, which is 1 since `m | v`.
    pub u_squared_mod: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceWitness {
    pub modulus: u64,
    pub t: u32,
    #[serde(with = "serde_big::uint")]
    pub v1: BigUint,
    #[serde(with = "serde_big::uint")]
    pub target_base: BigUint,
    pub branches: Vec<BranchResidue>,
}

impl CongruenceWitness {
    /// Recomputes every residue from `least` and checks that the
    /// contradiction still holds on both branches.
    pub fn reverify(&self, least: &AntiPellLeast) -> bool {
        let m = BigUint::from(self.modulus);
        if !(&self.v1 % &m).is_zero() || !(&self.target_base % &m).is_zero() {
            return false;
        }
        self.branches.len() == 2
            && self.branches.iter().all(|b| {
                let base = RingElement::new(
                    least.d,
                    BigInt::from(least.x1.clone()),
                    BigInt::from(b.lambda) * BigInt::from(least.y1.clone()),
                );
                let p = base.pow(self.t);
                let g = &p.g * BigInt::from(b.lambda);
                g == b.g && p.f == b.f && residue(&g, self.modulus) == b.g_mod && b.g_mod != 0
            })
    }
}

fn residue(v: &BigInt, m: u64) -> u64 {
    v.mod_floor(&BigInt::from(m)).to_u64().expect("residue below modulus")
}

/// Tries to refute `target = f v + lambda g u (mod modulus)` for both signs.
///
/// `modulus` must divide `v1` (hence every Pell `v`) and the base of the
/// target power; then `u` is a unit mod `modulus` and the congruence forces
/// `g = 0 (mod modulus)`. Returns a witness when `g` is nonzero mod
/// `modulus` on both branches.
pub fn congruence_eliminate(
    least: &AntiPellLeast,
    t: u32,
    fund: &PellFundamental,
    modulus: u64,
    target_base: &BigUint,
) -> Result<Option<CongruenceWitness>> {
    if modulus < 2 || !(&fund.v1 % modulus).is_zero() {
        return Err(Error::ModulusDoesNotDivide {
            modulus: modulus.to_string(),
            v1: fund.v1.to_string(),
        });
    }
    if !(target_base % modulus).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "modulus {modulus} does not divide the target base {target_base}"
        )));
    }
    if fund.d != least.d {
        return Err(Error::InvalidArgument("Pell and anti-Pell D differ".into()));
    }
    let u_squared_mod = {
        let u = &fund.u1 % modulus;
        (&u * &u % modulus).to_u64().expect("below modulus")
    };
    let mut branches = Vec::with_capacity(2);
    for lambda in [1i8, -1] {
        let base = RingElement::new(
            least.d,
            BigInt::from(least.x1.clone()),
            BigInt::from(lambda) * BigInt::from(least.y1.clone()),
        );
        let p = ring_power(&base, t)?;
        let g = &p.g * BigInt::from(lambda);
        let g_mod = residue(&g, modulus);
        branches.push(BranchResidue {
            lambda,
            f: p.f,
            g,
            g_mod,
            u_squared_mod,
        });
    }
    if branches.iter().all(|b| b.g_mod != 0) {
        Ok(Some(CongruenceWitness {
            modulus,
            t,
            v1: fund.v1.clone(),
            target_base: target_base.clone(),
            branches,
        }))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    NoLeastSolution,
    CongruenceContradiction,
    Unresolved,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::NoLeastSolution => "no_least_solution",
            Outcome::CongruenceContradiction => "congruence_contradiction",
            Outcome::Unresolved => "unresolved",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationVerdict {
    pub i: u32,
    pub j: u32,
    pub k: u64,
    pub d: u64,
    pub cofactor: u64,
    pub q: u64,
    pub class_count: ClassCount,
    /// Exponents searched: divisors of the class-count bound that divide `i`.
    pub allowed_z: Vec<u32>,
    pub search: AntiPellSearch,
    pub outcome: Outcome,
    /// Primes dividing both `v1` and `k`, in the order tried.
    pub moduli_tried: Vec<u64>,
    pub witness: Option<CongruenceWitness>,
}

impl EliminationVerdict {
    /// Re-derives the outcome from the recorded inputs.
    pub fn reverify(&self) -> bool {
        match self.outcome {
            Outcome::NoLeastSolution => {
                matches!(
                    antipell_search(self.d, self.q, &self.allowed_z, DEFAULT_SEARCH_CAP),
                    Ok(AntiPellSearch { least: None, .. })
                )
            }
            Outcome::CongruenceContradiction => match (&self.search.least, &self.witness) {
                (Some(least), Some(w)) => {
                    least.satisfies_equation()
                        && least.satisfies_least_bounds(&self.search.pell)
                        && least.z1 * w.t == self.i
                        && w.reverify(least)
                }
                _ => false,
            },
            Outcome::Unresolved => true,
        }
    }
}

/// Attempts to rule out `x^2 + (2k-1)^i = k^z` (odd `z > i`) through the
/// anti-Pell equation with `k = cofactor^2 D`.
pub fn eliminate_triple(i: u32, j: u32, k: u64, d: u64, cofactor: u64) -> Result<EliminationVerdict> {
    if !(i == 3 || i == 5) || j > 2 {
        return Err(Error::InvalidArgument(format!("triple ({i}, {j}, {k}) out of range")));
    }
    if cofactor == 0 || cofactor.checked_mul(cofactor).and_then(|c| c.checked_mul(d)) != Some(k) {
        return Err(Error::InvalidArgument(format!(
            "k = {k} is not cofactor^2 * D = {cofactor}^2 * {d}"
        )));
    }
    let q = 2 * k - 1;
    if is_odd_prime_power(&BigUint::from(q))?.is_none() {
        return Err(Error::InvalidArgument(format!("2k - 1 = {q} is not an odd prime power")));
    }
    let class_count = class_number_4d(d)?;
    let allowed_z: Vec<u32> = divisors(class_count.search_bound())
        .into_iter()
        .filter(|z| i as u64 % z == 0)
        .map(|z| z as u32)
        .collect();
    let search = antipell_search(d, q, &allowed_z, DEFAULT_SEARCH_CAP)?;

    let mut moduli_tried = Vec::new();
    let (outcome, witness) = match &search.least {
        None => (Outcome::NoLeastSolution, None),
        Some(least) => {
            let t = i / least.z1;
            let k_big = BigUint::from(k);
            let common = search.pell.v1.gcd(&k_big);
            let primes: Vec<u64> = if common.is_one() {
                Vec::new()
            } else {
                arith::factorize(&common)?
                    .primes()
                    .map(|p| p.to_u64().expect("divides k"))
                    .collect()
            };
            let mut found = None;
            for m in primes {
                moduli_tried.push(m);
                if let Some(w) = congruence_eliminate(least, t, &search.pell, m, &k_big)? {
                    found = Some(w);
                    break;
                }
            }
            match found {
                Some(w) => (Outcome::CongruenceContradiction, Some(w)),
                None => (Outcome::Unresolved, None),
            }
        }
    };

    Ok(EliminationVerdict {
        i,
        j,
        k,
        d,
        cofactor,
        q,
        class_count,
        allowed_z,
        search,
        outcome,
        moduli_tried,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn least(d: u64, q: u64, x: u64, y: u64, z: u32) -> AntiPellLeast {
        AntiPellLeast {
            d,
            q,
            x1: BigUint::from(x),
            y1: BigUint::from(y),
            z1: z,
        }
    }

    #[test]
    fn norms_from_the_eliminations() {
        assert_eq!(RingElement::from_i64(372, 1427, 74).norm(), BigInt::from(-743));
        assert_eq!(RingElement::from_i64(376, 93, 5).norm(), BigInt::from(-751));
    }

    #[test]
    fn least_solutions() {
        let s = antipell_search(79, 631, &[1], DEFAULT_SEARCH_CAP).unwrap();
        assert!(s.least.is_none());
        assert_eq!(s.exponents[0].bound, BigUint::from(317u32));
        // Z1 = 3 does have a least solution: 12165^2 - 79 * 2248^2 = -631^3.
        let l = antipell_least(79, 631, &[1, 3]).unwrap().unwrap();
        assert_eq!(l, least(79, 631, 12165, 2248, 3));

        let l = antipell_least(372, 743, &[1, 2, 4]).unwrap().unwrap();
        assert_eq!(l, least(372, 743, 1427, 74, 1));
        let l = antipell_least(376, 751, &[1, 2, 4]).unwrap().unwrap();
        assert_eq!(l, least(376, 751, 93, 5, 1));
    }

    #[test]
    fn search_rejects_bad_input() {
        assert!(matches!(
            antipell_least(372, 3, &[1]),
            Err(Error::NotCoprime { .. })
        ));
        assert!(antipell_least(372, 743, &[]).is_err());
        assert!(antipell_least(372, 15, &[1]).is_err());
        assert!(antipell_least(49, 743, &[1]).is_err());
    }

    #[test]
    fn even_exponent_sign() {
        // Z = 2: X^2 - 2 Y^2 = +49 has 9^2 - 2*4^2 = 49 (gcd 1).
        let l = antipell_least(2, 7, &[2]).unwrap().unwrap();
        assert!(l.satisfies_equation());
        assert_eq!(l.z1, 2);
    }

    #[test]
    fn ring_power_examples() {
        let b = RingElement::from_i64(2, 3, 2);
        assert_eq!(ring_power(&b, 1).unwrap(), b);
        let p = ring_power(&RingElement::from_i64(372, 1427, 74), 5).unwrap();
        assert_eq!(p.g.mod_floor(&BigInt::from(3)), BigInt::from(1));
        let p = ring_power(&RingElement::from_i64(376, 93, 5), 5).unwrap();
        assert_eq!(p.g.mod_floor(&BigInt::from(2)), BigInt::from(1));
        assert!(ring_power(&b, 0).is_err());
    }

    #[test]
    fn sign_with_sqrt_cases() {
        let s = |a: i64, b: i64, d| sign_with_sqrt(&BigInt::from(a), &BigInt::from(b), d);
        assert_eq!(s(0, 0, 2), Sign::NoSign);
        assert_eq!(s(3, -2, 2), Sign::Plus);
        assert_eq!(s(2, -2, 2), Sign::Minus);
        assert_eq!(s(-3, 2, 2), Sign::Minus);
        assert_eq!(s(-2, 2, 2), Sign::Plus);
    }

    #[test]
    fn congruence_examples() {
        let f372 = pell_least(372).unwrap();
        let w = congruence_eliminate(&least(372, 743, 1427, 74, 1), 5, &f372, 3, &BigUint::from(372u32))
            .unwrap()
            .unwrap();
        assert!(w.branches.iter().all(|b| b.g_mod == 1 && b.u_squared_mod == 1));
        assert!(w.reverify(&least(372, 743, 1427, 74, 1)));

        let f376 = pell_least(376).unwrap();
        let w = congruence_eliminate(&least(376, 751, 93, 5, 1), 5, &f376, 2, &BigUint::from(376u32))
            .unwrap()
            .unwrap();
        assert!(w.branches.iter().all(|b| b.g_mod == 1));

        // 1^2 - 2*2^2 = -7 and g = 2 is even: nothing to refute.
        let f2 = pell_least(2).unwrap();
        let synthetic = least(2, 7, 1, 2, 1);
        assert!(synthetic.satisfies_equation() && synthetic.satisfies_least_bounds(&f2));
        assert_eq!(
            congruence_eliminate(&synthetic, 1, &f2, 2, &BigUint::from(2u32)).unwrap(),
            None
        );
    }

    #[test]
    fn congruence_rejects_bad_modulus() {
        let f372 = pell_least(372).unwrap();
        let l = least(372, 743, 1427, 74, 1);
        assert!(matches!(
            congruence_eliminate(&l, 5, &f372, 31, &BigUint::from(372u32)),
            Err(Error::ModulusDoesNotDivide { .. })
        ));
        assert!(congruence_eliminate(&l, 5, &f372, 5, &BigUint::from(372u32)).is_err());
    }

    #[test]
    fn triple_eliminations() {
        let v = eliminate_triple(5, 2, 316, 79, 2).unwrap();
        assert_eq!(v.outcome, Outcome::NoLeastSolution);
        assert_eq!(v.allowed_z, vec![1]);
        assert!(v.reverify());

        let v = eliminate_triple(5, 2, 372, 372, 1).unwrap();
        assert_eq!(v.outcome, Outcome::CongruenceContradiction);
        assert_eq!(v.witness.as_ref().unwrap().modulus, 3);
        assert!(v.reverify());

        let v = eliminate_triple(5, 2, 376, 376, 1).unwrap();
        assert_eq!(v.outcome, Outcome::CongruenceContradiction);
        assert_eq!(v.witness.as_ref().unwrap().modulus, 2);
        assert!(v.reverify());
    }

    #[test]
    fn triple_rejects_bad_shape() {
        assert!(eliminate_triple(5, 2, 316, 79, 3).is_err());
        assert!(eliminate_triple(4, 2, 316, 79, 2).is_err());
        // 2*32 - 1 = 63 is not a prime power.
        assert!(eliminate_triple(5, 2, 32, 2, 4).is_err());
    }
}
