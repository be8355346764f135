//! Signature (n, n, 2) recipes: `A a^n + B b^n = C c^2` with the three Frey
//! curves, their discriminants and conductors, and the Cremona-table
//! compatibility test for `x^2 + (2k-1)^y = k^z`.
//!
//! Case table (`n >= 7` prime):
//!
//! | case | condition                                           | curve | delta | alpha |
//! |------|-----------------------------------------------------|-------|-------|-------|
//! | i    | `abABC` odd, `b = -BC (mod 4)`                      | E1    | 6     | 5     |
//! | ii   | `ab` odd, `ord2(B) = 1` or `ord2(C) = 1`            | E1    | 6     | 6     |
//! | iii  | `ab` odd, `ord2(B) = 2`, `C = -bB/4 (mod 4)`        | E2    | 0     | 1 or 2|
//! | iv   | `ab` odd, `ord2(B) in {3,4,5}`, `c = C (mod 4)`     | E2    | 0     | 4 or 2|
//! | v    | `ord2(B b^n) >= 6`, `c = C (mod 4)`                 | E3    | -12   | -1 or 0 |

use std::fmt;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{self, exact_log, factorize, is_prime_u64, ord2, power_free_split_factored};
use crate::error::{Error, Result};
use crate::serde_big;

/// Largest conductor in the Cremona tables used for the screening.
pub const CREMONA_CONDUCTOR_LIMIT: u64 = 500_000;

/// Parameters of `A a^n + B b^n = C c^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreyParams {
    pub n: u32,
    #[serde(with = "serde_big::int")]
    pub coeff_a: BigInt,
    #[serde(with = "serde_big::int")]
    pub a: BigInt,
    #[serde(with = "serde_big::int")]
    pub coeff_b: BigInt,
    #[serde(with = "serde_big::int")]
    pub b: BigInt,
    #[serde(with = "serde_big::int")]
    pub coeff_c: BigInt,
    #[serde(with = "serde_big::int")]
    pub c: BigInt,
    /// Present when built from `x^2 + (2k-1)^n = k^z`.
    pub origin: Option<FreyOrigin>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreyOrigin {
    pub k: u64,
    pub z: u32,
    #[serde(with = "serde_big::uint")]
    pub x: BigUint,
}

fn nth_power_free(m: &BigInt, n: u32) -> Result<bool> {
    let f = factorize(m.magnitude())?;
    Ok(f.factors().iter().all(|(_, e)| *e < n))
}

impl FreyParams {
    /// Validates the side conditions of the recipe; the equation itself is
    /// not required to hold (see [`FreyParams::satisfies_equation`]).
    pub fn new(
        n: u32,
        coeff_a: BigInt,
        a: BigInt,
        coeff_b: BigInt,
        b: BigInt,
        coeff_c: BigInt,
        c: BigInt,
    ) -> Result<FreyParams> {
        if n < 7 || !is_prime_u64(n as u64) {
            return Err(Error::InvalidArgument(format!("n = {n} must be a prime >= 7")));
        }
        for (name, v) in [("A", &coeff_a), ("a", &a), ("B", &coeff_b), ("b", &b), ("C", &coeff_c), ("c", &c)] {
            if v.is_zero() {
                return Err(Error::InvalidArgument(format!("{name} must be nonzero")));
            }
        }
        let aa = &coeff_a * &a;
        let bb = &coeff_b * &b;
        let cc = &coeff_c * &c;
        for (l, r, name) in [(&aa, &bb, "Aa, Bb"), (&aa, &cc, "Aa, Cc"), (&bb, &cc, "Bb, Cc")] {
            if !l.gcd(r).is_one() {
                return Err(Error::InvalidArgument(format!("{name} are not coprime")));
            }
        }
        if !nth_power_free(&coeff_a, n)? || !nth_power_free(&coeff_b, n)? {
            return Err(Error::InvalidArgument("A and B must be n-th-power free".into()));
        }
        if !nth_power_free(&coeff_c, 2)? {
            return Err(Error::InvalidArgument("C must be squarefree".into()));
        }
        Ok(FreyParams {
            n,
            coeff_a,
            a,
            coeff_b,
            b,
            coeff_c,
            c,
            origin: None,
        })
    }

    pub fn satisfies_equation(&self) -> bool {
        let lhs = &self.coeff_a * Pow::pow(&self.a, self.n) + &self.coeff_b * Pow::pow(&self.b, self.n);
        lhs == &self.coeff_c * &self.c * &self.c
    }

    /// `ord2(B b^n)`.
    pub fn ord2_bbn(&self) -> u64 {
        ord2(self.coeff_b.magnitude()) + self.n as u64 * ord2(self.b.magnitude())
    }
}

/// Parameters for `-(2k-1)^n + k^z = x^2` with `B = f(k^z)`, `b = g(k^z)`
/// and `c = (-1)^((x-1)/2) x`, so that `c = 1 (mod 4)`.
///
/// `x` stands for a hypothetical solution; only its residue mod 4 and its
/// coprimality with `k (2k-1)` matter.
pub fn build_frey_params(k: u64, z: u32, x: &BigUint, n: u32) -> Result<FreyParams> {
    if n < 7 || n % 2 == 0 || !is_prime_u64(n as u64) {
        return Err(Error::InvalidArgument(format!("n = {n} must be an odd prime >= 7")));
    }
    if k < 2 || z == 0 {
        return Err(Error::InvalidArgument("need k >= 2 and z >= 1".into()));
    }
    if x.is_even() {
        return Err(Error::InvalidArgument(format!("x = {x} must be odd")));
    }
    let kz = arith::factorize_u64(k)?.pow(z);
    let split = power_free_split_factored(&kz, n);
    let x_int = BigInt::from(x.clone());
    let c = if (x % 4u32) == BigUint::one() { x_int } else { -x_int };
    let mut p = FreyParams::new(
        n,
        BigInt::from(-1),
        BigInt::from(2 * k - 1),
        BigInt::from(split.f),
        BigInt::from(split.g),
        BigInt::one(),
        c,
    )?;
    p.origin = Some(FreyOrigin { k, z, x: x.clone() });
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "i",
            Case::Ii => "ii",
            Case::Iii => "iii",
            Case::Iv => "iv",
            Case::V => "v",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseTag {
    pub tag: Case,
    /// Which Frey curve: 1, 2 or 3.
    pub curve: u8,
    /// 2-exponent of the conductor.
    pub alpha: i32,
    /// 2-exponent of the discriminant.
    pub delta: i32,
}

fn mod4(v: &BigInt) -> u8 {
    v.mod_floor(&BigInt::from(4)).to_u8().expect("residue mod 4")
}

/// The first of the cases (i)-(v) that applies.
pub fn classify_case(p: &FreyParams) -> Result<CaseTag> {
    let ab_odd = p.a.is_odd() && p.b.is_odd();
    let ord2_b = ord2(p.coeff_b.magnitude());
    let ord2_c = ord2(p.coeff_c.magnitude());
    let bc = &p.coeff_b * &p.coeff_c;

    if ab_odd && p.coeff_a.is_odd() && p.coeff_b.is_odd() && p.coeff_c.is_odd() && mod4(&p.b) == mod4(&-&bc) {
        return Ok(CaseTag { tag: Case::I, curve: 1, alpha: 5, delta: 6 });
    }
    if ab_odd && (ord2_b == 1 || ord2_c == 1) {
        return Ok(CaseTag { tag: Case::Ii, curve: 1, alpha: 6, delta: 6 });
    }
    if ab_odd && ord2_b == 2 {
        let bb4 = &p.b * &p.coeff_b / 4;
        if mod4(&p.coeff_c) == mod4(&-&bb4) {
            let bc4 = &bc / 4;
            let alpha = if mod4(&p.b) == mod4(&-&bc4) { 1 } else { 2 };
            return Ok(CaseTag { tag: Case::Iii, curve: 2, alpha, delta: 0 });
        }
    }
    if ab_odd && (3..=5).contains(&ord2_b) && mod4(&p.c) == mod4(&p.coeff_c) {
        let alpha = if ord2_b == 3 { 4 } else { 2 };
        return Ok(CaseTag { tag: Case::Iv, curve: 2, alpha, delta: 0 });
    }
    let v = p.ord2_bbn();
    if v >= 6 && mod4(&p.c) == mod4(&p.coeff_c) {
        let alpha = if v == 6 { -1 } else { 0 };
        return Ok(CaseTag { tag: Case::V, curve: 3, alpha, delta: -12 });
    }
    Err(Error::NoCase(format!(
        "A={}, a={}, B={}, b={}, C={}, c={}",
        p.coeff_a, p.a, p.coeff_b, p.b, p.coeff_c, p.c
    )))
}

/// `ord2(B b^n) >= 6` for the parameters built from `(k, z, n)`.
///
/// The valuation is taken of `B b^n`, the quantity the case (v) condition
/// uses; [`lemma35_literal_valuation`] gives `ord2(b B^n)` for comparison.
pub fn lemma35_check(k: u64, z: u32, n: u32) -> bool {
    lemma35_valuations(k, z, n).is_some_and(|(bbn, _)| bbn >= 6)
}

/// `ord2(b B^n)`, the product as literally written in the lemma statement.
pub fn lemma35_literal_valuation(k: u64, z: u32, n: u32) -> Option<u64> {
    lemma35_valuations(k, z, n).map(|(_, lit)| lit)
}

fn lemma35_valuations(k: u64, z: u32, n: u32) -> Option<(u64, u64)> {
    if k < 2 || n < 2 {
        return None;
    }
    let kz = arith::factorize_u64(k).ok()?.pow(z);
    let split = power_free_split_factored(&kz, n);
    let (ob, og) = (ord2(&split.f), ord2(&split.g));
    Some((ob + n as u64 * og, og + n as u64 * ob))
}

/// `2^delta C^3 B^2 A (a b^2)^n`, exact.
pub fn discriminant(p: &FreyParams, tag: &CaseTag) -> BigRational {
    let ab2 = &p.a * &p.b * &p.b;
    let body = Pow::pow(&p.coeff_c, 3u32) * &p.coeff_b * &p.coeff_b * &p.coeff_a * Pow::pow(&ab2, p.n);
    BigRational::from_integer(body) * pow2(tag.delta)
}

fn pow2(e: i32) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(2));
    if e >= 0 {
        Pow::pow(base, e as u32)
    } else {
        Pow::pow(base.recip(), (-e) as u32)
    }
}

/// `2^alpha C^2 rad(abAB)`. Only `alpha >= 0` gives an integer; the
/// `alpha = -1` row is returned as the rational it evaluates to.
pub fn conductor(p: &FreyParams, tag: &CaseTag) -> Result<BigRational> {
    let mut rad = arith::Factorization::one();
    for v in [&p.a, &p.b, &p.coeff_a, &p.coeff_b] {
        rad = rad.mul(&factorize(v.magnitude())?);
    }
    let body = &p.coeff_c * &p.coeff_c * BigInt::from(rad.radical());
    Ok(BigRational::from_integer(body) * pow2(tag.alpha))
}

/// `rad(2k-1) rad(k)`: the case (v) conductor with `alpha = 0`.
pub fn conductor_rn(k: u64) -> Result<u64> {
    if k % 4 != 0 || k == 0 {
        return Err(Error::InvalidArgument(format!("k = {k} must be divisible by 4")));
    }
    Ok(arith::radical_u64(2 * k - 1)? * arith::radical_u64(k)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveFixture {
    pub label: String,
    pub conductor: u64,
    /// `[a1, a2, a3, a4, a6]`.
    pub ainvariants: [i64; 5],
}

impl CurveFixture {
    pub fn new(label: &str, conductor: u64, ainvariants: [i64; 5]) -> Self {
        CurveFixture {
            label: label.to_string(),
            conductor,
            ainvariants,
        }
    }

    /// Discriminant of the Weierstrass model.
    pub fn discriminant(&self) -> BigInt {
        let [a1, a2, a3, a4, a6] = self.ainvariants.map(BigInt::from);
        let b2 = &a1 * &a1 + 4 * &a2;
        let b4 = 2 * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + 4 * &a6;
        let b8 = &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        let t: BigInt = &b2 * &b2 * &b8;
        -t - 8 * (&b4 * &b4 * &b4) - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.discriminant().is_zero()
    }
}

/// The two curves the screening needs: 2298h1 and 12790b1.
pub fn embedded_fixtures() -> Vec<CurveFixture> {
    vec![
        CurveFixture::new("2298h1", 2298, [1, 0, 0, 6, 0]),
        CurveFixture::new("12790b1", 12790, [1, 0, 0, 20, 0]),
    ]
}

/// Parses `label conductor a1 a2 a3 a4 a6` records; `#` lines and blank lines
/// are skipped.
pub fn parse_fixtures(text: &str) -> Result<Vec<CurveFixture>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Fixture { line: idx + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 7 {
            return Err(err(format!("expected 7 fields, found {}", fields.len())));
        }
        let conductor: u64 = fields[1]
            .parse()
            .map_err(|e| err(format!("conductor {:?}: {e}", fields[1])))?;
        let mut ainvariants = [0i64; 5];
        for (slot, s) in ainvariants.iter_mut().zip(&fields[2..]) {
            *slot = s.parse().map_err(|e| err(format!("coefficient {s:?}: {e}")))?;
        }
        let fixture = CurveFixture {
            label: fields[0].to_string(),
            conductor,
            ainvariants,
        };
        if !fixture.is_nonsingular() {
            return Err(err(format!("curve {} is singular", fixture.label)));
        }
        out.push(fixture);
    }
    Ok(out)
}

pub fn load_fixtures(path: &Path) -> Result<Vec<CurveFixture>> {
    parse_fixtures(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum FixtureOutcome {
    /// The a-invariants cannot equal `[1, (x-1)/4, 0, k^z/64, 0]`.
    Incompatible {
        label: String,
        reason: String,
    },
    Compatible {
        label: String,
        #[serde(with = "serde_big::uint")]
        x: BigUint,
        z: u32,
    },
}

impl FixtureOutcome {
    pub fn is_compatible(&self) -> bool {
        matches!(self, FixtureOutcome::Compatible { .. })
    }
}

/// Matches fixtures of conductor `conductor` against the Frey model
/// `[1, (x-1)/4, 0, k^z/64, 0]` (with `x = 1 mod 4` after the sign change).
///
/// An empty result means no fixture has this conductor.
pub fn match_fixture(conductor: u64, fixtures: &[CurveFixture], k: u64) -> Vec<FixtureOutcome> {
    fixtures
        .iter()
        .filter(|f| f.conductor == conductor)
        .map(|f| match_one(f, k))
        .collect()
}

fn match_one(f: &CurveFixture, k: u64) -> FixtureOutcome {
    let label = f.label.clone();
    let incompatible = |reason: String| FixtureOutcome::Incompatible {
        label: label.clone(),
        reason,
    };
    let [a1, a2, a3, a4, a6] = f.ainvariants;
    if (a1, a3, a6) != (1, 0, 0) {
        return incompatible(format!("a1, a3, a6 = {a1}, {a3}, {a6}; the model needs 1, 0, 0"));
    }
    // c = 4 a2 + 1 and x = |c|.
    let c = 4 * a2 as i128 + 1;
    let x = BigUint::from(c.unsigned_abs());
    if a4 <= 0 {
        return incompatible(format!("k^z = 64 * {a4} is not positive"));
    }
    let target = BigUint::from(64u32) * BigUint::from(a4 as u64);
    let Some(z) = exact_log(&target, &BigUint::from(k)) else {
        return incompatible(format!("{k}^z = {target} has no integer solution z"));
    };
    if z % 2 == 0 || z <= 7 {
        return incompatible(format!(
            "{k}^{z} = {target}, but z must be odd and exceed y >= 7"
        ));
    }
    FixtureOutcome::Compatible { label, x, z }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn build_examples() {
        let p = build_frey_params(192, 7, &BigUint::from(5u32), 7).unwrap();
        assert_eq!((p.coeff_b.clone(), p.b.clone(), p.c.clone()), (big(1), big(192), big(5)));
        let p = build_frey_params(192, 7, &BigUint::from(7u32), 7).unwrap();
        assert_eq!(p.c, big(-7));
        assert_eq!(p.c.mod_floor(&big(4)), big(1));

        let p = build_frey_params(36, 9, &BigUint::from(5u32), 7).unwrap();
        let m: BigInt = Pow::pow(big(36), 9u32);
        assert_eq!(&p.coeff_b * Pow::pow(&p.b, 7u32), m);
        // 36^9 = 2^18 3^18: f = 2^4 3^4, g = 2^2 3^2.
        assert_eq!((p.coeff_b.clone(), p.b.clone()), (big(1296), big(36)));
    }

    #[test]
    fn build_rejects() {
        let x = BigUint::from(5u32);
        assert!(build_frey_params(192, 7, &x, 8).is_err());
        assert!(build_frey_params(192, 7, &x, 5).is_err());
        assert!(build_frey_params(192, 7, &x, 9).is_err());
        // gcd(x, k) > 1 and gcd(x, 2k-1) > 1.
        assert!(build_frey_params(192, 7, &BigUint::from(3u32), 7).is_err());
        assert!(build_frey_params(192, 7, &BigUint::from(383u32), 7).is_err());
        assert!(build_frey_params(192, 7, &BigUint::from(4u32), 7).is_err());
    }

    #[test]
    fn classify_examples() {
        let p = build_frey_params(192, 7, &BigUint::from(5u32), 7).unwrap();
        assert_eq!(p.ord2_bbn(), 42);
        assert_eq!(
            classify_case(&p).unwrap(),
            CaseTag { tag: Case::V, curve: 3, alpha: 0, delta: -12 }
        );
        let p = build_frey_params(4, 9, &BigUint::from(5u32), 7).unwrap();
        assert_eq!(classify_case(&p).unwrap().tag, Case::V);

        // All odd, b = -BC (mod 4): 1 * 1 + 3 * 1, C = 1, b = 3 = -1 (mod 4).
        let p = FreyParams::new(7, big(1), big(1), big(1), big(3), big(1), big(5)).unwrap();
        assert_eq!(
            classify_case(&p).unwrap(),
            CaseTag { tag: Case::I, curve: 1, alpha: 5, delta: 6 }
        );
    }

    #[test]
    fn classify_even_cases() {
        let t = |bcoef, c| {
            classify_case(&FreyParams::new(7, big(1), big(1), big(bcoef), big(1), big(1), big(c)).unwrap())
                .unwrap()
        };
        assert_eq!(t(2, 3).tag, Case::Ii);
        // ord2(B) = 2 with B = -4, so -bB/4 = 1 = C.
        let iii = t(-4, 3);
        assert_eq!((iii.tag, iii.delta), (Case::Iii, 0));
        // b = 1, BC/4 = -1: b = -BC/4 (mod 4), so alpha = 1.
        assert_eq!(iii.alpha, 1);
        assert_eq!((t(8, 1).tag, t(8, 1).alpha), (Case::Iv, 4));
        assert_eq!((t(16, 1).tag, t(16, 1).alpha), (Case::Iv, 2));
        assert!(matches!(
            classify_case(&FreyParams::new(7, big(1), big(1), big(8), big(1), big(1), big(3)).unwrap()),
            Err(Error::NoCase(_))
        ));
        // ord2(B b^n) = 6 exactly: alpha = -1.
        let p = FreyParams::new(7, big(1), big(1), big(64), big(3), big(1), big(1)).unwrap();
        let tag = classify_case(&p).unwrap();
        assert_eq!((tag.tag, tag.alpha), (Case::V, -1));
    }

    #[test]
    fn params_validation() {
        assert!(FreyParams::new(7, big(1), big(0), big(1), big(1), big(1), big(1)).is_err());
        assert!(FreyParams::new(7, big(1), big(2), big(1), big(2), big(1), big(1)).is_err());
        assert!(FreyParams::new(7, Pow::pow(big(2), 7u32), big(1), big(1), big(3), big(1), big(1)).is_err());
        assert!(FreyParams::new(7, big(1), big(1), big(1), big(3), big(4), big(1)).is_err());
        assert!(FreyParams::new(11, big(1), big(1), big(1), big(3), big(5), big(1)).is_ok());
    }

    #[test]
    fn lemma35_examples() {
        assert!(lemma35_check(192, 21, 7));
        assert!(lemma35_check(4, 21, 7));
        assert!(lemma35_check(4, 7, 7));
        // 192^21 = 2^126 3^21: B = 1, b = 2^18 3^3.
        assert_eq!(lemma35_valuations(192, 21, 7), Some((126, 18)));
    }

    #[test]
    fn discriminant_examples() {
        let p = build_frey_params(192, 7, &BigUint::from(5u32), 7).unwrap();
        let tag = classify_case(&p).unwrap();
        let d = discriminant(&p, &tag) * BigRational::from_integer(Pow::pow(big(2), 12u32));
        let expected: BigInt = -Pow::pow(big(383 * 192 * 192), 7u32);
        assert_eq!(d, BigRational::from_integer(expected));

        let unit = FreyParams::new(7, big(-1), big(1), big(1), big(1), big(1), big(1)).unwrap();
        let v = CaseTag { tag: Case::V, curve: 3, alpha: 0, delta: -12 };
        assert_eq!(
            discriminant(&unit, &v),
            -BigRational::new(big(1), Pow::pow(big(2), 12u32))
        );
        let unit = FreyParams::new(7, big(1), big(1), big(1), big(1), big(1), big(1)).unwrap();
        let i = CaseTag { tag: Case::I, curve: 1, alpha: 5, delta: 6 };
        assert_eq!(discriminant(&unit, &i), BigRational::from_integer(big(64)));
    }

    #[test]
    fn conductors() {
        assert_eq!(conductor_rn(192).unwrap(), 2298);
        assert_eq!(conductor_rn(640).unwrap(), 12790);
        assert_eq!(conductor_rn(720).unwrap(), 43170);
        assert_eq!(conductor_rn(724).unwrap(), 523814);
        assert!(conductor_rn(30).is_err());

        let p = build_frey_params(192, 9, &BigUint::from(5u32), 7).unwrap();
        let tag = classify_case(&p).unwrap();
        assert_eq!(conductor(&p, &tag).unwrap(), BigRational::from_integer(big(2298)));
    }

    #[test]
    fn fixtures() {
        let fx = embedded_fixtures();
        assert!(fx.iter().all(CurveFixture::is_nonsingular));
        assert_eq!(fx[0].discriminant(), big(-13788));

        let out = match_fixture(2298, &fx, 192);
        assert_eq!(out.len(), 1);
        match &out[0] {
            FixtureOutcome::Incompatible { label, reason } => {
                assert_eq!(label, "2298h1");
                assert!(reason.contains("= 384"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let out = match_fixture(12790, &fx, 640);
        assert!(matches!(&out[0], FixtureOutcome::Incompatible { reason, .. } if reason.contains("= 1280")));
        assert!(match_fixture(100, &fx, 100).is_empty());

        // 4^9 / 64 = 4096: the shape alone would accept z = 9, x = 1.
        let synthetic = [CurveFixture::new("t", 1, [1, 0, 0, 4096, 0])];
        assert_eq!(
            match_fixture(1, &synthetic, 4),
            vec![FixtureOutcome::Compatible { label: "t".into(), x: BigUint::one(), z: 9 }]
        );
    }

    #[test]
    fn fixture_file_parsing() {
        let text = "# label N a1 a2 a3 a4 a6\n2298h1 2298 1 0 0 6 0\n\n12790b1 12790 1 0 0 20 0\n";
        assert_eq!(parse_fixtures(text).unwrap(), embedded_fixtures());
        assert!(matches!(parse_fixtures("x 1 2 3"), Err(Error::Fixture { line: 1, .. })));
        assert!(parse_fixtures("s 1 0 0 0 0 0").is_err());
        assert!(parse_fixtures("s 1 0 0 0 a 0").is_err());
    }

    #[test]
    fn discriminant_sign_helper() {
        assert!(pow2(-2) < BigRational::one());
        assert!(BigRational::from_integer(big(-3)).is_negative());
    }
}
