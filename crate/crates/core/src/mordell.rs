//! Mordell curves `V^2 = U^3 - (2k-1)^i k^(2j)` and their S-integral points,
//! S being the primes dividing `p = 2k - 1`.
//!
//! Writing `y = 6A + i` and `z = 3B + j`, a solution of
//! `x^2 + p^y = k^z` maps to the point
//! `(k^(B+j) / p^(2A), x k^j / p^(3A))`, and in general
//!
//! ```text
//! V^2 - U^3 - coeff = k^(2j) (x^2 + p^y - k^z) / p^(6A)
//! ```
//!
//! The complete S-integral point computation is not attempted; the search
//! here is exhaustive only inside an explicit box.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{self, exact_log, isqrt_u128, maybe_square};
use crate::error::{Error, Result};
use crate::serde_big;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MordellCurve {
    pub i: u32,
    pub j: u32,
    pub k: u64,
    pub p: u64,
    /// `-p^i k^(2j)`.
    #[serde(with = "serde_big::int")]
    pub coeff: BigInt,
    /// Primes dividing `p`.
    pub s_primes: Vec<u64>,
}

pub fn build_curve(i: u32, j: u32, k: u64) -> Result<MordellCurve> {
    if !(i == 3 || i == 5) || j > 2 {
        return Err(Error::InvalidArgument(format!(
            "(i, j) = ({i}, {j}) must have i in {{3, 5}} and j in {{0, 1, 2}}"
        )));
    }
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k} must be >= 2")));
    }
    let p = 2 * k - 1;
    let coeff = -(Pow::pow(BigInt::from(p), i) * Pow::pow(BigInt::from(k), 2 * j));
    let s_primes = arith::factorize_u64(p)?
        .primes()
        .map(|q| q.to_u64().expect("divides a u64"))
        .collect();
    Ok(MordellCurve { i, j, k, p, coeff, s_primes })
}

impl MordellCurve {
    pub fn label(&self) -> String {
        format!("({}, {}, {})", self.i, self.j, self.k)
    }

    /// `V^2 - U^3 - coeff`.
    pub fn residual(&self, u: &BigRational, v: &BigRational) -> BigRational {
        v * v - u * u * u - BigRational::from_integer(self.coeff.clone())
    }

    pub fn contains(&self, u: &BigRational, v: &BigRational) -> bool {
        self.residual(u, v).is_zero()
    }

    fn is_s_unit_denominator(&self, den: &BigInt) -> bool {
        let mut rest = den.magnitude().clone();
        for &q in &self.s_primes {
            let q = BigUint::from(q);
            while (&rest % &q).is_zero() {
                rest /= &q;
            }
        }
        rest.is_one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SPoint {
    #[serde(with = "serde_big::rational")]
    pub u: BigRational,
    #[serde(with = "serde_big::rational")]
    pub v: BigRational,
}

impl SPoint {
    pub fn new(u: BigRational, v: BigRational) -> Self {
        SPoint { u, v }
    }

    pub fn integral(u: BigInt, v: BigInt) -> Self {
        SPoint::new(BigRational::from_integer(u), BigRational::from_integer(v))
    }
}

/// Image of `(x, y, z)` on the curve with matching `(i, j)`.
pub fn solution_to_point(x: &BigUint, y: u32, z: u32, curve: &MordellCurve) -> Result<SPoint> {
    if y < curve.i || (y - curve.i) % 6 != 0 {
        return Err(Error::InvalidArgument(format!("y = {y} is not {} mod 6", curve.i)));
    }
    if z < curve.j || (z - curve.j) % 3 != 0 {
        return Err(Error::InvalidArgument(format!("z = {z} is not {} mod 3", curve.j)));
    }
    if !x.gcd(&BigUint::from(curve.k)).is_one() {
        return Err(Error::InvalidArgument(format!("gcd(x, k) > 1 for x = {x}")));
    }
    let a = (y - curve.i) / 6;
    let b = (z - curve.j) / 3;
    let p = BigInt::from(curve.p);
    let k = BigInt::from(curve.k);
    let u = BigRational::new(Pow::pow(&k, b + curve.j), Pow::pow(&p, 2 * a));
    let v = BigRational::new(
        BigInt::from(x.clone()) * Pow::pow(&k, curve.j),
        Pow::pow(&p, 3 * a),
    );
    Ok(SPoint::new(u, v))
}

/// On the curve and S-integral.
pub fn verify_point(curve: &MordellCurve, u: &BigRational, v: &BigRational) -> bool {
    curve.contains(u, v) && curve.is_s_unit_denominator(u.denom()) && curve.is_s_unit_denominator(v.denom())
}

/// Reads `(x, y, z)` off a point of the shape
/// `(k^(B+j) / p^(2A), x k^j / p^(3A))` with `x > 0`, `gcd(x, k) = 1` and
/// `z >= 1`, without checking the equation. The sign of `V` is ignored.
pub fn point_shape(curve: &MordellCurve, point: &SPoint) -> Option<(BigUint, u32, u32)> {
    let p = BigUint::from(curve.p);
    let k = BigUint::from(curve.k);
    if !point.u.is_positive() {
        return None;
    }
    let two_a = exact_log(point.u.denom().magnitude(), &p)?;
    if two_a % 2 != 0 {
        return None;
    }
    let a = two_a / 2;
    let b = exact_log(point.u.numer().magnitude(), &k)?.checked_sub(curve.j)?;
    if *point.v.denom().magnitude() != Pow::pow(&p, 3 * a) {
        return None;
    }
    let kj: BigUint = Pow::pow(&k, curve.j);
    let (x, rem) = point.v.numer().magnitude().div_rem(&kj);
    if !rem.is_zero() || x.is_zero() || !x.gcd(&k).is_one() {
        return None;
    }
    let z = 3 * b + curve.j;
    (z > 0).then_some((x, 6 * a + curve.i, z))
}

/// Inverts [`solution_to_point`]: the [`point_shape`] reading, kept only
/// when it solves `x^2 + p^y = k^z`.
pub fn point_to_solution(curve: &MordellCurve, point: &SPoint) -> Option<(BigUint, u32, u32)> {
    let (x, y, z) = point_shape(curve, point)?;
    let lhs = &x * &x + Pow::pow(BigUint::from(curve.p), y);
    (lhs == Pow::pow(BigUint::from(curve.k), z)).then_some((x, y, z))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedSearch {
    pub curve: String,
    /// Denominators `d^2`, `d^3` with `d | p^max_a`.
    pub max_a: u32,
    /// Bound on `|numerator(U)|`.
    pub max_num: u64,
    /// Points with `V >= 0`; `(U, -V)` is implied. Complete only inside the box.
    pub points: Vec<SPoint>,
}

/// All S-integral points with `U = n / d^2`, `d | p^max_a`, `gcd(n, d) = 1`
/// (for `d > 1`) and `|n| <= max_num`, by scanning `n` and testing
/// `n^3 + coeff d^6` for squares.
pub fn bounded_s_point_search(curve: &MordellCurve, max_a: u32, max_num: u64) -> BoundedSearch {
    bounded_s_point_search_in(curve, max_a, 1, max_num)
}

/// As [`bounded_s_point_search`], restricted to `min_num <= n <= max_num`.
pub fn bounded_s_point_search_in(curve: &MordellCurve, max_a: u32, min_num: u64, max_num: u64) -> BoundedSearch {
    let mut points = Vec::new();
    for d in denominators(curve, max_a) {
        scan_denominator(curve, &d, min_num, max_num, &mut points);
    }
    points.sort_by(|a, b| a.u.cmp(&b.u));
    BoundedSearch {
        curve: curve.label(),
        max_a,
        max_num,
        points,
    }
}

// Divisors of p^max_a.
fn denominators(curve: &MordellCurve, max_a: u32) -> Vec<BigUint> {
    let fact = arith::factorize_u64(curve.p).expect("p was factored at construction").pow(max_a);
    let mut out = vec![BigUint::one()];
    for (q, e) in fact.factors() {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut pw = d.clone();
            for _ in 0..=*e {
                next.push(pw.clone());
                pw *= q;
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn scan_denominator(curve: &MordellCurve, d: &BigUint, min_num: u64, max_num: u64, out: &mut Vec<SPoint>) {
    // coeff < 0, so n^3 >= |coeff| d^6 forces n > 0.
    let shift: BigUint = curve.coeff.magnitude() * Pow::pow(d, 6u32);
    let mut start = shift.cbrt();
    if Pow::pow(&start, 3u32) < shift {
        start += 1u32;
    }
    let start = match start.to_u64() {
        Some(s) => s.max(min_num),
        None => return,
    };
    if start > max_num {
        return;
    }
    let d_is_one = d.is_one();
    let coprime = |n: u64| d_is_one || curve.s_primes.iter().all(|q| n % q != 0);
    let d3 = BigInt::from(Pow::pow(d, 3u32));
    let d2 = BigInt::from(Pow::pow(d, 2u32));
    let mut push = |n: u64, w: BigUint| {
        out.push(SPoint::new(
            BigRational::new(BigInt::from(n), d2.clone()),
            BigRational::new(BigInt::from(w), d3.clone()),
        ));
    };

    let max_cube = (max_num as u128).checked_pow(3);
    match (max_cube, shift.to_u128()) {
        (Some(mc), Some(sh)) if mc < (1u128 << 126) => {
            for n in start..=max_num {
                let rhs = (n as u128).pow(3) - sh;
                if !maybe_square(rhs) || !coprime(n) {
                    continue;
                }
                let w = isqrt_u128(rhs);
                if w * w == rhs {
                    push(n, BigUint::from(w));
                }
            }
        }
        _ => {
            for n in start..=max_num {
                if !coprime(n) {
                    continue;
                }
                let rhs = Pow::pow(BigUint::from(n), 3u32) - &shift;
                let (w, exact) = arith::integer_sqrt(&rhs);
                if exact {
                    push(n, w);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn curve_coefficients() {
        assert_eq!(build_curve(3, 0, 2).unwrap().coeff, BigInt::from(-27));
        let c = build_curve(3, 2, 664).unwrap();
        let expected: BigInt = -(Pow::pow(BigInt::from(1327), 3u32) * Pow::pow(BigInt::from(664), 4u32));
        assert_eq!(c.coeff, expected);
        let c = build_curve(5, 2, 316).unwrap();
        let expected: BigInt = -(Pow::pow(BigInt::from(631), 5u32) * Pow::pow(BigInt::from(316), 4u32));
        assert_eq!(c.coeff, expected);
        assert!(build_curve(4, 0, 10).is_err());
        assert!(build_curve(3, 3, 10).is_err());
        assert!(build_curve(3, 0, 1).is_err());
        assert_eq!(build_curve(3, 0, 172).unwrap().s_primes, vec![7]);
    }

    #[test]
    fn solution_map_off_curve_residual() {
        let c = build_curve(3, 0, 2).unwrap();
        let pt = solution_to_point(&BigUint::from(1u32), 3, 3, &c).unwrap();
        assert_eq!((pt.u.clone(), pt.v.clone()), (rat(2, 1), rat(1, 1)));
        assert_eq!(c.residual(&pt.u, &pt.v), rat(20, 1));
        assert!(!c.contains(&pt.u, &pt.v));
    }

    #[test]
    fn solution_map_rejects_residues() {
        let c = build_curve(3, 1, 4).unwrap();
        assert!(solution_to_point(&BigUint::from(1u32), 5, 4, &c).is_err());
        assert!(solution_to_point(&BigUint::from(1u32), 3, 3, &c).is_err());
        assert!(solution_to_point(&BigUint::from(2u32), 3, 4, &c).is_err());
    }

    #[test]
    fn denominators_follow_a() {
        let c = build_curve(3, 1, 4).unwrap();
        let pt = solution_to_point(&BigUint::from(3u32), 15, 4, &c).unwrap();
        assert_eq!(pt.u.denom(), &BigInt::from(7u32.pow(4)));
        assert_eq!(pt.v.denom(), &BigInt::from(7u32.pow(6)));
    }

    #[test]
    fn reported_points() {
        let c = build_curve(3, 2, 664).unwrap();
        let u = BigRational::from_integer(int("6435758912"));
        let v = BigRational::from_integer(int("516297057335360"));
        assert!(verify_point(&c, &u, &v));
        assert_eq!(point_to_solution(&c, &SPoint::new(u, v)), None);

        let small = build_curve(3, 0, 2).unwrap();
        assert!(!verify_point(&small, &rat(4, 1), &rat(6, 1)));
        assert!(verify_point(&small, &rat(3, 1), &rat(0, 1)));
        assert!(!small.is_s_unit_denominator(&BigInt::from(4)));
        assert!(small.is_s_unit_denominator(&BigInt::from(81)));
    }

    #[test]
    fn shape_mismatch_is_absent() {
        let c = build_curve(3, 0, 2).unwrap();
        assert_eq!(point_to_solution(&c, &SPoint::integral(BigInt::from(3), BigInt::zero())), None);
        assert_eq!(point_to_solution(&c, &SPoint::new(rat(2, 5), rat(1, 1))), None);
    }

    #[test]
    fn roundtrip_on_genuine_solution() {
        // (1, 3, 3) with k = 7 is not a solution; the point has the right
        // shape but the final equation check rejects it.
        let c = build_curve(3, 0, 7).unwrap();
        let pt = solution_to_point(&BigUint::from(1u32), 3, 3, &c).unwrap();
        assert_eq!(pt.u, rat(7, 1));
        assert_eq!(point_shape(&c, &pt), Some((BigUint::from(1u32), 3, 3)));
        assert_eq!(point_to_solution(&c, &pt), None);
    }

    #[test]
    fn small_box_search() {
        let c = build_curve(3, 0, 2).unwrap();
        let s = bounded_s_point_search(&c, 0, 10);
        assert!(s.points.contains(&SPoint::integral(BigInt::from(3), BigInt::zero())));
        assert!(s.points.iter().all(|p| verify_point(&c, &p.u, &p.v)));
        assert!(bounded_s_point_search(&c, 0, 2).points.is_empty());
    }

    #[test]
    fn search_finds_reported_point() {
        let c = build_curve(3, 2, 664).unwrap();
        let s = bounded_s_point_search_in(&c, 0, 6_435_758_000, 6_435_759_000);
        assert_eq!(
            s.points,
            vec![SPoint::integral(int("6435758912"), int("516297057335360"))]
        );
    }
}
