//! Pell's equation `u^2 - D v^2 = 1`: least solution by the continued
//! fraction of `sqrt(D)`, and the solution family generated by its powers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::antipell::RingElement;
use crate::arith::integer_sqrt;
use crate::error::{Error, Result};
use crate::serde_big;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellFundamental {
    pub d: u64,
    #[serde(with = "serde_big::uint")]
    pub u1: BigUint,
    #[serde(with = "serde_big::uint")]
    pub v1: BigUint,
    /// Period length of the continued fraction of `sqrt(D)`.
    pub period: u32,
}

impl PellFundamental {
    pub fn as_ring(&self) -> RingElement {
        RingElement::new(self.d, BigInt::from(self.u1.clone()), BigInt::from(self.v1.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub d: u64,
    pub u: BigUint,
    pub v: BigUint,
    pub index: u32,
}

impl PellSolution {
    /// `(u_m + v_m sqrt(D)) (u_n + v_n sqrt(D)) = u_{m+n} + v_{m+n} sqrt(D)`.
    pub fn compose(&self, other: &PellSolution) -> PellSolution {
        assert_eq!(self.d, other.d, "composing solutions of different D");
        let d = BigUint::from(self.d);
        PellSolution {
            d: self.d,
            u: &self.u * &other.u + &d * &self.v * &other.v,
            v: &self.u * &other.v + &self.v * &other.u,
            index: self.index + other.index,
        }
    }
}

pub fn validate_discriminant(d: u64) -> Result<()> {
    if d < 2 || integer_sqrt(&BigUint::from(d)).1 {
        return Err(Error::BadPellDiscriminant(d.to_string()));
    }
    Ok(())
}

/// Least solution of `u^2 - D v^2 = 1`.
///
/// The expansion state `(P, Q, a)` is exact. If the period `r` is even the
/// convergent at index `r - 1` already has norm `+1`; if odd it has norm `-1`
/// and is squared.
pub fn pell_least(d: u64) -> Result<PellFundamental> {
    validate_discriminant(d)?;
    let a0 = integer_sqrt(&BigUint::from(d)).0;
    let a0 = u64::try_from(&a0).expect("sqrt of u64 fits");

    let (mut p, mut q, mut a) = (0u64, 1u64, a0);
    let (mut h_prev, mut h) = (BigUint::one(), BigUint::from(a0));
    let (mut k_prev, mut k) = (BigUint::zero(), BigUint::one());
    let mut period = 0u32;
    loop {
        // P, Q stay below 2 sqrt(D), so u64 is enough.
        p = q * a - p;
        q = (d - p * p) / q;
        a = (a0 + p) / q;
        period += 1;
        if a == 2 * a0 {
            break;
        }
        let h_next = &h * a + &h_prev;
        let k_next = &k * a + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }

    let (u1, v1) = if period % 2 == 0 {
        (h, k)
    } else {
        let dd = BigUint::from(d);
        (&h * &h + &dd * &k * &k, BigUint::from(2u32) * &h * &k)
    };
    debug_assert!(is_pell_solution(d, &BigInt::from(u1.clone()), &BigInt::from(v1.clone())));
    Ok(PellFundamental { d, u1, v1, period })
}

/// `(u_n, v_n)` with `u_n + v_n sqrt(D) = (u_1 + v_1 sqrt(D))^n`.
pub fn pell_nth(fund: &PellFundamental, n: u32) -> Result<PellSolution> {
    if n == 0 {
        return Err(Error::InvalidArgument("Pell index must be >= 1".into()));
    }
    let r = fund.as_ring().pow(n);
    Ok(PellSolution {
        d: fund.d,
        u: r.f.magnitude().clone(),
        v: r.g.magnitude().clone(),
        index: n,
    })
}

pub fn is_pell_solution(d: u64, u: &BigInt, v: &BigInt) -> bool {
    u * u - BigInt::from(d) * v * v == BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(f: &PellFundamental) -> (String, String) {
        (f.u1.to_string(), f.v1.to_string())
    }

    #[test]
    fn least_solutions() {
        assert_eq!(pair(&pell_least(2).unwrap()), ("3".into(), "2".into()));
        assert_eq!(pair(&pell_least(79).unwrap()), ("80".into(), "9".into()));
        assert_eq!(pair(&pell_least(372).unwrap()), ("12151".into(), "630".into()));
        assert_eq!(
            pair(&pell_least(376).unwrap()),
            ("2143295".into(), "110532".into())
        );
        // Odd period: sqrt(2) = [1; 2], sqrt(13) has period 5.
        assert_eq!(pell_least(2).unwrap().period, 1);
        assert_eq!(pair(&pell_least(13).unwrap()), ("649".into(), "180".into()));
        assert_eq!(pell_least(13).unwrap().period, 5);
    }

    #[test]
    fn rejects_bad_d() {
        assert!(pell_least(0).is_err());
        assert!(pell_least(1).is_err());
        assert!(pell_least(49).is_err());
    }

    #[test]
    fn nth_solutions() {
        let f2 = pell_least(2).unwrap();
        let s = pell_nth(&f2, 1).unwrap();
        assert_eq!((s.u.to_string(), s.v.to_string()), ("3".into(), "2".into()));
        let s = pell_nth(&f2, 2).unwrap();
        assert_eq!((s.u.to_string(), s.v.to_string()), ("17".into(), "12".into()));
        let s = pell_nth(&pell_least(79).unwrap(), 2).unwrap();
        assert_eq!((s.u.to_string(), s.v.to_string()), ("12799".into(), "1440".into()));
        assert!(pell_nth(&f2, 0).is_err());
    }

    #[test]
    fn membership() {
        let b = |n: i64| BigInt::from(n);
        assert!(is_pell_solution(79, &b(80), &b(9)));
        assert!(!is_pell_solution(79, &b(80), &b(8)));
        assert!(is_pell_solution(372, &b(12151), &b(630)));
        assert!(is_pell_solution(79, &b(-80), &b(9)));
    }
}
