//! Exact rational scalars with p-local predicates.
//!
//! All arithmetic in this crate is exact; there is no floating point anywhere.
//! Scalars are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator. This module adds the p-local layer: odd-prime
//! validation, p-adic valuations and ℤ_(p)-membership tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms, denominator > 0.
pub type Rational = num_rational::BigRational;

/// Build a rational from an integer numerator and denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Build a rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An odd prime, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OddPrime(u32);

impl OddPrime {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidPrime(p as u64));
        }
        Ok(OddPrime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    pub fn to_rational(self) -> Rational {
        Rational::from_integer(self.to_bigint())
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// p-adic valuation. Zero gets a distinguished sentinel rather than a large
/// integer, so nothing can silently do arithmetic on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PValuation {
    Finite(i64),
    /// Valuation of zero.
    Infinite,
}

impl PValuation {
    pub fn is_at_least(self, bound: i64) -> bool {
        match self {
            PValuation::Finite(v) => v >= bound,
            PValuation::Infinite => true,
        }
    }

    pub fn min(self, other: PValuation) -> PValuation {
        match (self, other) {
            (PValuation::Infinite, v) | (v, PValuation::Infinite) => v,
            (PValuation::Finite(a), PValuation::Finite(b)) => PValuation::Finite(a.min(b)),
        }
    }
}

impl fmt::Display for PValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValuation::Finite(v) => write!(f, "{v}"),
            PValuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// Valuation of a nonzero integer at p.
fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut v = 0i64;
    let mut cur = n.abs();
    loop {
        let (q, r) = cur.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        cur = q;
    }
}

/// v_p(q) = v_p(numerator) − v_p(denominator); `Infinite` iff q = 0.
pub fn p_valuation(q: &Rational, p: OddPrime) -> PValuation {
    if q.is_zero() {
        return PValuation::Infinite;
    }
    let pb = p.to_bigint();
    let vn = int_valuation(q.numer(), &pb);
    // lowest terms: at most one of numerator/denominator is divisible by p
    let vd = if vn > 0 {
        0
    } else {
        int_valuation(q.denom(), &pb)
    };
    PValuation::Finite(vn - vd)
}

/// True iff q lies in ℤ_(p), i.e. its denominator is coprime to p.
pub fn is_p_integral(q: &Rational, p: OddPrime) -> bool {
    p_valuation(q, p).is_at_least(0)
}

/// Residue of a p-integral rational mod p, in 0..p−1.
///
/// Panics if q is not p-integral.
pub fn residue_mod_p(q: &Rational, p: OddPrime) -> u32 {
    assert!(is_p_integral(q, p), "residue of a non-p-integral rational");
    let pb = p.to_bigint();
    let num = q.numer().mod_floor(&pb);
    let den = q.denom().mod_floor(&pb);
    // denominator is a unit mod p; invert by Fermat
    let inv = den.modpow(&BigInt::from(p.get() - 2), &pb);
    let r = (num * inv).mod_floor(&pb);
    let digits = r.to_u32_digits().1;
    if digits.is_empty() {
        0
    } else {
        digits[0]
    }
}

/// Render a rational as "a/b", omitting "/b" when the denominator is 1.
pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
