//! Exact nonnegative rationals and p-adic valuations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::primes::require_prime;

/// A nonnegative rational `n/d` kept in lowest terms; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigUint,
    den: BigUint,
}

impl Rational {
    /// Builds `num/den` from signed input, rejecting negatives and zero
    /// denominators.
    pub fn try_new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.sign() == Sign::Minus || den.sign() == Sign::Minus {
            return Err(Error::NegativeInput(format!("{num}/{den}")));
        }
        Ok(Self::from_biguints(num.magnitude().clone(), den.magnitude().clone()))
    }

    /// Panics on a zero denominator; for literals.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_biguints(BigUint::from(num), BigUint::from(den))
    }

    pub fn integer(n: u64) -> Self {
        Self {
            num: BigUint::from(n),
            den: BigUint::one(),
        }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub(crate) fn from_biguints(num: BigUint, den: BigUint) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Self { num, den }
        } else {
            Self {
                num: num / &g,
                den: den / g,
            }
        }
    }

    /// `n(q)`
    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    /// `d(q)`
    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn floor(&self) -> BigUint {
        &self.num / &self.den
    }

    /// The value as a `u64` when it is an integer that fits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.is_integer() {
            self.num.to_u64()
        } else {
            None
        }
    }

    pub fn checked_sub(&self, other: &Rational) -> Option<Rational> {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        if lhs < rhs {
            None
        } else {
            Some(Self::from_biguints(lhs - rhs, &self.den * &other.den))
        }
    }

    pub fn mul_int(&self, k: &BigUint) -> Rational {
        Self::from_biguints(&self.num * k, self.den.clone())
    }

    pub fn div_int(&self, k: &BigUint) -> Rational {
        assert!(!k.is_zero(), "division by zero");
        Self::from_biguints(self.num.clone(), &self.den * k)
    }

    /// Exact quotient `self / other`; `other` must be nonzero.
    pub fn div(&self, other: &Rational) -> Rational {
        assert!(!other.is_zero(), "division by zero");
        Self::from_biguints(&self.num * &other.den, &self.den * &other.num)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let parse = |t: &str| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
        };
        Rational::try_new(parse(n)?, parse(d)?)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Rational {
    type Output = Rational;

    fn add(self, rhs: &Rational) -> Rational {
        if self.den == rhs.den {
            return Rational::from_biguints(&self.num + &rhs.num, self.den.clone());
        }
        Rational::from_biguints(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Add for Rational {
    type Output = Rational;

    fn add(self, rhs: Rational) -> Rational {
        &self + &rhs
    }
}

impl Mul for &Rational {
    type Output = Rational;

    fn mul(self, rhs: &Rational) -> Rational {
        Rational::from_biguints(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Mul for Rational {
    type Output = Rational;

    fn mul(self, rhs: Rational) -> Rational {
        &self * &rhs
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, q| &acc + &q)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::integer(n)
    }
}

/// `ν_p`; `Infinity` only for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

fn multiplicity(p: u64, n: &BigUint) -> i64 {
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

pub fn padic_valuation(p: u64, q: &Rational) -> Result<Valuation> {
    require_prime(p)?;
    if q.is_zero() {
        return Ok(Valuation::Infinity);
    }
    Ok(Valuation::Finite(
        multiplicity(p, q.numer()) - multiplicity(p, q.denom()),
    ))
}

/// `big mod m` for a machine modulus.
pub(crate) fn mod_u64(big: &BigUint, m: u64) -> u64 {
    (big % m).to_u64().expect("remainder fits")
}

/// Inverse of `a` modulo `m` by extended Euclid, when it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i128::from(m)) as u64)
}

/// Inverse of `a` modulo `m` for arbitrary-precision operands.
pub(crate) fn big_mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let m_int = BigInt::from(m.clone());
    let (mut old_r, mut r) = (BigInt::from(a % m), m_int.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
    }
    if !old_r.is_one() {
        return None;
    }
    Some(old_s.mod_floor(&m_int).magnitude().clone())
}
