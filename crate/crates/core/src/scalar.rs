//! Exact scalar fields.
//!
//! Two concrete fields are provided: [`Rational`] (ℚ, small-integer fast path with an
//! arbitrary-precision fallback) and [`Fp`] (prime field with a compile-time modulus).
//! Everything downstream is generic over [`Scalar`].

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
pub use num_traits::{One, Zero};
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which field a scalar type lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

/// Descriptor of a scalar field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    pub kind: FieldKind,
}

impl Field {
    pub fn rational() -> Self {
        Field { kind: FieldKind::Rational }
    }

    /// Prime field; `p` must be prime.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Field { kind: FieldKind::Prime(p) })
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Rational => 0,
            FieldKind::Prime(p) => p,
        }
    }
}

impl Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("division by zero while parsing {0:?}")]
    ZeroDenominator(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Trial-division primality test (moduli are small).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of an exact field.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn field() -> Field;
    fn from_i64(v: i64) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Parse the wire format: `"a"` or `"a/b"`.
    fn parse_wire(s: &str) -> Result<Self, ScalarError>;
    /// Wire format: `"a/b"` (or `"a"`) for ℚ, the decimal residue for 𝔽_p.
    fn to_wire(&self) -> String;

    fn add_ref(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn div_ref(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul_ref(&i))
    }
    fn from_frac(n: i64, d: i64) -> Option<Self> {
        Self::from_i64(d).inv().map(|i| Self::from_i64(n).mul_ref(&i))
    }
    fn characteristic() -> u64 {
        Self::field().characteristic()
    }
    fn pow_i(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Some(acc)
    }
}

fn split_frac(s: &str) -> Result<(BigInt, BigInt), ScalarError> {
    let t = s.trim();
    let (a, b) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(a).map_err(|_| ScalarError::Parse(s.to_string()))?;
    let d = BigInt::from_str(b).map_err(|_| ScalarError::Parse(s.to_string()))?;
    if d.is_zero() {
        return Err(ScalarError::ZeroDenominator(s.to_string()));
    }
    Ok((n, d))
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, positive denominator.
    Small(i64, i64),
    /// Only used when the reduced value does not fit `Small`.
    Big(BigRational),
}

/// Exact rational number. Values that fit in `i64/i64` avoid heap arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

impl Rational {
    pub fn new(n: i64, d: i64) -> Rational {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Rational {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        let b = self.to_big();
        (b.numer().clone(), b.denom().clone())
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(a, _) => *a < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128))),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(a, 1) => write!(f, "{a}"),
            Repr::Small(a, b) => write!(f, "{a}/{b}"),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        self.add_ref(&o)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        self.sub_ref(&o)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        self.mul_ref(&o)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self.0 {
            Repr::Small(a, b) => Rational::from_i128(-(a as i128), b as i128),
            Repr::Big(r) => Rational::from_big(-r),
        }
    }
}

impl Scalar for Rational {
    fn field() -> Field {
        Field::rational()
    }

    fn from_i64(v: i64) -> Self {
        Rational(Repr::Small(v, 1))
    }

    fn inv(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small(0, _) => None,
            Repr::Small(a, b) => Some(Rational::from_i128(*b as i128, *a as i128)),
            Repr::Big(r) => Some(Rational::from_big(r.recip())),
        }
    }

    fn parse_wire(s: &str) -> Result<Self, ScalarError> {
        let (n, d) = split_frac(s)?;
        Ok(Rational::from_big(BigRational::new(n, d)))
    }

    fn to_wire(&self) -> String {
        self.to_string()
    }

    fn add_ref(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    Rational::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }

    fn sub_ref(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d - c * b, b * d)
            }
            _ => Rational::from_big(self.to_big() - o.to_big()),
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rational::zero(),
            (Repr::Small(a, 1), Repr::Small(c, 1)) => Rational::from_i128(*a as i128 * *c as i128, 1),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// Residue modulo the prime `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp((v as i128).rem_euclid(P as i128) as u64)
    }

    pub fn residue(&self) -> u64 {
        self.0
    }

    fn pow_u(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn field() -> Field {
        Field { kind: FieldKind::Prime(P) }
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow_u(P - 2))
        }
    }

    fn parse_wire(s: &str) -> Result<Self, ScalarError> {
        let (n, d) = split_frac(s)?;
        let p = BigInt::from(P);
        let n = n.mod_floor(&p).to_u64().unwrap_or(0);
        let d = d.mod_floor(&p).to_u64().unwrap_or(0);
        Fp::<P>(n)
            .div_ref(&Fp(d))
            .ok_or_else(|| ScalarError::ZeroDenominator(s.to_string()))
    }

    fn to_wire(&self) -> String {
        self.0.to_string()
    }

    fn mul_ref(&self, o: &Self) -> Self {
        *self * *o
    }

    fn add_ref(&self, o: &Self) -> Self {
        *self + *o
    }

    fn sub_ref(&self, o: &Self) -> Self {
        *self - *o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_overflow_promotes_and_demotes() {
        let big = Rational::new(i64::MAX, 1);
        let sq = big.mul_ref(&big);
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = sq.mul_ref(&big.inv().unwrap());
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
    }

    #[test]
    fn rational_wire_roundtrip() {
        for s in ["0", "3", "-7/4", "1/3"] {
            let r = Rational::parse_wire(s).unwrap();
            assert_eq!(r.to_wire(), s);
        }
        assert_eq!(Rational::parse_wire("6/4").unwrap().to_wire(), "3/2");
        assert!(Rational::parse_wire("1/0").is_err());
    }

    #[test]
    fn fp_inverse_and_parse() {
        type F7 = Fp<7>;
        for v in 1..7 {
            let x = F7::from_i64(v);
            assert_eq!(x.mul_ref(&x.inv().unwrap()), F7::one());
        }
        assert_eq!(F7::parse_wire("1/2").unwrap(), F7::from_i64(4));
        assert_eq!(F7::from_i64(-1).to_wire(), "6");
    }

    #[test]
    fn primality() {
        assert!(is_prime(7) && is_prime(2) && !is_prime(1) && !is_prime(9));
        assert!(Field::prime(10).is_err());
    }
}
