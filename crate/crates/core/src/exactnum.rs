//! Exact scalars: rationals and prime fields, plus the [`Ring`] / [`Field`]
//! traits that the rest of the crate is generic over.
//!
//! Elements carry whatever context they need (a prime field element knows its
//! modulus, a quotient-ring element knows its ring), so constants are produced
//! from an existing element with [`Ring::zero_like`] and friends.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("{0} is not an odd prime")]
    BadModulus(u64),
    #[error("characteristic {0} is not allowed here (needs {1} invertible)")]
    Characteristic(u64, u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// A commutative ring with unit whose elements carry their own context.
///
/// Binary operations panic if the operands live in different rings; the
/// checked variants live on the concrete types.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse if the element is a unit.
    fn try_inverse(&self) -> Option<Self>;
    /// Characteristic of the ring (0 for characteristic zero).
    fn characteristic(&self) -> u64;
    /// True when the ring is known to be a field.
    fn is_field(&self) -> bool;

    fn is_unit(&self) -> bool {
        self.try_inverse().is_some()
    }

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    /// Image of an arbitrary integer.
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        if let Some(small) = n.to_i64() {
            return self.from_i64_like(small);
        }
        let base = self.from_i64_like(1 << 32);
        let mut acc = self.zero_like();
        for digit in n.magnitude().to_u32_digits().iter().rev() {
            acc = acc.mul(&base).add(&self.from_i64_like(*digit as i64));
        }
        if bigint_is_negative(n) {
            acc.neg()
        } else {
            acc
        }
    }

    /// Image of `num/den`, failing when `den` is not invertible.
    fn from_ratio_in(&self, num: &BigInt, den: &BigInt) -> Result<Self, ArithError> {
        let d = self.from_bigint_like(den);
        let inv = d.try_inverse().ok_or(ArithError::NotInvertible)?;
        Ok(self.from_bigint_like(num).mul(&inv))
    }

    /// Whether `elems` generate the unit ideal. Over a field this means some
    /// element is non-zero.
    fn ideal_is_unit(elems: &[Self]) -> bool {
        elems.iter().any(|e| e.is_unit())
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self / n` for a small integer `n`, which must be a unit.
    fn div_int(&self, n: i64) -> Result<Self, ArithError> {
        let inv = self
            .from_i64_like(n)
            .try_inverse()
            .ok_or(ArithError::Characteristic(self.characteristic(), n as u64))?;
        Ok(self.mul(&inv))
    }
}

/// A field. Exact, hashable, and able to absorb rational constants.
pub trait Field: Ring + Eq + Hash {
    fn inv(&self) -> Result<Self, ArithError>;
    fn from_ratio_like(&self, num: &BigInt, den: &BigInt) -> Result<Self, ArithError>;

    fn div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&rhs.inv()?))
    }
}

/// Arbitrary-precision rational in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self, ArithError> {
        if den == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        if rhs.0.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ArithError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                Rational::from_bigints(n, d)
            }
            None => Ok(Rational(BigRational::from_integer(
                BigInt::from_str(s).map_err(|_| bad())?,
            ))),
        }
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Rational::integer(n)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_field(&self) -> bool {
        true
    }
}

impl Field for Rational {
    fn inv(&self) -> Result<Self, ArithError> {
        self.try_inverse().ok_or(ArithError::DivisionByZero)
    }
    fn from_ratio_like(&self, num: &BigInt, den: &BigInt) -> Result<Self, ArithError> {
        Rational::from_bigints(num.clone(), den.clone())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field of order `modulus`; `value` is in `[0, modulus)`.
///
/// The modulus must be an odd prime below 2^31.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Result<Self, ArithError> {
        Self::check_modulus(modulus)?;
        Ok(Self::reduce(value, modulus as u32))
    }

    pub fn check_modulus(modulus: u64) -> Result<(), ArithError> {
        if modulus == 2 || modulus >= (1 << 31) || !is_prime(modulus) {
            return Err(ArithError::BadModulus(modulus));
        }
        Ok(())
    }

    /// Unchecked constructor; `modulus` must already be validated.
    pub(crate) fn reduce(value: i64, modulus: u32) -> Self {
        let v = value.rem_euclid(modulus as i64) as u32;
        Fp { value: v, modulus }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn same(&self, rhs: &Self) {
        assert_eq!(
            self.modulus, rhs.modulus,
            "prime field elements with different moduli"
        );
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ArithError> {
        if self.modulus != rhs.modulus {
            return Err(ArithError::ModulusMismatch(self.modulus as u64, rhs.modulus as u64));
        }
        Ok(self.add(rhs))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        if self.modulus != rhs.modulus {
            return Err(ArithError::ModulusMismatch(self.modulus as u64, rhs.modulus as u64));
        }
        Ok(self.mul(rhs))
    }

    /// Square root if one exists (brute force; fine for the small primes used here).
    pub fn sqrt(&self) -> Option<Self> {
        let p = self.modulus;
        (0..p)
            .map(|x| Fp { value: x, modulus: p })
            .find(|x| Ring::mul(x, x) == *self)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1, modulus: self.modulus }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Fp::reduce(n, self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn add(&self, rhs: &Self) -> Self {
        self.same(rhs);
        let s = self.value as u64 + rhs.value as u64;
        let m = self.modulus as u64;
        Fp { value: (if s >= m { s - m } else { s }) as u32, modulus: self.modulus }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.same(rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + (self.modulus - rhs.value)
        };
        Fp { value: v, modulus: self.modulus }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.same(rhs);
        let v = (self.value as u64 * rhs.value as u64) % self.modulus as u64;
        Fp { value: v as u32, modulus: self.modulus }
    }
    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Fp { value: self.modulus - self.value, modulus: self.modulus }
        }
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on (value, modulus)
        let (mut r0, mut r1) = (self.modulus as i64, self.value as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp::reduce(t0, self.modulus))
    }
    fn characteristic(&self) -> u64 {
        self.modulus as u64
    }
    fn is_field(&self) -> bool {
        true
    }
}

impl Field for Fp {
    fn inv(&self) -> Result<Self, ArithError> {
        self.try_inverse().ok_or(ArithError::DivisionByZero)
    }
    fn from_ratio_like(&self, num: &BigInt, den: &BigInt) -> Result<Self, ArithError> {
        let p = BigInt::from(self.modulus);
        let reduce = |x: &BigInt| -> u32 {
            let r = x.mod_floor(&p);
            r.to_u32().expect("residue fits in u32")
        };
        let n = Fp { value: reduce(num), modulus: self.modulus };
        let d = Fp { value: reduce(den), modulus: self.modulus };
        n.div(&d)
    }
}

/// Parses a rational literal ("3/2", "-7") into any field, using `like` for context.
pub fn parse_scalar<K: Field>(like: &K, text: &str) -> Result<K, ArithError> {
    let q: Rational = text.parse()?;
    like.from_ratio_like(q.numer(), q.denom())
}

pub(crate) fn bigint_is_negative(x: &BigInt) -> bool {
    x.sign() == Sign::Minus
}

/// Fails unless `n` is invertible in the ring of `like`.
pub fn require_invertible<R: Ring>(like: &R, n: i64) -> Result<(), ArithError> {
    if like.from_i64_like(n).is_unit() {
        Ok(())
    } else {
        Err(ArithError::Characteristic(like.characteristic(), n as u64))
    }
}
