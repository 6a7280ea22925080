//! Exact scalars: arbitrary-precision rationals and prime-field residues.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::AlgebraError;

/// The base field a structure lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// The rationals.
    Rational,
    /// GF(p) for an odd prime `p`.
    Prime(u64),
}

impl Field {
    /// GF(p), rejecting non-primes and p = 2.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if p == 2 {
            return Err(AlgebraError::EvenCharacteristic);
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime(Fp::new(n.rem_euclid(p as i64) as u64, p)),
        }
    }

    /// `num/den` in this field. Panics on a zero denominator.
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            Field::Rational => Scalar::Rational(BigRational::new(num.into(), den.into())),
            Field::Prime(_) => self
                .from_i64(num)
                .mul(&self.from_i64(den).inverse().expect("denominator divisible by p")),
        }
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// True when the integer `n` is invertible in this field.
    pub fn is_unit_integer(self, n: u64) -> bool {
        match self {
            Field::Rational => n != 0,
            Field::Prime(p) => !n.is_multiple_of(p),
        }
    }

    /// Parse a scalar literal: `-?digits(/digits)?` over Q, `-?digits` over GF(p).
    pub fn parse(self, text: &str) -> Result<Scalar, AlgebraError> {
        let bad = || AlgebraError::BadScalar(text.to_string());
        let t = text.trim();
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t),
        };
        let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        if !digits(num) || !den.is_none_or(digits) {
            return Err(bad());
        }
        match self {
            Field::Rational => {
                let mut n = BigInt::from_str(num).map_err(|_| bad())?;
                if sign < 0 {
                    n = -n;
                }
                let d = match den {
                    Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return Err(AlgebraError::ZeroDenominator(text.to_string()));
                }
                Ok(Scalar::Rational(BigRational::new(n, d)))
            }
            Field::Prime(p) => {
                let residue = |s: &str| -> Result<u64, AlgebraError> {
                    let n = BigInt::from_str(s).map_err(|_| bad())?;
                    Ok((n % BigInt::from(p)).to_u64().expect("residue fits u64"))
                };
                let r = residue(num)?;
                let r = if sign < 0 { (p - r) % p } else { r };
                let value = Scalar::Prime(Fp::new(r, p));
                match den {
                    None => Ok(value),
                    Some(d) => {
                        let d = Scalar::Prime(Fp::new(residue(d)?, p));
                        let inv = d.inverse().ok_or_else(|| AlgebraError::ZeroDenominator(text.to_string()))?;
                        Ok(value.mul(&inv))
                    }
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn pow(self, mut e: u64) -> Fp {
        let p = self.modulus;
        let mut base = self.value;
        let mut acc = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mulmod(acc, base, p);
            }
            base = Self::mulmod(base, base, p);
            e >>= 1;
        }
        Fp::new(acc, p)
    }
}

/// An exact field element.
///
/// Arithmetic between scalars of different fields is a programming error and
/// panics; every bundle carries exactly one field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(Fp),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime(x) => Field::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime(x) => x.value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime(x) => Scalar::Prime(x.pow(x.modulus - 2)),
        })
    }

    /// Canonical text form: `3`, `-1/2`, or a residue in `[0,p)`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    /// The residue of a prime-field scalar.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Prime(x) => Some(x.value),
            Scalar::Rational(_) => None,
        }
    }

    /// Integer value when the scalar is an integer rational.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Prime(x) => Some(x.value as i64),
        }
    }

    fn binary(&self, rhs: &Scalar, op: impl Fn(u64, u64, u64) -> u64, q: impl Fn(&BigRational, &BigRational) -> BigRational) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(q(a, b)),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => {
                Scalar::Prime(Fp::new(op(a.value, b.value, a.modulus), a.modulus))
            }
            _ => panic!("scalar field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b, p| (a + b) % p, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b, p| (a + p - b) % p, |a, b| a - b)
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, Fp::mulmod, |a, b| a * b)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime(x) => Scalar::Prime(Fp::new(x.modulus - x.value, x.modulus)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime(x) => write!(f, "{}", x.value),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Some(a.cmp(b)),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => {
                Some(a.value.cmp(&b.value))
            }
            _ => None,
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(self, rhs)
            }
        }
        impl $assign_tr<&Scalar> for Scalar {
            fn $assign(&mut self, rhs: &Scalar) {
                *self = Scalar::$method(self, rhs);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces_fractions() {
        let q = Field::Rational;
        assert_eq!(q.parse("2/4").unwrap(), q.ratio(1, 2));
        assert_eq!(q.parse("2/4").unwrap().to_string(), "1/2");
        assert_eq!(q.parse("-3").unwrap().to_string(), "-3");
        assert_eq!(q.parse("-6/-1").ok(), None);
        assert_eq!(q.parse("6/-3").ok(), None);
        assert_eq!(q.parse("-6/4").unwrap().to_string(), "-3/2");
    }

    #[test]
    fn parse_errors() {
        let q = Field::Rational;
        assert!(matches!(q.parse("1/0"), Err(AlgebraError::ZeroDenominator(_))));
        assert!(matches!(q.parse("abc"), Err(AlgebraError::BadScalar(_))));
        assert!(matches!(q.parse(""), Err(AlgebraError::BadScalar(_))));
        assert!(matches!(q.parse("1.5"), Err(AlgebraError::BadScalar(_))));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse("1/2").unwrap().residue(), Some(3));
        assert!(matches!(f5.parse("1/5"), Err(AlgebraError::ZeroDenominator(_))));
    }

    #[test]
    fn prime_field_reduction_is_silent() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse("7").unwrap().residue(), Some(2));
        assert_eq!(f5.parse("-1").unwrap().residue(), Some(4));
        assert_eq!(f5.parse("-10").unwrap().residue(), Some(0));
        assert_eq!(f5.parse("123456789012345678901234567890").unwrap().residue(), Some(0));
    }

    #[test]
    fn field_constructor_rejects_non_primes() {
        assert!(matches!(Field::prime(4), Err(AlgebraError::NotPrime(4))));
        assert!(matches!(Field::prime(1), Err(AlgebraError::NotPrime(1))));
        assert!(matches!(Field::prime(2), Err(AlgebraError::EvenCharacteristic)));
        assert!(Field::prime(7).is_ok());
    }

    #[test]
    fn prime_inverse() {
        let f7 = Field::prime(7).unwrap();
        for n in 1..7 {
            let x = f7.from_i64(n);
            assert!(x.mul(&x.inverse().unwrap()).is_one());
        }
        assert!(f7.zero().inverse().is_none());
        assert_eq!(f7.ratio(1, 2).residue(), Some(4));
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = Field::Rational.one().add(&Field::Prime(3).one());
    }
}
