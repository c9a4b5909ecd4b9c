//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.
//!
//! Every scalar carries enough information to identify its field, so a
//! [`Matrix`](crate::linalg::Matrix) or [`Configuration`](crate::model::Configuration)
//! can check that all of its entries agree. Mixing fields inside an arithmetic
//! operation is a logic error and panics.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive). Products of two residues fit in `u64`.
const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field of order `p`; fails unless `p` is a prime below 2^31.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> FieldScalar {
        match self {
            Field::Rational => FieldScalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldScalar::Prime {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<FieldScalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.from_i64(num) / &self.from_i64(den))
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    /// All elements of a finite field in increasing residue order.
    pub fn elements(self) -> Option<Vec<FieldScalar>> {
        self.order()
            .map(|p| (0..p).map(|v| FieldScalar::Prime { value: v, modulus: p }).collect())
    }

    /// Parses `"a"`, `"-a"` or `"a/b"`. Over a prime field the value is reduced.
    pub fn parse(self, s: &str) -> Result<FieldScalar> {
        let bad = || Error::ParseScalar(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (t, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(FieldScalar::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let modp = |x: &BigInt| {
                    x.mod_floor(&BigInt::from(p))
                        .to_u64()
                        .expect("residue fits in u64")
                };
                let n = FieldScalar::Prime { value: modp(&num), modulus: p };
                let d = FieldScalar::Prime { value: modp(&den), modulus: p };
                d.inv().map(|di| &n * &di).ok_or(Error::DivisionByZero)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// invariant maintained by `BigRational`); residues satisfy `value < modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl FieldScalar {
    pub fn field(&self) -> Field {
        match self {
            FieldScalar::Rational(_) => Field::Rational,
            FieldScalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_one(),
            FieldScalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<FieldScalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldScalar::Rational(r) => FieldScalar::Rational(r.recip()),
            FieldScalar::Prime { value, modulus } => FieldScalar::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldScalar::Rational(r) => Some(r),
            FieldScalar::Prime { .. } => None,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldScalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl<'a> Add<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a + b),
            (
                FieldScalar::Prime { value: a, modulus: p },
                FieldScalar::Prime { value: b, modulus: q },
            ) if p == q => FieldScalar::Prime { value: (a + b) % p, modulus: *p },
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a - b),
            (
                FieldScalar::Prime { value: a, modulus: p },
                FieldScalar::Prime { value: b, modulus: q },
            ) if p == q => FieldScalar::Prime { value: (a + p - b) % p, modulus: *p },
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a * b),
            (
                FieldScalar::Prime { value: a, modulus: p },
                FieldScalar::Prime { value: b, modulus: q },
            ) if p == q => FieldScalar::Prime { value: a * b % p, modulus: *p },
            _ => mismatch(),
        }
    }
}

impl<'a> Div<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &FieldScalar) -> FieldScalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Rational(a) => FieldScalar::Rational(-a),
            FieldScalar::Prime { value, modulus } => FieldScalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_display() {
        let q = Field::Rational;
        assert_eq!(q.parse("6/4").unwrap().to_string(), "3/2");
        assert_eq!(q.parse("-3").unwrap().to_string(), "-3");
        assert_eq!(q.parse("4/-2").unwrap().to_string(), "-2");
        assert_eq!(q.parse("0/5").unwrap(), q.zero());
        assert_eq!(q.parse("1/0"), Err(Error::DivisionByZero));
        assert!(matches!(q.parse("x"), Err(Error::ParseScalar(_))));
    }

    #[test]
    fn prime_parse_reduces() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.parse("-1").unwrap().to_string(), "6");
        // 1/2 = 4 mod 7
        assert_eq!(f.parse("1/2").unwrap().to_string(), "4");
        assert_eq!(f.parse("3/7"), Err(Error::DivisionByZero));
    }

    #[test]
    fn prime_validation() {
        assert_eq!(Field::prime(4), Err(Error::NotPrime(4)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(2_147_483_647).is_ok());
        assert_eq!(Field::prime(2_147_483_659), Err(Error::ModulusTooLarge(2_147_483_659)));
    }

    #[test]
    fn prime_inverses() {
        let f = Field::prime(11).unwrap();
        for x in f.elements().unwrap().into_iter().skip(1) {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = Field::Rational.one() + Field::Prime(5).one();
    }
}
