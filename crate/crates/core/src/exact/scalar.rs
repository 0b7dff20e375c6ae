//! Exact scalar fields: arbitrary-precision rationals and a fixed prime field.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Arithmetic mode shared by every scalar of one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    ExactRational,
    PrimeField,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::ExactRational => f.write_str("rational"),
            Mode::PrimeField => f.write_str("prime-field"),
        }
    }
}

/// An exact field element.
///
/// The ordering is only used to keep factor lists canonical; it carries no
/// algebraic meaning in the prime field.
pub trait Scalar:
    Sized
    + Clone
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Canonical reduction of a rational. Fails in the prime field when the
    /// denominator vanishes modulo the prime.
    fn from_rational(r: &Rational) -> Result<Self, ExactError>;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self, ExactError>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.clone() * &other.inv()?)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents invert.
    fn powi(&self, e: i64) -> Result<Self, ExactError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Whether `self` should replace `current` as the reported worst
    /// discrepancy. Rationals compare by absolute value; the prime field has
    /// no size, so the first nonzero value is kept.
    fn dominates(&self, current: &Self) -> bool;

    /// String form used in every serialized artifact.
    fn to_wire(&self) -> String;
}

/// Reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ExactError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

/// Integers print without a denominator; see [`Scalar::to_wire`] for the
/// serialized `p/q` form.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExactError::Parse(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rational::new(p, q)
            }
            None => {
                let p: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational::from_integer(p))
            }
        }
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_wire())
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The prime used by the fast verification mode, 2^61 - 1.
pub const PRIME: u64 = (1u64 << 61) - 1;

/// Residue modulo [`PRIME`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % PRIME)
    }

    pub fn residue(self) -> u64 {
        self.0
    }

    fn reduce_bigint(v: &BigInt) -> u64 {
        let p = BigInt::from(PRIME);
        v.mod_floor(&p).to_u64().expect("residue fits in u64")
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let s = self.0 + o.0;
        Fp(if s >= PRIME { s - PRIME } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + PRIME - o.0 })
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        Fp(((self.0 as u128 * o.0 as u128) % PRIME as u128) as u64)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp(if self.0 == 0 { 0 } else { PRIME - self.0 })
    }
}

impl<'a> Add<&'a Fp> for Fp {
    type Output = Fp;
    fn add(self, o: &'a Fp) -> Fp {
        self + *o
    }
}

impl<'a> Sub<&'a Fp> for Fp {
    type Output = Fp;
    fn sub(self, o: &'a Fp) -> Fp {
        self - *o
    }
}

impl<'a> Mul<&'a Fp> for Fp {
    type Output = Fp;
    fn mul(self, o: &'a Fp) -> Fp {
        self * *o
    }
}

impl Scalar for Fp {
    const MODE: Mode = Mode::PrimeField;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(PRIME as i64) as u64)
    }
    fn from_rational(r: &Rational) -> Result<Self, ExactError> {
        let n = Fp(Fp::reduce_bigint(r.numer()));
        let d = Fp(Fp::reduce_bigint(r.denom()));
        if d.0 == 0 {
            return Err(ExactError::ModularDivisionByZero);
        }
        Ok(n * d.inv()?)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Result<Self, ExactError> {
        if self.0 == 0 {
            return Err(ExactError::ModularDivisionByZero);
        }
        // Fermat: a^(p-2)
        Ok(self.pow(PRIME - 2))
    }
    fn dominates(&self, current: &Self) -> bool {
        current.is_zero() && !self.is_zero()
    }
    fn to_wire(&self) -> String {
        self.to_string()
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                Rational($tr::$m(self.0, o.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &'a Rational) -> Rational {
                Rational($tr::$m(self.0, &o.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::ExactRational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }
    fn from_rational(r: &Rational) -> Result<Self, ExactError> {
        Ok(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Result<Self, ExactError> {
        if self.0.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }
    fn dominates(&self, current: &Self) -> bool {
        self.0.abs() > current.0.abs()
    }
    fn to_wire(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_wire_format() {
        let r: Rational = "6/-4".parse().unwrap();
        assert_eq!(r.to_wire(), "-3/2");
        assert_eq!(Rational::from_i64(5).to_wire(), "5/1");
        assert_eq!(Rational::zero().to_wire(), "0/1");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let a = Fp::from_i64(-7);
        assert_eq!(a * a.inv().unwrap(), Fp::one());
        assert!(Fp::zero().inv().is_err());
        let half = Fp::from_rational(&"1/2".parse().unwrap()).unwrap();
        assert_eq!(half + half, Fp::one());
    }

    #[test]
    fn reduction_of_multiple_of_prime_fails() {
        let r = Rational::new(1, BigInt::from(PRIME) * 3).unwrap();
        assert_eq!(Fp::from_rational(&r), Err(ExactError::ModularDivisionByZero));
    }

    #[test]
    fn powi_negative() {
        let two = Rational::from_i64(2);
        assert_eq!(two.powi(-3).unwrap().to_wire(), "1/8");
    }
}
