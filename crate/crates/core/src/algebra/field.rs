//! Coefficient fields: prime fields `F_p` with a runtime modulus, and the rationals.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default characteristic for all computations.
pub const DEFAULT_PRIME: u32 = 32003;

/// Largest modulus accepted; products of two residues must fit in a `u64`.
pub const MAX_PRIME: u32 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Field {
    /// `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn modulus(&self) -> Option<u32> {
        match self {
            Field::Prime(p) => Some(*p),
            Field::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// The residue `v mod p` for prime fields.
    pub fn from_u64(&self, v: u64) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Mod {
                value: (v % p as u64) as u32,
                modulus: p,
            },
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// `num / den`; fails in `F_p` when `p | den`.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match *self {
            Field::Prime(p) => {
                let pm = BigInt::from(p);
                let n = mod_bigint(num, &pm);
                let d = mod_bigint(den, &pm);
                let d = Scalar::Mod { value: d, modulus: p };
                let inv = d.inv().ok_or(Error::DivisionByZero)?;
                Ok(Scalar::Mod { value: n, modulus: p }.mul(&inv))
            }
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rational => f.write_str("Q"),
        }
    }
}

fn mod_bigint(v: &BigInt, p: &BigInt) -> u32 {
    let r = ((v % p) + p) % p;
    r.to_u32().expect("residue fits in u32")
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `a^e mod p`.
pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// An exact field element. Arithmetic between elements of different fields panics;
/// use the `checked_*` methods to get an error instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { value: u32, modulus: u32 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
            Scalar::Rat(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    /// Residue for prime-field scalars.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }

    /// Reduction into `F_p`; `None` if the denominator vanishes mod `p`.
    pub fn reduce_mod(&self, p: u32) -> Option<Scalar> {
        match self {
            Scalar::Mod { value, modulus } if *modulus == p => Some(Scalar::Mod {
                value: *value,
                modulus: p,
            }),
            Scalar::Mod { .. } => None,
            Scalar::Rat(r) => Field::Prime(p).from_fraction(r.numer(), r.denom()).ok(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: inv_mod(*value as u64, *modulus as u64) as u32,
                modulus: *modulus,
            },
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
        })
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => Ok(Scalar::Mod {
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                modulus: *p,
            }),
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a + b)),
            _ => Err(Error::FieldMismatch(self.field(), rhs.field())),
        }
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => Ok(Scalar::Mod {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                modulus: *p,
            }),
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a * b)),
            _ => Err(Error::FieldMismatch(self.field(), rhs.field())),
        }
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.checked_add(&-rhs)
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Symmetric integer representative in `(-p/2, p/2]` for `F_p`, the value itself
    /// for integral rationals.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Mod { value, modulus } => {
                let v = *value as i64;
                let p = *modulus as i64;
                Some(if v > p / 2 { v - p } else { v })
            }
            Scalar::Rat(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rat(_) => None,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Mod { .. } => self.to_i64().is_some_and(|v| v < 0),
            Scalar::Rat(r) => r.is_negative(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { .. } => write!(f, "{}", self.to_i64().unwrap_or_default()),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Field::prime(32003).is_ok());
        assert!(Field::prime(2).is_ok());
        assert_eq!(Field::prime(32001), Err(Error::NotPrime(32001)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn modular_inverse_roundtrip() {
        let f = Field::Prime(32003);
        for v in [1i64, 2, 17, 32002, -5] {
            let a = f.from_i64(v);
            assert!((&a * &a.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn symmetric_representative() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-1).to_i64(), Some(-1));
        assert_eq!(f.from_i64(3).to_i64(), Some(3));
        assert_eq!(f.from_i64(4).to_i64(), Some(-3));
    }

    #[test]
    fn fractions_reduce() {
        let f = Field::Prime(7);
        let half = f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert!((&half * &f.from_i64(2)).is_one());
        assert!(f.from_fraction(&BigInt::from(1), &BigInt::from(14)).is_err());
        let q = Field::Rational
            .from_fraction(&BigInt::from(3), &BigInt::from(6))
            .unwrap();
        assert_eq!(q.reduce_mod(7), Some(half));
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = Field::Prime(7).one();
        let b = Field::Rational.one();
        assert!(a.checked_add(&b).is_err());
    }
}
