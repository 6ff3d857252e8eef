//! Exact coefficient rings: the rationals, the integers and the integers
//! modulo `m`, all backed by arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A commutative unital coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Rationals,
    Integers,
    /// `Z/mZ` with `m >= 2`.
    IntegersMod(Arc<BigUint>),
}

impl RingSpec {
    pub fn integers_mod(m: impl Into<BigUint>) -> Result<Self> {
        let m = m.into();
        if m < BigUint::from(2u8) {
            return Err(Error::InvalidRing(format!("modulus {m} must be at least 2")));
        }
        Ok(RingSpec::IntegersMod(Arc::new(m)))
    }

    pub fn modulus(&self) -> Option<&BigUint> {
        match self {
            RingSpec::IntegersMod(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            RingSpec::Rationals => true,
            RingSpec::Integers => false,
            RingSpec::IntegersMod(m) => is_prime(m),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_int(self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_int(self, 1)
    }

    /// Parses the compact textual form used on the command line: `Q`, `Z`,
    /// `Z/5` or `Zmod5`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "Q" | "q" => Ok(RingSpec::Rationals),
            "Z" | "z" => Ok(RingSpec::Integers),
            _ => {
                let digits = t
                    .strip_prefix("Z/")
                    .or_else(|| t.strip_prefix("Zmod"))
                    .or_else(|| t.strip_prefix("z/"))
                    .ok_or_else(|| Error::InvalidRing(t.to_string()))?;
                let m = BigUint::from_str(digits).map_err(|_| Error::InvalidRing(t.to_string()))?;
                RingSpec::integers_mod(m)
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => f.write_str("Q"),
            RingSpec::Integers => f.write_str("Z"),
            RingSpec::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RingRepr {
    Name(String),
    Mod {
        #[serde(rename = "Zmod")]
        zmod: ModulusRepr,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ModulusRepr {
    Small(u64),
    Big(String),
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            RingSpec::Rationals => RingRepr::Name("Q".into()),
            RingSpec::Integers => RingRepr::Name("Z".into()),
            RingSpec::IntegersMod(m) => RingRepr::Mod {
                zmod: match m.to_u64() {
                    Some(small) => ModulusRepr::Small(small),
                    None => ModulusRepr::Big(m.to_string()),
                },
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match RingRepr::deserialize(deserializer)? {
            RingRepr::Name(name) => match name.as_str() {
                "Q" => Ok(RingSpec::Rationals),
                "Z" => Ok(RingSpec::Integers),
                other => Err(D::Error::custom(format!(
                    "unknown ring `{other}`, expected \"Q\", \"Z\" or {{\"Zmod\": m}}"
                ))),
            },
            RingRepr::Mod { zmod } => {
                let m = match zmod {
                    ModulusRepr::Small(m) => BigUint::from(m),
                    ModulusRepr::Big(s) => BigUint::from_str(&s).map_err(D::Error::custom)?,
                };
                RingSpec::integers_mod(m).map_err(D::Error::custom)
            }
        }
    }
}

/// Miller-Rabin with the first twelve prime bases. Deterministic below
/// 3.3 * 10^24, which covers every modulus that fits in a `u64`.
pub fn is_prime(n: &BigUint) -> bool {
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let two = BigUint::from(2u8);
    if *n < two {
        return false;
    }
    for &p in &BASES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u8;
    let shift = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> shift;
    'witness: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..shift {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An exact ring element in canonical form. The ring is part of the value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Integer(BigInt),
    Residue { value: BigUint, modulus: Arc<BigUint> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

fn reduce_mod(value: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    value
        .mod_floor(&m)
        .to_biguint()
        .expect("mod_floor by a positive modulus is non-negative")
}

impl Scalar {
    pub fn from_int(ring: &RingSpec, value: i64) -> Scalar {
        Scalar::from_bigint(ring, BigInt::from(value))
    }

    pub fn from_bigint(ring: &RingSpec, value: BigInt) -> Scalar {
        match ring {
            RingSpec::Rationals => Scalar::Rational(BigRational::from_integer(value)),
            RingSpec::Integers => Scalar::Integer(value),
            RingSpec::IntegersMod(m) => Scalar::Residue {
                value: reduce_mod(&value, m),
                modulus: m.clone(),
            },
        }
    }

    pub fn rational(numer: i64, denom: i64) -> Scalar {
        Scalar::Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn ring(&self) -> RingSpec {
        match self {
            Scalar::Rational(_) => RingSpec::Rationals,
            Scalar::Integer(_) => RingSpec::Integers,
            Scalar::Residue { modulus, .. } => RingSpec::IntegersMod(modulus.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Integer(n) => n.is_zero(),
            Scalar::Residue { value, .. } => value.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Integer(n) => n.is_one(),
            Scalar::Residue { value, .. } => value.is_one(),
        }
    }

    pub fn same_ring(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) | (Scalar::Integer(_), Scalar::Integer(_)) => true,
            (Scalar::Residue { modulus: a, .. }, Scalar::Residue { modulus: b, .. }) => {
                Arc::ptr_eq(a, b) || a == b
            }
            _ => false,
        }
    }

    pub fn arith(op: ArithOp, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(match op {
                ArithOp::Add => x + y,
                ArithOp::Sub => x - y,
                ArithOp::Mul => x * y,
            })),
            (Scalar::Integer(x), Scalar::Integer(y)) => Ok(Scalar::Integer(match op {
                ArithOp::Add => x + y,
                ArithOp::Sub => x - y,
                ArithOp::Mul => x * y,
            })),
            (
                Scalar::Residue { value: x, modulus },
                Scalar::Residue { value: y, modulus: other },
            ) if Arc::ptr_eq(modulus, other) || modulus == other => {
                let value = match op {
                    ArithOp::Add => (x + y) % modulus.as_ref(),
                    ArithOp::Sub => ((x + modulus.as_ref()) - y) % modulus.as_ref(),
                    ArithOp::Mul => (x * y) % modulus.as_ref(),
                };
                Ok(Scalar::Residue { value, modulus: modulus.clone() })
            }
            _ => Err(Error::RingMismatch(a.ring(), b.ring())),
        }
    }

    pub fn try_neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Integer(n) => Scalar::Integer(-n),
            Scalar::Residue { value, modulus } => {
                let value = if value.is_zero() {
                    BigUint::zero()
                } else {
                    modulus.as_ref() - value
                };
                Scalar::Residue { value, modulus: modulus.clone() }
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        let fail = || Error::NotInvertible(format!("{self} in {}", self.ring()));
        match self {
            Scalar::Rational(q) if !q.is_zero() => Ok(Scalar::Rational(q.recip())),
            Scalar::Rational(_) => Err(fail()),
            Scalar::Integer(n) if n.abs().is_one() => Ok(Scalar::Integer(n.clone())),
            Scalar::Integer(_) => Err(fail()),
            Scalar::Residue { value, modulus } => {
                let m = BigInt::from_biguint(Sign::Plus, modulus.as_ref().clone());
                let v = BigInt::from_biguint(Sign::Plus, value.clone());
                let egcd = v.extended_gcd(&m);
                if !egcd.gcd.is_one() {
                    return Err(fail());
                }
                Ok(Scalar::Residue {
                    value: reduce_mod(&egcd.x, modulus),
                    modulus: modulus.clone(),
                })
            }
        }
    }

    /// Parses `[+-]digits` (or `[+-]digits/digits` over the rationals).
    pub fn parse(ring: &RingSpec, text: &str) -> Result<Scalar> {
        let parse_err = || Error::ParseError { ring: ring.clone(), text: text.to_string() };
        let (negative, body) = match text.as_bytes().first() {
            Some(b'-') => (true, &text[1..]),
            Some(b'+') => (false, &text[1..]),
            _ => (false, text),
        };
        let digits = |s: &str| -> Result<BigInt> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_err());
            }
            BigInt::from_str(s).map_err(|_| parse_err())
        };
        let (numer, denom) = match body.split_once('/') {
            Some((n, d)) if *ring == RingSpec::Rationals => (digits(n)?, Some(digits(d)?)),
            Some(_) => return Err(parse_err()),
            None => (digits(body)?, None),
        };
        let numer = if negative { -numer } else { numer };
        match denom {
            Some(d) if d.is_zero() => Err(Error::ZeroDenominator(text.to_string())),
            Some(d) => Ok(Scalar::Rational(BigRational::new(numer, d))),
            None => Ok(Scalar::from_bigint(ring, numer)),
        }
    }

    /// Uniform small value: integers in `-4..=4`, over the rationals also
    /// divided by a denominator in `1..=3`.
    pub fn random_small<R: Rng + ?Sized>(ring: &RingSpec, rng: &mut R) -> Scalar {
        let numer: i64 = rng.gen_range(-4..=4);
        match ring {
            RingSpec::Rationals => Scalar::rational(numer, rng.gen_range(1..=3)),
            _ => Scalar::from_int(ring, numer),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Integer(n) => write!(f, "{n}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator impls are for internal use where operands are already known to
// share a ring; they panic on mismatch.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::arith($op, self, rhs).expect("scalar operands from different rings")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, ArithOp::Add);
forward_binop!(Sub, sub, ArithOp::Sub);
forward_binop!(Mul, mul, ArithOp::Mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.try_neg()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.try_neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(m: u32) -> RingSpec {
        RingSpec::integers_mod(m).unwrap()
    }

    #[test]
    fn rational_addition() {
        let q = RingSpec::Rationals;
        let a = Scalar::parse(&q, "1/2").unwrap();
        let b = Scalar::parse(&q, "1/3").unwrap();
        assert_eq!((&a + &b).to_string(), "5/6");
    }

    #[test]
    fn inverses() {
        let z5 = zmod(5);
        assert_eq!(Scalar::from_int(&z5, 2).inv().unwrap(), Scalar::from_int(&z5, 3));
        assert!(matches!(
            Scalar::from_int(&RingSpec::Integers, 2).inv(),
            Err(Error::NotInvertible(_))
        ));
        assert_eq!(
            Scalar::from_int(&RingSpec::Integers, -1).inv().unwrap(),
            Scalar::from_int(&RingSpec::Integers, -1)
        );
        assert!(Scalar::from_int(&zmod(6), 4).inv().is_err());
        assert!(RingSpec::Rationals.zero().inv().is_err());
    }

    #[test]
    fn parsing() {
        let q = RingSpec::Rationals;
        assert!(matches!(Scalar::parse(&q, "-2/-4"), Err(Error::ParseError { .. })));
        assert!(matches!(Scalar::parse(&q, "\u{2212}2/4"), Err(Error::ParseError { .. })));
        assert_eq!(Scalar::parse(&q, "2/4").unwrap(), Scalar::rational(1, 2));
        assert_eq!(Scalar::parse(&q, "-6/4").unwrap().to_string(), "-3/2");
        assert_eq!(Scalar::parse(&q, "+7").unwrap().to_string(), "7");
        assert!(matches!(Scalar::parse(&q, "1/0"), Err(Error::ZeroDenominator(_))));
        assert_eq!(Scalar::parse(&zmod(7), "10").unwrap().to_string(), "3");
        assert_eq!(Scalar::parse(&zmod(7), "-1").unwrap().to_string(), "6");
        assert!(Scalar::parse(&zmod(7), "1/2").is_err());
        assert!(Scalar::parse(&RingSpec::Integers, "1/2").is_err());
        assert!(Scalar::parse(&RingSpec::Integers, "").is_err());
        assert!(Scalar::parse(&RingSpec::Integers, "-").is_err());
        assert!(Scalar::parse(&RingSpec::Integers, "1 ").is_err());
    }

    #[test]
    fn ring_mismatch() {
        let a = Scalar::from_int(&RingSpec::Integers, 1);
        let b = Scalar::from_int(&zmod(3), 1);
        assert!(matches!(Scalar::arith(ArithOp::Add, &a, &b), Err(Error::RingMismatch(..))));
        let c = Scalar::from_int(&zmod(5), 1);
        assert!(Scalar::arith(ArithOp::Mul, &b, &c).is_err());
    }

    #[test]
    fn residues_are_normalised() {
        let z5 = zmod(5);
        let a = Scalar::from_int(&z5, 3);
        let b = Scalar::from_int(&z5, 4);
        assert_eq!((&a + &b).to_string(), "2");
        assert_eq!((&a - &b).to_string(), "4");
        assert_eq!((-&z5.zero()).to_string(), "0");
        assert_eq!(Scalar::from_int(&z5, -12).to_string(), "3");
    }

    #[test]
    fn ring_spec_json() {
        let z5 = zmod(5);
        assert_eq!(serde_json::to_string(&z5).unwrap(), r#"{"Zmod":5}"#);
        assert_eq!(serde_json::to_string(&RingSpec::Rationals).unwrap(), r#""Q""#);
        let back: RingSpec = serde_json::from_str(r#"{"Zmod": 5}"#).unwrap();
        assert_eq!(back, z5);
        let z: RingSpec = serde_json::from_str(r#""Z""#).unwrap();
        assert_eq!(z, RingSpec::Integers);
        assert!(serde_json::from_str::<RingSpec>(r#"{"Zmod": 1}"#).is_err());
        assert!(serde_json::from_str::<RingSpec>(r#""R""#).is_err());
        assert_eq!(RingSpec::parse("Z/7").unwrap(), zmod(7));
        assert!(RingSpec::parse("Z/1").is_err());
    }

    #[test]
    fn field_flag() {
        assert!(RingSpec::Rationals.is_field());
        assert!(!RingSpec::Integers.is_field());
        assert!(zmod(5).is_field());
        assert!(!zmod(4).is_field());
        assert!(zmod(2).is_field());
        assert!(zmod(1_000_003).is_field());
        assert!(!zmod(561).is_field()); // Carmichael
    }
}
