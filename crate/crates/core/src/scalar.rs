//! Exact field arithmetic over Q and prime fields F_p.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must fit in 32 bits)")]
    ModulusTooLarge(u64),
    #[error("cannot parse `{0}` as a field element")]
    Parse(String),
}

/// Which field the coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
}

impl FieldKind {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p > u32::MAX as u64 {
            return Err(ScalarError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldKind::PrimeField(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldKind::Rationals => rational_from_i128(v as i128, 1),
            FieldKind::PrimeField(p) => Scalar(Repr::Modular { value: v.rem_euclid(p as i64) as u64, modulus: p }),
        }
    }

    pub fn from_rational(self, r: &BigRational) -> Result<Scalar, ScalarError> {
        match self {
            FieldKind::Rationals => Ok(rational_from_big(r.clone())),
            FieldKind::PrimeField(p) => {
                let reduce = |b: &BigInt| -> u64 {
                    let m = BigInt::from(p);
                    let r = ((b % &m) + &m) % &m;
                    r.to_u64().expect("residue fits")
                };
                let num = Scalar(Repr::Modular { value: reduce(r.numer()), modulus: p });
                let den = Scalar(Repr::Modular { value: reduce(r.denom()), modulus: p });
                num.div(&den)
            }
        }
    }

    /// Parses a decimal integer or an `a/b` fraction.
    pub fn parse(self, text: &str) -> Result<Scalar, ScalarError> {
        let r = parse_rational(text)?;
        self.from_rational(&r)
    }

    pub fn label(self) -> String {
        match self {
            FieldKind::Rationals => "Q".to_string(),
            FieldKind::PrimeField(p) => format!("Fp:{p}"),
        }
    }
}

fn parse_rational(text: &str) -> Result<BigRational, ScalarError> {
    let t = text.trim();
    let err = || ScalarError::Parse(text.to_string());
    let int = |s: &str| -> Result<BigInt, ScalarError> {
        let s = s.trim();
        if s.is_empty() || !s.trim_start_matches(['-', '+']).chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        s.parse::<BigInt>().map_err(|_| err())
    };
    match t.split_once('/') {
        Some((a, b)) => {
            let den = int(b)?;
            if den.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(BigRational::new(int(a)?, den))
        }
        None => Ok(BigRational::from_integer(int(t)?)),
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

/// The coefficient field together with named parameter bindings (e.g. `q -> 2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub params: BTreeMap<String, Scalar>,
}

impl FieldSpec {
    pub fn new(kind: FieldKind) -> Self {
        FieldSpec { kind, params: BTreeMap::new() }
    }

    pub fn rationals() -> Self {
        Self::new(FieldKind::Rationals)
    }

    pub fn with_param(mut self, name: &str, value: &str) -> Result<Self, ScalarError> {
        let v = self.kind.parse(value)?;
        self.params.insert(name.to_string(), v);
        Ok(self)
    }

    /// Looks up a bound parameter.
    pub fn param(&self, name: &str) -> Option<&Scalar> {
        self.params.get(name)
    }
}

/// An exact element of Q or F_p.
///
/// Rationals whose numerator and denominator fit in an `i64` use a machine
/// representation and fall back to `BigRational` only on overflow; every value
/// has exactly one representation, so derived equality and hashing are sound.
/// Mixing elements of different fields is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, `den > 0`.
    Small {
        num: i64,
        den: i64,
    },
    /// Reduced, and does not fit `Small`.
    Big(BigRational),
    Modular {
        value: u64,
        modulus: u64,
    },
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn rational_from_i128(num: i128, den: i128) -> Scalar {
    debug_assert!(den != 0);
    let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
    let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
    if d < 0 {
        n = -n;
        d = -d;
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(num), Ok(den)) if num != i64::MIN => Scalar(Repr::Small { num, den }),
        _ => Scalar(Repr::Big(BigRational::new(BigInt::from(n), BigInt::from(d)))),
    }
}

fn rational_from_big(r: BigRational) -> Scalar {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(num), Some(den)) if num != i64::MIN => Scalar(Repr::Small { num, den }),
        _ => Scalar(Repr::Big(r)),
    }
}

impl Scalar {
    fn rational(r: BigRational) -> Scalar {
        rational_from_big(r)
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(r) => r.clone(),
            Repr::Modular { .. } => panic!("scalars from different fields"),
        }
    }

    pub fn kind(&self) -> FieldKind {
        match self.0 {
            Repr::Small { .. } | Repr::Big(_) => FieldKind::Rationals,
            Repr::Modular { modulus, .. } => FieldKind::PrimeField(modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num == 0,
            Repr::Big(_) => false,
            Repr::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small { num, den } => *num == 1 && *den == 1,
            Repr::Big(_) => false,
            Repr::Modular { value, .. } => *value == 1,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.kind().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.kind().one()
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Small { num, den } => rational_from_i128(*den as i128, *num as i128),
            Repr::Big(r) => Scalar::rational(r.recip()),
            Repr::Modular { value, modulus } => {
                Scalar(Repr::Modular { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus })
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// True when the rendered form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(r) => r.is_negative(),
            Repr::Modular { .. } => false,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "scalars from different prime fields");
    a
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    rational_from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    rational_from_i128(*a as i128 * *d as i128 + *c as i128 * *b as i128, *b as i128 * *d as i128)
                }
            }
            (Repr::Modular { value: a, modulus: p }, Repr::Modular { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                Scalar(Repr::Modular { value: (a + b) % p, modulus: p })
            }
            (Repr::Modular { .. }, _) | (_, Repr::Modular { .. }) => panic!("scalars from different fields"),
            _ => Scalar::rational(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                rational_from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            (Repr::Modular { value: a, modulus: p }, Repr::Modular { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                Scalar(Repr::Modular { value: mul_mod(*a, *b, p), modulus: p })
            }
            (Repr::Modular { .. }, _) | (_, Repr::Modular { .. }) => panic!("scalars from different fields"),
            _ => Scalar::rational(self.to_big() * rhs.to_big()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small { num, den } => Scalar(Repr::Small { num: -num, den: *den }),
            Repr::Big(r) => Scalar::rational(-r),
            Repr::Modular { value, modulus } => {
                Scalar(Repr::Modular { value: (modulus - value) % modulus, modulus: *modulus })
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Modular { value, modulus } => write!(f, "{value} mod {modulus}"),
            _ => write!(f, "{self}"),
        }
    }
}
