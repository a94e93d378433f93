//! Exact coefficients: rationals for characteristic 0, residues for prime `p`.
//!
//! [`Scalar`] is the value type that crosses API boundaries. The elimination
//! kernels work through the [`Field`] trait instead, which lets the prime
//! field run on plain `u32` residues.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("characteristic {0} is neither 0 nor a prime")]
    NotPrime(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from characteristics {0} and {1} cannot be combined")]
    MixedCharacteristic(u32, u32),
    #[error("operation requires characteristic 0, got {0}")]
    NotRational(u32),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// The base field: `Q` when `characteristic == 0`, otherwise `GF(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FieldSpec {
    characteristic: u32,
}

impl FieldSpec {
    pub fn new(characteristic: u32) -> Result<Self, CoeffError> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(CoeffError::NotPrime(characteristic))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    /// Panics unless `p` is prime; for literals in tests and constructors.
    pub fn prime(p: u32) -> Self {
        FieldSpec::new(p).expect("modulus must be prime")
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            p => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// Parses `"n"`, `"n/d"` (rationals) or `"r"` (residues, reduced mod p).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, CoeffError> {
        let bad = || CoeffError::Parse(text.to_string());
        let text = text.trim();
        match self.characteristic {
            0 => {
                let (num, den) = match text.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (text, "1"),
                };
                let num = BigInt::from_str(num).map_err(|_| bad())?;
                let den = BigInt::from_str(den).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(CoeffError::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            p => {
                let n = BigInt::from_str(text).map_err(|_| bad())?;
                let r = n.mod_floor(&BigInt::from(p)).to_u32().ok_or_else(bad)?;
                Ok(Scalar::Residue { value: r, modulus: p })
            }
        }
    }
}

impl TryFrom<u32> for FieldSpec {
    type Error = CoeffError;
    fn try_from(value: u32) -> Result<Self, Self::Error> {
        FieldSpec::new(value)
    }
}

impl From<FieldSpec> for u32 {
    fn from(f: FieldSpec) -> u32 {
        f.characteristic
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "GF({p})"),
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while (k as u64) * (k as u64) <= n as u64 {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// A field element. Rationals are kept in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn characteristic(&self) -> u32 {
        match self {
            Scalar::Rational(_) => 0,
            Scalar::Residue { modulus, .. } => *modulus,
        }
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec {
            characteristic: self.characteristic(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        arith(self, other, ArithOp::Add)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        arith(self, other, ArithOp::Sub)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        arith(self, other, ArithOp::Mul)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        arith(self, other, ArithOp::Div)
    }
}

/// Exact field arithmetic on two scalars of the same characteristic.
pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, CoeffError> {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => {
                if y.is_zero() {
                    return Err(CoeffError::DivisionByZero);
                }
                x / y
            }
        })),
        (
            Scalar::Residue { value: x, modulus: p },
            Scalar::Residue { value: y, modulus: q },
        ) if p == q => {
            let f = PrimeField::new(*p);
            let value = match op {
                ArithOp::Add => f.add(x, y),
                ArithOp::Sub => f.sub(x, y),
                ArithOp::Mul => f.mul(x, y),
                ArithOp::Div => {
                    if *y == 0 {
                        return Err(CoeffError::DivisionByZero);
                    }
                    f.mul(x, &f.inv(y))
                }
            };
            Ok(Scalar::Residue { value, modulus: *p })
        }
        _ => Err(CoeffError::MixedCharacteristic(
            a.characteristic(),
            b.characteristic(),
        )),
    }
}

/// Primes dividing the reduced denominator of a rational scalar.
pub fn denominator_support(a: &Scalar) -> Result<BTreeSet<u64>, CoeffError> {
    match a {
        Scalar::Rational(r) => Ok(prime_support(r.denom())),
        Scalar::Residue { modulus, .. } => Err(CoeffError::NotRational(*modulus)),
    }
}

/// Prime divisors of `|n|` by trial division; fine for the small pivots met here.
pub(crate) fn prime_support(n: &BigInt) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut n = n.abs();
    if n.is_zero() {
        return out;
    }
    let mut k: u64 = 2;
    loop {
        let kb = BigInt::from(k);
        if &kb * &kb > n {
            break;
        }
        if (&n % &kb).is_zero() {
            out.insert(k);
            while (&n % &kb).is_zero() {
                n /= &kb;
            }
        }
        k += if k == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.insert(n.to_u64().unwrap_or(u64::MAX));
    }
    out
}

/// True when every prime of the support is 2 or 3, i.e. the value is a unit of `Z[1/2,1/3]`.
pub(crate) fn is_23_unit_support(n: &BigInt) -> bool {
    let mut n = n.abs();
    if n.is_zero() {
        return false;
    }
    for k in [2u32, 3] {
        let kb = BigInt::from(k);
        while (&n % &kb).is_zero() {
            n /= &kb;
        }
    }
    n.is_one()
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Extended Euclid on i64.
    let (mut old_r, mut r) = (a as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(p as i64) as u32
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Deserializes to a rational; residues need a field, see [`FieldSpec::parse_scalar`].
impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        FieldSpec::rationals()
            .parse_scalar(&s)
            .map_err(serde::de::Error::custom)
    }
}

/// Arithmetic used by the elimination kernels.
pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem, CoeffError>;

    /// `a -= c * b`, the inner step of every row operation.
    fn sub_mul_assign(&self, a: &mut Self::Elem, c: &Self::Elem, b: &Self::Elem) {
        *a = self.sub(a, &self.mul(c, b));
    }

    /// Whether inverting this pivot stays inside `Z[1/2,1/3]`. Always true in
    /// positive characteristic, where the question does not arise.
    fn pivot_is_23_unit(&self, _a: &Self::Elem) -> bool {
        true
    }
}

/// `GF(p)` on `u32` residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        debug_assert!(is_prime(p));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec {
            characteristic: self.p,
        }
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u32) -> u32 {
        inv_mod(*a, self.p)
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar::Residue {
            value: *a,
            modulus: self.p,
        }
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u32, CoeffError> {
        match s {
            Scalar::Residue { value, modulus } if *modulus == self.p => Ok(*value),
            other => Err(CoeffError::MixedCharacteristic(
                other.characteristic(),
                self.p,
            )),
        }
    }
    #[inline]
    fn sub_mul_assign(&self, a: &mut u32, c: &u32, b: &u32) {
        let p = self.p as u64;
        let prod = (*c as u64 * *b as u64) % p;
        *a = ((*a as u64 + p - prod) % p) as u32;
    }
}

/// `Q` on arbitrary-precision rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::rationals()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> Result<BigRational, CoeffError> {
        match s {
            Scalar::Rational(r) => Ok(r.clone()),
            other => Err(CoeffError::MixedCharacteristic(other.characteristic(), 0)),
        }
    }
    fn sub_mul_assign(&self, a: &mut BigRational, c: &BigRational, b: &BigRational) {
        *a -= c * b;
    }
    fn pivot_is_23_unit(&self, a: &BigRational) -> bool {
        // The inverse denominator is the numerator of `a`.
        is_23_unit_support(a.numer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn small_field_arithmetic() {
        let f3 = FieldSpec::prime(3);
        assert_eq!(f3.from_i64(2).add(&f3.from_i64(2)).unwrap(), f3.from_i64(1));
        assert_eq!(q(1, 2).mul(&q(2, 3)).unwrap(), q(1, 3));
        let f2 = FieldSpec::prime(2);
        assert!(f2.one().add(&f2.one()).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        assert_eq!(FieldSpec::new(4), Err(CoeffError::NotPrime(4)));
        assert_eq!(FieldSpec::new(1), Err(CoeffError::NotPrime(1)));
        let f5 = FieldSpec::prime(5);
        assert_eq!(f5.one().div(&f5.zero()), Err(CoeffError::DivisionByZero));
        assert_eq!(
            f5.one().add(&FieldSpec::prime(7).one()),
            Err(CoeffError::MixedCharacteristic(5, 7))
        );
        assert!(f5.one().add(&q(1, 2)).is_err());
    }

    #[test]
    fn denominators() {
        let set = |v: &[u64]| v.iter().copied().collect::<BTreeSet<u64>>();
        assert_eq!(denominator_support(&q(5, 6)).unwrap(), set(&[2, 3]));
        assert_eq!(denominator_support(&q(7, 1)).unwrap(), set(&[]));
        assert_eq!(denominator_support(&q(-1, 4)).unwrap(), set(&[2]));
        assert_eq!(denominator_support(&q(1, 35)).unwrap(), set(&[5, 7]));
        assert!(denominator_support(&FieldSpec::prime(5).one()).is_err());
        assert!(is_23_unit_support(&BigInt::from(-12)));
        assert!(!is_23_unit_support(&BigInt::from(10)));
    }

    #[test]
    fn parse_and_display() {
        let f0 = FieldSpec::rationals();
        assert_eq!(f0.parse_scalar("-2/4").unwrap().to_string(), "-1/2");
        assert_eq!(f0.parse_scalar("6/3").unwrap().to_string(), "2");
        let f7 = FieldSpec::prime(7);
        assert_eq!(f7.parse_scalar("-1").unwrap().to_string(), "6");
        assert!(f0.parse_scalar("x").is_err());
    }

    fn scalar_in(p: u32) -> BoxedStrategy<Scalar> {
        if p == 0 {
            (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d)).boxed()
        } else {
            (0..p).prop_map(move |v| Scalar::Residue { value: v, modulus: p }).boxed()
        }
    }

    fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        prop_oneof![Just(0u32), Just(2), Just(3), Just(5), Just(7)]
            .prop_flat_map(|p| (scalar_in(p), scalar_in(p), scalar_in(p)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in triple()) {
            let ab_c = a.add(&b).unwrap().add(&c).unwrap();
            let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let m1 = a.mul(&b).unwrap().mul(&c).unwrap();
            let m2 = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(m1, m2);
            let dist = a.mul(&b.add(&c).unwrap()).unwrap();
            let dist2 = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(dist, dist2);
            prop_assert!(a.add(&a.neg()).unwrap().is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
                prop_assert_eq!(b.div(&a).unwrap().mul(&a).unwrap(), b.clone());
            }
            if let Scalar::Rational(r) = &a {
                prop_assert!(r.denom() > &BigInt::zero());
            }
        }
    }
}
