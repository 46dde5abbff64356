//! Exact scalars: rationals, or residues modulo a prime.
//!
//! A `Scalar::Q` holding an integer coerces into any prime field, so the
//! constants `Scalar::zero()` and `Scalar::one()` work regardless of which
//! field a presentation is defined over.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "modulus", rename_all = "lowercase")]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 31) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Embeds `num/den` into this field.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        self.big_ratio(BigInt::from(num), BigInt::from(den))
    }

    pub fn big_ratio(&self, num: BigInt, den: BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        let q = Scalar::Q(BigRational::new(num, den));
        self.embed(&q)
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.embed(&Scalar::from(n)).expect("integers embed in every field")
    }

    pub fn embed(&self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (Field::Rational, Scalar::Q(_)) => Ok(s.clone()),
            (Field::Rational, Scalar::Fp { .. }) => {
                Err(Error::Arithmetic("cannot embed a residue into the rationals".into()))
            }
            (Field::Prime(p), Scalar::Q(q)) => rational_mod(q, *p)
                .map(|value| Scalar::Fp { value, modulus: *p })
                .ok_or_else(|| Error::Arithmetic(format!("denominator divisible by {p}"))),
            (Field::Prime(p), Scalar::Fp { modulus, .. }) if modulus == p => Ok(s.clone()),
            (Field::Prime(_), Scalar::Fp { .. }) => Err(Error::Arithmetic("field mismatch".into())),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F {p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn rational_mod(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = q.numer().mod_floor(&pb).to_u64()?;
    let den = q.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(mul_mod(num, inv_mod(den, p), p))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Q(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Q(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { value, modulus } => Scalar::Fp { value: inv_mod(*value, *modulus), modulus: *modulus },
        }
    }

    /// Sign used when printing; residues are always printed as positive.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Scalar::Q(q) => Scalar::Q(q.abs()),
            other => other.clone(),
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Scalar::Q(_) => None,
            Scalar::Fp { modulus, .. } => Some(*modulus),
        }
    }

    /// Exact text form: `n`, `-n`, `a/b`.
    pub fn to_exact_string(&self) -> String {
        self.to_string()
    }

    pub fn parse_exact(text: &str, field: Field) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Arithmetic(format!("invalid scalar `{text}`"));
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim().parse::<BigInt>().map_err(|_| bad())?, b.trim().parse::<BigInt>().map_err(|_| bad())?),
            None => (text.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        field.big_ratio(num, den)
    }

    fn coerce(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Q(_), Scalar::Q(_)) => (a.clone(), b.clone()),
            (Scalar::Fp { modulus, .. }, Scalar::Q(_)) => {
                (a.clone(), Field::Prime(*modulus).embed(b).expect("coercion into prime field"))
            }
            (Scalar::Q(_), Scalar::Fp { modulus, .. }) => {
                (Field::Prime(*modulus).embed(a).expect("coercion into prime field"), b.clone())
            }
            (Scalar::Fp { modulus: p, .. }, Scalar::Fp { modulus: q, .. }) => {
                assert_eq!(p, q, "mixed prime fields");
                (a.clone(), b.clone())
            }
        }
    }

    fn binop(
        a: &Scalar,
        b: &Scalar,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        r: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match Scalar::coerce(a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(q(&x, &y)),
            (Scalar::Fp { value: x, modulus }, Scalar::Fp { value: y, .. }) => {
                Scalar::Fp { value: r(x, y, modulus), modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Q(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Q(q)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for deterministic output (rationals numerically,
/// residues by representative).
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match Scalar::coerce(self, other) {
            (Scalar::Q(x), Scalar::Q(y)) => x.cmp(&y),
            (Scalar::Fp { value: x, .. }, Scalar::Fp { value: y, .. }) => x.cmp(&y),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::binop(self, rhs, |x, y| x + y, |x, y, p| (x + y) % p)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::binop(self, rhs, |x, y| x - y, |x, y, p| (x + p - y) % p)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::binop(self, rhs, |x, y| x * y, mul_mod)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(-q),
            Scalar::Fp { value, modulus } => Scalar::Fp { value: (modulus - value) % modulus, modulus: *modulus },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let a = Field::Rational.ratio(1, 2).unwrap();
        let b = Field::Rational.ratio(-1, 3).unwrap();
        assert_eq!((&a + &b).to_string(), "1/6");
        assert_eq!((&a * &b).to_string(), "-1/6");
        assert_eq!((&a / &b).to_string(), "-3/2");
    }

    #[test]
    fn prime_field_coerces_integers() {
        let f = Field::prime(7).unwrap();
        let x = f.ratio(1, 3).unwrap();
        assert_eq!(&x * &Scalar::from(3), Scalar::one());
        assert_eq!((-&x).to_string(), "2");
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn non_prime_modulus_rejected() {
        assert!(matches!(Field::prime(9), Err(Error::NonPrimeModulus(9))));
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn parse_exact_forms() {
        let f = Field::Rational;
        assert_eq!(Scalar::parse_exact("-4/6", f).unwrap().to_string(), "-2/3");
        assert!(Scalar::parse_exact("1/0", f).is_err());
        assert!(Scalar::parse_exact("x", f).is_err());
    }
}
