//! Exact coefficient fields: prime fields `F_p` (p < 2^31) and the rationals.
//!
//! A [`Scalar`] always knows which field it lives in, so mixed-field arithmetic
//! is detected instead of silently producing garbage. Operator impls panic on a
//! field mismatch (an internal logic error); the `checked_*` methods return a
//! [`FieldError`] instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("expected a prime or \"rational\", got {0:?}")]
    BadField(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Prime(u32),
    Rational,
}

/// The coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub struct FieldSpec(Kind);

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FieldRepr {
    Prime(u64),
    Rational,
}

impl TryFrom<FieldRepr> for FieldSpec {
    type Error = FieldError;
    fn try_from(r: FieldRepr) -> Result<Self, FieldError> {
        match r {
            FieldRepr::Prime(p) => FieldSpec::prime(p),
            FieldRepr::Rational => Ok(FieldSpec::rational()),
        }
    }
}

impl From<FieldSpec> for FieldRepr {
    fn from(f: FieldSpec) -> Self {
        match f.0 {
            Kind::Prime(p) => FieldRepr::Prime(p as u64),
            Kind::Rational => FieldRepr::Rational,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec(Kind::Prime(p as u32)))
    }

    pub fn rational() -> Self {
        FieldSpec(Kind::Rational)
    }

    /// The modulus for a prime field, `None` for the rationals.
    pub fn modulus(&self) -> Option<u32> {
        match self.0 {
            Kind::Prime(p) => Some(p),
            Kind::Rational => None,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.modulus().unwrap_or(0)
    }

    /// Whether the field is infinite (some results need this hypothesis).
    pub fn is_infinite(&self) -> bool {
        matches!(self.0, Kind::Rational)
    }

    pub fn zero(&self) -> Scalar {
        match self.0 {
            Kind::Prime(p) => Scalar(Repr::Fp { v: 0, p }),
            Kind::Rational => Scalar(Repr::Q(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.0 {
            Kind::Prime(p) => Scalar(Repr::Fp {
                v: n.rem_euclid(p as i64) as u32,
                p,
            }),
            Kind::Rational => Scalar(Repr::Q(BigRational::from_integer(n.into()))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.0 {
            Kind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar(Repr::Fp {
                    v: r.to_u32().expect("residue fits"),
                    p,
                })
            }
            Kind::Rational => Scalar(Repr::Q(BigRational::from_integer(n.clone()))),
        }
    }

    /// `num / den` reduced into this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, FieldError> {
        match self.0 {
            Kind::Prime(_) => self.from_bigint(num).checked_div(&self.from_bigint(den)),
            Kind::Rational => {
                if den.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(Scalar(Repr::Q(BigRational::new(num.clone(), den.clone()))))
            }
        }
    }

    /// Parse `"a"` or `"a/b"` (optionally signed) into this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::BadScalar(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        self.from_ratio(&num, &den)
    }

    /// The elements of a prime field in increasing residue order.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        self.modulus()
            .map(move |p| (0..p).map(move |v| Scalar(Repr::Fp { v, p })))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Prime(p) => write!(f, "F_{p}"),
            Kind::Rational => write!(f, "Q"),
        }
    }
}

/// `"rational"` (or `"Q"`), or a prime such as `"101"`.
impl FromStr for FieldSpec {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, FieldError> {
        match s.trim() {
            "rational" | "Q" | "QQ" => Ok(FieldSpec::rational()),
            t => match t.strip_prefix("F_").unwrap_or(t).parse::<u64>() {
                Ok(p) => FieldSpec::prime(p),
                Err(_) => Err(FieldError::BadField(s.to_string())),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Fp { v: u32, p: u32 },
    Q(BigRational),
}

/// An element of a [`FieldSpec`] in canonical form.
///
/// Residues live in `[0, p)`; rationals are kept reduced with a positive
/// denominator, so structural equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Fp { p, .. } => FieldSpec(Kind::Prime(*p)),
            Repr::Q(_) => FieldSpec::rational(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Fp { v, .. } => *v == 0,
            Repr::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Fp { v, .. } => *v == 1,
            Repr::Q(q) => q.is_one(),
        }
    }

    /// Residue of a prime-field element.
    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Fp { v, .. } => Some(*v),
            Repr::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Q(q) => Some(q),
            Repr::Fp { .. } => None,
        }
    }

    /// True when the printed form would start with a minus sign.
    pub fn is_negative(&self) -> bool {
        matches!(&self.0, Repr::Q(q) if q.is_negative())
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(a, b))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Fp { v: a, p }, Repr::Fp { v: b, .. }) => Scalar(Repr::Fp {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            }),
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a + b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Fp { v: a, p }, Repr::Fp { v: b, .. }) => Scalar(Repr::Fp {
                v: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                p: *p,
            }),
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a - b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Fp { v: a, p }, Repr::Fp { v: b, .. }) => Scalar(Repr::Fp {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            }),
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a * b)),
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Fp { v, p } => Scalar(Repr::Fp {
                v: pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32,
                p: *p,
            }),
            Repr::Q(q) => Scalar(Repr::Q(q.recip())),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// A total order used only for deterministic tie-breaking
    /// (numeric order for both residues and rationals).
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Fp { v: a, .. }, Repr::Fp { v: b, .. }) => a.cmp(b),
            (Repr::Q(a), Repr::Q(b)) => a.cmp(b),
            (Repr::Fp { .. }, Repr::Q(_)) => Ordering::Less,
            (Repr::Q(_), Repr::Fp { .. }) => Ordering::Greater,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Fp { v, .. } => write!(f, "{v}"),
            Repr::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar field mismatch")
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$checked(rhs).expect("scalar field mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Fp { v, p } => Scalar(Repr::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            }),
            Repr::Q(q) => Scalar(Repr::Q(-q)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn prime_field_products_reduce() {
        let f5 = f(5);
        assert_eq!(&f5.from_i64(3) * &f5.from_i64(4), f5.from_i64(2));
    }

    #[test]
    fn rational_sum_is_reduced() {
        let q = FieldSpec::rational();
        let a = q.parse_scalar("1/3").unwrap();
        let b = q.parse_scalar("1/6").unwrap();
        assert_eq!(&a + &b, q.parse_scalar("1/2").unwrap());
        assert_eq!((&a + &b).to_string(), "1/2");
    }

    #[test]
    fn inverse_mod_seven() {
        let f7 = f(7);
        assert_eq!(f7.from_i64(3).inv().unwrap(), f7.from_i64(5));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f7 = f(7);
        assert_eq!(f7.zero().inv(), Err(FieldError::DivisionByZero));
        let q = FieldSpec::rational();
        assert_eq!(
            q.one().checked_div(&q.zero()),
            Err(FieldError::DivisionByZero)
        );
        assert!(q.parse_scalar("1/0").is_err());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = f(5).one();
        let b = f(7).one();
        assert!(matches!(
            a.checked_add(&b),
            Err(FieldError::FieldMismatch(_, _))
        ));
        assert!(a.checked_mul(&FieldSpec::rational().one()).is_err());
    }

    #[test]
    fn primality_is_checked() {
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(2147483647).is_ok());
        assert!(FieldSpec::prime(1 << 31).is_err());
    }

    #[test]
    fn fraction_reduces_into_prime_field() {
        let f7 = f(7);
        // 1/2 = 4 mod 7
        assert_eq!(f7.parse_scalar("1/2").unwrap(), f7.from_i64(4));
        assert_eq!(f7.parse_scalar("-1").unwrap(), f7.from_i64(6));
        assert!(f7.parse_scalar("3/14").is_err());
    }

    #[test]
    fn field_spec_json_shape() {
        let s = serde_json::to_string(&f(101)).unwrap();
        assert_eq!(s, r#"{"prime":101}"#);
        assert_eq!(
            serde_json::to_string(&FieldSpec::rational()).unwrap(),
            r#""rational""#
        );
        let back: FieldSpec = serde_json::from_str(r#"{"prime":101}"#).unwrap();
        assert_eq!(back, f(101));
        assert!(serde_json::from_str::<FieldSpec>(r#"{"prime":100}"#).is_err());
        assert_eq!("rational".parse::<FieldSpec>().unwrap(), FieldSpec::rational());
        assert_eq!("F_7".parse::<FieldSpec>().unwrap(), FieldSpec::prime(7).unwrap());
        assert_eq!("101".parse::<FieldSpec>().unwrap().modulus(), Some(101));
        assert_eq!("9".parse::<FieldSpec>(), Err(FieldError::NotPrime(9)));
        assert!("reals".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn every_nonzero_residue_is_invertible() {
        for p in [2u64, 3, 5, 101, 65521] {
            let fp = f(p);
            for v in (1..p).step_by(((p / 50) as usize).max(1)) {
                let a = fp.from_i64(v as i64);
                assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
