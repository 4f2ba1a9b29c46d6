//! Exact rational scalar.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational number. Closed under `+ - * /` (nonzero
/// divisor); comparisons are exact.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Scalar(BigRational::new(num, den))
    }

    /// Exact conversion of an `f64` (every finite float is a dyadic rational).
    pub fn from_f64_exact(v: f64) -> Result<Self> {
        BigRational::from_float(v)
            .map(Scalar)
            .ok_or_else(|| Error::Domain(format!("non-finite value {v}")))
    }

    /// Parses a decimal string such as `-12.5` or `3`, or an exact rational
    /// `p/q`. Refuses anything else.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Domain(format!("cannot parse `{s}` as an exact number"));
        if s.is_empty() {
            return Err(err());
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Scalar(BigRational::new(n, d)));
        }
        let (sign, body) = match s.as_bytes()[0] {
            b'-' => (-1, &s[1..]),
            b'+' => (1, &s[1..]),
            _ => (1, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(err());
        }
        let digits = format!("{int_part}{frac_part}");
        let digits = if digits.is_empty() { "0".into() } else { digits };
        let num: BigInt = digits.parse().map_err(|_| err())?;
        let den = BigInt::from(10u8).pow(frac_part.len() as u32);
        Ok(Scalar(BigRational::new(BigInt::from(sign) * num, den)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn recip(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        Scalar(self.0.recip())
    }

    /// Smallest integer `>= self`, as a `BigInt`.
    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Renders as a finite decimal when the denominator is of the form
    /// `2^a 5^b`, otherwise as `p/q`.
    pub fn to_exact_string(&self) -> String {
        let den = self.0.denom();
        let mut d = den.clone();
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        let mut pow2 = 0u32;
        let mut pow5 = 0u32;
        while (&d % &two).is_zero() {
            d /= &two;
            pow2 += 1;
        }
        while (&d % &five).is_zero() {
            d /= &five;
            pow5 += 1;
        }
        if !d.is_one() {
            return format!("{}/{}", self.0.numer(), self.0.denom());
        }
        let k = pow2.max(pow5);
        let scale = BigInt::from(10u8).pow(k);
        let scaled = self.0.numer() * (&scale / den);
        let (sign, mag) = (scaled.sign(), scaled.magnitude().to_string());
        let sign = if sign == Sign::Minus { "-" } else { "" };
        if k == 0 {
            return format!("{sign}{mag}");
        }
        let mag = if mag.len() <= k as usize {
            format!("{}{}", "0".repeat(k as usize + 1 - mag.len()), mag)
        } else {
            mag
        };
        let (int, frac) = mag.split_at(mag.len() - k as usize);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_exact_string())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_exact_string())
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

macro_rules! binop {
    ($trait:ident, $fn:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$fn(rhs.0))
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$fn(&rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: &Scalar) -> Scalar {
                Scalar((self.0).$fn(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$fn(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}
