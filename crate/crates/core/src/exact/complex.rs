use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::Rational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

/// Gaussian rational `re + i·im`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexRational { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ComplexRational::new(Rational::new(), Rational::from(1))
    }

    pub fn from_int(n: i64) -> Self {
        ComplexRational::new(Rational::from(n), Rational::new())
    }

    /// `num/den` as a real Gaussian rational. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        ComplexRational::new(Rational::from((num, den)), Rational::new())
    }

    pub fn real(re: Rational) -> Self {
        ComplexRational::new(re, Rational::new())
    }

    pub fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }

    pub fn is_one(&self) -> bool {
        self.im.cmp0().is_eq() && self.re == 1
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }

    pub fn conj(&self) -> Self {
        ComplexRational::new(self.re.clone(), Rational::from(-&self.im))
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidParameters("inverse of zero".into()));
        }
        let n = self.norm_sqr();
        Ok(ComplexRational::new(Rational::from(&self.re / &n), Rational::from(-&self.im) / n))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        let mut base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = ComplexRational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ComplexRational::new(Rational::from(&self.re * r), Rational::from(&self.im * r))
    }

    /// Parses `"a"`, `"bi"`, `"a+bi"`, `"a-bi"`, `"-i"` where `a` and `b`
    /// are anything [`parse_rational`] accepts.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty complex rational".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(ComplexRational::real(parse_rational(&s)?));
        };
        let bytes = body.as_bytes();
        let split =
            (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re_text, im_text) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_text {
            "" | "+" => Rational::from(1),
            "-" => Rational::from(-1),
            t => parse_rational(t)?,
        };
        Ok(ComplexRational::new(parse_rational(re_text)?, im))
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return write!(f, "{}", self.re);
        }
        if self.re.cmp0().is_eq() {
            return write!(f, "{}i", self.im);
        }
        if self.im.cmp0().is_lt() {
            write!(f, "{}-{}i", self.re, Rational::from(-&self.im))
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl From<i64> for ComplexRational {
    fn from(n: i64) -> Self {
        ComplexRational::from_int(n)
    }
}

impl From<Rational> for ComplexRational {
    fn from(r: Rational) -> Self {
        ComplexRational::real(r)
    }
}

impl Add<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(Rational::from(&self.re + &rhs.re), Rational::from(&self.im + &rhs.im))
    }
}

impl Sub<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(Rational::from(&self.re - &rhs.re), Rational::from(&self.im - &rhs.im))
    }
}

impl Mul<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        if self.is_real() && rhs.is_real() {
            return ComplexRational::real(Rational::from(&self.re * &rhs.re));
        }
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        ComplexRational::new(re, im)
    }
}

impl Div<&ComplexRational> for &ComplexRational {
    type Output = Result<ComplexRational>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &ComplexRational) -> Result<ComplexRational> {
        Ok(self * &rhs.inv()?)
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
}

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<ComplexRational> for ComplexRational {
            type Output = ComplexRational;
            fn $method(self, rhs: ComplexRational) -> ComplexRational {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ComplexRational> for ComplexRational {
            type Output = ComplexRational;
            fn $method(self, rhs: &ComplexRational) -> ComplexRational {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&ComplexRational> for ComplexRational {
    fn add_assign(&mut self, rhs: &ComplexRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ComplexRational> for ComplexRational {
    fn sub_assign(&mut self, rhs: &ComplexRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ComplexRational> for ComplexRational {
    fn mul_assign(&mut self, rhs: &ComplexRational) {
        *self = &*self * rhs;
    }
}

#[derive(Serialize, Deserialize)]
struct Encoded {
    re: String,
    im: String,
}

impl Serialize for ComplexRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Encoded { re: format_rational(&self.re), im: format_rational(&self.im) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let e = Encoded::deserialize(deserializer)?;
        let re = parse_rational(&e.re).map_err(D::Error::custom)?;
        let im = parse_rational(&e.im).map_err(D::Error::custom)?;
        Ok(ComplexRational::new(re, im))
    }
}
