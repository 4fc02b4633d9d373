use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ComplexRational;
use crate::error::{Error, Result};

/// Dense univariate polynomial with Gaussian-rational coefficients.
///
/// `coeffs[k]` is the coefficient of `x^k`. The vector never ends in a zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<ComplexRational>,
}

impl Polynomial {
    pub fn from_coeffs(mut coeffs: Vec<ComplexRational>) -> Self {
        while coeffs.last().is_some_and(ComplexRational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Integer coefficients in ascending order, mostly for tests.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| ComplexRational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ComplexRational::one())
    }

    pub fn constant(c: ComplexRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ComplexRational::zero(); k + 1];
        coeffs[k] = ComplexRational::one();
        Polynomial { coeffs }
    }

    /// `c0 + c1·x`.
    pub fn linear(c0: ComplexRational, c1: ComplexRational) -> Self {
        Self::from_coeffs(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[ComplexRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ComplexRational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ComplexRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ComplexRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(ComplexRational::is_one)
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(ComplexRational::is_real)
    }

    pub fn scale(&self, s: &ComplexRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Long division, `self = d·q + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let Some(dd) = d.degree() else {
            return Err(Error::DivisionByZero);
        };
        let Some(pd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if pd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = d.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ComplexRational::zero(); pd - dd + 1];
        for k in (0..=pd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let q = top * &lead_inv;
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] -= &(&q * dj);
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient; fails with `NonzeroRemainder` unless `d` divides `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(d)?;
        match r.degree() {
            None => Ok(q),
            Some(remainder_degree) => Err(Error::NonzeroRemainder { remainder_degree }),
        }
    }

    /// The polynomial `x ↦ self(s·x + t)`.
    pub fn affine_substitute(&self, s: &ComplexRational, t: &ComplexRational) -> Polynomial {
        let lin = Polynomial::linear(t.clone(), s.clone());
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * &lin;
            acc = acc.add_constant(c);
        }
        acc
    }

    fn add_constant(mut self, c: &ComplexRational) -> Polynomial {
        if self.coeffs.is_empty() {
            return Polynomial::constant(c.clone());
        }
        self.coeffs[0] += c;
        Self::from_coeffs(self.coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &ComplexRational) -> ComplexRational {
        let mut acc = ComplexRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * z;
            acc += c;
        }
        acc
    }

    fn zip_with(
        &self,
        rhs: &Polynomial,
        f: impl Fn(&ComplexRational, &ComplexRational) -> ComplexRational,
    ) -> Polynomial {
        let zero = ComplexRational::zero();
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs =
            (0..len).map(|k| f(self.coeffs.get(k).unwrap_or(&zero), rhs.coeffs.get(k).unwrap_or(&zero))).collect();
        Self::from_coeffs(coeffs)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![ComplexRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(Polynomial::from_coeffs(Vec::<ComplexRational>::deserialize(deserializer)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rug::Rational;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn cr(s: &str) -> ComplexRational {
        ComplexRational::parse(s).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(&p(&[0, 1]) + &p(&[0, -1]), Polynomial::zero());
        assert_eq!(&p(&[1, 0, 1]) + &p(&[1]), p(&[2, 0, 1]));
        assert_eq!(&p(&[0, 1]) + &Polynomial::zero(), p(&[0, 1]));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        let q = p(&[3, -2, 5]);
        assert_eq!(&q * &Polynomial::one(), q);
        assert_eq!(&Polynomial::x() * &Polynomial::x(), p(&[0, 0, 1]));
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        assert!(matches!(
            p(&[1, 0, 1]).exact_div(&Polynomial::x()),
            Err(Error::NonzeroRemainder { remainder_degree: 0 })
        ));
        assert_eq!(Polynomial::zero().exact_div(&p(&[1, 2])).unwrap(), Polynomial::zero());
        assert_eq!(p(&[1]).exact_div(&Polynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn affine_substitution_examples() {
        let one = ComplexRational::one();
        let zero = ComplexRational::zero();
        assert_eq!(p(&[0, 0, 1]).affine_substitute(&one, &zero), p(&[0, 0, 1]));
        let q = Polynomial::x().affine_substitute(&cr("-1/2"), &cr("1/4"));
        assert_eq!(q, Polynomial::from_coeffs(vec![cr("1/4"), cr("-1/2")]));
        let q = Polynomial::x().affine_substitute(&ComplexRational::i(), &zero);
        assert_eq!(q, Polynomial::from_coeffs(vec![zero.clone(), ComplexRational::i()]));
        // (x - i)^2 = x^2 - 2i x - 1
        let q = p(&[0, 0, 1]).affine_substitute(&one, &cr("-i"));
        assert_eq!(q, Polynomial::from_coeffs(vec![cr("-1"), cr("-2i"), one]));
    }

    #[test]
    fn evaluation_examples() {
        let q = p(&[1, 0, 1]);
        assert_eq!(q.eval(&ComplexRational::zero()), ComplexRational::one());
        assert_eq!(q.eval(&ComplexRational::i()), ComplexRational::zero());
        assert_eq!(Polynomial::zero().eval(&cr("3/7-2i")), ComplexRational::zero());
    }

    #[test]
    fn canonical_zero() {
        let z = Polynomial::from_coeffs(vec![ComplexRational::zero(); 4]);
        assert_eq!(z, Polynomial::zero());
        assert_eq!(z.degree(), None);
        assert_eq!(serde_json::to_string(&z).unwrap(), "[]");
    }

    fn arb_coeff() -> impl Strategy<Value = ComplexRational> {
        (-9i64..=9, 1i64..=6, -9i64..=9, 1i64..=6)
            .prop_map(|(a, b, c, d)| ComplexRational::new(Rational::from((a, b)), Rational::from((c, d))))
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(arb_coeff(), 0..=max_len).prop_map(Polynomial::from_coeffs)
    }

    proptest! {
        #[test]
        fn exact_div_inverts_mul(q in arb_poly(6), d in arb_poly(5)) {
            prop_assume!(!d.is_zero());
            let prod = &d * &q;
            prop_assert_eq!(prod.exact_div(&d).unwrap(), q);
        }

        #[test]
        fn degree_is_additive(a in arb_poly(6), b in arb_poly(6)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }

        #[test]
        fn affine_substitution_inverts(q in arb_poly(6), s in arb_coeff(), t in arb_coeff()) {
            prop_assume!(!s.is_zero());
            let s_inv = s.inv().unwrap();
            let t_back = -(&t * &s_inv);
            let there = q.affine_substitute(&s, &t);
            prop_assert_eq!(there.affine_substitute(&s_inv, &t_back), q);
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_poly(5), b in arb_poly(5), z in arb_coeff()) {
            prop_assert_eq!((&a * &b).eval(&z), &a.eval(&z) * &b.eval(&z));
        }
    }
}
