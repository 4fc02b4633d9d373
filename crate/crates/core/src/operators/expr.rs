//! Expression trees for difference-reflection operators acting on polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{ComplexRational, Polynomial};

#[derive(Debug)]
enum Node {
    Identity,
    Reflection,
    UnitShiftPlus,
    UnitShiftMinus,
    ImagShiftPlus,
    ImagShiftMinus,
    MulPoly(Polynomial),
    MulRational { num: Polynomial, den: Polynomial },
    Scalar(ComplexRational, DifferenceOperator),
    Sum(Vec<DifferenceOperator>),
    Product(Vec<DifferenceOperator>),
    Anticommutator(DifferenceOperator, DifferenceOperator),
    Named(Arc<str>, DifferenceOperator),
}

/// An immutable linear operator on polynomials, shared cheaply by reference counting.
///
/// Products are written left to right as compositions: `a * b` applies `b` first.
#[derive(Clone, Debug)]
pub struct DifferenceOperator(Arc<Node>);

/// Intermediate result: a numerator with an optional pending denominator.
struct Fraction {
    num: Polynomial,
    den: Option<Polynomial>,
}

impl Fraction {
    fn poly(num: Polynomial) -> Self {
        Fraction { num, den: None }
    }

    fn reduce(self, label: &str) -> Result<Polynomial> {
        match self.den {
            None => Ok(self.num),
            Some(den) => divide(&self.num, &den, label),
        }
    }
}

fn divide(num: &Polynomial, den: &Polynomial, label: &str) -> Result<Polynomial> {
    num.exact_div(den).map_err(|e| match e {
        Error::NonzeroRemainder { remainder_degree } => {
            Error::OperatorNotPolynomialPreserving { node: format!("{label} (remainder of degree {remainder_degree})") }
        }
        other => other,
    })
}

impl DifferenceOperator {
    fn from_node(node: Node) -> Self {
        DifferenceOperator(Arc::new(node))
    }

    pub fn identity() -> Self {
        Self::from_node(Node::Identity)
    }

    /// `p(x) ↦ p(−x)`.
    pub fn reflection() -> Self {
        Self::from_node(Node::Reflection)
    }

    /// `p(x) ↦ p(x + 1)`.
    pub fn shift_plus() -> Self {
        Self::from_node(Node::UnitShiftPlus)
    }

    /// `p(x) ↦ p(x − 1)`.
    pub fn shift_minus() -> Self {
        Self::from_node(Node::UnitShiftMinus)
    }

    /// `p(x) ↦ p(x + i)`.
    pub fn imag_shift_plus() -> Self {
        Self::from_node(Node::ImagShiftPlus)
    }

    /// `p(x) ↦ p(x − i)`.
    pub fn imag_shift_minus() -> Self {
        Self::from_node(Node::ImagShiftMinus)
    }

    /// Multiplication by the variable.
    pub fn x() -> Self {
        Self::mul_poly(Polynomial::x())
    }

    pub fn mul_poly(p: Polynomial) -> Self {
        Self::from_node(Node::MulPoly(p))
    }

    /// Multiplication by `num / den`. The division is carried out only once the
    /// enclosing sum has been assembled over a common denominator.
    pub fn mul_rational(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_node(Node::MulRational { num, den }))
    }

    /// `c · 𝟙`.
    pub fn scalar(c: ComplexRational) -> Self {
        Self::identity().scaled(c)
    }

    pub fn scaled(&self, c: ComplexRational) -> Self {
        Self::from_node(Node::Scalar(c, self.clone()))
    }

    pub fn sum(terms: Vec<DifferenceOperator>) -> Self {
        Self::from_node(Node::Sum(terms))
    }

    /// `factors[0] ∘ factors[1] ∘ …`, applied right to left.
    pub fn compose(factors: Vec<DifferenceOperator>) -> Self {
        Self::from_node(Node::Product(factors))
    }

    /// `{a, b} = ab + ba`.
    pub fn anticommutator(a: &DifferenceOperator, b: &DifferenceOperator) -> Self {
        Self::from_node(Node::Anticommutator(a.clone(), b.clone()))
    }

    /// `self ∘ self`.
    pub fn squared(&self) -> Self {
        Self::compose(vec![self.clone(), self.clone()])
    }

    /// Attaches a label that is reported if a division below it fails.
    pub fn named(self, label: &str) -> Self {
        Self::from_node(Node::Named(Arc::from(label), self))
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.eval(p, "operator")?.reduce("operator")
    }

    fn eval(&self, p: &Polynomial, label: &str) -> Result<Fraction> {
        let one = ComplexRational::one();
        let zero = ComplexRational::zero();
        Ok(match &*self.0 {
            Node::Identity => Fraction::poly(p.clone()),
            Node::Reflection => Fraction::poly(p.affine_substitute(&-one, &zero)),
            Node::UnitShiftPlus => Fraction::poly(p.affine_substitute(&one, &one)),
            Node::UnitShiftMinus => Fraction::poly(p.affine_substitute(&one, &-one.clone())),
            Node::ImagShiftPlus => Fraction::poly(p.affine_substitute(&one, &ComplexRational::i())),
            Node::ImagShiftMinus => Fraction::poly(p.affine_substitute(&one, &-ComplexRational::i())),
            Node::MulPoly(m) => Fraction::poly(m * p),
            Node::MulRational { num, den } => Fraction { num: num * p, den: Some(den.clone()) },
            Node::Scalar(c, inner) => {
                let f = inner.eval(p, label)?;
                Fraction { num: f.num.scale(c), den: f.den }
            }
            Node::Named(name, inner) => inner.eval(p, name)?,
            Node::Sum(terms) => {
                let parts = terms.iter().map(|t| t.eval(p, label)).collect::<Result<Vec<_>>>()?;
                Fraction::poly(combine(parts, label)?)
            }
            Node::Product(factors) => {
                let mut acc = Fraction::poly(p.clone());
                for f in factors.iter().rev() {
                    let current = acc.reduce(label)?;
                    acc = f.eval(&current, label)?;
                }
                acc
            }
            Node::Anticommutator(a, b) => {
                let ab = a.eval(&b.eval(p, label)?.reduce(label)?, label)?;
                let ba = b.eval(&a.eval(p, label)?.reduce(label)?, label)?;
                Fraction::poly(combine(vec![ab, ba], label)?)
            }
        })
    }
}

/// Adds fractions over the product of their distinct denominators and divides once.
fn combine(parts: Vec<Fraction>, label: &str) -> Result<Polynomial> {
    let mut dens: Vec<Polynomial> = Vec::new();
    for part in &parts {
        if let Some(d) = &part.den {
            if !dens.contains(d) {
                dens.push(d.clone());
            }
        }
    }
    if dens.is_empty() {
        return Ok(parts.into_iter().fold(Polynomial::zero(), |acc, f| &acc + &f.num));
    }
    let mut total = Polynomial::zero();
    for part in parts {
        let mut term = part.num;
        for d in &dens {
            if part.den.as_ref() != Some(d) {
                term = &term * d;
            }
        }
        total = &total + &term;
    }
    let common = dens.iter().fold(Polynomial::one(), |acc, d| &acc * d);
    divide(&total, &common, &format!("{label}: sum over common denominator"))
}

impl fmt::Display for DifferenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Identity => write!(f, "1"),
            Node::Reflection => write!(f, "R"),
            Node::UnitShiftPlus => write!(f, "T+"),
            Node::UnitShiftMinus => write!(f, "T-"),
            Node::ImagShiftPlus => write!(f, "S+"),
            Node::ImagShiftMinus => write!(f, "S-"),
            Node::MulPoly(p) => write!(f, "[{p}]"),
            Node::MulRational { num, den } => write!(f, "[({num})/({den})]"),
            Node::Scalar(c, inner) => write!(f, "({c})*{inner}"),
            Node::Sum(terms) => {
                write!(f, "(")?;
                for (k, t) in terms.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
            Node::Product(factors) => {
                for (k, t) in factors.iter().enumerate() {
                    if k > 0 {
                        write!(f, "∘")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            Node::Anticommutator(a, b) => write!(f, "{{{a}, {b}}}"),
            Node::Named(name, _) => write!(f, "{name}"),
        }
    }
}

impl Add for &DifferenceOperator {
    type Output = DifferenceOperator;
    fn add(self, rhs: &DifferenceOperator) -> DifferenceOperator {
        DifferenceOperator::sum(vec![self.clone(), rhs.clone()])
    }
}

impl Sub for &DifferenceOperator {
    type Output = DifferenceOperator;
    fn sub(self, rhs: &DifferenceOperator) -> DifferenceOperator {
        DifferenceOperator::sum(vec![self.clone(), -rhs])
    }
}

impl Mul for &DifferenceOperator {
    type Output = DifferenceOperator;
    fn mul(self, rhs: &DifferenceOperator) -> DifferenceOperator {
        DifferenceOperator::compose(vec![self.clone(), rhs.clone()])
    }
}

impl Neg for &DifferenceOperator {
    type Output = DifferenceOperator;
    fn neg(self) -> DifferenceOperator {
        self.scaled(ComplexRational::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for DifferenceOperator {
            type Output = DifferenceOperator;
            fn $m(self, rhs: DifferenceOperator) -> DifferenceOperator {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for DifferenceOperator {
    type Output = DifferenceOperator;
    fn neg(self) -> DifferenceOperator {
        -&self
    }
}
