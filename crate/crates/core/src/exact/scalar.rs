//! Scalar types: rationals, Gaussian rationals, and the tagged union used as
//! the entry type of [`ExactMatrix`](super::ExactMatrix).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Field, Rational};

/// An element of `Q(i)`, kept as exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(re: i64) -> Self {
        GaussianRational::new(Rational::from_integer(re.into()), Rational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(
            Rational::from_integer(re.into()),
            Rational::from_integer(im.into()),
        )
    }

    pub fn zero() -> Self {
        GaussianRational::from_int(0)
    }

    pub fn one() -> Self {
        GaussianRational::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re^2 + im^2`; rational and zero only for zero.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// A field element tagged with its field model. All scalars inside one matrix
/// share one tag; mixing tags in arithmetic is a contract violation and
/// panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Gaussian(GaussianRational),
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        match field {
            Field::Real => Scalar::Rational(Rational::zero()),
            Field::Complex => Scalar::Gaussian(GaussianRational::zero()),
        }
    }

    pub fn one(field: Field) -> Self {
        match field {
            Field::Real => Scalar::Rational(Rational::one()),
            Field::Complex => Scalar::Gaussian(GaussianRational::one()),
        }
    }

    pub fn from_int(field: Field, n: i64) -> Self {
        match field {
            Field::Real => Scalar::Rational(Rational::from_integer(n.into())),
            Field::Complex => Scalar::Gaussian(GaussianRational::from_int(n)),
        }
    }

    /// Embed a rational value into the given field model.
    pub fn from_rational(field: Field, q: Rational) -> Self {
        match field {
            Field::Real => Scalar::Rational(q),
            Field::Complex => Scalar::Gaussian(GaussianRational::new(q, Rational::zero())),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Real,
            Scalar::Gaussian(_) => Field::Complex,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Gaussian(g) => g.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Gaussian(g) => g.im.is_zero() && g.re.is_one(),
        }
    }

    /// Complex conjugate; the identity over the `R` model.
    pub fn conj(&self) -> Self {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.clone()),
            Scalar::Gaussian(g) => Scalar::Gaussian(g.conj()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(q.recip()))
                }
            }
            Scalar::Gaussian(g) => g.inv().map(Scalar::Gaussian),
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::Gaussian(a + b),
            _ => panic!("field tag mismatch in scalar addition"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::Gaussian(a - b),
            _ => panic!("field tag mismatch in scalar subtraction"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::Gaussian(a * b),
            _ => panic!("field tag mismatch in scalar multiplication"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q.clone()),
            Scalar::Gaussian(g) => Scalar::Gaussian(-g),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Gaussian(g) => write!(f, "{g}"),
        }
    }
}
