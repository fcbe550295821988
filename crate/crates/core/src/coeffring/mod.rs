//! Exact coefficient arithmetic: sparse polynomials over ℚ, reduced rational
//! functions, and the quadratic extension used by the genus-g hook terms.

mod gcd;
mod hook;
mod parse;
mod polynomial;
mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

pub use gcd::{gcd, lcm};
pub use hook::{zw, HookField};
pub use parse::{parse_polynomial, parse_rational_function};
pub use polynomial::{Monomial, Polynomial};
pub use rational::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("zero denominator")]
    DivisionByZero,
    #[error("PoleError: denominator {0} vanishes at the specialization point")]
    Pole(String),
    #[error("parse error at offset {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("denominator depends on {0}")]
    NotPolynomialIn(char),
    #[error("specialization must satisfy e0^2 = Z0*W0")]
    InconsistentEpsilon,
}

/// Field operations needed by symmetric-function code.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + From<RationalFunction>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn scale(&self, c: &BigRational) -> Self;
    fn inv(&self) -> Result<Self, CoeffError>;
    /// p_n on scalars: every indeterminate raised to the n-th power.
    fn adams(&self, n: u32) -> Self;

    fn from_rational(c: BigRational) -> Self {
        Self::from(RationalFunction::from_rational(c))
    }
}

impl Coefficient for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn scale(&self, c: &BigRational) -> Self {
        RationalFunction::scale(self, c)
    }
    fn inv(&self) -> Result<Self, CoeffError> {
        RationalFunction::inv(self)
    }
    fn adams(&self, n: u32) -> Self {
        RationalFunction::adams(self, n)
    }
}

impl Coefficient for HookField {
    fn zero() -> Self {
        HookField::zero()
    }
    fn one() -> Self {
        HookField::one()
    }
    fn is_zero(&self) -> bool {
        HookField::is_zero(self)
    }
    fn scale(&self, c: &BigRational) -> Self {
        HookField::scale(self, c)
    }
    fn inv(&self) -> Result<Self, CoeffError> {
        HookField::inv(self)
    }
    fn adams(&self, n: u32) -> Self {
        HookField::adams(self, n)
    }
}
