use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;

use super::polynomial::{forward_owned, Polynomial};
use super::rational::RationalFunction;
use super::CoeffError;

/// Element `base + odd·ε` of ℚ(Z,W)[ε]/(ε² − Z·W).
///
/// With Z = z², W = w² and ε = z·w this holds the even polynomials in (z, w)
/// that the genus-g hook terms produce.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HookField {
    pub base: RationalFunction,
    pub odd: RationalFunction,
}

pub fn zw() -> RationalFunction {
    RationalFunction::from_poly(&Polynomial::var('Z') * &Polynomial::var('W'))
}

impl HookField {
    pub fn new(base: RationalFunction, odd: RationalFunction) -> Self {
        HookField { base, odd }
    }

    pub fn from_base(base: RationalFunction) -> Self {
        HookField { base, odd: RationalFunction::zero() }
    }

    pub fn epsilon() -> Self {
        HookField { base: RationalFunction::zero(), odd: RationalFunction::one() }
    }

    pub fn zero() -> Self {
        Self::from_base(RationalFunction::zero())
    }

    pub fn one() -> Self {
        Self::from_base(RationalFunction::one())
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.odd.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        HookField { base: self.base.scale(c), odd: self.odd.scale(c) }
    }

    pub fn mul_base(&self, c: &RationalFunction) -> Self {
        HookField { base: &self.base * c, odd: &self.odd * c }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.odd.is_zero() {
            return Ok(Self::from_base(self.base.inv()?));
        }
        // (a + bε)⁻¹ = (a − bε) / (a² − b²ZW)
        let norm = &(&self.base * &self.base) - &(&(&self.odd * &self.odd) * &zw());
        let inv = norm.inv()?;
        Ok(HookField { base: &self.base * &inv, odd: -(&self.odd * &inv) })
    }

    /// p_n acting on coefficients: Z → Zⁿ, W → Wⁿ, ε → εⁿ.
    pub fn adams(&self, n: u32) -> Self {
        let base = self.base.adams(n);
        if self.odd.is_zero() {
            return Self::from_base(base);
        }
        let odd = self.odd.adams(n);
        let half = zw().pow(n / 2);
        if n % 2 == 0 {
            Self::from_base(&base + &(&odd * &half))
        } else {
            HookField { base, odd: &odd * &half }
        }
    }

    /// Substitutes (Z, W, ε) = (z0, w0, e0); requires e0² = z0·w0.
    pub fn specialize(
        &self,
        z0: &RationalFunction,
        w0: &RationalFunction,
        e0: &RationalFunction,
    ) -> Result<RationalFunction, CoeffError> {
        if &(e0 * e0) != &(z0 * w0) {
            return Err(CoeffError::InconsistentEpsilon);
        }
        let pairs = [('Z', z0.clone()), ('W', w0.clone())];
        let base = self.base.subs(&pairs)?;
        if self.odd.is_zero() {
            return Ok(base);
        }
        Ok(&base + &(&self.odd.subs(&pairs)? * e0))
    }
}

impl fmt::Display for HookField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.odd.is_zero() {
            return write!(f, "{}", self.base);
        }
        if self.base.is_zero() {
            return write!(f, "({})*e", self.odd);
        }
        write!(f, "{} + ({})*e", self.base, self.odd)
    }
}

impl fmt::Debug for HookField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<RationalFunction> for HookField {
    fn from(r: RationalFunction) -> Self {
        Self::from_base(r)
    }
}

impl Add<&HookField> for &HookField {
    type Output = HookField;
    fn add(self, rhs: &HookField) -> HookField {
        HookField { base: &self.base + &rhs.base, odd: &self.odd + &rhs.odd }
    }
}

impl Sub<&HookField> for &HookField {
    type Output = HookField;
    fn sub(self, rhs: &HookField) -> HookField {
        HookField { base: &self.base - &rhs.base, odd: &self.odd - &rhs.odd }
    }
}

impl Neg for &HookField {
    type Output = HookField;
    fn neg(self) -> HookField {
        HookField { base: -&self.base, odd: -&self.odd }
    }
}

impl Neg for HookField {
    type Output = HookField;
    fn neg(self) -> HookField {
        -&self
    }
}

impl Mul<&HookField> for &HookField {
    type Output = HookField;
    fn mul(self, rhs: &HookField) -> HookField {
        if self.odd.is_zero() {
            return rhs.mul_base(&self.base);
        }
        if rhs.odd.is_zero() {
            return self.mul_base(&rhs.base);
        }
        let base = &(&self.base * &rhs.base) + &(&(&self.odd * &rhs.odd) * &zw());
        let odd = &(&self.base * &rhs.odd) + &(&self.odd * &rhs.base);
        HookField { base, odd }
    }
}

impl Div<&HookField> for &HookField {
    type Output = HookField;
    fn div(self, rhs: &HookField) -> HookField {
        self * &rhs.inv().expect("division by zero in HookField")
    }
}

forward_owned!(HookField, Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn epsilon_squared() {
        let e = HookField::epsilon();
        assert_eq!(&e * &e, HookField::from_base(zw()));
    }

    #[test]
    fn inverse() {
        let x = HookField::new(rf("Z + W"), rf("-2"));
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, HookField::one());
    }

    #[test]
    fn adams_matches_powers_of_epsilon() {
        let e = HookField::epsilon();
        assert_eq!(e.adams(3), &(&e * &e) * &e);
        assert_eq!(e.adams(2), &e * &e);
    }

    #[test]
    fn specialization_checks_epsilon() {
        let x = HookField::new(rf("Z + W"), rf("-2"));
        let v = rf("v");
        let v2 = rf("v^2");
        assert_eq!(x.specialize(&rf("1"), &v2, &-v.clone()).unwrap(), rf("v^2 + 2*v + 1"));
        assert_eq!(
            x.specialize(&rf("1"), &v2, &rf("v^3")),
            Err(CoeffError::InconsistentEpsilon)
        );
    }
}
