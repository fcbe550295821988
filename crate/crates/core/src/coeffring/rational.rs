use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::polynomial::{forward_owned, Polynomial};
use super::CoeffError;

/// A reduced fraction of polynomials.
///
/// Canonical form: the denominator is a primitive integer polynomial with positive
/// leading coefficient and shares no factor with the numerator. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Polynomial::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn var(name: char) -> Self {
        Self::from_poly(Polynomial::var(name))
    }

    /// Builds the reduced, sign-normalized fraction `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return Self::from_poly(num.scale(&c.recip()));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        Self::normalize_unit(num, den)
    }

    // Moves the content and sign of the denominator into the numerator.
    fn normalize_unit(num: Polynomial, den: Polynomial) -> Self {
        let mut c = den.content();
        if den.leading_coefficient().is_negative() {
            c = -c;
        }
        if c.is_one() {
            return RationalFunction { num, den };
        }
        let inv = c.recip();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalize_unit(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        // Powers of coprime polynomials stay coprime; content stays normalized
        // because products of primitive polynomials are primitive.
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn powi(&self, e: i32) -> Result<Self, CoeffError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Replaces every indeterminate `x` by `x^n`.
    pub fn adams(&self, n: u32) -> Self {
        // x -> x^n preserves coprimality and the leading monomial, so the result is reduced.
        RationalFunction { num: self.num.adams(n), den: self.den.adams(n) }
    }

    /// Substitutes values for indeterminates. Fails with `Pole` if the denominator vanishes.
    pub fn specialize(&self, assignment: &BTreeMap<u8, RationalFunction>) -> Result<Self, CoeffError> {
        if assignment.values().all(|v| v.is_polynomial()) {
            let polys: BTreeMap<u8, Polynomial> =
                assignment.iter().map(|(&k, v)| (k, v.num.clone())).collect();
            let num = self.num.substitute(&polys);
            let den = self.den.substitute(&polys);
            if den.is_zero() {
                return Err(CoeffError::Pole(self.den.to_string()));
            }
            return Ok(Self::reduce(num, den));
        }
        let num = eval_poly(&self.num, assignment);
        let den = eval_poly(&self.den, assignment);
        if den.is_zero() {
            return Err(CoeffError::Pole(self.den.to_string()));
        }
        num.checked_div(&den)
    }

    /// Convenience wrapper for [`RationalFunction::specialize`] keyed by letters.
    pub fn subs(&self, pairs: &[(char, RationalFunction)]) -> Result<Self, CoeffError> {
        let map = pairs.iter().map(|(c, v)| (*c as u8, v.clone())).collect();
        self.specialize(&map)
    }

    /// Coefficient of `v^k` when `v` does not occur in the denominator.
    pub fn coefficient_of(&self, v: u8, k: u32) -> Result<Self, CoeffError> {
        if self.den.degree_in(v) > 0 {
            return Err(CoeffError::NotPolynomialIn(v as char));
        }
        let c = self.num.coefficients_in(v).remove(&k).unwrap_or_default();
        Ok(Self::reduce(c, self.den.clone()))
    }

    /// Parses the canonical text form (also accepts general arithmetic expressions).
    pub fn parse(s: &str) -> Result<Self, CoeffError> {
        super::parse::parse_rational_function(s)
    }
}

fn eval_poly(p: &Polynomial, assignment: &BTreeMap<u8, RationalFunction>) -> RationalFunction {
    let mut out = RationalFunction::zero();
    let mut powers: BTreeMap<(u8, u32), RationalFunction> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut kept = Vec::new();
        let mut term = RationalFunction::from_rational(c.clone());
        for &(v, e) in m.pairs() {
            match assignment.get(&v) {
                Some(val) => {
                    let pw = powers.entry((v, e)).or_insert_with(|| val.pow(e));
                    term = &term * &*pw;
                }
                None => kept.push((v, e)),
            }
        }
        let mono = Polynomial::monomial(super::Monomial::from_pairs(kept), BigRational::one());
        out = &out + &(&term * &RationalFunction::from_poly(mono));
    }
    out
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let bare = self.den.is_monomial()
            && self.den.leading_term().is_some_and(|(m, c)| c.is_one() && m.pairs().len() == 1);
        if bare {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            return RationalFunction {
                num: &(&self.num * &rhs.den) + &rhs.num,
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            return RationalFunction {
                num: &self.num + &(&rhs.num * &self.den),
                den: self.den.clone(),
            };
        }
        // Henrici: only the common part of the denominators can cancel.
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RationalFunction { num, den: &self.den * &rhs.den };
        }
        let d1 = self.den.exact_div(&g).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.exact_div(&h).unwrap(), g.exact_div(&h).unwrap())
        };
        RationalFunction::normalize_unit(num, &(&d1 * &d2) * &g)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let cross = |n: &Polynomial, d: &Polynomial| -> (Polynomial, Polynomial) {
            if d.is_one() {
                return (n.clone(), d.clone());
            }
            let g = gcd(n, d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.exact_div(&g).unwrap(), d.exact_div(&g).unwrap())
            }
        };
        let (n1, d2) = cross(&self.num, &rhs.den);
        let (n2, d1) = cross(&rhs.num, &self.den);
        RationalFunction::normalize_unit(&n1 * &n2, &d1 * &d2)
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::checked_div`] otherwise.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

forward_owned!(RationalFunction, Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn normalize_cancels_factors() {
        let f = RationalFunction::new(
            Polynomial::var('q').pow(2) - Polynomial::var('t').pow(2),
            Polynomial::var('q') - Polynomial::var('t'),
        )
        .unwrap();
        assert_eq!(f, rf("q + t"));
        assert_eq!(rf("(Z^2 - 1)/(Z - 1)"), rf("Z + 1"));
        let z = RationalFunction::new(Polynomial::zero(), Polynomial::var('q') - Polynomial::one())
            .unwrap();
        assert!(z.is_zero() && z.denom().is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(Polynomial::one(), Polynomial::zero()),
            Err(CoeffError::DivisionByZero)
        );
    }

    #[test]
    fn denominator_sign_and_content() {
        let f = rf("1/(2 - 2*q)");
        assert_eq!(f.denom().to_string(), "q - 1");
        assert_eq!(f.numer().to_string(), "-1/2");
    }

    #[test]
    fn specialize_examples() {
        let q0 = [('q', RationalFunction::zero())];
        assert_eq!(rf("1/(1 - q)").subs(&q0).unwrap(), RationalFunction::one());
        let z0 = [('Z', RationalFunction::zero())];
        assert_eq!(rf("(Z - W)/(Z - 1)").subs(&z0).unwrap(), rf("W"));
        let z1 = [('Z', RationalFunction::one())];
        assert_eq!((rf("(Z - 1)/(Z - 1)") * rf("W")).subs(&z1).unwrap(), rf("W"));
        assert!(matches!(rf("1/(Z - 1)").subs(&z1), Err(CoeffError::Pole(_))));
    }

    #[test]
    fn specialize_to_rational_values() {
        let f = rf("(q + t)/(q - 1)");
        let got = f.subs(&[('q', rf("1/t"))]).unwrap();
        assert_eq!(got, rf("(t^2 + 1)/(1 - t)"));
    }

    #[test]
    fn addition_cancels() {
        let a = rf("1/((q - 1)*(t - 1))");
        let b = rf("1/((q - 1)*(t + 1))");
        assert_eq!(&a - &b, rf("2/((q - 1)*(t^2 - 1))"));
        assert_eq!(&a - &a, RationalFunction::zero());
        assert_eq!(rf("1/(q - 1)") + rf("1/(1 - q)"), RationalFunction::zero());
    }

    #[test]
    fn display_round_trip() {
        for s in ["(q + t)/(q^2 - t)", "-1/q", "1/(2*q)", "3/(q*t)", "q^3/(t + 1)"] {
            let f = rf(s);
            assert_eq!(rf(&f.to_string()), f, "{s}");
        }
    }
}
