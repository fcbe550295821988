use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// A power product of single-letter indeterminates.
///
/// Stored as `(letter, exponent)` pairs sorted by letter with positive exponents.
/// The ordering is graded lexicographic: total degree first, then the exponent of
/// the alphabetically first letter, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(u8, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: u8) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: u8, e: u32) -> Self {
        let mut m = SmallVec::new();
        if e > 0 {
            m.push((v, e));
        }
        Monomial(m)
    }

    pub fn from_pairs<I: IntoIterator<Item = (u8, u32)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<u8, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(u8, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: u8) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = u8> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let f = other.exponent(v);
                    (f > 0).then(|| (v, e.min(f)))
                })
                .collect(),
        )
    }

    /// Splits off the power of `v`: returns `(exponent of v, remaining monomial)`.
    pub fn split(&self, v: u8) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|&&(w, f)| {
                if w == v {
                    e = f;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (e, Monomial(rest))
    }

    /// Multiplies every exponent by `n`.
    pub fn scale_exponents(&self, n: u32) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, e * n)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        for i in 0..a.len().min(b.len()) {
            if a[i].0 != b[i].0 {
                // The monomial carrying the earlier letter is larger.
                return if a[i].0 < b[i].0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            match a[i].1.cmp(&b[i].1) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, &(v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", v as char)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse multivariate polynomial over ℚ in single-letter indeterminates.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// The indeterminate named by an ASCII letter.
    pub fn var(name: char) -> Self {
        assert!(name.is_ascii_alphabetic(), "indeterminates are single ASCII letters");
        Self::monomial(Monomial::var(name as u8), BigRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if this polynomial is constant (zero counts as constant).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.leading_term().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: u8) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<u8> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if d.is_monomial() {
            let (dm, dc) = d.leading_term().unwrap();
            let inv = dc.recip();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.div(dm)?, c * &inv);
            }
            return Some(Polynomial { terms });
        }
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        if self.total_degree() < d.total_degree() {
            return None;
        }
        for v in d.vars() {
            if self.degree_in(v) < d.degree_in(v) {
                return None;
            }
        }
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(&lm)?;
            let c = rc / &lc;
            rem -= &d.mul_monomial(&m, &c);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Coefficients with respect to `v`, as polynomials in the remaining letters.
    pub fn coefficients_in(&self, v: u8) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            out.entry(e).or_default().terms.insert(rest, c.clone());
        }
        out
    }

    /// Inverse of [`Polynomial::coefficients_in`].
    pub fn from_coefficients_in(v: u8, coeffs: &BTreeMap<u32, Polynomial>) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (&e, p) in coeffs {
            let x = Monomial::var_pow(v, e);
            for (m, c) in &p.terms {
                terms.insert(m.mul(&x), c.clone());
            }
        }
        Polynomial { terms }
    }

    /// Replaces every indeterminate `x` by `x^n`.
    pub fn adams(&self, n: u32) -> Polynomial {
        if n == 1 {
            return self.clone();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.scale_exponents(n), c.clone()))
                .collect(),
        }
    }

    /// Substitutes polynomials for indeterminates; unlisted letters are kept.
    pub fn substitute(&self, assignment: &BTreeMap<u8, Polynomial>) -> Polynomial {
        let mut powers: BTreeMap<(u8, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut term = Polynomial::one();
            for &(v, e) in m.pairs() {
                match assignment.get(&v) {
                    Some(val) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| val.pow(e));
                        term = &term * &*pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            out += &term.mul_monomial(&Monomial::from_pairs(kept), c);
        }
        out
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    /// `self` divided by its content and sign-adjusted so the leading coefficient is positive.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut c = self.content();
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Whether all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Evaluates at a rational point for all listed letters.
    pub fn evaluate(&self, point: &BTreeMap<u8, BigRational>) -> Polynomial {
        let assignment = point
            .iter()
            .map(|(&v, c)| (v, Polynomial::constant(c.clone())))
            .collect();
        self.substitute(&assignment)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        big += small;
        big
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut acc: std::collections::HashMap<Monomial, BigRational> =
            std::collections::HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let prod = c1 * c2;
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                }
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $f:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty { (&self).$f(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $f(self, rhs: &$ty) -> $ty { (&self).$f(rhs) }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty { self.$f(&rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(Polynomial, Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Polynomial {
        Polynomial::var('q')
    }
    fn t() -> Polynomial {
        Polynomial::var('t')
    }

    #[test]
    fn prints_in_graded_lex_order() {
        let p = -(q().pow(3) * t()) - q().pow(2) * t().pow(2) + q().pow(2) + q() * t() + t().pow(2);
        assert_eq!(p.to_string(), "-q^3*t - q^2*t^2 + q^2 + q*t + t^2");
    }

    #[test]
    fn constants_and_rational_coefficients() {
        let half = BigRational::new(1.into(), 2.into());
        let p = q().scale(&half) - Polynomial::from_int(3);
        assert_eq!(p.to_string(), "1/2*q - 3");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = q().pow(2) - t().pow(2);
        let b = q() - t();
        assert_eq!(a.exact_div(&b), Some(q() + t()));
        assert_eq!(b.exact_div(&a), None);
        assert_eq!((q() + Polynomial::one()).exact_div(&t()), None);
    }

    #[test]
    fn monomial_order() {
        let qt = Monomial::from_pairs([(b'q', 1), (b't', 1)]);
        let q2 = Monomial::var_pow(b'q', 2);
        let t2 = Monomial::var_pow(b't', 2);
        assert!(q2 > qt && qt > t2);
        assert!(Monomial::var(b't') > Monomial::one());
    }

    #[test]
    fn substitute_and_adams() {
        let p = q() * t() + Polynomial::one();
        let mut a = BTreeMap::new();
        a.insert(b'q', t());
        assert_eq!(p.substitute(&a), t().pow(2) + Polynomial::one());
        assert_eq!(p.adams(3), q().pow(3) * t().pow(3) + Polynomial::one());
    }
}
