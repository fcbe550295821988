//! Adams operators, plethystic substitution into alphabet expressions, and
//! plethystic Exp/Log on degree-truncated series in an auxiliary variable s.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeffring::{CoeffError, Coefficient, RationalFunction};
use crate::partitions::Partition;
use crate::symfunc::{SymError, SymFunc};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlethysmError {
    #[error("Exp needs a series without constant term")]
    NonzeroConstant,
    #[error("Log needs a series with constant term 1")]
    ConstantNotOne,
    #[error("series caps differ: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// `scale · ∏ X_j` over the listed alphabets; no alphabets means a scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub scale: RationalFunction,
    pub alphabets: Vec<usize>,
}

/// A formal sum of atoms, evaluated by p_n[Σ a] = Σ p_n[a] and
/// p_n[c·X_i·X_j] = c(x → xⁿ)·p_n[X_i]·p_n[X_j].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AlphabetExpr {
    pub atoms: Vec<Atom>,
}

impl AlphabetExpr {
    /// X_j.
    pub fn alphabet(j: usize) -> Self {
        Self::scaled_alphabet(RationalFunction::one(), j)
    }

    /// c·X_j.
    pub fn scaled_alphabet(c: RationalFunction, j: usize) -> Self {
        AlphabetExpr { atoms: vec![Atom { scale: c, alphabets: vec![j] }] }
    }

    /// The scalar alphabet c (for instance 1 − u).
    pub fn scalar(c: RationalFunction) -> Self {
        AlphabetExpr { atoms: vec![Atom { scale: c, alphabets: vec![] }] }
    }

    /// c·X_i·X_j.
    pub fn product(c: RationalFunction, i: usize, j: usize) -> Self {
        AlphabetExpr { atoms: vec![Atom { scale: c, alphabets: vec![i, j] }] }
    }

    /// (q−1)(1−t)·X_j.
    pub fn qt_scaled(j: usize) -> Self {
        Self::scaled_alphabet(RationalFunction::parse("(q - 1)*(1 - t)").unwrap(), j)
    }

    pub fn plus(mut self, other: AlphabetExpr) -> Self {
        self.atoms.extend(other.atoms);
        self
    }

    pub fn negate(mut self) -> Self {
        for a in &mut self.atoms {
            a.scale = -a.scale.clone();
        }
        self
    }

    /// p_n[expr] as a function in `alphabets` alphabets.
    pub fn power_sum<C: Coefficient>(&self, n: usize, alphabets: usize) -> SymFunc<C> {
        let mut out = SymFunc::zero(alphabets);
        let pn = Partition::row(n);
        for atom in &self.atoms {
            let mut key = vec![Partition::empty(); alphabets];
            for &j in &atom.alphabets {
                key[j] = key[j].union(&pn);
            }
            out.add_term(key, C::from(atom.scale.adams(n as u32)));
        }
        out
    }
}

/// Replaces p_n[X_j] by p_n[expr] throughout F; the alphabet count is unchanged.
pub fn substitute<C: Coefficient>(f: &SymFunc<C>, j: usize, expr: &AlphabetExpr) -> Result<SymFunc<C>, SymError> {
    let k = f.alphabet_count();
    if j >= k {
        return Err(SymError::NoSuchAlphabet(j));
    }
    if expr.atoms.iter().flat_map(|a| &a.alphabets).any(|&i| i >= k) {
        return Err(SymError::NoSuchAlphabet(k));
    }
    let mut single: HashMap<usize, SymFunc<C>> = HashMap::new();
    let mut products: HashMap<Partition, SymFunc<C>> = HashMap::new();
    let mut out = SymFunc::zero(k);
    for (key, c) in f.terms() {
        let pi = &key[j];
        if !products.contains_key(pi) {
            let mut acc = SymFunc::one(k);
            for &m in pi.parts() {
                let pm = single.entry(m).or_insert_with(|| expr.power_sum(m, k));
                acc = acc.mul(pm);
            }
            products.insert(pi.clone(), acc);
        }
        let mut rest = key.clone();
        rest[j] = Partition::empty();
        out.add_assign(&SymFunc::term(rest, c.clone()).mul(&products[pi]));
    }
    Ok(out)
}

/// Coefficient of `v^k` in every coefficient of F.
pub fn extract_u_coefficient(
    f: &SymFunc<RationalFunction>,
    v: char,
    k: u32,
) -> Result<SymFunc<RationalFunction>, CoeffError> {
    f.try_map_coefficients(|c| c.coefficient_of(v as u8, k))
}

/// F with `v` set to `value`.
pub fn eval_u(
    f: &SymFunc<RationalFunction>,
    v: char,
    value: &RationalFunction,
) -> Result<SymFunc<RationalFunction>, CoeffError> {
    f.try_map_coefficients(|c| c.subs(&[(v, value.clone())]))
}

/// F[1−u]/(1−u) at u = 1 for a single-alphabet F; equals ⟨F, p_n⟩.
pub fn hook_evaluation(f: &SymFunc<RationalFunction>) -> Result<RationalFunction, PlethysmError> {
    let one_minus_u = RationalFunction::parse("1 - u").unwrap();
    let g = substitute(f, 0, &AlphabetExpr::scalar(one_minus_u.clone()))?;
    let v = g.drop_alphabet(0)?.scalar();
    let q = v.checked_div(&one_minus_u)?;
    Ok(q.subs(&[('u', RationalFunction::one())])?)
}

/// Power series Σ_d F_d·s^d truncated above `cap`, constant term kept explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    alphabets: usize,
    coeffs: Vec<SymFunc<C>>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(alphabets: usize, cap: usize) -> Self {
        TruncatedSeries { alphabets, coeffs: vec![SymFunc::zero(alphabets); cap + 1] }
    }

    pub fn one(alphabets: usize, cap: usize) -> Self {
        let mut s = Self::zero(alphabets, cap);
        s.coeffs[0] = SymFunc::one(alphabets);
        s
    }

    /// Builds a series from its coefficients; entries past `cap` are dropped.
    pub fn from_coeffs(alphabets: usize, cap: usize, coeffs: Vec<SymFunc<C>>) -> Self {
        let mut s = Self::zero(alphabets, cap);
        for (d, c) in coeffs.into_iter().enumerate().take(cap + 1) {
            assert_eq!(c.alphabet_count(), alphabets);
            s.coeffs[d] = c;
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn alphabet_count(&self) -> usize {
        self.alphabets
    }

    pub fn coeff(&self, d: usize) -> &SymFunc<C> {
        &self.coeffs[d]
    }

    pub fn set_coeff(&mut self, d: usize, f: SymFunc<C>) {
        self.coeffs[d] = f;
    }

    pub fn coeffs(&self) -> &[SymFunc<C>] {
        &self.coeffs
    }

    fn check_cap(&self, other: &Self) -> Result<(), PlethysmError> {
        if self.cap() != other.cap() {
            return Err(PlethysmError::CapMismatch(self.cap(), other.cap()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PlethysmError> {
        self.check_cap(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Ok(TruncatedSeries { alphabets: self.alphabets, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PlethysmError> {
        self.check_cap(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect();
        Ok(TruncatedSeries { alphabets: self.alphabets, coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PlethysmError> {
        self.check_cap(other)?;
        let cap = self.cap();
        let mut out = Self::zero(self.alphabets, cap);
        for i in 0..=cap {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=cap - i {
                if !other.coeffs[j].is_zero() {
                    out.coeffs[i + j].add_assign(&self.coeffs[i].mul(&other.coeffs[j]));
                }
            }
        }
        Ok(out)
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            alphabets: self.alphabets,
            coeffs: self.coeffs.iter().map(|f| f.scale_rational(c)).collect(),
        }
    }

    /// p_n on series: s-degree multiplied by n, then truncated.
    pub fn adams(&self, n: usize) -> Self {
        let cap = self.cap();
        let mut out = Self::zero(self.alphabets, cap);
        for (d, f) in self.coeffs.iter().enumerate() {
            if d * n <= cap && !f.is_zero() {
                out.coeffs[d * n] = f.adams(n);
            }
        }
        out
    }

    /// Exp[G] = exp(Σ_{n≥1} p_n[G]/n).
    pub fn exp_pleth(&self) -> Result<Self, PlethysmError> {
        if !self.coeffs[0].is_zero() {
            return Err(PlethysmError::NonzeroConstant);
        }
        let cap = self.cap();
        let mut s = Self::zero(self.alphabets, cap);
        for n in 1..=cap {
            let term = self.adams(n).scale_rational(&ratio(1, n as i64));
            s = s.add(&term)?;
        }
        Ok(s.exp_formal())
    }

    /// Log[H] = Σ_{n≥1} μ(n)/n · p_n[log H].
    pub fn log_pleth(&self) -> Result<Self, PlethysmError> {
        if self.coeffs[0] != SymFunc::one(self.alphabets) {
            return Err(PlethysmError::ConstantNotOne);
        }
        let cap = self.cap();
        let log = self.log_formal();
        let mut out = Self::zero(self.alphabets, cap);
        for n in 1..=cap {
            let mu = mobius(n);
            if mu != 0 {
                out = out.add(&log.adams(n).scale_rational(&ratio(mu, n as i64)))?;
            }
        }
        Ok(out)
    }

    // exp of a series without constant term: d·E_d = Σ_k k·S_k·E_{d−k}.
    fn exp_formal(&self) -> Self {
        let cap = self.cap();
        let mut e = Self::one(self.alphabets, cap);
        for d in 1..=cap {
            let mut acc = SymFunc::zero(self.alphabets);
            for k in 1..=d {
                if !self.coeffs[k].is_zero() && !e.coeffs[d - k].is_zero() {
                    acc.add_assign(&self.coeffs[k].mul(&e.coeffs[d - k]).scale_rational(&ratio(k as i64, 1)));
                }
            }
            e.coeffs[d] = acc.scale_rational(&ratio(1, d as i64));
        }
        e
    }

    // log of a series with constant term 1: d·L_d = d·H_d − Σ_{k<d} k·L_k·H_{d−k}.
    fn log_formal(&self) -> Self {
        let cap = self.cap();
        let mut l = Self::zero(self.alphabets, cap);
        for d in 1..=cap {
            let mut acc = self.coeffs[d].scale_rational(&ratio(d as i64, 1));
            for k in 1..d {
                if !l.coeffs[k].is_zero() && !self.coeffs[d - k].is_zero() {
                    acc = acc.sub(&l.coeffs[k].mul(&self.coeffs[d - k]).scale_rational(&ratio(k as i64, 1)));
                }
            }
            l.coeffs[d] = acc.scale_rational(&ratio(1, d as i64));
        }
        l
    }
}

/// Exp[expr·s] truncated at `cap`.
pub fn exp_of_expr<C: Coefficient>(expr: &AlphabetExpr, alphabets: usize, cap: usize) -> Result<TruncatedSeries<C>, PlethysmError> {
    let mut g = TruncatedSeries::zero(alphabets, cap);
    if cap >= 1 {
        g.set_coeff(1, expr.power_sum(1, alphabets));
    }
    g.exp_pleth()
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// The Möbius function.
pub fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::Basis;

    type F = SymFunc<RationalFunction>;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }
    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn adams_on_power_sums() {
        assert_eq!(F::p(&p("[3]")).adams(2), F::p(&p("[6]")));
        let mut series = TruncatedSeries::<RationalFunction>::zero(1, 2);
        series.set_coeff(1, F::p(&p("[1]")).scale(&rf("q")));
        let a = series.adams(2);
        assert_eq!(a.coeff(2), &F::p(&p("[2]")).scale(&rf("q^2")));
        assert!(a.coeff(1).is_zero());
        assert_eq!(series.adams(1), series);
    }

    #[test]
    fn scalar_substitutions() {
        for n in 1..=4 {
            let pn = F::p(&Partition::row(n));
            let a = substitute(&pn, 0, &AlphabetExpr::scalar(rf("1 - u"))).unwrap();
            assert_eq!(a.scalar(), rf(&format!("1 - u^{n}")));
            let b = substitute(&pn, 0, &AlphabetExpr::scalar(rf("1 + u"))).unwrap();
            assert_eq!(b.scalar(), rf(&format!("1 + u^{n}")));
        }
    }

    #[test]
    fn identity_substitution() {
        let f = F::s(&p("[2,1]")).scale(&rf("q + t"));
        assert_eq!(substitute(&f, 0, &AlphabetExpr::alphabet(0)).unwrap(), f);
    }

    #[test]
    fn hook_evaluation_examples() {
        assert_eq!(hook_evaluation(&F::p(&p("[3]"))).unwrap(), RationalFunction::from_int(3));
        assert_eq!(hook_evaluation(&F::p(&p("[2,1]"))).unwrap(), RationalFunction::zero());
    }

    #[test]
    fn exp_of_alphabet_gives_complete_functions() {
        let e = exp_of_expr::<RationalFunction>(&AlphabetExpr::alphabet(0), 1, 4).unwrap();
        for n in 0..=4 {
            assert_eq!(e.coeff(n), &F::h(&Partition::row(n)));
        }
        let zero = TruncatedSeries::<RationalFunction>::zero(1, 3);
        assert_eq!(zero.exp_pleth().unwrap(), TruncatedSeries::one(1, 3));
    }

    #[test]
    fn exp_of_negative_z_alphabet() {
        let e = exp_of_expr::<RationalFunction>(&AlphabetExpr::scaled_alphabet(rf("-z"), 0), 1, 4).unwrap();
        for n in 1..=4usize {
            let got = extract_u_coefficient(e.coeff(n), 'z', n as u32).unwrap();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(got, F::e(&Partition::row(n)).scale(&RationalFunction::from_int(sign)));
        }
    }

    #[test]
    fn log_inverts_exp() {
        let mut g = TruncatedSeries::<RationalFunction>::zero(2, 3);
        g.set_coeff(1, F::p_in(2, 0, &p("[1]")).scale(&rf("q/(1 - t)")));
        g.set_coeff(2, F::p_in(2, 1, &p("[2]")).add(&F::p_in(2, 0, &p("[1,1]"))));
        let e = g.exp_pleth().unwrap();
        assert_eq!(e.log_pleth().unwrap(), g);
    }

    #[test]
    fn constant_term_errors() {
        let one = TruncatedSeries::<RationalFunction>::one(1, 2);
        assert_eq!(one.exp_pleth(), Err(PlethysmError::NonzeroConstant));
        let zero = TruncatedSeries::<RationalFunction>::zero(1, 2);
        assert_eq!(zero.log_pleth(), Err(PlethysmError::ConstantNotOne));
    }

    #[test]
    fn pairing_with_h_n1_via_one_plus_u() {
        let f = F::s(&p("[2,1]")).add(&F::p(&p("[3]")).scale(&rf("q")));
        let g = substitute(&f, 0, &AlphabetExpr::scalar(rf("1 + u"))).unwrap();
        let lhs = extract_u_coefficient(&g, 'u', 1).unwrap().scalar();
        let rhs = f.coefficient_in(Basis::Monomial, &p("[2,1]")).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mobius_values() {
        let v: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(v, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
