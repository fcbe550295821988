//! Symmetric functions in k alphabets, stored in the power-sum basis.
//!
//! A term is keyed by a k-tuple of partitions `(λ¹, …, λᵏ)` standing for the pure
//! tensor p_{λ¹}[X₁]⋯p_{λᵏ}[X_k]. The other classical bases are views computed
//! through cached transition matrices.

mod bases;
mod characters;
mod text;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeffring::{CoeffError, Coefficient, RationalFunction};
use crate::partitions::Partition;

pub use bases::{from_power_sum, invert, to_power_sums, transition, Basis, QMatrix, Transition, HARD_DEGREE_LIMIT};
pub use characters::{character_table, mn_character, CharacterTable};
pub use text::{parse_symfunc, JsonTerm};

/// Degree bound applied by the higher-level modules unless raised explicitly.
pub const DEFAULT_MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("degree {0} exceeds the supported maximum {1}")]
    DegreeTooLarge(usize, usize),
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("alphabet {0} out of range")]
    NoSuchAlphabet(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

pub type Key = Vec<Partition>;

#[derive(Clone, PartialEq)]
pub struct SymFunc<C> {
    alphabets: usize,
    terms: BTreeMap<Key, C>,
}

fn z_rational(p: &Partition) -> BigRational {
    BigRational::from_integer(BigInt::from(p.z()))
}

impl<C: Coefficient> SymFunc<C> {
    pub fn zero(alphabets: usize) -> Self {
        SymFunc { alphabets, terms: BTreeMap::new() }
    }

    pub fn constant(alphabets: usize, c: C) -> Self {
        Self::term(vec![Partition::empty(); alphabets], c)
    }

    pub fn one(alphabets: usize) -> Self {
        Self::constant(alphabets, C::one())
    }

    pub fn term(key: Key, c: C) -> Self {
        let mut f = SymFunc { alphabets: key.len(), terms: BTreeMap::new() };
        f.add_term(key, c);
        f
    }

    /// p_λ in a single alphabet.
    pub fn p(lam: &Partition) -> Self {
        Self::term(vec![lam.clone()], C::one())
    }

    /// p_λ[X_j] among `alphabets` alphabets.
    pub fn p_in(alphabets: usize, j: usize, lam: &Partition) -> Self {
        let mut key = vec![Partition::empty(); alphabets];
        key[j] = lam.clone();
        Self::term(key, C::one())
    }

    /// The basis element b_λ in a single alphabet.
    pub fn basis(b: Basis, lam: &Partition) -> Result<Self, SymError> {
        Self::basis_in(1, 0, b, lam)
    }

    /// b_λ[X_j] among `alphabets` alphabets.
    pub fn basis_in(alphabets: usize, j: usize, b: Basis, lam: &Partition) -> Result<Self, SymError> {
        let mut f = SymFunc::zero(alphabets);
        for (rho, c) in to_power_sums(b, lam)? {
            let mut key = vec![Partition::empty(); alphabets];
            key[j] = rho;
            f.add_term(key, C::from_rational(c));
        }
        Ok(f)
    }

    pub fn s(lam: &Partition) -> Self {
        Self::basis(Basis::Schur, lam).expect("degree within limit")
    }

    pub fn h(lam: &Partition) -> Self {
        Self::basis(Basis::Complete, lam).expect("degree within limit")
    }

    pub fn e(lam: &Partition) -> Self {
        Self::basis(Basis::Elementary, lam).expect("degree within limit")
    }

    pub fn m(lam: &Partition) -> Self {
        Self::basis(Basis::Monomial, lam).expect("degree within limit")
    }

    /// Σ_λ c_λ·b_λ from a single-alphabet expansion.
    pub fn from_basis_expansion<'a, I>(b: Basis, coeffs: I) -> Result<Self, SymError>
    where
        I: IntoIterator<Item = (&'a Partition, &'a C)>,
    {
        let mut f = SymFunc::zero(1);
        for (lam, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            for (rho, d) in to_power_sums(b, lam)? {
                f.add_term(vec![rho], c.scale(&d));
            }
        }
        Ok(f)
    }

    pub fn add_term(&mut self, key: Key, c: C) {
        debug_assert_eq!(key.len(), self.alphabets);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn alphabet_count(&self) -> usize {
        self.alphabets
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Key, C)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, key: &[Partition]) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the empty key.
    pub fn constant_term(&self) -> C {
        self.coefficient(&vec![Partition::empty(); self.alphabets])
    }

    /// Total degree of each term if all agree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|k| k.iter().map(Partition::size).sum::<usize>());
        let d = degs.next().unwrap_or(0);
        degs.all(|e| e == d).then_some(d)
    }

    /// Degree in alphabet `j` if all terms agree.
    pub fn degree_in(&self, j: usize) -> Option<usize> {
        let mut degs = self.terms.keys().map(|k| k[j].size());
        let d = degs.next().unwrap_or(0);
        degs.all(|e| e == d).then_some(d)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SymFunc<D> {
        let mut out = SymFunc::zero(self.alphabets);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    pub fn try_map_coefficients<D: Coefficient, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<SymFunc<D>, E> {
        let mut out = SymFunc::zero(self.alphabets);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return SymFunc::zero(self.alphabets);
        }
        self.map_coefficients(|a| a.clone() * c)
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        self.map_coefficients(|a| a.scale(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.alphabets, other.alphabets, "alphabet counts differ");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.alphabets, other.alphabets, "alphabet counts differ");
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| -c.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Ring product; power-sum indices concatenate alphabet by alphabet.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.alphabets, other.alphabets, "alphabet counts differ");
        let mut out = SymFunc::zero(self.alphabets);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key = k1.iter().zip(k2).map(|(a, b)| a.union(b)).collect();
                out.add_term(key, c1.clone() * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = SymFunc::one(self.alphabets);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// F[X₁..X_a]·G[X_{a+1}..X_{a+b}].
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = SymFunc::zero(self.alphabets + other.alphabets);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key = k1.iter().chain(k2).cloned().collect();
                out.add_term(key, c1.clone() * c2);
            }
        }
        out
    }

    /// Tensor product of a list of functions.
    pub fn tensor_all(factors: &[SymFunc<C>]) -> Self {
        factors.iter().fold(SymFunc::one(0), |acc, f| acc.tensor(f))
    }

    /// Homogeneous component of total degree `d`.
    pub fn component(&self, d: usize) -> Self {
        SymFunc {
            alphabets: self.alphabets,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.iter().map(Partition::size).sum::<usize>() == d)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Adams operator p_n: indices scaled by n, coefficients raised by p_n.
    pub fn adams(&self, n: usize) -> Self {
        if n == 1 {
            return self.clone();
        }
        SymFunc {
            alphabets: self.alphabets,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().map(|p| p.scale(n)).collect(), c.adams(n as u32)))
                .collect(),
        }
    }

    /// Coefficients of F with alphabet `j` expanded in basis `b` (key[j] becomes the b-index).
    pub fn convert(&self, j: usize, b: Basis) -> Result<BTreeMap<Key, C>, SymError> {
        if j >= self.alphabets {
            return Err(SymError::NoSuchAlphabet(j));
        }
        let mut out = SymFunc::zero(self.alphabets);
        for (k, c) in &self.terms {
            for (lam, d) in from_power_sum(b, &k[j])? {
                let mut key = k.clone();
                key[j] = lam;
                out.add_term(key, c.scale(&d));
            }
        }
        Ok(out.terms)
    }

    /// Coefficients with every alphabet expanded in basis `b`.
    pub fn convert_all(&self, b: Basis) -> Result<BTreeMap<Key, C>, SymError> {
        let mut cur = self.clone();
        for j in 0..self.alphabets {
            cur = SymFunc { alphabets: self.alphabets, terms: cur.convert(j, b)? };
        }
        Ok(cur.terms)
    }

    /// Inverse of [`SymFunc::convert`].
    pub fn from_converted(alphabets: usize, j: usize, b: Basis, coeffs: &BTreeMap<Key, C>) -> Result<Self, SymError> {
        let mut out = SymFunc::zero(alphabets);
        for (k, c) in coeffs {
            for (rho, d) in to_power_sums(b, &k[j])? {
                let mut key = k.clone();
                key[j] = rho;
                out.add_term(key, c.scale(&d));
            }
        }
        Ok(out)
    }

    /// Single-alphabet expansion in basis `b`.
    pub fn expand(&self, b: Basis) -> Result<BTreeMap<Partition, C>, SymError> {
        if self.alphabets != 1 {
            return Err(SymError::AlphabetMismatch(self.alphabets, 1));
        }
        Ok(self.convert(0, b)?.into_iter().map(|(mut k, c)| (k.remove(0), c)).collect())
    }

    /// Coefficient of b_λ in a single-alphabet function.
    pub fn coefficient_in(&self, b: Basis, lam: &Partition) -> Result<C, SymError> {
        Ok(self.expand(b)?.remove(lam).unwrap_or_else(C::zero))
    }

    /// Hall pairing in alphabet `j` of both operands; the result lives in the
    /// remaining alphabets of `self` followed by those of `other`.
    pub fn hall_pairing(&self, other: &Self, j: usize) -> Result<Self, SymError> {
        if j >= self.alphabets || j >= other.alphabets {
            return Err(SymError::NoSuchAlphabet(j));
        }
        let mut out = SymFunc::zero(self.alphabets + other.alphabets - 2);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                if k1[j] != k2[j] {
                    continue;
                }
                let key = k1
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .chain(k2.iter().enumerate().filter(|&(i, _)| i != j))
                    .map(|(_, p)| p.clone())
                    .collect();
                out.add_term(key, (c1.clone() * c2).scale(&z_rational(&k1[j])));
            }
        }
        Ok(out)
    }

    /// Hall pairing in every alphabet at once.
    pub fn hall_scalar(&self, other: &Self) -> Result<C, SymError> {
        if self.alphabets != other.alphabets {
            return Err(SymError::AlphabetMismatch(self.alphabets, other.alphabets));
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = C::zero();
        for (k, c) in &small.terms {
            if let Some(d) = big.terms.get(k) {
                let z: BigRational = k.iter().map(z_rational).product();
                acc = acc + &(c.clone() * d).scale(&z);
            }
        }
        Ok(acc)
    }

    /// Removes alphabet `j`, which must carry only the empty partition.
    pub fn drop_alphabet(&self, j: usize) -> Result<Self, SymError> {
        let mut out = SymFunc::zero(self.alphabets - 1);
        for (k, c) in &self.terms {
            if !k[j].is_empty() {
                return Err(SymError::SizeMismatch(k[j].size(), 0));
            }
            let mut key = k.clone();
            key.remove(j);
            out.add_term(key, c.clone());
        }
        Ok(out)
    }

    /// Scalar value of a function with no alphabets (or only the empty key).
    pub fn scalar(&self) -> C {
        self.constant_term()
    }

    /// Embeds into `total` alphabets, placing alphabet i at `positions[i]`.
    pub fn embed(&self, total: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.alphabets);
        let mut out = SymFunc::zero(total);
        for (k, c) in &self.terms {
            let mut key = vec![Partition::empty(); total];
            for (i, &pos) in positions.iter().enumerate() {
                key[pos] = k[i].clone();
            }
            out.add_term(key, c.clone());
        }
        out
    }
}

impl SymFunc<RationalFunction> {
    /// Sum of all power-sum coefficients, i.e. F[1] in each alphabet.
    pub fn eval_at_one(&self) -> RationalFunction {
        self.terms.values().fold(RationalFunction::zero(), |acc, c| &acc + c)
    }

    /// Applies a scalar specialization to every coefficient.
    pub fn specialize(&self, pairs: &[(char, RationalFunction)]) -> Result<Self, CoeffError> {
        self.try_map_coefficients(|c| c.subs(pairs))
    }
}

/// (F, G)^{q,t} = ⟨F[X], G[(q−1)(1−t)X]⟩ for single-alphabet operands.
pub fn qt_hall_pairing(f: &SymFunc<RationalFunction>, g: &SymFunc<RationalFunction>) -> Result<RationalFunction, SymError> {
    let expr = crate::plethysm::AlphabetExpr::qt_scaled(0);
    let g2 = crate::plethysm::substitute(g, 0, &expr)?;
    f.hall_scalar(&g2)
}

impl<C: Coefficient> std::fmt::Display for SymFunc<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", text::format_terms(Basis::PowerSum, &self.terms))
    }
}

impl<C: std::fmt::Debug> std::fmt::Debug for SymFunc<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
