//! Orbit bookkeeping and kernel-pairing evaluators: (twisted) Poincaré
//! polynomials of comet-shaped quiver varieties and three formulas for the
//! structure coefficients c^{1ⁿ}_𝛍.
//!
//! Eigenvalues never enter; every formula depends only on multiplicities and
//! Jordan types, and genericity of the orbits is assumed.

use serde::{Deserialize, Serialize};

use crate::coeffring::{Monomial, Polynomial, RationalFunction};
use crate::hashtag::{ccoef, CCoefficientQuery, HashtagError};
use crate::hlvkernel::{hlv, pair_then_specialize, KernelError, Specialization};
use crate::partitions::Partition;
use crate::symfunc::{SymError, SymFunc};

type Sf = SymFunc<RationalFunction>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("OddDimension: d = {0}")]
    OddDimension(i64),
    #[error("NegativeCoefficient: {0}")]
    NegativeCoefficient(String),
    #[error("result is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("twist does not match the spec: {0}")]
    TwistMismatch(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Hashtag(#[from] HashtagError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// An adjoint orbit: eigenvalue multiplicities ν and a Jordan type μ^i ⊢ ν_i per eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PunctureSpec {
    pub multiplicities: Partition,
    pub jordan: Vec<Partition>,
}

impl PunctureSpec {
    pub fn new(multiplicities: Partition, jordan: Vec<Partition>) -> Result<Self, GeometryError> {
        let p = PunctureSpec { multiplicities, jordan };
        p.validate()?;
        Ok(p)
    }

    /// Regular semisimple orbit of rank n.
    pub fn regular_semisimple(n: usize) -> Self {
        PunctureSpec { multiplicities: Partition::column(n), jordan: vec![Partition::row(1); n] }
    }

    /// A single eigenvalue with Jordan type `mu`.
    pub fn unipotent(mu: Partition) -> Self {
        PunctureSpec { multiplicities: Partition::row(mu.size()), jordan: vec![mu] }
    }

    pub fn rank(&self) -> usize {
        self.multiplicities.size()
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let nu = self.multiplicities.parts();
        if nu.len() != self.jordan.len() {
            return Err(GeometryError::InvalidSpec(format!(
                "{} multiplicities but {} Jordan types",
                nu.len(),
                self.jordan.len()
            )));
        }
        for (m, mu) in nu.iter().zip(&self.jordan) {
            if mu.size() != *m {
                return Err(GeometryError::InvalidSpec(format!("Jordan type {mu} is not a partition of {m}")));
            }
        }
        Ok(())
    }

    /// s_{(μ^i)'} products for this puncture, in a single alphabet.
    fn conjugate_schur(&self) -> Sf {
        self.jordan.iter().fold(Sf::one(1), |acc, mu| acc.mul(&Sf::s(&mu.conjugate())))
    }

    /// Levi block sizes: the parts of every (μ^i)', with multiplicities.
    pub fn block_classes(&self) -> Vec<(usize, usize)> {
        let mut all: Vec<usize> = self.jordan.iter().flat_map(|mu| mu.conjugate().parts().to_vec()).collect();
        all.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_unsorted(all).multiplicities()
    }
}

/// n² − Σ_i Σ_r ((μ^i)'_r)².
pub fn orbit_dim(p: &PunctureSpec) -> i64 {
    let n = p.rank() as i64;
    let centralizer: i64 = p
        .jordan
        .iter()
        .flat_map(|mu| mu.conjugate().parts().to_vec())
        .map(|c| (c * c) as i64)
        .sum();
    n * n - centralizer
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CometSpec {
    pub genus: usize,
    pub n: usize,
    pub punctures: Vec<PunctureSpec>,
}

impl CometSpec {
    pub fn new(genus: usize, n: usize, punctures: Vec<PunctureSpec>) -> Result<Self, GeometryError> {
        let s = CometSpec { genus, n, punctures };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.punctures.is_empty() {
            return Err(GeometryError::InvalidSpec("no punctures".into()));
        }
        for (j, p) in self.punctures.iter().enumerate() {
            p.validate()?;
            if p.rank() != self.n {
                return Err(GeometryError::InvalidSpec(format!("puncture {j} has rank {} instead of {}", p.rank(), self.n)));
            }
        }
        Ok(())
    }

    pub fn points(&self) -> usize {
        self.punctures.len()
    }

    /// s_{𝛍'} = ∏_j ∏_i s_{(μ^{j,i})'}[X_j].
    pub fn conjugate_schur(&self) -> Sf {
        Sf::tensor_all(&self.punctures.iter().map(PunctureSpec::conjugate_schur).collect::<Vec<_>>())
    }
}

/// d_𝛍 = n²(2g−2) + 2 + Σ_j dim 𝒪_j, which must be even.
pub fn total_dim(spec: &CometSpec) -> Result<i64, GeometryError> {
    spec.validate()?;
    let n = spec.n as i64;
    let d = n * n * (2 * spec.genus as i64 - 2) + 2 + spec.punctures.iter().map(orbit_dim).sum::<i64>();
    if d % 2 != 0 {
        return Err(GeometryError::OddDimension(d));
    }
    Ok(d)
}

/// A Weyl-group conjugacy class for one block size: cycle type η ⊢ m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistClass {
    pub block_size: usize,
    pub cycle_type: Partition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PunctureTwist {
    pub puncture: usize,
    pub classes: Vec<TwistClass>,
}

/// Twists per puncture; punctures or block sizes not listed carry the identity.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwistSpec(pub Vec<PunctureTwist>);

impl TwistSpec {
    pub fn identity() -> Self {
        TwistSpec(Vec::new())
    }

    /// Resolved cycle types: for each puncture, (c, m, η) per block class.
    fn resolve(&self, spec: &CometSpec) -> Result<Vec<Vec<(usize, Partition)>>, GeometryError> {
        let mut out: Vec<Vec<(usize, Partition)>> = spec
            .punctures
            .iter()
            .map(|p| p.block_classes().into_iter().map(|(c, m)| (c, Partition::column(m))).collect())
            .collect();
        for pt in &self.0 {
            let slot = out
                .get_mut(pt.puncture)
                .ok_or_else(|| GeometryError::TwistMismatch(format!("no puncture {}", pt.puncture)))?;
            for cl in &pt.classes {
                let entry = slot.iter_mut().find(|(c, _)| *c == cl.block_size).ok_or_else(|| {
                    GeometryError::TwistMismatch(format!("puncture {} has no blocks of size {}", pt.puncture, cl.block_size))
                })?;
                if entry.1.size() != cl.cycle_type.size() {
                    return Err(GeometryError::TwistMismatch(format!(
                        "cycle type {} for {} blocks of size {}",
                        cl.cycle_type,
                        entry.1.size(),
                        cl.block_size
                    )));
                }
                entry.1 = cl.cycle_type.clone();
            }
        }
        Ok(out)
    }
}

/// h̃_𝛈 = ∏_j ∏_r ∏_s h_{c^j_r}[X_j^{η^{j,r}_s}] and r(𝛈) = Σ c^j_r Σ_s (η^{j,r}_s − 1).
pub fn twisted_complete(spec: &CometSpec, twist: &TwistSpec) -> Result<(Sf, usize), GeometryError> {
    let resolved = twist.resolve(spec)?;
    let mut factors = Vec::new();
    let mut r = 0;
    for classes in &resolved {
        let mut f = Sf::one(1);
        for (c, eta) in classes {
            for &part in eta.parts() {
                f = f.mul(&Sf::h(&Partition::row(*c)).adams(part));
                r += c * (part - 1);
            }
        }
        factors.push(f);
    }
    Ok((Sf::tensor_all(&factors), r))
}

fn v() -> RationalFunction {
    RationalFunction::var('v')
}

fn v_power(d: i64) -> RationalFunction {
    v().powi(d as i32).expect("v is nonzero")
}

fn sign(odd: bool) -> RationalFunction {
    RationalFunction::from_int(if odd { -1 } else { 1 })
}

fn require_nonnegative_polynomial(f: RationalFunction) -> Result<RationalFunction, GeometryError> {
    let p = f.as_polynomial().ok_or_else(|| GeometryError::NotPolynomial(f.to_string()))?;
    if !p.is_nonnegative_integral() {
        return Err(GeometryError::NegativeCoefficient(f.to_string()));
    }
    Ok(f)
}

/// ⟨test, ℍ_n⟩ for genus `g` with as many punctures as `test` has alphabets, specialized.
fn kernel_pairing(test: &Sf, n: usize, g: usize, spec: Specialization) -> Result<RationalFunction, GeometryError> {
    let kernel = hlv(n, g, test.alphabet_count())?;
    Ok(pair_then_specialize(test, &kernel, spec)?)
}

/// v^{d} ⟨s_{𝛍'}, ℍ_n(0, v)⟩.
pub fn poincare(spec: &CometSpec) -> Result<RationalFunction, GeometryError> {
    let d = total_dim(spec)?;
    let pairing = kernel_pairing(&spec.conjugate_schur(), spec.n, spec.genus, Specialization::Poincare)?;
    require_nonnegative_polynomial(&v_power(d) * &pairing)
}

/// (−1)^{r(𝛈)} v^{d} ⟨h̃_𝛈, ℍ_n(0, v)⟩.
pub fn twisted_poincare(spec: &CometSpec, twist: &TwistSpec) -> Result<RationalFunction, GeometryError> {
    let d = total_dim(spec)?;
    let (test, r) = twisted_complete(spec, twist)?;
    let pairing = kernel_pairing(&test, spec.n, spec.genus, Specialization::Poincare)?;
    let out = &(&sign(r % 2 == 1) * &v_power(d)) * &pairing;
    if !out.is_polynomial() {
        return Err(GeometryError::NotPolynomial(out.to_string()));
    }
    Ok(out)
}

/// Rewrites v^{2k} as x^k; fails on odd powers of v.
fn halve_v(f: &RationalFunction, x: char) -> Result<RationalFunction, GeometryError> {
    let conv = |p: &Polynomial| -> Result<Polynomial, GeometryError> {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let (e, rest) = m.split(b'v');
            if e % 2 == 1 {
                return Err(GeometryError::NotPolynomial(format!("odd power of v in {f}")));
            }
            out.add_term(rest.mul(&Monomial::var_pow(x as u8, e / 2)), c.clone());
        }
        Ok(out)
    };
    RationalFunction::new(conv(f.numer())?, conv(f.denom())?).map_err(|e| GeometryError::Sym(e.into()))
}

fn check_pair(mu: &Partition, nu: &Partition) -> Result<usize, GeometryError> {
    if mu.size() != nu.size() || mu.is_empty() {
        return Err(GeometryError::InvalidSpec(format!("{mu} and {nu} must be nonempty partitions of the same n")));
    }
    Ok(mu.size())
}

/// The 4-puncture genus-0 spec: Jordan types μ', ν', a regular semisimple orbit
/// and a semisimple orbit with multiplicities (n−1, 1).
pub fn four_puncture_spec(mu: &Partition, nu: &Partition) -> Result<CometSpec, GeometryError> {
    let n = check_pair(mu, nu)?;
    let mut punctures = vec![
        PunctureSpec::unipotent(mu.conjugate()),
        PunctureSpec::unipotent(nu.conjugate()),
        PunctureSpec::regular_semisimple(n),
    ];
    punctures.push(if n == 1 {
        PunctureSpec::unipotent(Partition::row(1))
    } else {
        PunctureSpec::new(
            Partition::from_unsorted(vec![n - 1, 1]),
            vec![Partition::column(n - 1), Partition::column(1)],
        )?
    });
    CometSpec::new(0, n, punctures)
}

/// s_μ[X₁] s_ν[X₂] p_(n)[X₃] h_(n−1,1)[X₄].
pub fn trace_test_function(mu: &Partition, nu: &Partition) -> Sf {
    let n = mu.size();
    let h4 = if n == 1 { Sf::h(&Partition::row(1)) } else { Sf::h(&Partition::from_unsorted(vec![n - 1, 1])) };
    Sf::tensor_all(&[Sf::s(mu), Sf::s(nu), Sf::p(&Partition::row(n)), h4])
}

/// c^{1ⁿ}_{μν}(0, t) as the n-cycle-twisted Poincaré polynomial with v² = t.
pub fn c_from_trace(mu: &Partition, nu: &Partition) -> Result<RationalFunction, GeometryError> {
    let n = check_pair(mu, nu)?;
    let d = total_dim(&four_puncture_spec(mu, nu)?)?;
    let pairing = kernel_pairing(&trace_test_function(mu, nu), n, 0, Specialization::Poincare)?;
    let twisted = &(&sign(n % 2 == 0) * &v_power(d)) * &pairing;
    let t_half_d = RationalFunction::var('t').powi(-(d / 2) as i32).expect("t is nonzero");
    Ok(&halve_v(&twisted, 't')? * &t_half_d)
}

/// c^{1ⁿ}_𝛍 = (−1)^{n−1} ⟨∏ s_{μʲ}[X_j] p_(n)[X_{k+1}] h_(n−1,1)[X_{k+2}], ℍ_n⟩ at (Z, W) = (q, t).
pub fn c_from_log(factors: &[Partition]) -> Result<RationalFunction, GeometryError> {
    let first = factors.first().ok_or_else(|| GeometryError::InvalidSpec("no factors".into()))?;
    let n = first.size();
    if n == 0 || factors.iter().any(|f| f.size() != n) {
        return Err(GeometryError::InvalidSpec("factors must be nonempty partitions of one n".into()));
    }
    let mut parts: Vec<Sf> = factors.iter().map(Sf::s).collect();
    parts.push(Sf::p(&Partition::row(n)));
    parts.push(if n == 1 { Sf::h(&Partition::row(1)) } else { Sf::h(&Partition::from_unsorted(vec![n - 1, 1])) });
    let pairing = kernel_pairing(&Sf::tensor_all(&parts), n, 0, Specialization::MixedHodge)?;
    Ok(&sign(n % 2 == 0) * &pairing)
}

/// t^{−dim/2} · IH^w_c(1/q, √(qt)) with the twisted mixed Hodge polynomial
/// (−1)^{n−1} (v√u)^{dim} ⟨test, ℍ_n(−1/√u, v√u)⟩.
///
/// At z = −1/√u, w = v√u the kernel variables are Z = 1/u, W = uv², ε = −v.
pub fn mixed_hodge_rhs(mu: &Partition, nu: &Partition) -> Result<RationalFunction, GeometryError> {
    let n = check_pair(mu, nu)?;
    let d = total_dim(&four_puncture_spec(mu, nu)?)?;
    let test = trace_test_function(mu, nu).map_coefficients(|c| crate::coeffring::HookField::from_base(c.clone()));
    let kernel = hlv(n, 0, 4)?;
    let paired = test.hall_scalar(&kernel).map_err(GeometryError::Sym)?;
    let u = RationalFunction::var('u');
    let z0 = u.inv().expect("u is nonzero");
    let w0 = &u * &v().pow(2);
    let at = paired.specialize(&z0, &w0, &-v()).map_err(KernelError::from)?;
    // (v√u)^{dim} = v^{dim} u^{dim/2}
    let pref = &(&sign(n % 2 == 0) * &v_power(d)) * &u.powi((d / 2) as i32).expect("u is nonzero");
    let ih = &pref * &at;
    // u = 1/q, v² = qt
    let in_x = halve_v(&ih, 'x')?;
    let qt = RationalFunction::parse("q*t").unwrap();
    let q_inv = RationalFunction::var('q').inv().expect("q is nonzero");
    let value = in_x.subs(&[('u', q_inv), ('x', qt)]).map_err(KernelError::from)?;
    let t_half_d = RationalFunction::var('t').powi(-(d / 2) as i32).expect("t is nonzero");
    Ok(&value * &t_half_d)
}

/// The q = 1 side: (−1)^{n−1} t^{−d/2} v^{d} ⟨test, ℍ_n(−1, v)⟩ with v = √t.
pub fn q_equals_one_rhs(mu: &Partition, nu: &Partition) -> Result<RationalFunction, GeometryError> {
    let n = check_pair(mu, nu)?;
    let d = total_dim(&four_puncture_spec(mu, nu)?)?;
    let pairing = kernel_pairing(&trace_test_function(mu, nu), n, 0, Specialization::QEqualsOne)?;
    let twisted = &(&sign(n % 2 == 0) * &v_power(d)) * &pairing;
    let t_half_d = RationalFunction::var('t').powi(-(d / 2) as i32).expect("t is nonzero");
    Ok(&halve_v(&twisted, 't')? * &t_half_d)
}

/// c^{1ⁿ}_{μν}(q, t) from the structure-coefficient formula.
pub fn c_one_column(mu: &Partition, nu: &Partition) -> Result<RationalFunction, GeometryError> {
    let n = check_pair(mu, nu)?;
    Ok(ccoef(&CCoefficientQuery::new(vec![mu.clone(), nu.clone()], Partition::column(n))?)?)
}
