//! Modified Macdonald polynomials H̃_ρ[X; q, t] solved from their triangularity
//! and normalization conditions, with the Kostka matrix, its inverse and norms.

mod linalg;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;
use rayon::prelude::*;

use crate::coeffring::{Monomial, Polynomial, RationalFunction};
use crate::partitions::{enumerate, Partition};
use crate::plethysm::{substitute, AlphabetExpr};
use crate::symfunc::{qt_hall_pairing, Basis, SymError, SymFunc, HARD_DEGREE_LIMIT};

pub use linalg::{interpolate, solve_rational, solve_unique};

type Sf = SymFunc<RationalFunction>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MacdonaldError {
    #[error("SingularSystem: no unique solution for H~_{0}")]
    SingularSystem(Partition),
    #[error("degree {0} is outside the supported range 1..={1}")]
    DegreeOutOfRange(usize, usize),
    #[error("norm of H~_{0} disagrees with the cell product")]
    NormMismatch(Partition),
    #[error("{0} is not a partition of {1}")]
    NotInTable(Partition, usize),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// K̃ (row λ, column ρ), its inverse L̃ (row η, column λ) and the norms a_λ,
/// indexed by the reverse-lex partitions of n.
#[derive(Debug, Clone, PartialEq)]
pub struct MacdonaldTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub kostka: Vec<Vec<RationalFunction>>,
    pub kostka_inv: Vec<Vec<RationalFunction>>,
    pub norms: Vec<RationalFunction>,
    h_tilde: Vec<Sf>,
}

impl MacdonaldTable {
    /// Assembles a table from stored matrices (used when loading a cache).
    pub fn from_parts(
        n: usize,
        kostka: Vec<Vec<RationalFunction>>,
        kostka_inv: Vec<Vec<RationalFunction>>,
        norms: Vec<RationalFunction>,
    ) -> Result<Self, MacdonaldError> {
        let partitions = enumerate(n);
        let h_tilde = h_tilde_power_sums(&partitions, &kostka)?;
        Ok(MacdonaldTable { n, partitions, kostka, kostka_inv, norms, h_tilde })
    }

    pub fn index(&self, lam: &Partition) -> Result<usize, MacdonaldError> {
        self.partitions
            .iter()
            .position(|p| p == lam)
            .ok_or_else(|| MacdonaldError::NotInTable(lam.clone(), self.n))
    }

    /// K̃_{λρ}(q, t).
    pub fn kostka(&self, lam: &Partition, rho: &Partition) -> Result<&RationalFunction, MacdonaldError> {
        Ok(&self.kostka[self.index(lam)?][self.index(rho)?])
    }

    /// L̃_{ηλ}(q, t).
    pub fn kostka_inverse(&self, eta: &Partition, lam: &Partition) -> Result<&RationalFunction, MacdonaldError> {
        Ok(&self.kostka_inv[self.index(eta)?][self.index(lam)?])
    }

    pub fn norm(&self, lam: &Partition) -> Result<&RationalFunction, MacdonaldError> {
        Ok(&self.norms[self.index(lam)?])
    }

    /// H̃_ρ in the power-sum basis.
    pub fn h_tilde(&self, rho: &Partition) -> Result<&Sf, MacdonaldError> {
        Ok(&self.h_tilde[self.index(rho)?])
    }

    pub fn h_tilde_at(&self, i: usize) -> &Sf {
        &self.h_tilde[i]
    }
}

fn h_tilde_power_sums(partitions: &[Partition], kostka: &[Vec<RationalFunction>]) -> Result<Vec<Sf>, MacdonaldError> {
    (0..partitions.len())
        .map(|r| {
            let coeffs: Vec<(&Partition, &RationalFunction)> =
                partitions.iter().zip(kostka.iter().map(|row| &row[r])).collect();
            Ok(Sf::from_basis_expansion(Basis::Schur, coeffs)?)
        })
        .collect()
}

/// a_λ(q,t) = ∏_{x∈λ} (q^{a(x)+1} − t^{l(x)})(q^{a(x)} − t^{l(x)+1}).
pub fn norm_a(lam: &Partition) -> RationalFunction {
    let q = Polynomial::var('q');
    let t = Polynomial::var('t');
    let mut acc = Polynomial::one();
    for (_, _, a, l) in lam.cells() {
        let f1 = &q.pow(a as u32 + 1) - &t.pow(l as u32);
        let f2 = &q.pow(a as u32) - &t.pow(l as u32 + 1);
        acc = &(&acc * &f1) * &f2;
    }
    RationalFunction::from_poly(acc)
}

// [m_μ] s_λ[X(c − 1)] for all μ (rows) and λ (columns).
fn constraint_matrix(partitions: &[Partition], var: char) -> Result<Vec<Vec<Polynomial>>, MacdonaldError> {
    let shift = RationalFunction::from_poly(&Polynomial::var(var) - &Polynomial::one());
    let expr = AlphabetExpr::scaled_alphabet(shift, 0);
    let len = partitions.len();
    let mut out = vec![vec![Polynomial::zero(); len]; len];
    for (l, lam) in partitions.iter().enumerate() {
        let g = substitute(&Sf::s(lam), 0, &expr)?;
        let m = g.expand(Basis::Monomial)?;
        for (mu_i, mu) in partitions.iter().enumerate() {
            if let Some(c) = m.get(mu) {
                out[mu_i][l] = c.as_polynomial().expect("polynomial plethysm").clone();
            }
        }
    }
    Ok(out)
}

fn solve_column(
    partitions: &[Partition],
    at: &[Vec<Polynomial>],
    aq: &[Vec<Polynomial>],
    rho: &Partition,
) -> Result<Vec<RationalFunction>, MacdonaldError> {
    let len = partitions.len();
    let rho_c = rho.conjugate();
    let mut rows: Vec<Vec<Polynomial>> = Vec::new();
    let row_n = partitions.iter().position(|p| p.len() == 1 || p.is_empty()).expect("one-row partition");
    let mut norm_row = vec![Polynomial::zero(); len + 1];
    norm_row[row_n] = Polynomial::one();
    norm_row[len] = Polynomial::one();
    rows.push(norm_row);
    for (mu_i, mu) in partitions.iter().enumerate() {
        if !mu.dominance_leq(rho) {
            let mut r = at[mu_i].clone();
            r.push(Polynomial::zero());
            rows.push(r);
        }
        if !mu.dominance_leq(&rho_c) {
            let mut r = aq[mu_i].clone();
            r.push(Polynomial::zero());
            rows.push(r);
        }
    }
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    if let Some(x) = solve_by_interpolation(&rows, rho_c.nstat(), rho.nstat()) {
        return Ok(x);
    }
    solve_unique(rows).ok_or_else(|| MacdonaldError::SingularSystem(rho.clone()))
}

/// Solves at rational points (q, t) and interpolates with deg_q ≤ `dq`, deg_t ≤ `dt`.
///
/// Full rank at one point forces a unique generic solution, and the candidate
/// is accepted only if it satisfies every equation symbolically.
fn solve_by_interpolation(rows: &[Vec<Polynomial>], dq: usize, dt: usize) -> Option<Vec<RationalFunction>> {
    let cols = rows.first()?.len() - 1;
    let at_point = |q: &BigRational, t: &BigRational| -> Option<Vec<BigRational>> {
        let pt = BTreeMap::from([(b'q', q.clone()), (b't', t.clone())]);
        let aug = rows
            .iter()
            .map(|r| r.iter().map(|p| p.evaluate(&pt).as_constant()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        solve_rational(aug)
    };
    let int = |k: i64| BigRational::from_integer(k.into());
    // x[col][d] = coefficient polynomial of q^d, sampled along t.
    let mut t_points = Vec::new();
    let mut samples: Vec<Vec<Vec<BigRational>>> = vec![vec![Vec::new(); dq + 1]; cols];
    let mut tk = 0i64;
    while t_points.len() <= dt {
        tk += 1;
        if tk > 4 * (dt as i64 + 4) {
            return None;
        }
        let t = BigRational::new((2 * tk + 1).into(), (tk + 5).into());
        let mut qs = Vec::new();
        let mut vals: Vec<Vec<BigRational>> = vec![Vec::new(); cols];
        let mut qk = 1i64;
        while qs.len() <= dq {
            qk += 1;
            if qk > 4 * (dq as i64 + 4) {
                // unlucky t, e.g. a value where the t-constraints degenerate
                break;
            }
            let q = int(qk);
            if let Some(x) = at_point(&q, &t) {
                qs.push(q);
                for (c, v) in x.into_iter().enumerate() {
                    vals[c].push(v);
                }
            }
        }
        if qs.len() <= dq {
            continue;
        }
        for c in 0..cols {
            for (d, coeff) in interpolate(&qs, &vals[c]).into_iter().enumerate() {
                samples[c][d].push(coeff);
            }
        }
        t_points.push(t);
    }
    let mut x = Vec::with_capacity(cols);
    for col_samples in &samples {
        let mut p = Polynomial::zero();
        for (d, along_t) in col_samples.iter().enumerate() {
            for (e, c) in interpolate(&t_points, along_t).into_iter().enumerate() {
                p.add_term(Monomial::from_pairs([(b'q', d as u32), (b't', e as u32)]), c);
            }
        }
        x.push(p);
    }
    for r in rows {
        let mut lhs = Polynomial::zero();
        for (a, xi) in r[..cols].iter().zip(&x) {
            if !a.is_zero() && !xi.is_zero() {
                lhs += &(a * xi);
            }
        }
        if lhs != r[cols] {
            return None;
        }
    }
    Some(x.into_iter().map(RationalFunction::from_poly).collect())
}

/// Builds the degree-n table from the characterization of H̃.
pub fn build_table(n: usize) -> Result<MacdonaldTable, MacdonaldError> {
    if n == 0 || n > HARD_DEGREE_LIMIT {
        return Err(MacdonaldError::DegreeOutOfRange(n, HARD_DEGREE_LIMIT));
    }
    let partitions = enumerate(n);
    let len = partitions.len();
    let at = constraint_matrix(&partitions, 't')?;
    let aq = constraint_matrix(&partitions, 'q')?;
    let columns: Vec<Vec<RationalFunction>> = partitions
        .par_iter()
        .map(|rho| solve_column(&partitions, &at, &aq, rho))
        .collect::<Result<_, _>>()?;
    let kostka: Vec<Vec<RationalFunction>> =
        (0..len).map(|l| (0..len).map(|r| columns[r][l].clone()).collect()).collect();
    let h_tilde = h_tilde_power_sums(&partitions, &kostka)?;
    let norms: Vec<RationalFunction> = partitions.iter().map(norm_a).collect();
    // L̃_{ηλ} = (s_λ, H̃_η)^{q,t} / a_η = Σ_μ (s_λ, s_μ)^{q,t} K̃_{μη} / a_η.
    let gram: Vec<Vec<RationalFunction>> = partitions
        .iter()
        .map(|a| partitions.iter().map(|b| qt_hall_pairing(&Sf::s(a), &Sf::s(b))).collect())
        .collect::<Result<_, _>>()?;
    let kostka_inv: Vec<Vec<RationalFunction>> = (0..len)
        .into_par_iter()
        .map(|e| {
            (0..len)
                .map(|l| {
                    let mut num = RationalFunction::zero();
                    for mu in 0..len {
                        if !gram[l][mu].is_zero() && !kostka[mu][e].is_zero() {
                            num = &num + &(&gram[l][mu] * &kostka[mu][e]);
                        }
                    }
                    num.checked_div(&norms[e]).expect("nonzero norm")
                })
                .collect()
        })
        .collect();
    Ok(MacdonaldTable { n, partitions, kostka, kostka_inv, norms, h_tilde })
}

type Store = RwLock<HashMap<usize, Arc<MacdonaldTable>>>;

fn store() -> &'static Store {
    static STORE: OnceLock<Store> = OnceLock::new();
    STORE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The shared degree-n table, built on first request.
pub fn table(n: usize) -> Result<Arc<MacdonaldTable>, MacdonaldError> {
    if let Some(t) = cached_table(n) {
        return Ok(t);
    }
    let t = build_table(n)?;
    Ok(install_table(t))
}

pub fn cached_table(n: usize) -> Option<Arc<MacdonaldTable>> {
    store().read().unwrap().get(&n).cloned()
}

/// Registers an externally obtained table (for instance from a disk cache).
pub fn install_table(t: MacdonaldTable) -> Arc<MacdonaldTable> {
    let n = t.n;
    store().write().unwrap().entry(n).or_insert_with(|| Arc::new(t)).clone()
}

/// Δ₁F = F − F[X + (1−q)(1−t)/z]·Exp[−zX]|_{z⁰} for homogeneous single-alphabet F.
///
/// The letter `y` stands for 1/z; Exp[−zX] = Σ_m (−z)^m e_m pairs y^m with z^m.
pub fn delta1(f: &Sf) -> Result<Sf, MacdonaldError> {
    if f.alphabet_count() != 1 {
        return Err(SymError::AlphabetMismatch(f.alphabet_count(), 1).into());
    }
    let n = f.homogeneous_degree().ok_or(SymError::SizeMismatch(0, 0))?;
    let c = RationalFunction::parse("(1 - q)*(1 - t)*y").unwrap();
    let expr = AlphabetExpr::alphabet(0).plus(AlphabetExpr::scalar(c));
    let shifted = substitute(f, 0, &expr)?;
    let mut z0 = Sf::zero(1);
    for m in 0..=n {
        let a_m = shifted.try_map_coefficients(|c| c.coefficient_of(b'y', m as u32)).map_err(SymError::from)?;
        if a_m.is_zero() {
            continue;
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let e_m = Sf::e(&Partition::row(m)).scale(&RationalFunction::from_int(sign));
        z0.add_assign(&a_m.mul(&e_m));
    }
    Ok(f.sub(&z0))
}

/// φ_λ = Σ_{(i,j)∈λ} q^{j−1} t^{i−1}.
pub fn cell_sum(lam: &Partition) -> RationalFunction {
    let mut acc = Polynomial::zero();
    for (i, j, _, _) in lam.cells() {
        acc += &(&Polynomial::var('q').pow(j as u32 - 1) * &Polynomial::var('t').pow(i as u32 - 1));
    }
    RationalFunction::from_poly(acc)
}

/// ∏_{(i,j)∈λ} (1 − u q^{j−1} t^{i−1}).
pub fn one_minus_u_product(lam: &Partition) -> RationalFunction {
    let mut acc = Polynomial::one();
    for (i, j, _, _) in lam.cells() {
        let m = &(&Polynomial::var('u') * &Polynomial::var('q').pow(j as u32 - 1)) * &Polynomial::var('t').pow(i as u32 - 1);
        acc = &acc * &(&Polynomial::one() - &m);
    }
    RationalFunction::from_poly(acc)
}

/// H̃_λ[1 − u; q, t].
pub fn eval_one_minus_u(h: &Sf) -> Result<RationalFunction, MacdonaldError> {
    let g = substitute(h, 0, &AlphabetExpr::scalar(RationalFunction::parse("1 - u").unwrap()))?;
    Ok(g.drop_alphabet(0)?.scalar())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }
    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn degree_one_and_two() {
        let t1 = build_table(1).unwrap();
        assert_eq!(t1.kostka[0][0], RationalFunction::one());
        let t2 = build_table(2).unwrap();
        // H̃_(2) = s2 + q s11, H̃_(11) = s2 + t s11
        assert_eq!(t2.kostka(&p("[2]"), &p("[2]")).unwrap(), &rf("1"));
        assert_eq!(t2.kostka(&p("[1,1]"), &p("[2]")).unwrap(), &rf("q"));
        assert_eq!(t2.kostka(&p("[2]"), &p("[1,1]")).unwrap(), &rf("1"));
        assert_eq!(t2.kostka(&p("[1,1]"), &p("[1,1]")).unwrap(), &rf("t"));
    }

    #[test]
    fn interpolation_matches_fraction_free_solve() {
        let parts = enumerate(4);
        let at = constraint_matrix(&parts, 't').unwrap();
        let aq = constraint_matrix(&parts, 'q').unwrap();
        for rho in &parts {
            let fast = solve_column(&parts, &at, &aq, rho).unwrap();
            let len = parts.len();
            let mut rows = vec![{
                let mut r = vec![Polynomial::zero(); len + 1];
                r[0] = Polynomial::one();
                r[len] = Polynomial::one();
                r
            }];
            for (i, mu) in parts.iter().enumerate() {
                if !mu.dominance_leq(rho) {
                    rows.push(at[i].iter().cloned().chain([Polynomial::zero()]).collect());
                }
                if !mu.dominance_leq(&rho.conjugate()) {
                    rows.push(aq[i].iter().cloned().chain([Polynomial::zero()]).collect());
                }
            }
            assert_eq!(solve_unique(rows).unwrap(), fast, "column {rho}");
        }
    }

    #[test]
    fn inverse_kostka_is_an_inverse() {
        for n in 1..=4 {
            let t = build_table(n).unwrap();
            let len = t.partitions.len();
            for e in 0..len {
                for r in 0..len {
                    let mut acc = RationalFunction::zero();
                    for l in 0..len {
                        acc = &acc + &(&t.kostka_inv[e][l] * &t.kostka[l][r]);
                    }
                    let want = if e == r { RationalFunction::one() } else { RationalFunction::zero() };
                    assert_eq!(acc, want, "n={n} ({e},{r})");
                }
            }
        }
    }

    #[test]
    fn norms_by_hand() {
        assert_eq!(norm_a(&p("[1]")), rf("(q - 1)*(1 - t)"));
        assert_eq!(norm_a(&p("[2]")), rf("(q^2 - 1)*(q - t)*(q - 1)*(1 - t)"));
    }

    #[test]
    fn delta1_small_cases() {
        let one = Sf::one(1);
        assert!(delta1(&one).unwrap().is_zero());
        let p1 = Sf::p(&p("[1]"));
        assert_eq!(delta1(&p1).unwrap(), p1.scale(&rf("(1 - q)*(1 - t)")));
        let t2 = build_table(2).unwrap();
        let h2 = t2.h_tilde(&p("[2]")).unwrap();
        assert_eq!(delta1(h2).unwrap(), h2.scale(&rf("(1 - t)*(1 - q)*(1 + q)")));
    }
}
