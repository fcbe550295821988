//! The # product on degree-n symmetric functions: structure coefficients in
//! the Schur basis, the diagonal operators ψ_F and ∇, and (q,t)-Catalan numbers.
//!
//! # is pointwise multiplication in the coordinates φ_ρ(F) = ⟨F, H̃_ρ⟩, so
//! s_μ # s_ν = Σ_λ c^λ_{μν} s_λ with c^λ_{μν} = Σ_η L̃_{ηλ} K̃_{μη} K̃_{νη}.

use std::collections::BTreeMap;

use crate::coeffring::RationalFunction;
use crate::macdonald::{cell_sum, table, MacdonaldError, MacdonaldTable};
use crate::partitions::Partition;
use crate::plethysm::{substitute, AlphabetExpr};
use crate::symfunc::{Basis, SymError, SymFunc};

type Sf = SymFunc<RationalFunction>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HashtagError {
    #[error("SizeMismatch: expected partitions of {expected}, got {got}")]
    SizeMismatch { expected: usize, got: Partition },
    #[error("DegreeMismatch: operands have degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("operand is not homogeneous in a single alphabet")]
    NotHomogeneous,
    #[error("at least one factor is required")]
    NoFactors,
    #[error(transparent)]
    Macdonald(#[from] MacdonaldError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Factors μ¹,…,μᵏ and target λ of a structure coefficient c^λ_𝛍.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CCoefficientQuery {
    pub factors: Vec<Partition>,
    pub target: Partition,
}

impl CCoefficientQuery {
    pub fn new(factors: Vec<Partition>, target: Partition) -> Result<Self, HashtagError> {
        if factors.is_empty() {
            return Err(HashtagError::NoFactors);
        }
        let n = target.size();
        if let Some(bad) = factors.iter().find(|f| f.size() != n) {
            return Err(HashtagError::SizeMismatch { expected: n, got: bad.clone() });
        }
        Ok(CCoefficientQuery { factors, target })
    }

    pub fn degree(&self) -> usize {
        self.target.size()
    }
}

/// c^λ_𝛍 = Σ_η L̃_{ηλ} ∏_j K̃_{μʲη}.
pub fn ccoef(query: &CCoefficientQuery) -> Result<RationalFunction, HashtagError> {
    let tab = table(query.degree())?;
    ccoef_with(&tab, query)
}

pub fn ccoef_with(tab: &MacdonaldTable, query: &CCoefficientQuery) -> Result<RationalFunction, HashtagError> {
    let l = tab.index(&query.target)?;
    let rows: Vec<usize> = query.factors.iter().map(|m| tab.index(m)).collect::<Result<_, _>>()?;
    let mut acc = RationalFunction::zero();
    for eta in 0..tab.partitions.len() {
        let linv = &tab.kostka_inv[eta][l];
        if linv.is_zero() {
            continue;
        }
        let mut prod = linv.clone();
        for &r in &rows {
            prod = &prod * &tab.kostka[r][eta];
            if prod.is_zero() {
                break;
            }
        }
        acc = &acc + &prod;
    }
    Ok(acc)
}

fn degree_of(f: &Sf) -> Result<usize, HashtagError> {
    if f.alphabet_count() != 1 {
        return Err(HashtagError::NotHomogeneous);
    }
    f.homogeneous_degree().ok_or(HashtagError::NotHomogeneous)
}

/// φ_ρ(F) = Σ_μ f_μ K̃_{μρ} for every ρ, from the Schur expansion of F.
pub fn macdonald_coordinates(tab: &MacdonaldTable, f: &Sf) -> Result<Vec<RationalFunction>, HashtagError> {
    let schur = f.expand(Basis::Schur)?;
    let mut out = vec![RationalFunction::zero(); tab.partitions.len()];
    for (mu, c) in &schur {
        let r = tab.index(mu)?;
        for (rho, slot) in out.iter_mut().enumerate() {
            let k = &tab.kostka[r][rho];
            if !k.is_zero() {
                *slot = &*slot + &(c * k);
            }
        }
    }
    Ok(out)
}

// Σ_ρ v_ρ D_ρ where D_ρ = Σ_λ L̃_{ρλ} s_λ is Hall-dual to H̃_ρ.
fn from_coordinates(tab: &MacdonaldTable, v: &[RationalFunction]) -> Result<Sf, HashtagError> {
    let mut schur: BTreeMap<Partition, RationalFunction> = BTreeMap::new();
    for (rho, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (l, lam) in tab.partitions.iter().enumerate() {
            let li = &tab.kostka_inv[rho][l];
            if !li.is_zero() {
                let e = schur.entry(lam.clone()).or_insert_with(RationalFunction::zero);
                *e = &*e + &(c * li);
            }
        }
    }
    Ok(Sf::from_basis_expansion(Basis::Schur, schur.iter())?)
}

/// F # G for homogeneous F, G of equal degree.
pub fn hashtag_product(f: &Sf, g: &Sf) -> Result<Sf, HashtagError> {
    let (df, dg) = (degree_of(f)?, degree_of(g)?);
    if df != dg {
        return Err(HashtagError::DegreeMismatch(df, dg));
    }
    if df == 0 {
        return Ok(f.mul(g));
    }
    let tab = table(df)?;
    let a = macdonald_coordinates(&tab, f)?;
    let b = macdonald_coordinates(&tab, g)?;
    let prod: Vec<RationalFunction> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    from_coordinates(&tab, &prod)
}

/// The coproduct Δ^#: H̃_λ[X] ↦ H̃_λ[X]H̃_λ[Y], as a two-alphabet function.
pub fn coproduct(f: &Sf) -> Result<Sf, HashtagError> {
    let n = degree_of(f)?;
    let tab = table(n)?;
    // Coordinates of F in the H̃ basis: F = Σ_η (Σ_λ f_λ L̃_{ηλ}) H̃_η.
    let schur = f.expand(Basis::Schur)?;
    let mut out = Sf::zero(2);
    for eta in 0..tab.partitions.len() {
        let mut c = RationalFunction::zero();
        for (lam, v) in &schur {
            c = &c + &(v * &tab.kostka_inv[eta][tab.index(lam)?]);
        }
        if c.is_zero() {
            continue;
        }
        let h = tab.h_tilde_at(eta);
        out.add_assign(&h.embed(2, &[0]).mul(&h.embed(2, &[1])).scale(&c));
    }
    Ok(out)
}

/// Expansion coefficients of G in the H̃ basis, by (q,t)-orthogonality.
pub fn h_tilde_coordinates(tab: &MacdonaldTable, g: &Sf) -> Result<Vec<RationalFunction>, HashtagError> {
    let expr = AlphabetExpr::qt_scaled(0);
    let g_scaled = substitute(g, 0, &expr)?;
    (0..tab.partitions.len())
        .map(|e| {
            let pairing = tab.h_tilde_at(e).hall_scalar(&g_scaled)?;
            Ok(pairing.checked_div(&tab.norms[e]).expect("nonzero norm"))
        })
        .collect()
}

/// ψ_F(G), acting on H̃_λ by the scalar ⟨F, H̃_λ⟩.
pub fn psi(f: &Sf, g: &Sf) -> Result<Sf, HashtagError> {
    let (df, dg) = (degree_of(f)?, degree_of(g)?);
    if df != dg {
        return Err(HashtagError::DegreeMismatch(df, dg));
    }
    if dg == 0 {
        return Ok(g.mul(f));
    }
    let tab = table(dg)?;
    let coords = h_tilde_coordinates(&tab, g)?;
    let mut out = Sf::zero(1);
    for (e, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let h = tab.h_tilde_at(e);
        let eig = f.hall_scalar(h)?;
        out.add_assign(&h.scale(&(c * &eig)));
    }
    Ok(out)
}

/// ∇G = ψ_{e_n}(G).
pub fn nabla(g: &Sf) -> Result<Sf, HashtagError> {
    let n = degree_of(g)?;
    psi(&Sf::e(&Partition::row(n)), g)
}

/// C_n^{(m)} = ⟨e_n, ∇^m e_n⟩ by iterating ∇.
pub fn qt_catalan(n: usize, m: usize) -> Result<RationalFunction, HashtagError> {
    let en = Sf::e(&Partition::row(n));
    let mut g = en.clone();
    for _ in 0..m {
        g = nabla(&g)?;
    }
    Ok(en.hall_scalar(&g)?)
}

/// C_n^{(m)} as the structure coefficient c^{1ⁿ} with m+1 factors 1ⁿ.
pub fn qt_catalan_by_ccoef(n: usize, m: usize) -> Result<RationalFunction, HashtagError> {
    let col = Partition::column(n);
    ccoef(&CCoefficientQuery::new(vec![col.clone(); m + 1], col)?)
}

/// Π'_λ = ∏_{(i,j)∈λ, (i,j)≠(1,1)} (1 − q^{j−1}t^{i−1}).
pub fn pi_prime(lam: &Partition) -> RationalFunction {
    let mut acc = RationalFunction::one();
    for (i, j, _, _) in lam.cells() {
        if (i, j) == (1, 1) {
            continue;
        }
        let m = &RationalFunction::var('q').pow(j as u32 - 1) * &RationalFunction::var('t').pow(i as u32 - 1);
        acc = &acc * &(&RationalFunction::one() - &m);
    }
    acc
}

/// (q−1)(1−t) Σ_λ φ_λ Π'_λ H̃_λ / a_λ.
pub fn garsia_haiman_rhs(n: usize) -> Result<Sf, HashtagError> {
    let tab = table(n)?;
    let mut out = Sf::zero(1);
    for (i, lam) in tab.partitions.iter().enumerate() {
        let c = (&cell_sum(lam) * &pi_prime(lam)).checked_div(&tab.norms[i]).expect("nonzero norm");
        out.add_assign(&tab.h_tilde_at(i).scale(&c));
    }
    Ok(out.scale(&RationalFunction::parse("(q - 1)*(1 - t)").unwrap()))
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
    fn c(f: &[&str], t: &str) -> RationalFunction {
        ccoef(&CCoefficientQuery::new(f.iter().map(|s| p(s)).collect(), p(t)).unwrap()).unwrap()
    }

    #[test]
    fn printed_coefficients() {
        assert_eq!(
            c(&["[2,2]", "[2,1,1]"], "[2,1,1]"),
            rf("-q^3*t - q^2*t^2 - q*t^3 - q^2*t - q*t^2 + q^2 + q*t + t^2")
        );
        assert_eq!(
            c(&["[2,2]", "[2,1,1]"], "[1,1,1,1]"),
            rf("q^3 + q^2*t + q*t^2 + t^3 + q^2 + 2*q*t + t^2 + q + t")
        );
    }

    #[test]
    fn identity_and_size_errors() {
        for mu in crate::partitions::enumerate(3) {
            for lam in crate::partitions::enumerate(3) {
                let v = c(&[&mu.to_string(), "[3]"], &lam.to_string());
                assert_eq!(v, if mu == lam { RationalFunction::one() } else { RationalFunction::zero() });
            }
        }
        assert!(CCoefficientQuery::new(vec![p("[2]")], p("[3]")).is_err());
    }

    #[test]
    fn nabla_small() {
        let e1 = Sf::e(&p("[1]"));
        assert_eq!(nabla(&e1).unwrap(), e1);
        let tab = table(2).unwrap();
        let h2 = tab.h_tilde(&p("[2]")).unwrap();
        assert_eq!(nabla(h2).unwrap(), h2.scale(&rf("q")));
        assert_eq!(qt_catalan(2, 1).unwrap(), rf("q + t"));
        assert_eq!(qt_catalan_by_ccoef(2, 1).unwrap(), rf("q + t"));
        assert_eq!(qt_catalan(1, 3).unwrap(), RationalFunction::one());
    }

    #[test]
    fn garsia_haiman_low_degree() {
        assert_eq!(garsia_haiman_rhs(1).unwrap(), Sf::s(&p("[1]")));
        assert_eq!(garsia_haiman_rhs(2).unwrap(), Sf::s(&p("[1,1]")).scale(&rf("-1")));
    }

    #[test]
    fn product_matches_coefficients() {
        let (a, b) = (p("[2,1]"), p("[1,1,1]"));
        let prod = hashtag_product(&Sf::s(&a), &Sf::s(&b)).unwrap();
        for lam in crate::partitions::enumerate(3) {
            let expected = c(&["[2,1]", "[1,1,1]"], &lam.to_string());
            assert_eq!(prod.coefficient_in(Basis::Schur, &lam).unwrap(), expected);
        }
        assert!(matches!(
            hashtag_product(&Sf::s(&a), &Sf::s(&p("[2]"))),
            Err(HashtagError::DegreeMismatch(3, 2))
        ));
    }

    #[test]
    fn coproduct_pairs_back_to_product() {
        // ⟨F#G, H⟩ = ⟨F[X]G[Y], Δ^#H⟩
        let (f, g, h) = (Sf::s(&p("[2,1]")), Sf::s(&p("[3]")).add(&Sf::s(&p("[1,1,1]"))), Sf::s(&p("[2,1]")));
        let lhs = hashtag_product(&f, &g).unwrap().hall_scalar(&h).unwrap();
        let fg = f.embed(2, &[0]).mul(&g.embed(2, &[1]));
        let rhs = fg.hall_scalar(&coproduct(&h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
