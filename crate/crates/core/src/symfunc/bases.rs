//! Transition matrices between the classical bases and power sums.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::partitions::{enumerate, Partition};

use super::characters::character_table;
use super::SymError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "m")]
    Monomial,
    #[serde(rename = "e")]
    Elementary,
    #[serde(rename = "h")]
    Complete,
    #[serde(rename = "p")]
    PowerSum,
    #[serde(rename = "s")]
    Schur,
}

impl Basis {
    pub const ALL: [Basis; 5] =
        [Basis::Monomial, Basis::Elementary, Basis::Complete, Basis::PowerSum, Basis::Schur];

    pub fn letter(self) -> char {
        match self {
            Basis::Monomial => 'm',
            Basis::Elementary => 'e',
            Basis::Complete => 'h',
            Basis::PowerSum => 'p',
            Basis::Schur => 's',
        }
    }

    pub fn from_letter(c: char) -> Option<Basis> {
        Basis::ALL.into_iter().find(|b| b.letter() == c)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Basis {
    type Err = SymError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Basis::from_letter(c),
            _ => None,
        }
        .ok_or_else(|| SymError::Parse(format!("unknown basis {s:?}")))
    }
}

/// Largest degree for which basis changes are supported at all.
pub const HARD_DEGREE_LIMIT: usize = 12;

/// Square matrix over ℚ indexed by the reverse-lex partitions of n.
pub type QMatrix = Vec<Vec<BigRational>>;

/// `to_p[λ][ρ]` with b_λ = Σ_ρ to_p[λ][ρ]·p_ρ, and `from_p[ρ][λ]` with
/// p_ρ = Σ_λ from_p[ρ][λ]·b_λ.
#[derive(Debug)]
pub struct Transition {
    pub partitions: Vec<Partition>,
    pub to_p: QMatrix,
    pub from_p: QMatrix,
}

fn rat(n: i64, d: u128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn identity(len: usize) -> QMatrix {
    (0..len)
        .map(|i| {
            (0..len)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

/// Gauss–Jordan inverse over ℚ.
pub fn invert(m: &QMatrix) -> QMatrix {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular transition matrix");
        a.swap(col, piv);
        inv.swap(col, piv);
        let f = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &f;
            inv[col][j] = &inv[col][j] * &f;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let g = a[r][col].clone();
                for j in 0..n {
                    let x = &g * &a[col][j];
                    a[r][j] -= x;
                    let y = &g * &inv[col][j];
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

// p-expansion of a product of one-row functions given per-row expansions.
fn multiplicative(lam: &Partition, row: &dyn Fn(usize) -> Vec<(Partition, BigRational)>) -> HashMap<Partition, BigRational> {
    let mut acc: HashMap<Partition, BigRational> = HashMap::new();
    acc.insert(Partition::empty(), BigRational::one());
    for &part in lam.parts() {
        let factor = row(part);
        let mut next: HashMap<Partition, BigRational> = HashMap::new();
        for (k, c) in &acc {
            for (r, d) in &factor {
                *next.entry(k.union(r)).or_insert_with(BigRational::zero) += c * d;
            }
        }
        acc = next;
    }
    acc
}

fn complete_row(m: usize) -> Vec<(Partition, BigRational)> {
    enumerate(m).into_iter().map(|r| {
        let z = r.z();
        (r, rat(1, z))
    }).collect()
}

fn elementary_row(m: usize) -> Vec<(Partition, BigRational)> {
    enumerate(m).into_iter().map(|r| {
        let z = r.z();
        let s = r.sign();
        (r, rat(s, z))
    }).collect()
}

fn build(basis: Basis, n: usize) -> Transition {
    let partitions = enumerate(n);
    let len = partitions.len();
    let index: HashMap<&Partition, usize> = partitions.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let dense = |map: HashMap<Partition, BigRational>| -> Vec<BigRational> {
        let mut row = vec![BigRational::zero(); len];
        for (k, c) in map {
            row[index[&k]] = c;
        }
        row
    };
    let to_p: QMatrix = match basis {
        Basis::PowerSum => identity(len),
        Basis::Schur => {
            let chi = character_table(n);
            (0..len)
                .map(|l| {
                    partitions.iter().enumerate().map(|(r, rho)| rat(chi.row(l)[r], rho.z())).collect()
                })
                .collect()
        }
        Basis::Complete => partitions.iter().map(|l| dense(multiplicative(l, &complete_row))).collect(),
        Basis::Elementary => partitions.iter().map(|l| dense(multiplicative(l, &elementary_row))).collect(),
        Basis::Monomial => {
            // m is dual to h: m_λ = Σ_ρ A[λ][ρ] p_ρ with A = B⁻¹, B[ρ][μ] = z_ρ·[p_ρ]h_μ.
            let h: Vec<Vec<BigRational>> =
                partitions.iter().map(|l| dense(multiplicative(l, &complete_row))).collect();
            let b: QMatrix = (0..len)
                .map(|r| {
                    let z = BigRational::from_integer(BigInt::from(partitions[r].z()));
                    (0..len).map(|m| &z * &h[m][r]).collect()
                })
                .collect();
            invert(&b)
        }
    };
    let from_p = invert(&to_p);
    Transition { partitions, to_p, from_p }
}

type TransitionCache = RwLock<HashMap<(Basis, usize), Arc<Transition>>>;

fn cache() -> &'static TransitionCache {
    static CACHE: OnceLock<TransitionCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub fn transition(basis: Basis, n: usize) -> Result<Arc<Transition>, SymError> {
    if n > HARD_DEGREE_LIMIT {
        return Err(SymError::DegreeTooLarge(n, HARD_DEGREE_LIMIT));
    }
    if let Some(t) = cache().read().unwrap().get(&(basis, n)) {
        return Ok(t.clone());
    }
    let t = Arc::new(build(basis, n));
    Ok(cache().write().unwrap().entry((basis, n)).or_insert(t).clone())
}

/// p-expansion of the basis element b_λ.
pub fn to_power_sums(basis: Basis, lam: &Partition) -> Result<Vec<(Partition, BigRational)>, SymError> {
    if basis == Basis::PowerSum {
        return Ok(vec![(lam.clone(), BigRational::one())]);
    }
    let t = transition(basis, lam.size())?;
    let i = t.partitions.iter().position(|p| p == lam).expect("enumerated");
    Ok(t.partitions
        .iter()
        .zip(&t.to_p[i])
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| (p.clone(), c.clone()))
        .collect())
}

/// b-expansion of p_ρ.
pub fn from_power_sum(basis: Basis, rho: &Partition) -> Result<Vec<(Partition, BigRational)>, SymError> {
    if basis == Basis::PowerSum {
        return Ok(vec![(rho.clone(), BigRational::one())]);
    }
    let t = transition(basis, rho.size())?;
    let i = t.partitions.iter().position(|p| p == rho).expect("enumerated");
    Ok(t.partitions
        .iter()
        .zip(&t.from_p[i])
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| (p.clone(), c.clone()))
        .collect())
}
