//! Symmetric-group characters by the Murnaghan–Nakayama rule on beta-sets.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::partitions::{enumerate, Partition};

use super::SymError;

/// χ^λ(ρ) for all λ, ρ ⊢ n, indexed by the reverse-lex enumeration order.
#[derive(Debug)]
pub struct CharacterTable {
    pub partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    fn build(n: usize) -> Self {
        let partitions = enumerate(n);
        let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut memo = HashMap::new();
        let values = partitions
            .iter()
            .map(|lam| partitions.iter().map(|rho| mn(lam, rho.parts(), &mut memo)).collect())
            .collect();
        CharacterTable { partitions, index, values }
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn value(&self, lam: &Partition, rho: &Partition) -> i64 {
        self.values[self.index[lam]][self.index[rho]]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.values[i]
    }
}

fn beta_set(lam: &Partition, len: usize) -> Vec<usize> {
    (1..=len).map(|i| lam.part(i) + len - i).collect()
}

fn from_beta(mut beta: Vec<usize>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    Partition::from_unsorted(beta.iter().enumerate().map(|(i, &b)| b - (len - 1 - i)).collect())
}

// χ^λ at the cycle type whose parts are `rho`, peeling off the first part.
fn mn(lam: &Partition, rho: &[usize], memo: &mut HashMap<(Partition, Vec<usize>), i64>) -> i64 {
    if rho.is_empty() {
        return if lam.is_empty() { 1 } else { 0 };
    }
    let key = (lam.clone(), rho.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = rho[0];
    let beta = beta_set(lam, lam.len());
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&g| g > b - r && g < b).count();
        let mut next = beta.clone();
        next[idx] = b - r;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&from_beta(next), &rho[1..], memo);
    }
    memo.insert(key, total);
    total
}

type TableCache = RwLock<HashMap<usize, Arc<CharacterTable>>>;

fn cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared character table of S_n, built on first use.
pub fn character_table(n: usize) -> Arc<CharacterTable> {
    if let Some(t) = cache().read().unwrap().get(&n) {
        return t.clone();
    }
    let table = Arc::new(CharacterTable::build(n));
    cache().write().unwrap().entry(n).or_insert(table).clone()
}

/// χ^λ(ρ).
pub fn mn_character(lam: &Partition, rho: &Partition) -> Result<i64, SymError> {
    if lam.size() != rho.size() {
        return Err(SymError::SizeMismatch(lam.size(), rho.size()));
    }
    Ok(character_table(lam.size()).value(lam, rho))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_and_sign() {
        for n in 1..=6 {
            for rho in enumerate(n) {
                assert_eq!(mn_character(&Partition::row(n), &rho).unwrap(), 1);
                assert_eq!(mn_character(&Partition::column(n), &rho).unwrap(), rho.sign());
            }
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(mn_character(&p("[2,1]"), &p("[1,1,1]")).unwrap(), 2);
        assert_eq!(mn_character(&p("[2,1]"), &p("[3]")).unwrap(), -1);
        assert_eq!(mn_character(&p("[2,2]"), &p("[2,2]")).unwrap(), 2);
        assert_eq!(mn_character(&p("[3,1]"), &p("[4]")).unwrap(), -1);
        assert!(mn_character(&p("[2]"), &p("[1]")).is_err());
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=6 {
            let t = character_table(n);
            for (a, rho) in t.partitions.iter().enumerate() {
                for (b, sig) in t.partitions.iter().enumerate() {
                    let s: i64 = (0..t.partitions.len())
                        .map(|l| t.row(l)[a] * t.row(l)[b])
                        .sum();
                    let expect = if a == b { rho.z() as i64 } else { 0 };
                    assert_eq!(s, expect, "{rho} {sig}");
                }
            }
        }
    }
}
