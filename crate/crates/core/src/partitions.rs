//! Integer partitions and Young-diagram statistics.
//!
//! Cells are addressed `(row, column)` starting at 1; rows run downwards.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("cell ({0}, {1}) lies outside the diagram")]
    CellOutside(usize, usize),
    #[error("invalid partition: {0}")]
    Invalid(String),
}

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Validates that `parts` is weakly decreasing; zero parts are dropped.
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        let parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::Invalid(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// The one-column partition `(1ⁿ)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (1-based); zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// λ ⪯ μ in dominance order (false when sizes differ).
    pub fn dominance_leq(&self, mu: &Partition) -> bool {
        if self.size() != mu.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 1..=self.len().max(mu.len()) {
            a += self.part(i);
            b += mu.part(i);
            if a > b {
                return false;
            }
        }
        true
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && self.part(i) >= j
    }

    /// `(arm, leg)` of cell `(i, j)`.
    pub fn cell_stats(&self, i: usize, j: usize) -> Result<(usize, usize), PartitionError> {
        if !self.contains(i, j) {
            return Err(PartitionError::CellOutside(i, j));
        }
        let arm = self.part(i) - j;
        let leg = self.0[i..].iter().filter(|&&p| p >= j).count();
        Ok((arm, leg))
    }

    /// Cells `(i, j, arm, leg)` in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize, usize, usize)> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (r, &len) in self.0.iter().enumerate() {
            for j in 1..=len {
                let i = r + 1;
                out.push((i, j, len - j, conj.part(j) - i));
            }
        }
        out
    }

    /// `(part, multiplicity)` pairs with decreasing parts.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Order of the centralizer of a permutation of cycle type λ: ∏ i^{m_i} m_i!.
    pub fn z(&self) -> u128 {
        self.multiplicities()
            .into_iter()
            .map(|(p, m)| (p as u128).pow(m as u32) * (1..=m as u128).product::<u128>())
            .product()
    }

    /// n(λ) = Σ (i−1)·λ_i.
    pub fn nstat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Sign of a permutation of cycle type λ.
    pub fn sign(&self) -> i64 {
        if (self.size() - self.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Multiset union of parts (the index of p_λ·p_μ).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] >= b[j]) {
                parts.push(a[i]);
                i += 1;
            } else {
                parts.push(b[j]);
                j += 1;
            }
        }
        Partition(parts)
    }

    /// Every part multiplied by `n`.
    pub fn scale(&self, n: usize) -> Partition {
        Partition(self.0.iter().map(|&p| p * n).collect())
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn enumerate(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Partitions of every size up to `n`, grouped by size.
pub fn enumerate_up_to(n: usize) -> Vec<Vec<Partition>> {
    (0..=n).map(enumerate).collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses `[3,1,1]`; brackets are optional and `[]` is the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim();
        let body = body.strip_prefix('[').unwrap_or(body);
        let body = body.strip_suffix(']').unwrap_or(body).trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Invalid(s.to_string()))?;
        if parts.contains(&0) {
            return Err(PartitionError::Invalid(s.to_string()));
        }
        Partition::new(parts).map_err(|_| PartitionError::Invalid(s.to_string()))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        let four: Vec<String> = enumerate(4).iter().map(|x| x.to_string()).collect();
        assert_eq!(four, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        assert_eq!(enumerate(6).len(), 11);
    }

    #[test]
    fn conjugates() {
        assert_eq!(p("[6,4,2]").conjugate(), p("[3,3,2,2,1,1]"));
        assert_eq!(Partition::row(5).conjugate(), Partition::column(5));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn dominance() {
        assert!(p("[2,2]").dominance_leq(&p("[3,1]")));
        assert!(!p("[3,1]").dominance_leq(&p("[2,2]")));
        assert!(p("[3,1]").dominance_leq(&p("[3,1]")));
        assert!(!p("[3,3]").dominance_leq(&p("[4,1,1]")) && !p("[4,1,1]").dominance_leq(&p("[3,3]")));
    }

    #[test]
    fn cell_statistics() {
        assert_eq!(p("[6,4,2]").cell_stats(1, 3), Ok((3, 1)));
        assert_eq!(p("[6,4,2]").cell_stats(3, 3), Err(PartitionError::CellOutside(3, 3)));
        assert_eq!(p("[2,1]").z(), 2);
        assert_eq!(p("[2,1]").nstat(), 1);
        assert_eq!(p("[2,2,1,1]").z(), 2 * 2 * 2 * 2);
        let cells = p("[6,4,2]").cells();
        assert!(cells.contains(&(1, 3, 3, 1)));
    }

    #[test]
    fn parsing() {
        assert_eq!(p("[3,1,1]").parts(), &[3, 1, 1]);
        assert_eq!(p("[]"), Partition::empty());
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[a]".parse::<Partition>().is_err());
    }
}
