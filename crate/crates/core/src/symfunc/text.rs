//! Text and JSON forms: `s[2,1] + (q + t)*s[1,1,1]`, multi-alphabet keys as `p[[2],[1]]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coeffring::{Coefficient, RationalFunction};
use crate::partitions::Partition;

use super::{Basis, Key, SymError, SymFunc};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub basis: Basis,
    pub partitions: Vec<Partition>,
    pub coefficient: String,
}

fn format_key(b: Basis, key: &Key) -> String {
    if key.len() == 1 {
        return format!("{}{}", b.letter(), key[0]);
    }
    let inner: Vec<String> = key.iter().map(|p| p.to_string()).collect();
    format!("{}[{}]", b.letter(), inner.join(","))
}

fn simple_token(s: &str) -> bool {
    s.chars().all(|c| c.is_ascii_alphanumeric() || c == '^')
}

pub(super) fn format_terms<C: Coefficient>(b: Basis, terms: &BTreeMap<Key, C>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let parts: Vec<String> = terms
        .iter()
        .rev()
        .map(|(k, c)| {
            let cs = c.to_string();
            if k.is_empty() {
                return format!("({cs})");
            }
            let ks = format_key(b, k);
            if cs == "1" {
                ks
            } else if simple_token(&cs) {
                format!("{cs}*{ks}")
            } else {
                format!("({cs})*{ks}")
            }
        })
        .collect();
    parts.join(" + ")
}

impl<C: Coefficient> SymFunc<C> {
    /// Text form with every alphabet expressed in basis `b`.
    pub fn to_text(&self, b: Basis) -> Result<String, SymError> {
        Ok(format_terms(b, &self.convert_all(b)?))
    }

    pub fn to_json(&self, b: Basis) -> Result<Vec<JsonTerm>, SymError> {
        Ok(self
            .convert_all(b)?
            .into_iter()
            .rev()
            .map(|(k, c)| JsonTerm { basis: b, partitions: k, coefficient: c.to_string() })
            .collect())
    }
}

impl SymFunc<RationalFunction> {
    pub fn from_json(alphabets: usize, terms: &[JsonTerm]) -> Result<Self, SymError> {
        let mut out = SymFunc::zero(alphabets);
        for t in terms {
            if t.partitions.len() != alphabets {
                return Err(SymError::AlphabetMismatch(t.partitions.len(), alphabets));
            }
            let c = RationalFunction::parse(&t.coefficient)?;
            out.add_assign(&basis_product(t.basis, &t.partitions)?.scale(&c));
        }
        Ok(out)
    }
}

fn basis_product(b: Basis, key: &[Partition]) -> Result<SymFunc<RationalFunction>, SymError> {
    let k = key.len();
    let mut f = SymFunc::one(k);
    for (j, lam) in key.iter().enumerate() {
        f = f.mul(&SymFunc::basis_in(k, j, b, lam)?);
    }
    Ok(f)
}

// Splits at top-level '+' / '-' signs, keeping the sign with the following term.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (c == '+' || c == '-') {
            if !cur.trim().is_empty() {
                out.push((neg, cur.trim().to_string()));
            }
            cur.clear();
            neg = c == '-';
            continue;
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur.trim().to_string()));
    }
    out
}

fn parse_key(body: &str) -> Result<Vec<Partition>, SymError> {
    let bad = || SymError::Parse(format!("bad partition list {body:?}"));
    let inner = body.trim();
    let inner = inner.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(bad)?.trim();
    if inner.starts_with('[') {
        let mut parts = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        for (i, c) in inner.char_indices() {
            match c {
                '[' => {
                    if depth == 0 {
                        start = i;
                    }
                    depth += 1;
                }
                ']' => {
                    depth -= 1;
                    if depth == 0 {
                        parts.push(inner[start..=i].parse::<Partition>().map_err(|_| bad())?);
                    }
                }
                _ => {}
            }
        }
        Ok(parts)
    } else {
        Ok(vec![body.trim().parse::<Partition>().map_err(|_| bad())?])
    }
}

/// Parses the text form; every term must use the same number of alphabets.
pub fn parse_symfunc(s: &str) -> Result<SymFunc<RationalFunction>, SymError> {
    let mut acc: Option<SymFunc<RationalFunction>> = None;
    for (neg, term) in split_terms(s) {
        let open = term.find('[').ok_or_else(|| SymError::Parse(format!("no basis in {term:?}")))?;
        if open == 0 {
            return Err(SymError::Parse(format!("no basis in {term:?}")));
        }
        let letter = term[..open].chars().last().unwrap();
        let basis = Basis::from_letter(letter)
            .ok_or_else(|| SymError::Parse(format!("unknown basis {letter:?}")))?;
        let prefix = term[..open - 1].trim();
        let coeff = if prefix.is_empty() {
            RationalFunction::one()
        } else {
            let c = prefix
                .strip_suffix('*')
                .ok_or_else(|| SymError::Parse(format!("expected '*' in {term:?}")))?;
            RationalFunction::parse(c)?
        };
        let coeff = if neg { -coeff } else { coeff };
        let key = parse_key(&term[open..])?;
        let f = basis_product(basis, &key)?.scale(&coeff);
        acc = Some(match acc {
            None => f,
            Some(a) if a.alphabet_count() == f.alphabet_count() => a.add(&f),
            Some(a) => return Err(SymError::AlphabetMismatch(a.alphabet_count(), f.alphabet_count())),
        });
    }
    acc.ok_or_else(|| SymError::Parse("empty expression".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let f = parse_symfunc("s[2,1] + (q+t)*s[1,1,1]").unwrap();
        let text = f.to_text(Basis::Schur).unwrap();
        assert_eq!(text, "s[2,1] + (q + t)*s[1,1,1]");
        assert_eq!(parse_symfunc(&text).unwrap(), f);
    }

    #[test]
    fn signs_and_multi_alphabet() {
        let f = parse_symfunc("p[[2],[1]] - 2*p[[1,1],[1]]").unwrap();
        assert_eq!(f.alphabet_count(), 2);
        let back = parse_symfunc(&f.to_string()).unwrap();
        assert_eq!(back, f);
        assert!(parse_symfunc("s[2] + p[[1],[1]]").is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = parse_symfunc("h[2,1] + (q^2 - t)/(1 - q)*h[3]").unwrap();
        let js = f.to_json(Basis::Complete).unwrap();
        let text = serde_json::to_string(&js).unwrap();
        let back: Vec<JsonTerm> = serde_json::from_str(&text).unwrap();
        assert_eq!(SymFunc::from_json(1, &back).unwrap(), f);
    }
}
