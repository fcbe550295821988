//! Exact linear solves: Gaussian elimination over ℚ, fraction-free (Bareiss)
//! elimination over ℚ[indeterminates], and univariate interpolation.

use num_rational::BigRational;
use num_traits::Zero;

use crate::coeffring::{Polynomial, RationalFunction};

/// Unique solution of an overdetermined rational system (last column is the RHS).
pub fn solve_rational(mut aug: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let rows = aug.len();
    let cols = aug.first()?.len() - 1;
    for col in 0..cols {
        let pivot = (col..rows).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for j in col..=cols {
            aug[col][j] = &aug[col][j] * &inv;
        }
        let (head, tail) = aug.split_at_mut(col + 1);
        let prow = &head[col];
        for row in tail.iter_mut() {
            let f = row[col].clone();
            if f.is_zero() {
                continue;
            }
            for j in col..=cols {
                row[j] = &row[j] - &(&f * &prow[j]);
            }
        }
    }
    if aug[cols..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for i in (0..cols).rev() {
        let mut acc = aug[i][cols].clone();
        for j in i + 1..cols {
            acc -= &aug[i][j] * &x[j];
        }
        x[i] = acc;
    }
    Some(x)
}

/// Coefficients (ascending) of the polynomial of degree < xs.len() through the points.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    assert_eq!(xs.len(), ys.len());
    let k = xs.len();
    // Newton divided differences, then expand the Newton form.
    let mut dd = ys.to_vec();
    for level in 1..k {
        for i in (level..k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut coeffs = vec![BigRational::zero(); k.max(1)];
    for i in (0..k).rev() {
        // coeffs = coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); k.max(1)];
        for d in 0..k {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < k {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// Solves `A x = b` for an overdetermined system with a unique solution.
///
/// Rows are the equations, the last column of `aug` is the right-hand side.
/// Returns `None` if the column rank is deficient or a surplus equation is
/// violated.
pub fn solve_unique(mut aug: Vec<Vec<Polynomial>>) -> Option<Vec<RationalFunction>> {
    let rows = aug.len();
    let cols = aug.first()?.len() - 1;
    let original = aug.clone();
    let mut prev = Polynomial::one();
    for col in 0..cols {
        let pivot = (col..rows)
            .filter(|&r| !aug[r][col].is_zero())
            .min_by_key(|&r| (aug[r][col].total_degree(), aug[r][col].num_terms()))?;
        aug.swap(col, pivot);
        let (head, tail) = aug.split_at_mut(col + 1);
        let prow = &head[col];
        for row in tail.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..=cols {
                let a = &prow[col] * &row[j];
                let b = if f.is_zero() || prow[j].is_zero() { Polynomial::zero() } else { &f * &prow[j] };
                let num = &a - &b;
                row[j] = if num.is_zero() {
                    num
                } else {
                    num.exact_div(&prev).expect("Bareiss division is exact")
                };
            }
            row[col] = Polynomial::zero();
        }
        prev = aug[col][col].clone();
    }
    if aug[cols..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    // Back substitution; exact polynomial division when possible.
    let mut x = vec![RationalFunction::zero(); cols];
    for i in (0..cols).rev() {
        let mut acc = RationalFunction::from_poly(aug[i][cols].clone());
        for j in i + 1..cols {
            if !aug[i][j].is_zero() {
                acc = &acc - &(&RationalFunction::from_poly(aug[i][j].clone()) * &x[j]);
            }
        }
        x[i] = match acc.as_polynomial().and_then(|p| p.exact_div(&aug[i][i])) {
            Some(p) => RationalFunction::from_poly(p),
            None => acc.checked_div(&RationalFunction::from_poly(aug[i][i].clone())).ok()?,
        };
    }
    // Every original equation must hold exactly.
    for row in &original {
        let mut lhs = RationalFunction::zero();
        for j in 0..cols {
            if !row[j].is_zero() {
                lhs = &lhs + &(&RationalFunction::from_poly(row[j].clone()) * &x[j]);
            }
        }
        if lhs != RationalFunction::from_poly(row[cols].clone()) {
            return None;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::parse_polynomial;

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rational_solve_and_interpolation() {
        let sys = vec![vec![r(1), r(1), r(3)], vec![r(1), r(-1), r(1)], vec![r(2), r(2), r(6)]];
        assert_eq!(solve_rational(sys).unwrap(), vec![r(2), r(1)]);
        assert!(solve_rational(vec![vec![r(1), r(1), r(1)], vec![r(2), r(2), r(2)]]).is_none());
        // 3 - x + 2x^2
        let xs: Vec<_> = (0..4).map(r).collect();
        let ys: Vec<_> = xs.iter().map(|x| r(3) - x + r(2) * x * x).collect();
        assert_eq!(interpolate(&xs, &ys), vec![r(3), r(-1), r(2), r(0)]);
    }

    #[test]
    fn solves_symbolic_system() {
        // x + y = 1, q x - t y = 0, (q+t) y = q  (surplus but consistent)
        let sys = vec![
            vec![poly("1"), poly("1"), poly("1")],
            vec![poly("q"), poly("-t"), poly("0")],
            vec![poly("0"), poly("q + t"), poly("q")],
        ];
        let x = solve_unique(sys).unwrap();
        assert_eq!(x[0], RationalFunction::parse("t/(q + t)").unwrap());
        assert_eq!(x[1], RationalFunction::parse("q/(q + t)").unwrap());
    }

    #[test]
    fn detects_inconsistency_and_rank_deficiency() {
        let bad = vec![
            vec![poly("1"), poly("1"), poly("1")],
            vec![poly("q"), poly("-t"), poly("0")],
            vec![poly("0"), poly("1"), poly("1")],
        ];
        assert!(solve_unique(bad).is_none());
        let deficient = vec![vec![poly("1"), poly("1"), poly("1")], vec![poly("2"), poly("2"), poly("2")]];
        assert!(solve_unique(deficient).is_none());
    }
}
