//! Multivariate gcd over ℚ by content / primitive-part recursion.
//!
//! Results are primitive integer polynomials with positive leading coefficient.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::polynomial::{Monomial, Polynomial};

pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    gcd_primitive(&a.primitive(), &b.primitive())
}

/// `a * b / gcd(a, b)`, primitive.
pub fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let g = gcd(a, b);
    (&a.primitive() * &b.primitive().exact_div(&g).expect("gcd divides")).primitive()
}

fn monomial_content(p: &Polynomial) -> Monomial {
    let mut it = p.terms().map(|(m, _)| m);
    let first = it.next().cloned().unwrap_or_else(Monomial::one);
    it.fold(first, |acc, m| acc.gcd(m))
}

fn strip_monomial(p: &Polynomial, m: &Monomial) -> Polynomial {
    if m.is_one() {
        return p.clone();
    }
    Polynomial::from_terms(p.terms().map(|(k, c)| (k.div(m).expect("monomial content"), c.clone())))
}

// Both arguments nonzero, primitive.
fn gcd_primitive(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a == b {
        return a.clone();
    }
    let (ma, mb) = (monomial_content(a), monomial_content(b));
    let mg = ma.gcd(&mb);
    let (a, b) = (strip_monomial(a, &ma), strip_monomial(b, &mb));
    let mono = Polynomial::monomial(mg, BigRational::one());
    if a.is_constant() || b.is_constant() {
        return mono;
    }
    let g = gcd_stripped(&a, &b);
    (&mono * &g).primitive()
}

// Neither argument has a monomial factor.
fn gcd_stripped(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.num_terms() <= b.num_terms() {
        if b.exact_div(a).is_some() {
            return a.primitive();
        }
    } else if a.exact_div(b).is_some() {
        return b.primitive();
    }
    if a.is_integral() && b.is_integral() {
        if let Some(g) = heuristic_gcd(&to_int(a), &to_int(b)) {
            return from_int(&g).primitive();
        }
    }
    let (va, vb) = (a.vars(), b.vars());
    if let Some(&x) = va.difference(&vb).next() {
        return gcd_with_content(a, x, b);
    }
    if let Some(&x) = vb.difference(&va).next() {
        return gcd_with_content(b, x, a);
    }
    if va.len() == 1 {
        let x = *va.iter().next().unwrap();
        return univariate_gcd(a, b, x);
    }
    let x = *va
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .unwrap();
    let (ca, pa) = content_primitive(a, x);
    let (cb, pb) = content_primitive(b, x);
    let c = gcd(&ca, &cb);
    let g = prs(pa, pb, x);
    (&c * &g).primitive()
}

/// gcd(a, b) where `x` occurs in `a` but not in `b`.
fn gcd_with_content(a: &Polynomial, x: u8, b: &Polynomial) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = a.coefficients_in(x).into_values().collect();
    coeffs.sort_by_key(|c| c.num_terms());
    let mut g = b.primitive();
    for c in coeffs {
        g = gcd(&g, &c);
        if g.is_constant() {
            return Polynomial::one();
        }
    }
    g
}

/// Splits `p` into its content with respect to `x` and the primitive part.
fn content_primitive(p: &Polynomial, x: u8) -> (Polynomial, Polynomial) {
    let mut coeffs: Vec<Polynomial> = p.coefficients_in(x).into_values().collect();
    coeffs.sort_by_key(|c| c.num_terms());
    let mut cont = coeffs[0].primitive();
    for c in &coeffs[1..] {
        if cont.is_constant() {
            break;
        }
        cont = gcd(&cont, c);
    }
    if cont.is_constant() {
        return (Polynomial::one(), p.primitive());
    }
    let pp = p.exact_div(&cont).expect("content divides").primitive();
    (cont, pp)
}

fn dense(p: &Polynomial, x: u8) -> Vec<Polynomial> {
    let map = p.coefficients_in(x);
    let deg = map.keys().next_back().copied().unwrap_or(0) as usize;
    let mut out = vec![Polynomial::zero(); deg + 1];
    for (e, c) in map {
        out[e as usize] = c;
    }
    out
}

fn undense(v: &[Polynomial], x: u8) -> Polynomial {
    let map: BTreeMap<u32, Polynomial> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e as u32, c.clone()))
        .collect();
    Polynomial::from_coefficients_in(x, &map)
}

/// Pseudo-remainder of `a` by `b` with respect to `x`.
fn prem(a: &Polynomial, b: &Polynomial, x: u8) -> Polynomial {
    let mut r = dense(a, x);
    let bd = dense(b, x);
    let db = bd.len() - 1;
    let lc = bd[db].clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        for c in r.iter_mut() {
            if !c.is_zero() {
                *c = &lc * &*c;
            }
        }
        for (i, bc) in bd.iter().enumerate() {
            if !bc.is_zero() {
                let t = &lr * bc;
                r[i + dr - db] -= &t;
            }
        }
        while r.len() > 1 && r.last().unwrap().is_zero() {
            r.pop();
        }
        if r.len() == 1 && db == 0 {
            r[0] = Polynomial::zero();
        }
    }
    undense(&r, x)
}

// Primitive polynomial remainder sequence; inputs primitive with respect to `x`.
fn prs(a: Polynomial, b: Polynomial, x: u8) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(x) >= b.degree_in(x) { (a, b) } else { (b, a) };
    loop {
        if b.degree_in(x) == 0 {
            return Polynomial::one();
        }
        let r = prem(&a, &b, x);
        if r.is_zero() {
            return b.primitive();
        }
        if r.degree_in(x) == 0 {
            return Polynomial::one();
        }
        let (_, pr) = content_primitive(&r.primitive(), x);
        a = b;
        b = pr;
    }
}

type IntPoly = BTreeMap<Monomial, BigInt>;

fn to_int(p: &Polynomial) -> IntPoly {
    p.terms().map(|(m, c)| (m.clone(), c.numer().clone())).collect()
}

fn from_int(p: &IntPoly) -> Polynomial {
    Polynomial::from_terms(p.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))))
}

fn int_content(p: &IntPoly) -> BigInt {
    p.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

// Substitutes x = xi.
fn eval_int(p: &IntPoly, x: u8, xi: &BigInt) -> IntPoly {
    let mut out = IntPoly::new();
    let mut powers: Vec<BigInt> = vec![BigInt::one()];
    for (m, c) in p {
        let (e, rest) = m.split(x);
        while powers.len() <= e as usize {
            let next = powers.last().unwrap() * xi;
            powers.push(next);
        }
        let v = c * &powers[e as usize];
        let slot = out.entry(rest).or_insert_with(BigInt::zero);
        *slot += v;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

// Inverts `eval_int` through symmetric xi-adic digits of every coefficient.
fn reconstruct(h: &IntPoly, x: u8, xi: &BigInt) -> IntPoly {
    let half = xi / 2;
    let mut out = IntPoly::new();
    for (m, c) in h {
        let mut c = c.clone();
        let mut i = 0u32;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                out.insert(m.mul(&Monomial::var_pow(x, i)), d.clone());
            }
            c = (c - d) / xi;
            i += 1;
        }
    }
    out
}

/// Heuristic gcd by evaluation at a large integer and digit reconstruction.
///
/// Returns the exact integer gcd (content included) or `None` when the
/// evaluation points were unlucky; a candidate is only accepted if it divides
/// both inputs.
fn heuristic_gcd(f: &IntPoly, g: &IntPoly) -> Option<IntPoly> {
    if f.is_empty() || g.is_empty() {
        return None;
    }
    let (cf, cg) = (int_content(f), int_content(g));
    let c = cf.gcd(&cg);
    let var = f.keys().chain(g.keys()).flat_map(|m| m.vars()).min();
    let Some(x) = var else {
        return Some(IntPoly::from([(Monomial::one(), c)]));
    };
    let f: IntPoly = f.iter().map(|(m, v)| (m.clone(), v / &cf)).collect();
    let g: IntPoly = g.iter().map(|(m, v)| (m.clone(), v / &cg)).collect();
    let max_abs = |p: &IntPoly| p.values().map(|v| v.abs()).max().unwrap();
    let mut xi: BigInt = max_abs(&f).min(max_abs(&g)) * 2 + 29;
    let (pf, pg) = (from_int(&f), from_int(&g));
    for _ in 0..6 {
        let (ff, gg) = (eval_int(&f, x, &xi), eval_int(&g, x, &xi));
        if !ff.is_empty() && !gg.is_empty() {
            if let Some(h) = heuristic_gcd(&ff, &gg) {
                let cand = reconstruct(&h, x, &xi);
                if !cand.is_empty() {
                    let k = int_content(&cand);
                    let cand: IntPoly = cand.into_iter().map(|(m, v)| (m, v / &k)).collect();
                    let cp = from_int(&cand);
                    if pf.exact_div(&cp).is_some() && pg.exact_div(&cp).is_some() {
                        return Some(cand.into_iter().map(|(m, v)| (m, v * &c)).collect());
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn univariate_gcd(a: &Polynomial, b: &Polynomial, x: u8) -> Polynomial {
    let to_dense = |p: &Polynomial| -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); p.degree_in(x) as usize + 1];
        for (m, c) in p.terms() {
            v[m.exponent(x) as usize] = c.clone();
        }
        v
    };
    let mut u = to_dense(a);
    let mut w = to_dense(b);
    if u.len() < w.len() {
        std::mem::swap(&mut u, &mut w);
    }
    while !(w.len() == 1 && w[0].is_zero()) && !w.is_empty() {
        // u mod w
        let dw = w.len() - 1;
        let inv = w[dw].recip();
        while u.len() > dw && !u.is_empty() {
            let du = u.len() - 1;
            let f = &u[du] * &inv;
            if !f.is_zero() {
                for i in 0..=dw {
                    let t = &f * &w[i];
                    u[i + du - dw] -= t;
                }
            }
            u.pop();
            while u.len() > 1 && u.last().unwrap().is_zero() {
                u.pop();
            }
        }
        if u.is_empty() {
            u.push(BigRational::zero());
        }
        std::mem::swap(&mut u, &mut w);
    }
    let p = Polynomial::from_terms(
        u.into_iter()
            .enumerate()
            .map(|(e, c)| (Monomial::var_pow(x, e as u32), c)),
    );
    p.primitive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Polynomial {
        Polynomial::var('q')
    }
    fn t() -> Polynomial {
        Polynomial::var('t')
    }
    fn one() -> Polynomial {
        Polynomial::one()
    }

    #[test]
    fn difference_of_squares() {
        let a = q().pow(2) - t().pow(2);
        assert_eq!(gcd(&a, &(q() - t())), q() - t());
    }

    #[test]
    fn coprime_letters() {
        assert_eq!(gcd(&q(), &t()), one());
    }

    #[test]
    fn shared_factors() {
        let a = (q() - one()).pow(2) * (one() - t());
        let b = (q() - one()) * (one() - t()).pow(2);
        let g = gcd(&a, &b);
        assert_eq!(g, ((q() - one()) * (t() - one())).primitive());
    }

    #[test]
    fn zero_argument() {
        let b = (q() - t()).scale(&BigRational::from_integer((-6).into()));
        assert_eq!(gcd(&Polynomial::zero(), &b), q() - t());
    }

    #[test]
    fn three_letters() {
        let u = Polynomial::var('u');
        let f = q() * t() - u.clone() + one();
        let a = &f * &(q() + u.pow(2));
        let b = &f * &(t().pow(3) - q() * u.clone());
        assert_eq!(gcd(&a, &b), f.primitive());
    }

    #[test]
    fn univariate_rational_coefficients() {
        let half = BigRational::new(1.into(), 2.into());
        let a = (q() - one()).scale(&half) * (q() + Polynomial::from_int(2));
        let b = (q() - one()) * (q() - Polynomial::from_int(5));
        assert_eq!(gcd(&a, &b), q() - one());
    }
}
