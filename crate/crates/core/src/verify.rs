//! Self-checks grouped by acceptance criterion, shared by the `verify`
//! subcommand and the acceptance test.

use std::fmt;
use std::time::{Duration, Instant};

use crate::coeffring::RationalFunction;
use crate::geometry::{c_from_log, c_from_trace, c_one_column, mixed_hodge_rhs, q_equals_one_rhs};
use crate::hashtag::{
    ccoef, garsia_haiman_rhs, hashtag_product, nabla, qt_catalan, qt_catalan_by_ccoef, CCoefficientQuery,
};
use crate::coeffring::HookField;
use crate::hlvkernel::{hlv, omega, specialize_named, KernelFunc, Specialization};
use crate::macdonald::{eval_one_minus_u, norm_a, one_minus_u_product, table};
use crate::partitions::{enumerate, Partition};
use crate::plethysm::{substitute, AlphabetExpr, TruncatedSeries};
use crate::symfunc::{Basis, SymFunc};

type Sf = SymFunc<RationalFunction>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Macdonald,
    Hashtag,
    Kernel,
    Geometry,
}

impl Suite {
    pub fn criteria(self) -> Vec<usize> {
        match self {
            Suite::All => (1..=11).collect(),
            Suite::Macdonald => vec![2, 3, 5],
            Suite::Hashtag => vec![1, 4, 7, 8],
            Suite::Kernel => vec![9],
            Suite::Geometry => vec![6, 10, 11],
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Suite::All),
            "macdonald" => Ok(Suite::Macdonald),
            "hashtag" => Ok(Suite::Hashtag),
            "kernel" => Ok(Suite::Kernel),
            "geometry" => Ok(Suite::Geometry),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    /// Failures are reported but do not count against the suite.
    pub report_only: bool,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Passed, or a failure that is only reported.
    pub fn acceptable(&self) -> bool {
        self.report_only || self.passed()
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.passed(), self.report_only) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (report only)",
        };
        let ok = self.checks.iter().filter(|c| c.passed).count();
        writeln!(
            f,
            "criterion {:>2} {verdict}: {} [{ok}/{} checks, {:.2?}]",
            self.id,
            self.title,
            self.checks.len(),
            self.elapsed
        )?;
        for c in self.checks.iter().filter(|c| !c.passed) {
            writeln!(f, "    FAIL {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

struct Collector(Vec<Check>);

impl Collector {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn eq<E: fmt::Display>(&mut self, name: impl Into<String>, got: Result<RationalFunction, E>, want: &RationalFunction) {
        match got {
            Ok(g) if &g == want => self.push(name, true, ""),
            Ok(g) => self.push(name, false, format!("got {g}, expected {want}")),
            Err(e) => self.push(name, false, e.to_string()),
        }
    }

    fn fail(&mut self, name: impl Into<String>, e: impl fmt::Display) {
        self.push(name, false, e.to_string());
    }
}

fn rf(s: &str) -> RationalFunction {
    RationalFunction::parse(s).expect("valid literal")
}

fn at_q(f: &RationalFunction, q: i64) -> Result<RationalFunction, String> {
    f.subs(&[('q', RationalFunction::from_int(q))]).map_err(|e| e.to_string())
}

fn pairs_up_to(n: usize) -> impl Iterator<Item = (Partition, Partition)> {
    (1..=n).flat_map(|d| {
        let ps = enumerate(d);
        let qs = ps.clone();
        ps.into_iter().flat_map(move |a| qs.clone().into_iter().map(move |b| (a.clone(), b)))
    })
}

/// Number of Dyck paths of semilength n, by enumerating every ±1 word.
pub fn dyck_paths(n: usize) -> u64 {
    (0u64..1 << (2 * n))
        .filter(|w| {
            let mut h = 0i32;
            for i in 0..2 * n {
                h += if w >> i & 1 == 1 { 1 } else { -1 };
                if h < 0 {
                    return false;
                }
            }
            h == 0
        })
        .count() as u64
}

pub const TITLES: [&str; 11] = [
    "printed structure coefficients",
    "Macdonald characterization",
    "Kostka positivity",
    "Garsia-Haiman identity",
    "evaluation at 1 - u",
    "three-path agreement for the (1^n) coefficient",
    "nabla and q,t-Catalan",
    "# algebra axioms",
    "kernel sanity",
    "q = 1 consistency",
    "mixed Hodge conjecture evidence",
];

/// Runs criterion `id`; degree ranges are capped at `max_n`.
pub fn run_criterion(id: usize, max_n: usize) -> CriterionReport {
    let start = Instant::now();
    let mut c = Collector(Vec::new());
    match id {
        1 => printed_values(&mut c),
        2 => characterization(&mut c, max_n.min(6)),
        3 => positivity(&mut c, max_n.min(6)),
        4 => garsia_haiman(&mut c, max_n.min(6)),
        5 => evaluation(&mut c, max_n.min(6)),
        6 => three_paths(&mut c, max_n.min(4)),
        7 => catalan(&mut c, max_n.min(5)),
        8 => axioms(&mut c, max_n.min(5)),
        9 => kernel_sanity(&mut c, max_n.min(3)),
        10 => q_equals_one(&mut c, max_n.min(3)),
        11 => mixed_hodge(&mut c, max_n.min(3)),
        _ => c.push("criterion", false, format!("no criterion {id}")),
    }
    CriterionReport {
        id,
        title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        report_only: id == 11,
        checks: c.0,
        elapsed: start.elapsed(),
    }
}

pub fn run_suite(suite: Suite, max_n: usize) -> Vec<CriterionReport> {
    suite.criteria().into_iter().map(|id| run_criterion(id, max_n)).collect()
}

fn printed_values(c: &mut Collector) {
    let start = Instant::now();
    let f = vec!["[2,2]".parse().unwrap(), "[2,1,1]".parse().unwrap()];
    let cases = [
        ("[2,1,1]", "-q^3*t - q^2*t^2 - q*t^3 - q^2*t - q*t^2 + q^2 + q*t + t^2"),
        ("[1,1,1,1]", "q^3 + q^2*t + q*t^2 + t^3 + q^2 + 2*q*t + t^2 + q + t"),
    ];
    for (target, want) in cases {
        let got = CCoefficientQuery::new(f.clone(), target.parse().unwrap()).and_then(|q| ccoef(&q));
        c.eq(format!("c^{target}_(2,2),(2,1,1)"), got, &rf(want));
    }
    let el = start.elapsed();
    c.push("runtime < 10 s", el < Duration::from_secs(10), format!("{el:.2?}"));
}

fn characterization(c: &mut Collector, max_n: usize) {
    let start = Instant::now();
    for n in 1..=max_n {
        let tab = match table(n) {
            Ok(t) => t,
            Err(e) => return c.fail(format!("table {n}"), e),
        };
        let qt = AlphabetExpr::qt_scaled(0);
        let scaled: Vec<Sf> = tab.partitions.iter().map(|l| substitute(tab.h_tilde(l).unwrap(), 0, &qt).unwrap()).collect();
        let mut orth = true;
        let mut norms = true;
        let mut detail = String::new();
        for (i, lam) in tab.partitions.iter().enumerate() {
            let h = tab.h_tilde_at(i);
            for (j, mu) in tab.partitions.iter().enumerate() {
                let v = h.hall_scalar(&scaled[j]).unwrap();
                if i == j {
                    if v != norm_a(lam) || tab.norm(lam).unwrap() != &v {
                        norms = false;
                        detail = format!("norm of {lam} is {v}");
                    }
                } else if !v.is_zero() {
                    orth = false;
                    detail = format!("({lam}, {mu}) = {v}");
                }
            }
        }
        c.push(format!("n={n} orthogonality"), orth, detail.clone());
        c.push(format!("n={n} norms equal the cell product"), norms, detail);
        let mut tri = true;
        let mut norm1 = true;
        for lam in &tab.partitions {
            let h = tab.h_tilde(lam).unwrap();
            for (var, bound) in [('t', lam.clone()), ('q', lam.conjugate())] {
                let shift = AlphabetExpr::scaled_alphabet(&RationalFunction::var(var) - &RationalFunction::one(), 0);
                let m = substitute(h, 0, &shift).unwrap().expand(Basis::Monomial).unwrap();
                if m.iter().any(|(mu, v)| !v.is_zero() && !mu.dominance_leq(&bound)) {
                    tri = false;
                }
            }
            if !h.eval_at_one().is_one() {
                norm1 = false;
            }
        }
        c.push(format!("n={n} both triangularities"), tri, "");
        c.push(format!("n={n} normalization"), norm1, "");
    }
    let el = start.elapsed();
    c.push("runtime < 5 min", el < Duration::from_secs(300), format!("{el:.2?}"));
}

fn positivity(c: &mut Collector, max_n: usize) {
    for n in 1..=max_n {
        let tab = match table(n) {
            Ok(t) => t,
            Err(e) => return c.fail(format!("table {n}"), e),
        };
        let bad: Vec<String> = tab
            .kostka
            .iter()
            .flatten()
            .filter(|k| !k.as_polynomial().is_some_and(|p| p.is_nonnegative_integral()))
            .map(|k| k.to_string())
            .collect();
        c.push(format!("n={n} K~ in N[q,t]"), bad.is_empty(), bad.join("; "));
    }
}

fn garsia_haiman(c: &mut Collector, max_n: usize) {
    for n in 1..=max_n {
        let sign = RationalFunction::from_int(if n % 2 == 0 { -1 } else { 1 });
        let want = Sf::s(&Partition::column(n)).scale(&sign);
        match garsia_haiman_rhs(n) {
            Ok(g) => c.push(format!("n={n}"), g == want, if g == want { String::new() } else { g.to_string() }),
            Err(e) => c.fail(format!("n={n}"), e),
        }
    }
}

fn evaluation(c: &mut Collector, max_n: usize) {
    for n in 1..=max_n {
        let tab = match table(n) {
            Ok(t) => t,
            Err(e) => return c.fail(format!("table {n}"), e),
        };
        for lam in &tab.partitions {
            c.eq(format!("H~_{lam}[1-u]"), eval_one_minus_u(tab.h_tilde(lam).unwrap()), &one_minus_u_product(lam));
        }
    }
}

fn three_paths(c: &mut Collector, max_n: usize) {
    let start = Instant::now();
    for (mu, nu) in pairs_up_to(max_n) {
        let cc = match c_one_column(&mu, &nu) {
            Ok(v) => v,
            Err(e) => {
                c.fail(format!("ccoef {mu} {nu}"), e);
                continue;
            }
        };
        c.eq(format!("log route {mu} {nu}"), c_from_log(&[mu.clone(), nu.clone()]), &cc);
        match at_q(&cc, 0) {
            Ok(c0) => c.eq(format!("trace route {mu} {nu}"), c_from_trace(&mu, &nu), &c0),
            Err(e) => c.fail(format!("trace route {mu} {nu}"), e),
        }
    }
    let el = start.elapsed();
    c.push("runtime < 10 min", el < Duration::from_secs(600), format!("{el:.2?}"));
}

fn catalan(c: &mut Collector, max_n: usize) {
    let one = RationalFunction::one();
    for n in 1..=max_n {
        let a = qt_catalan(n, 1);
        let b = qt_catalan_by_ccoef(n, 1);
        match (&a, &b) {
            (Ok(a), Ok(b)) => {
                c.push(format!("n={n} psi route = # route"), a == b, format!("{a} vs {b}"));
                let at11 = a.subs(&[('q', one.clone()), ('t', one.clone())]).ok().and_then(|v| v.as_constant());
                let want = dyck_paths(n);
                c.push(
                    format!("n={n} C(1,1) = {want}"),
                    at11 == Some(num_rational::BigRational::from_integer(want.into())),
                    format!("{at11:?}"),
                );
            }
            _ => c.push(format!("n={n} catalan"), false, format!("{a:?} {b:?}")),
        }
        match nabla(&Sf::e(&Partition::row(n))).and_then(|f| Ok(f.expand(Basis::Schur)?)) {
            Ok(coeffs) => {
                let bad: Vec<String> = coeffs
                    .iter()
                    .filter(|(_, v)| !v.as_polynomial().is_some_and(|p| p.is_nonnegative_integral()))
                    .map(|(k, v)| format!("{k}: {v}"))
                    .collect();
                c.push(format!("n={n} nabla e_n Schur positive"), bad.is_empty(), bad.join("; "));
            }
            Err(e) => c.fail(format!("n={n} nabla"), e),
        }
    }
}

fn axioms(c: &mut Collector, max_n: usize) {
    let prod = |a: &Partition, b: &Partition| hashtag_product(&Sf::s(a), &Sf::s(b));
    for n in 1..=max_n.min(4) {
        let ps = enumerate(n);
        let mut ok = true;
        for (i, a) in ps.iter().enumerate() {
            for b in &ps[i..] {
                if prod(a, b).ok() != prod(b, a).ok() {
                    ok = false;
                }
            }
        }
        c.push(format!("n={n} commutativity"), ok, "");
    }
    if max_n >= 3 {
        let ps = enumerate(3);
        let mut ok = true;
        for a in &ps {
            for b in &ps {
                for d in &ps {
                    let (sa, sb, sd) = (Sf::s(a), Sf::s(b), Sf::s(d));
                    let left = hashtag_product(&sa, &sb).and_then(|x| hashtag_product(&x, &sd));
                    let right = hashtag_product(&sb, &sd).and_then(|x| hashtag_product(&sa, &x));
                    if left.is_err() || left.ok() != right.ok() {
                        ok = false;
                    }
                }
            }
        }
        c.push("n=3 associativity on all triples", ok, "");
    }
    for n in 1..=max_n {
        let id = Partition::row(n);
        let ok = enumerate(n).iter().all(|l| {
            let s = Sf::s(l);
            prod(&id, l).ok().as_ref() == Some(&s) && prod(l, &id).ok().as_ref() == Some(&s)
        });
        c.push(format!("n={n} s_(n) is the identity"), ok, "");
    }
}

fn kernel_sanity(c: &mut Collector, max_n: usize) {
    // Checked literally; the genus-1 hook factor (z − w)² makes g = 1 differ.
    let genus_factor = HookField::new(rf("Z + W"), rf("-2"));
    for g in 0..=1 {
        for k in 1..=4 {
            let prod = KernelFunc::tensor_all(&vec![KernelFunc::h(&Partition::row(1)); k]);
            match hlv(1, g, k) {
                Ok(h) => {
                    c.push(format!("H_1 = prod h_1, g={g} k={k}"), h == prod, format!("H_1 = {h}"));
                    if g == 1 {
                        let want = prod.scale(&genus_factor);
                        c.push(format!("H_1 = (Z+W-2e) prod h_1, g=1 k={k}"), h == want, "");
                    }
                }
                Err(e) => c.fail(format!("H_1 g={g} k={k}"), e),
            }
        }
    }
    for (g, k) in [(0, 2), (1, 1), (0, 3)] {
        let res = (|| -> Result<bool, String> {
            let om = omega(g, k, 3).map_err(|e| e.to_string())?.series;
            let back = om.log_pleth().and_then(|l| l.exp_pleth()).map_err(|e| e.to_string())?;
            Ok(back == om)
        })();
        match res {
            Ok(ok) => c.push(format!("Log then Exp of Omega g={g} k={k}"), ok, ""),
            Err(e) => c.fail(format!("Log then Exp of Omega g={g} k={k}"), e),
        }
    }
    let series = TruncatedSeries::from_coeffs(
        1,
        3,
        vec![Sf::zero(1), Sf::p(&Partition::row(1)).scale(&rf("q")), Sf::s(&"[1,1]".parse().unwrap()), Sf::h(&Partition::row(3)).scale(&rf("t - 1"))],
    );
    let rt = series.exp_pleth().and_then(|e| e.log_pleth()).map(|x| x == series).unwrap_or(false);
    c.push("Exp/Log round trip on a sample series", rt, "");
    for n in 1..=max_n {
        for g in 0..=1 {
            for k in 1..=4 {
                let res = hlv(n, g, k)
                    .and_then(|h| specialize_named(&h, Specialization::Poincare))
                    .map_err(|e| e.to_string())
                    .and_then(|s| s.convert_all(Basis::Schur).map_err(|e| e.to_string()));
                match res {
                    Ok(coeffs) => {
                        let bad = coeffs.values().filter(|v| !v.is_polynomial()).count();
                        c.push(format!("Poincare pairings n={n} g={g} k={k}"), bad == 0, format!("{bad} non-polynomial"));
                    }
                    Err(e) => c.fail(format!("Poincare pairings n={n} g={g} k={k}"), e),
                }
            }
        }
    }
}

fn q_equals_one(c: &mut Collector, max_n: usize) {
    for (mu, nu) in pairs_up_to(max_n) {
        let lhs = c_one_column(&mu, &nu).map_err(|e| e.to_string()).and_then(|v| at_q(&v, 1));
        match lhs {
            Ok(l) => c.eq(format!("{mu} {nu}"), q_equals_one_rhs(&mu, &nu), &l),
            Err(e) => c.fail(format!("{mu} {nu}"), e),
        }
    }
}

fn mixed_hodge(c: &mut Collector, max_n: usize) {
    for (mu, nu) in pairs_up_to(max_n) {
        let rhs = mixed_hodge_rhs(&mu, &nu);
        if let Ok(r) = &rhs {
            let integral = r.as_polynomial().is_some_and(|p| p.is_integral());
            c.push(format!("{mu} {nu} in Z[q,t]"), integral, r.to_string());
        }
        match c_one_column(&mu, &nu) {
            Ok(cc) => c.eq(format!("{mu} {nu} equals ccoef"), rhs, &cc),
            Err(e) => c.fail(format!("{mu} {nu}"), e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyck_counts() {
        assert_eq!((0..6).map(dyck_paths).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn small_suites_pass() {
        for r in run_suite(Suite::All, 2) {
            if r.id == 9 {
                // The literal genus-1 identity is off by the hook factor (Z + W − 2ε).
                for c in r.checks.iter().filter(|c| !c.name.contains("g=1") || c.name.contains("Z+W-2e")) {
                    assert!(c.passed, "{}: {}", c.name, c.detail);
                }
            } else {
                assert!(r.passed(), "{r}");
            }
        }
    }
}
