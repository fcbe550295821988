//! Independent oracles: hand-built kernels, brute-force centralizers, Dyck
//! path statistics.

use macsym::coeffring::{HookField, RationalFunction};
use macsym::geometry::{orbit_dim, poincare, CometSpec, PunctureSpec};
use macsym::hashtag::qt_catalan;
use macsym::hlvkernel::{hlv, pair_then_specialize, KernelFunc, Specialization};
use macsym::partitions::Partition;
use macsym::symfunc::SymFunc;

fn rf(s: &str) -> RationalFunction {
    RationalFunction::parse(s).unwrap()
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn hook(base: &str, odd: &str) -> HookField {
    HookField::new(rf(base), rf(odd))
}

/// ℍ_2 = (Z−1)(1−W)·(Ω_2 − ½Ω_1² − ½p_2[Ω_1]) with every piece written out.
fn kernel_two_by_hand(g: usize, k: usize) -> KernelFunc {
    let one = HookField::one();
    let pow = |h: &HookField, e: usize| (0..e).fold(one.clone(), |acc, _| &acc * h);
    // cells (a, l): (1) → (0,0); (2) → (1,0),(0,0); (1,1) → (0,1),(0,0)
    let h1 = &pow(&hook("Z + W", "-2"), g) / &hook("(Z - 1)*(1 - W)", "0");
    let h2 = &pow(&(&hook("Z^3 + W", "-2*Z") * &hook("Z + W", "-2")), g) / &hook("(Z^2 - 1)*(Z - W)*(Z - 1)*(1 - W)", "0");
    let h11 = &pow(&(&hook("Z + W^3", "-2*W") * &hook("Z + W", "-2")), g) / &hook("(Z - W)*(1 - W^2)*(Z - 1)*(1 - W)", "0");
    let s = |p: &str| KernelFunc::s(&part(p));
    let ht2 = s("[2]").add(&s("[1,1]").scale(&hook("Z", "0")));
    let ht11 = s("[2]").add(&s("[1,1]").scale(&hook("W", "0")));
    let tensor = |f: &KernelFunc| KernelFunc::tensor_all(&vec![f.clone(); k]);
    let omega1 = tensor(&s("[1]")).scale(&h1);
    let omega2 = tensor(&ht2).scale(&h2).add(&tensor(&ht11).scale(&h11));
    let half = hook("1/2", "0");
    let log2 = omega2.sub(&omega1.mul(&omega1).scale(&half)).sub(&omega1.adams(2).scale(&half));
    log2.scale(&hook("(Z - 1)*(1 - W)", "0"))
}

#[test]
fn degree_two_kernel_matches_hand_computation() {
    for g in 0..=1 {
        for k in 1..=3 {
            assert_eq!(hlv(2, g, k).unwrap(), kernel_two_by_hand(g, k), "g={g} k={k}");
        }
    }
}

#[test]
fn degree_two_poincare_from_hand_kernel() {
    let spec = CometSpec::new(0, 2, vec![PunctureSpec::regular_semisimple(2); 4]).unwrap();
    let test = SymFunc::tensor_all(&vec![SymFunc::<RationalFunction>::h(&part("[1,1]")); 4]);
    let paired = pair_then_specialize(&test, &kernel_two_by_hand(0, 4), Specialization::Poincare).unwrap();
    let want = &rf("v^2") * &paired;
    assert_eq!(poincare(&spec).unwrap(), want);
}

/// Rank over F_p by Gaussian elimination.
fn rank_mod_p(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c].rem_euclid(p) != 0) else { continue };
        m.swap(rank, piv);
        let inv = (1..p).find(|x| (x * m[rank][c]).rem_euclid(p) == 1).unwrap();
        for j in 0..cols {
            m[rank][j] = (m[rank][j] * inv).rem_euclid(p);
        }
        for r in 0..m.len() {
            if r != rank && m[r][c].rem_euclid(p) != 0 {
                let f = m[r][c];
                for j in 0..cols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// dim of the orbit of the Jordan matrix = rank of X ↦ AX − XA over F_p.
fn orbit_dim_brute_force(spec: &PunctureSpec, p: i64) -> i64 {
    let n = spec.rank();
    let mut a = vec![vec![0i64; n]; n];
    let mut pos = 0;
    for (eig, mu) in spec.jordan.iter().enumerate() {
        for &block in mu.parts() {
            for i in 0..block {
                a[pos + i][pos + i] = eig as i64;
                if i + 1 < block {
                    a[pos + i][pos + i + 1] = 1;
                }
            }
            pos += block;
        }
    }
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // (AX − XA)_{ij} = Σ_k A_ik X_kj − X_ik A_kj
            let mut row = vec![0i64; n * n];
            for k in 0..n {
                row[k * n + j] += a[i][k];
                row[i * n + k] -= a[k][j];
            }
            rows.push(row);
        }
    }
    rank_mod_p(rows, p) as i64
}

fn all_specs(n: usize) -> Vec<PunctureSpec> {
    let mut out = Vec::new();
    for nu in macsym::partitions::enumerate(n) {
        let mut jordans: Vec<Vec<Partition>> = vec![vec![]];
        for &m in nu.parts() {
            jordans = jordans
                .into_iter()
                .flat_map(|j| macsym::partitions::enumerate(m).into_iter().map(move |mu| [j.clone(), vec![mu]].concat()))
                .collect();
        }
        out.extend(jordans.into_iter().map(|j| PunctureSpec::new(nu.clone(), j).unwrap()));
    }
    out
}

#[test]
fn orbit_dimension_against_centralizer_rank() {
    for n in 1..=3 {
        for spec in all_specs(n) {
            assert_eq!(orbit_dim(&spec), orbit_dim_brute_force(&spec, 7), "{spec:?}");
        }
    }
    let mixed = PunctureSpec::new(part("[4,2]"), vec![part("[3,1]"), part("[1,1]")]).unwrap();
    assert_eq!(orbit_dim_brute_force(&mixed, 7), 26);
}

/// Σ over Dyck paths of q^dinv t^area, from area sequences.
fn catalan_by_dinv_area(n: usize) -> RationalFunction {
    fn walk(seq: &mut Vec<usize>, n: usize, acc: &mut RationalFunction) {
        if seq.len() == n {
            let area: usize = seq.iter().sum();
            let mut dinv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if seq[i] == seq[j] || seq[i] == seq[j] + 1 {
                        dinv += 1;
                    }
                }
            }
            let term = &RationalFunction::var('q').pow(dinv as u32) * &RationalFunction::var('t').pow(area as u32);
            *acc = &*acc + &term;
            return;
        }
        let top = seq.last().map_or(0, |&a| a + 1);
        for a in 0..=top {
            seq.push(a);
            walk(seq, n, acc);
            seq.pop();
        }
    }
    let mut acc = RationalFunction::zero();
    walk(&mut vec![0], n, &mut acc);
    acc
}

#[test]
fn qt_catalan_matches_dinv_area_statistics() {
    for n in 1..=5 {
        assert_eq!(qt_catalan(n, 1).unwrap(), catalan_by_dinv_area(n), "n={n}");
    }
}
