use criterion::{black_box, criterion_group, criterion_main, Criterion};

use macsym::coeffring::{gcd, parse_polynomial, RationalFunction};
use macsym::geometry::c_from_log;
use macsym::hashtag::{ccoef, qt_catalan, CCoefficientQuery};
use macsym::hlvkernel::omega;
use macsym::macdonald::{build_table, table};
use macsym::partitions::Partition;

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn coefficients(c: &mut Criterion) {
    let a = RationalFunction::parse("(q^3 - t^2*q + 1)/((q - t)^2*(1 - q*t))").unwrap();
    let b = RationalFunction::parse("(q^2*t + 3)/((q - t)*(1 + q^2))").unwrap();
    c.bench_function("rational add", |bch| bch.iter(|| black_box(&a + &b)));
    let x = parse_polynomial("(q - t)^4*(q^2 + t + 1)^3*(q*t - 2)").unwrap();
    let y = parse_polynomial("(q - t)^3*(q^2 + t + 1)*(q + t^3)^2").unwrap();
    c.bench_function("bivariate gcd", |bch| bch.iter(|| black_box(gcd(&x, &y))));
}

fn macdonald(c: &mut Criterion) {
    let mut g = c.benchmark_group("macdonald table");
    g.sample_size(10);
    for n in [3, 4, 5] {
        g.bench_function(format!("n={n}"), |bch| bch.iter(|| build_table(black_box(n)).unwrap()));
    }
    g.finish();
}

fn hashtag(c: &mut Criterion) {
    table(4).unwrap();
    let q = CCoefficientQuery::new(vec![part("[2,2]"), part("[2,1,1]")], part("[1,1,1,1]")).unwrap();
    c.bench_function("ccoef n=4", |bch| bch.iter(|| ccoef(black_box(&q)).unwrap()));
    c.bench_function("qt-catalan n=4", |bch| bch.iter(|| qt_catalan(black_box(4), 1).unwrap()));
}

fn kernel(c: &mut Criterion) {
    let mut g = c.benchmark_group("kernel");
    g.sample_size(10);
    g.bench_function("Log Omega g=0 k=4 cap=3", |bch| {
        bch.iter(|| omega(0, black_box(4), 3).unwrap().series.log_pleth().unwrap())
    });
    g.bench_function("c_from_log n=3", |bch| {
        bch.iter(|| c_from_log(black_box(&[part("[2,1]"), part("[1,1,1]")])).unwrap())
    });
    g.finish();
}

criterion_group!(benches, coefficients, macdonald, hashtag, kernel);
criterion_main!(benches);
