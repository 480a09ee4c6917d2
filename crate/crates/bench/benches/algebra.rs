use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rbqsym_core::basis::{transition_matrix, Direction};
use rbqsym_core::series::{expand_f, gamma_p};
use rbqsym_core::{diamond, f_to_m, quasi_shuffle, Lwc, MbarElement};

fn lwc(s: &str) -> Lwc {
    s.parse().unwrap()
}

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("quasi_shuffle");
    for (a, b) in [("(1,2)", "(0,1)"), ("(0,1,0,2)", "(1,0,1)"), ("(0,0,1,2,1)", "(1,0,0,2,1)")] {
        let (x, y) = (lwc(a), lwc(b));
        g.bench_with_input(BenchmarkId::from_parameter(format!("{a}*{b}")), &(x, y), |bch, (x, y)| {
            bch.iter(|| quasi_shuffle(black_box(x), black_box(y)))
        });
    }
    g.finish();
    let (x, y): (MbarElement, MbarElement) = ("1;(0,1,2)".parse().unwrap(), "0;(1,0,1)".parse().unwrap());
    c.bench_function("diamond (1;(0,1,2))(0;(1,0,1))", |b| b.iter(|| diamond(black_box(&x), black_box(&y))));
}

fn bases(c: &mut Criterion) {
    let a = lwc("(0,0,2,0,1,3)");
    c.bench_function("f_to_m (0^2,2,0,1,3)", |b| b.iter(|| f_to_m(black_box(&a))));
    c.bench_function("transition_matrix n=5 z=2", |b| {
        b.iter(|| transition_matrix(black_box(5), 2, Direction::F2m, 100_000).unwrap())
    });
    let small = lwc("(0,1,0,2)");
    c.bench_function("expand_f (0,1,0,2) N=6", |b| b.iter(|| expand_f(black_box(&small), 6, 5).unwrap()));
    c.bench_function("gamma_p (0,1,0,2) N=6", |b| b.iter(|| gamma_p(black_box(&small), 6, 5, 16).unwrap()));
}

criterion_group!(benches, products, bases);
criterion_main!(benches);
