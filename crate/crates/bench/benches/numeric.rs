use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rbqsym_core::mzv::{zeta_lwc_at_cutoff, ZetaSymbol};
use rbqsym_core::qmzv::{qshuffle, zeta_q_at_cutoff, RhoYWord};
use rbqsym_core::standard_rba::waring_check;
use rbqsym_core::Lwc;

fn nested_sums(c: &mut Criterion) {
    let z: ZetaSymbol = "3,3;1,1".parse().unwrap();
    c.bench_function("zeta(3,3;1,1) cutoff 2^16", |b| b.iter(|| zeta_lwc_at_cutoff(black_box(&z), 1 << 16).unwrap()));
    let a: Lwc = "(0,1,2)".parse().unwrap();
    c.bench_function("zeta_q(0,1,2) q=1/2 cutoff 256", |b| b.iter(|| zeta_q_at_cutoff(black_box(&a), 0.5, 256).unwrap()));
}

fn words(c: &mut Criterion) {
    let (u, v): (RhoYWord, RhoYWord) = ("rryry".parse().unwrap(), "ryyry".parse().unwrap());
    c.bench_function("qshuffle rryry ryyry", |b| b.iter(|| qshuffle(black_box(&u), black_box(&v))));
    c.bench_function("waring m=4 deg=4", |b| b.iter(|| waring_check(black_box(4), 4).unwrap()));
}

criterion_group!(benches, nested_sums, words);
criterion_main!(benches);
