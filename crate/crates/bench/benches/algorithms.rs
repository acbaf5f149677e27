use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use steiner_core::relations::{aut3_coxeter_matrix, cayley_bfs, coxeter_bfs, Conjecture};
use steiner_core::sts::{aut_coincidence, mult_group, FiniteLoop, Sts};
use steiner_core::subloop::nielsen_reduce;
use steiner_core::words::enumerate_swords;
use steiner_core::{Alphabet, GenTuple, Limits, TameWord};

fn words(c: &mut Criterion) {
    let l = Limits::default();
    let all = enumerate_swords(3, 7, &l).unwrap();
    c.bench_function("mult/all pairs, length ≤ 7", |b| {
        b.iter(|| {
            let mut total = 0;
            for x in &all {
                for y in &all {
                    total += x.mul(y).len();
                }
            }
            black_box(total)
        })
    });
    c.bench_function("enumerate_swords/n=4, length ≤ 6", |b| {
        b.iter(|| enumerate_swords(black_box(4), 6, &l).unwrap().len())
    });
}

fn automorphisms(c: &mut Criterion) {
    let a = Alphabet::standard(3).unwrap();
    let f = TameWord::parse(
        &a,
        "e1(x2) e2((x3 x1)) e1(x3) e3(x2) e2(x1) e1((x3 x2)) e3((x2 x1))",
    )
    .unwrap()
    .evaluate();
    c.bench_function("tame_decompose", |b| {
        b.iter(|| black_box(&f).tame_decompose().unwrap())
    });
    let t = GenTuple::new(f.images().iter().cloned());
    c.bench_function("nielsen_reduce", |b| {
        b.iter(|| nielsen_reduce(black_box(&t)).unwrap())
    });
}

fn growth(c: &mut Criterion) {
    let l = Limits::default();
    let mut group = c.benchmark_group("growth");
    for depth in [6, 10] {
        let gens: Vec<_> = Conjecture::Coxeter
            .letters()
            .iter()
            .map(|g| g.involution())
            .collect();
        group.bench_with_input(BenchmarkId::new("cayley_bfs", depth), &depth, |b, &d| {
            b.iter(|| cayley_bfs(&gens, d, &l).unwrap().profile)
        });
        group.bench_with_input(BenchmarkId::new("coxeter_bfs", depth), &depth, |b, &d| {
            b.iter(|| coxeter_bfs(&aut3_coxeter_matrix(), d, &l).unwrap())
        });
    }
    group.finish();
}

fn finite(c: &mut Criterion) {
    let l = Limits::default();
    let ag = Sts::affine_plane_3();
    c.bench_function("aut_coincidence/STS(9)", |b| {
        b.iter(|| aut_coincidence(black_box(&ag), &l).unwrap())
    });
    let ext = FiniteLoop::exterior(&ag);
    c.bench_function("mult_group/STS(9) exterior", |b| {
        b.iter(|| mult_group(black_box(&ext)).unwrap().group.order())
    });
}

criterion_group!(benches, words, automorphisms, growth, finite);
criterion_main!(benches);
