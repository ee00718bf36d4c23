use criterion::{black_box, criterion_group, criterion_main, Criterion};
use smashprod_bench::{heisenberg_chain, heisenberg_smash};
use smashprod_core::cayley::{CayleyGroup, GroupKind, WordWeightTable};
use smashprod_core::hopf::verify_smash;
use smashprod_core::lie::{examples, semidirect_chain};
use smashprod_core::weights::{majorizes, SamplerConfig, Weight};

fn lie(c: &mut Criterion) {
    let g = examples::upper_triangular3();
    c.bench_function("radicals/upper_tri3", |b| {
        b.iter(|| {
            let full = g.full();
            let n = g.nilpotent_radical(&full).unwrap();
            black_box(semidirect_chain(&g, &n, 0).unwrap())
        })
    });
    c.bench_function("chain/heisenberg", |b| b.iter(|| black_box(heisenberg_chain())));
}

fn hopf(c: &mut Criterion) {
    let s = heisenberg_smash(3);
    c.bench_function("verify_smash/heisenberg/D=3", |b| b.iter(|| black_box(verify_smash(&s))));
    c.bench_function("iterated_smash/heisenberg/D=4", |b| b.iter(|| black_box(heisenberg_smash(4))));
}

fn cayley(c: &mut Criterion) {
    let mut group = c.benchmark_group("bfs");
    group.sample_size(10);
    for (name, kind) in [("heis3z", GroupKind::Heis3Z), ("bs12", GroupKind::BS12)] {
        group.bench_function(format!("{name}/R=12"), |b| {
            b.iter(|| black_box(WordWeightTable::bfs(CayleyGroup::new(kind.clone()), 12)))
        });
    }
    group.finish();
}

fn weights(c: &mut Criterion) {
    let w1: Weight = "tensor(restrict(expabs(1, 1), 0), restrict(expabs(1, 1), 1))".parse().unwrap();
    let w2: Weight = "expabs(1, 1)".parse().unwrap();
    let cfg = SamplerConfig::with_seed(0);
    c.bench_function("majorizes/expabs", |b| b.iter(|| black_box(majorizes(&w1, &w2, &cfg).unwrap())));
}

criterion_group!(benches, lie, hopf, cayley, weights);
criterion_main!(benches);
