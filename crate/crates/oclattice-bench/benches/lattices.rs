use criterion::{black_box, criterion_group, criterion_main, Criterion};
use oclattice::{
    congruence_lattice, partition_lattice, quotient_gset, subgroup_lattice_sym, Partition,
};
use oclattice_bench::swap_presentation;

pub fn criterion_benchmark(c: &mut Criterion) {
    let quotient = quotient_gset(
        &swap_presentation(),
        &Partition::new(vec![1, 1, 1]).unwrap(),
    )
    .unwrap();
    c.bench_function("partition_lattice_6", |b| {
        b.iter(|| partition_lattice(black_box(6)).unwrap())
    });
    c.bench_function("subgroup_lattice_sym_4", |b| {
        b.iter(|| subgroup_lattice_sym(black_box(4)).unwrap())
    });
    c.bench_function("congruence_lattice_linear_3", |b| {
        b.iter(|| congruence_lattice(black_box(&quotient)).unwrap())
    });
}

criterion_group!(benches, criterion_benchmark);
criterion_main!(benches);
