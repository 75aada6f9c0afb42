use criterion::{criterion_group, criterion_main, Criterion};
use unaware_core::{
    invariant_sweep, search, Constraint, EnumSpec, OperatorKind, PropertyId, SearchMode, Target,
};

fn explorer_benchmarks(c: &mut Criterion) {
    let mut group = c.benchmark_group("explorer");
    group.sample_size(10);

    group.bench_function("sweep_n3_unconstrained", |b| {
        let spec = EnumSpec::new(3, &[], 1).unwrap();
        b.iter(|| invariant_sweep(&spec).unwrap())
    });

    for workers in [1, 4] {
        group.bench_function(format!("count_nontrivial_n4_serial_j{workers}"), |b| {
            let spec = EnumSpec::new(4, &[Constraint::Serial], workers).unwrap();
            let target = Target::Property {
                property: PropertyId::NontrivialUnawareness,
                operator: OperatorKind::StandardK,
                holds: true,
            };
            b.iter(|| search(&spec, &target, SearchMode::Count).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, explorer_benchmarks);
criterion_main!(benches);
