use criterion::{criterion_group, criterion_main, Criterion};
use neumann_core::certify::{sweep, zones, SweepConfig};
use neumann_core::closed_form::ndf_at;

fn bench_sweep(c: &mut Criterion) {
    let z = zones()[0].clone();
    let mut g = c.benchmark_group("certify");
    g.sample_size(10);
    for workers in [1, 0] {
        let cfg = SweepConfig {
            workers,
            ..SweepConfig::default()
        };
        g.bench_function(format!("zone_I_workers_{workers}"), |b| {
            b.iter(|| sweep(&z, &cfg).unwrap().report.max_f)
        });
    }
    g.finish();
    c.bench_function("ndf_single_point", |b| {
        b.iter(|| ndf_at(std::hint::black_box(0.0), std::hint::black_box(0.03), std::hint::black_box(0.41)).f)
    });
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
