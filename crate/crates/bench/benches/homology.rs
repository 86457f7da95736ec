use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nilcap::catalog::CatalogId;
use nilcap::freelie::free_nilpotent;
use nilcap::schur::analyze;
use nilcap::FieldSpec;
use nilcap_bench::padded;

const FIELDS: [FieldSpec; 2] = [FieldSpec::Rationals, FieldSpec::Prime(2)];

fn free_algebras(c: &mut Criterion) {
    let mut g = c.benchmark_group("free_nilpotent");
    g.sample_size(10);
    for field in FIELDS {
        for (d, cl) in [(3, 4), (5, 3), (7, 3)] {
            g.bench_function(BenchmarkId::new(field.id(), format!("F({d},{cl})")), |b| {
                b.iter(|| free_nilpotent(d, cl, field).unwrap())
            });
        }
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("analyze");
    g.sample_size(10);
    for field in FIELDS {
        for (id, k) in [(CatalogId::L4_3, 0), (CatalogId::L27A, 0), (CatalogId::L27B, 2), (CatalogId::L6_10, 3)] {
            let l = padded(&id, field, k);
            g.bench_function(BenchmarkId::new(field.id(), format!("{id}+A({k})")), |b| {
                b.iter(|| analyze(&l).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, free_algebras, homology);
criterion_main!(benches);
