use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rdpd_core::catalog::Catalog;
use rdpd_core::criteria::{evaluate, summand_ideal, EvalOptions};
use rdpd_core::ideals::{bracket_ideal, jacobian_ideal, local_length, IdealPresentation};
use rdpd_core::{Exec, PrimeChar};

fn sweep(c: &mut Criterion) {
    let records = Catalog::builtin().all_records(PrimeChar::new(2).unwrap(), 12);
    let opts = EvalOptions::default();
    let mut group = c.benchmark_group("classify_char2");
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, exec| {
                b.iter(|| {
                    exec.map(&records, |rec| {
                        evaluate(&rec.germ(), Some(&rec.facts()), &opts).map(|e| e.verdict.outcome)
                    })
                })
            },
        );
    }
    group.finish();
}

fn lengths(c: &mut Criterion) {
    let mut ideals: Vec<IdealPresentation> = Vec::new();
    for p in [2, 3, 5] {
        for rec in Catalog::builtin().e_records(PrimeChar::new(p).unwrap()) {
            let germ = rec.germ();
            let j = jacobian_ideal(&germ);
            ideals.push(bracket_ideal(&j, &germ).unwrap());
            ideals.push(j);
            ideals.extend((0..3).map(|w| summand_ideal(&germ, w)));
        }
    }
    let mut group = c.benchmark_group("table_lengths");
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, exec| b.iter(|| exec.map(black_box(&ideals), |i| local_length(i).ok())),
        );
    }
    group.finish();
}

criterion_group!(benches, sweep, lengths);
criterion_main!(benches);
