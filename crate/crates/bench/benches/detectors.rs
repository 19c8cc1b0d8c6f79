use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use mcsdetect_core::corpus::{representatives, reproduce_table, TableId};
use mcsdetect_core::pauli::all_gpms;
use mcsdetect_core::{detectors_of, f_equivalent, mcs_containing, verdict, Dimension, VerdictOptions};

fn containing(c: &mut Criterion) {
    for d in [6u32, 12, 30] {
        let dim = Dimension::new(d).unwrap();
        c.bench_function(&format!("mcs_containing all GPMs d={d}"), |b| {
            b.iter(|| all_gpms(dim).map(|g| mcs_containing(black_box(g), dim).len()).sum::<usize>())
        });
    }
}

fn catalog(c: &mut Criterion) {
    let cat = representatives(Dimension::new(6).unwrap()).unwrap();
    c.bench_function("detectors_of d=6 catalog", |b| {
        b.iter(|| cat.entries.iter().map(|(_, s)| detectors_of(black_box(s)).len()).sum::<usize>())
    });
    c.bench_function("verdict d=6 catalog", |b| {
        b.iter(|| {
            for (_, s) in &cat.entries {
                black_box(verdict(s, VerdictOptions::default()).unwrap());
            }
        })
    });
    c.bench_function("f_equivalent d=6 catalog", |b| {
        b.iter(|| cat.entries.iter().filter(|(_, s)| f_equivalent(black_box(s)).found).count())
    });
}

fn tables(c: &mut Criterion) {
    c.bench_function("reproduce all tables", |b| {
        b.iter(|| {
            for id in TableId::ALL {
                black_box(reproduce_table(id).unwrap());
            }
        })
    });
}

criterion_group!(benches, containing, catalog, tables);
criterion_main!(benches);
