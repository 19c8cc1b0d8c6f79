use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use mcsdetect_core::numeric::{common_eigenbasis, feasibility_search, SearchConfig};
use mcsdetect_core::{Dimension, GbsSet, McsId};

fn eigenbasis(c: &mut Criterion) {
    for (d, id) in [(4u32, McsId::new(2, 0)), (6, McsId::new(1, 2)), (8, McsId::new(2, 1))] {
        let dim = Dimension::new(d).unwrap();
        c.bench_function(&format!("common_eigenbasis {id} d={d}"), |b| {
            b.iter(|| common_eigenbasis(black_box(id), dim, 0).unwrap())
        });
    }
}

fn feasibility(c: &mut Criterion) {
    let mut group = c.benchmark_group("feasibility_search");
    group.sample_size(10);
    let cfg = SearchConfig::default();
    let d = Dimension::new(6).unwrap();
    let witness = GbsSet::from_pairs(d, &[(0, 0), (0, 3), (3, 0), (3, 3)]).unwrap();
    let stuck = GbsSet::from_pairs(d, &[(0, 0), (0, 1), (0, 3), (3, 0)]).unwrap();
    group.bench_function("d=6 special set", |b| b.iter(|| feasibility_search(black_box(&witness), &cfg)));
    group.bench_function("d=6 C12", |b| b.iter(|| feasibility_search(black_box(&stuck), &cfg)));
    group.finish();
}

criterion_group!(benches, eigenbasis, feasibility);
criterion_main!(benches);
