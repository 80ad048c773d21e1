use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use seedwave::filter::extract_filter_with;
use seedwave::ortho::{f_coefficients_with, ont_filter_with, symbol_with, DEFAULT_GRID};
use seedwave::overlap::overlap_lattice_with;
use seedwave::qmcheck::{overlap2d_table, KernelModel, KernelVariant, QuadSettings};
use seedwave::seedfn::{presets, LatticeParams};
use seedwave::Exec;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn overlap(c: &mut Criterion) {
    let mut group = c.benchmark_group("overlap_lattice");
    let seed = presets::row2_corrected();
    let params = LatticeParams::new(16).unwrap();
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, "row2 L=16"), &exec, |b, &exec| {
            b.iter(|| overlap_lattice_with(black_box(&seed), params, exec).unwrap())
        });
    }
    group.finish();
}

fn extraction(c: &mut Criterion) {
    let mut group = c.benchmark_group("extract_filter");
    let seed = presets::row3();
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, "row3 N=10^4"), &exec, |b, &exec| {
            b.iter(|| extract_filter_with(black_box(&seed), 10_000, exec).unwrap())
        });
    }
    group.finish();
}

fn ont(c: &mut Criterion) {
    let mut group = c.benchmark_group("ont");
    let seed = presets::gaussian();
    let lat = overlap_lattice_with(&seed, LatticeParams::default(), Exec::Sequential).unwrap();
    let sym = symbol_with(&lat, DEFAULT_GRID, DEFAULT_GRID, Exec::Sequential).unwrap();
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, "symbol 256^2"), &exec, |b, &exec| {
            b.iter(|| symbol_with(black_box(&lat), DEFAULT_GRID, DEFAULT_GRID, exec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new(name, "f_coefficients"), &exec, |b, &exec| {
            b.iter(|| f_coefficients_with(black_box(&sym), 8, exec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new(name, "ont_filter N=64"), &exec, |b, &exec| {
            b.iter(|| ont_filter_with(black_box(&seed), &sym, 64, exec).unwrap())
        });
    }
    group.finish();
}

fn crosscheck(c: &mut Criterion) {
    let mut group = c.benchmark_group("overlap2d_table");
    group.sample_size(10);
    let seed = presets::gaussian();
    let quad = QuadSettings::default();
    for variant in [KernelVariant::Example1, KernelVariant::Example3] {
        let model = KernelModel::ground(variant);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, variant.name()), &exec, |b, &exec| {
                b.iter(|| overlap2d_table(&model, black_box(&seed), 2, &quad, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, overlap, extraction, ont, crosscheck);
criterion_main!(benches);
