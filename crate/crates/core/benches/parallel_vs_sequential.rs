use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use marginal_polytope::dim1::{chain_marginal, debruijn_graph, markov_extension, simple_cycles};
use marginal_polytope::geometry::{extreme_subset, vertex_enumeration};
use marginal_polytope::invariance::{build_iloc, generator_equivalence, MeasureVector};
use marginal_polytope::patterns::{Alphabet, PatternIndex};
use marginal_polytope::{Config, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn vertices(c: &mut Criterion) {
    let mut g = c.benchmark_group("vertex_enumeration");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = Config::default().with_exec(exec);
        let index = PatternIndex::new(1, 1, Alphabet::numeric(3), &cfg).unwrap();
        let h = build_iloc(&index);
        g.bench_with_input(BenchmarkId::new(name, "ternary n=1"), &h, |b, h| {
            b.iter(|| vertex_enumeration(black_box(h), &cfg).unwrap())
        });
    }
    g.finish();
}

fn hull_reduction(c: &mut Criterion) {
    let cfg = Config::default();
    let index = PatternIndex::new(1, 1, Alphabet::numeric(3), &cfg).unwrap();
    let v = vertex_enumeration(&build_iloc(&index), &cfg).unwrap();
    // Vertices plus a few midpoints, which are redundant.
    let mut points = v.vertices.clone();
    for (i, a) in v.vertices.iter().enumerate().take(8) {
        for b in &v.vertices[i + 1..i + 3] {
            points.push(a.iter().zip(b).map(|(x, y)| (x + y) / marginal_polytope::rational::int(2)).collect());
        }
    }
    let mut g = c.benchmark_group("extreme_subset");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, points.len()), &points, |b, p| {
            b.iter(|| extreme_subset(black_box(p), v.dim, exec))
        });
    }
    g.finish();
}

fn cycles(c: &mut Criterion) {
    let mut g = c.benchmark_group("simple_cycles");
    for (name, exec) in MODES {
        let cfg = Config::default().with_exec(exec);
        let graph = debruijn_graph(&Alphabet::numeric(3), 1, &cfg).unwrap();
        g.bench_with_input(BenchmarkId::new(name, "ternary n=1"), &graph, |b, gr| {
            b.iter(|| simple_cycles(black_box(gr), &cfg))
        });
    }
    g.finish();
}

fn markov(c: &mut Criterion) {
    let mut g = c.benchmark_group("markov_round_trip");
    for (name, exec) in MODES {
        let cfg = Config::default().with_exec(exec);
        let index = PatternIndex::new(1, 2, Alphabet::numeric(3), &cfg).unwrap();
        let mu = MeasureVector::uniform_product(index.clone());
        g.bench_with_input(BenchmarkId::new(name, "ternary n=2"), &mu, |b, mu| {
            b.iter(|| {
                let chain = markov_extension(black_box(mu), &cfg).unwrap();
                chain_marginal(&chain, &index).unwrap()
            })
        });
    }
    g.finish();
}

fn equivalence(c: &mut Criterion) {
    let mut g = c.benchmark_group("generator_equivalence");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = Config::default().with_exec(exec);
        let index = PatternIndex::new(1, 2, Alphabet::numeric(2), &cfg).unwrap();
        g.bench_with_input(BenchmarkId::new(name, "binary n=2"), &index, |b, idx| {
            b.iter(|| generator_equivalence(black_box(idx), &cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, vertices, hull_reduction, cycles, markov, equivalence);
criterion_main!(benches);
