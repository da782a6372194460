use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use polyaxis::oracle::{classify_all, enumerate_all_polygons};
use polyaxis::polygon::symmetry_profile;
use polyaxis::{count_equivalence_classes, count_m_symmetric, count_similarity_classes, Relation};
use polyaxis_bench::{alternating, scrambled_cycle};

fn canonical_keys(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_key");
    for n in [10u32, 30, 100] {
        let word = scrambled_cycle(n + (n % 3 == 0) as u32).edge_word();
        group.bench_with_input(BenchmarkId::new("explicit", n), &word, |b, w| {
            b.iter(|| w.canonical_key(black_box(Relation::Similar)))
        });
        group.bench_with_input(BenchmarkId::new("least_rotation", n), &word, |b, w| {
            b.iter(|| w.canonical_key_fast(black_box(Relation::Similar)))
        });
    }
    group.finish();
}

fn profiles(c: &mut Criterion) {
    let word = alternating(30, 1, 13);
    let chords = word.vertex_cycle().chord_set();
    c.bench_function("symmetry_profile/chords/30", |b| b.iter(|| symmetry_profile(black_box(&chords))));
    c.bench_function("symmetry_profile/word/30", |b| b.iter(|| black_box(&word).symmetry_profile()));
}

fn formulas(c: &mut Criterion) {
    c.bench_function("count_m_symmetric/4..=1024", |b| {
        b.iter(|| (4..=1024u32).step_by(2).map(|n| count_m_symmetric(n).unwrap()).sum::<u64>())
    });
    c.bench_function("census/200", |b| {
        b.iter(|| (count_equivalence_classes(black_box(200)).unwrap(), count_similarity_classes(200).unwrap()))
    });
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("stream/9", |b| b.iter(|| enumerate_all_polygons(9).unwrap().count()));
    for n in [8u32, 9, 10] {
        group.bench_with_input(BenchmarkId::new("classify_all", n), &n, |b, &n| {
            b.iter(|| classify_all(n).unwrap().0.histogram.total)
        });
    }
    group.finish();
}

criterion_group!(benches, canonical_keys, profiles, formulas, oracle);
criterion_main!(benches);
