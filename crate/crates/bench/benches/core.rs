use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use stickelgraph::bowen_franks::bf_operator;
use stickelgraph::stickelberger::{minus_class_number, stickelberger_cover, verify_theorem_a};
use stickelgraph::{smith_normal_form, IntMatrix};

/// Deterministic dense test matrix with small entries.
fn matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 31 + j * 17 + i * j) % 11) as i64 - 5).collect())
        .collect();
    IntMatrix::from_i64_rows(&rows)
}

fn snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for n in [8, 16, 32] {
        let m = matrix(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    g.finish();
}

fn char_poly(c: &mut Criterion) {
    let mut g = c.benchmark_group("reversed_char_poly");
    for p in [13u64, 23, 31] {
        let a = stickelberger_cover(p).unwrap().digraph().adjacency_matrix();
        g.bench_with_input(BenchmarkId::from_parameter(p), &a, |b, a| b.iter(|| a.reversed_char_poly().unwrap()));
    }
    g.finish();
}

fn bf_of_cover(c: &mut Criterion) {
    let mut g = c.benchmark_group("bf_snf_of_cover");
    for p in [23u64, 41] {
        let b_op = bf_operator(stickelberger_cover(p).unwrap().digraph());
        g.bench_with_input(BenchmarkId::from_parameter(p), &b_op, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    g.finish();
}

fn theorem_a(c: &mut Criterion) {
    let mut g = c.benchmark_group("theorem_a");
    g.sample_size(10);
    for p in [23u64, 41] {
        g.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| b.iter(|| verify_theorem_a(p).unwrap()));
    }
    g.finish();
    c.bench_function("minus_class_number_61", |b| b.iter(|| minus_class_number(black_box(61))));
}

criterion_group!(benches, snf, char_poly, bf_of_cover, theorem_a);
criterion_main!(benches);
