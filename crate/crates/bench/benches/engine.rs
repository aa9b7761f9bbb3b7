use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use logct_core::ct::{eval_problem, f_binomial_sum, f_problem, log_dyson_vandermonde};
use logct_core::exact::rat_int;
use logct_core::laurent::{ExpVec, SparseLaurent, Window};
use logct_core::virasoro::{is_singular, singular_vector_degree5};
use logct_core::{Limits, Rat, TMode};

fn bench_residue_f(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("residue_f");
    for p in [1u64, 3, 5] {
        group.bench_with_input(BenchmarkId::new("symbolic", p), &p, |b, &p| {
            b.iter(|| {
                eval_problem(&f_problem(p, TMode::Symbolic).unwrap(), &limits).unwrap()
            })
        });
        group.bench_with_input(BenchmarkId::new("at_integer", p), &p, |b, &p| {
            let t = rat_int(2 * p as i64 - 1);
            b.iter(|| {
                eval_problem(&f_problem(p, TMode::At(t.clone())).unwrap(), &limits).unwrap()
            })
        });
        group.bench_with_input(BenchmarkId::new("binomial_sum", p), &p, |b, &p| {
            b.iter(|| f_binomial_sum(p, TMode::Symbolic).unwrap())
        });
    }
    group.finish();
}

fn bench_pruned_mul(c: &mut Criterion) {
    // dense trivariate factors with and without a narrow target window
    let nvars = 3;
    let mut a: SparseLaurent<Rat> = SparseLaurent::zero(nvars);
    let mut b: SparseLaurent<Rat> = SparseLaurent::zero(nvars);
    let mut k = 1i64;
    for x in -6..=6 {
        for y in -6..=6 {
            a.insert_add(ExpVec::from_slice(&[x, y, -x - y]).unwrap(), rat_int(k));
            b.insert_add(ExpVec::from_slice(&[y, -x - y, x]).unwrap(), rat_int(k + 1));
            k += 1;
        }
    }
    let mut narrow = Window::wide(nvars);
    for v in 0..nvars {
        narrow.set(v, -1, 1);
    }
    let wide = Window::wide(nvars);
    let mut group = c.benchmark_group("sparse_mul");
    group.bench_function("wide_window", |bch| {
        bch.iter(|| a.mul_pruned(&b, &wide).unwrap())
    });
    group.bench_function("narrow_window", |bch| {
        bch.iter(|| a.mul_pruned(&b, &narrow).unwrap())
    });
    group.finish();
}

fn bench_log_dyson(c: &mut Criterion) {
    let limits = Limits::default();
    c.bench_function("log_dyson_vandermonde_2_1", |b| {
        b.iter(|| log_dyson_vandermonde(2, 1, &limits).unwrap())
    });
}

fn bench_singular_vector(c: &mut Criterion) {
    c.bench_function("singular_vector_p11", |b| {
        b.iter(|| {
            let sv = singular_vector_degree5(&rat_int(11));
            assert!(is_singular(&sv));
        })
    });
}

criterion_group!(
    benches,
    bench_residue_f,
    bench_pruned_mul,
    bench_log_dyson,
    bench_singular_vector
);
criterion_main!(benches);
