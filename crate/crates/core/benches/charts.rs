use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use toric_desing::binomial::{Binomial, BinomialIdeal};
use toric_desing::driver::{resolve, Mode, Problem};
use toric_desing::par::Strategy;

fn surface(d: i64) -> BinomialIdeal {
    BinomialIdeal::new(3, 0, vec![Binomial::new(vec![0, 0, d], vec![d - 1, d, 0], vec![])]).unwrap()
}

fn strategies(c: &mut Criterion) {
    let mut group = c.benchmark_group("resolve");
    group.sample_size(10);
    for d in [3, 5] {
        for (name, strategy) in [("parallel", Strategy::Parallel), ("sequential", Strategy::Sequential)] {
            let problem = Problem::new(surface(d), Mode::CanonicalToric).with_strategy(strategy);
            group.bench_with_input(BenchmarkId::new(name, d), &problem, |b, p| b.iter(|| resolve(black_box(p)).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, strategies);
criterion_main!(benches);
