//! Lemma suite and the PSL(2,7) pair search, parallel against sequential.
//! Built without the `parallel` feature both arms run sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use curvepi::verify::{run_suite, Execution, Psl27, SuiteConfig};

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("parallel", Execution::Parallel),
        ("sequential", Execution::Sequential),
    ]
}

fn suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("run_suite");
    g.sample_size(20);
    for (name, execution) in modes() {
        let cfg = SuiteConfig {
            execution,
            ..SuiteConfig::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| {
                let reports = run_suite(cfg);
                assert!(reports.iter().all(|r| r.passed()));
                reports
            })
        });
    }
    g.finish();
}

fn pair_search(c: &mut Criterion) {
    let psl = Psl27::new();
    let mut g = c.benchmark_group("psl27_pair_search");
    for (name, execution) in modes() {
        g.bench_function(name, |b| b.iter(|| psl.find_237_pair(execution).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, suite, pair_search);
criterion_main!(benches);
