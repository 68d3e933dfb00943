//! Sequential against parallel execution on the hot paths. Without the
//! `parallel` feature both variants run sequentially.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sepdim::constructions::{construct, Method, Options};
use sepdim::exact::{exact_pi, Budget};
use sepdim::suitability::verify_family_with;
use sepdim::{generate, Exec, GeneratorSpec, SuitabilityKind};

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for n in [48usize, 96] {
        let h = generate(&GeneratorSpec::Clique { n }).unwrap();
        let family = construct(&h, Method::Random, &Options::with_seed(1)).unwrap().family;
        for (name, exec) in EXECS {
            group.bench_with_input(BenchmarkId::new(name, format!("K{n}")), &exec, |b, &exec| {
                b.iter(|| verify_family_with(&h, black_box(&family), SuitabilityKind::PairwiseSuitable, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    group.sample_size(10);
    let h = generate(&GeneratorSpec::Gnp { n: 80, p: 0.2, seed: 3 }).unwrap();
    for method in [Method::Random, Method::Partition] {
        for (name, exec) in EXECS {
            let opts = Options { exec, ..Options::with_seed(5) };
            group.bench_function(BenchmarkId::new(name, method.name()), |b| {
                b.iter(|| construct(black_box(&h), method, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    let h = generate(&GeneratorSpec::SubdividedClique { n: 5 }).unwrap();
    for (name, exec) in EXECS {
        let budget = Budget {
            max_pairs: 1024,
            exec,
            ..Budget::default()
        };
        group.bench_function(BenchmarkId::new(name, "K5^1/2"), |b| b.iter(|| exact_pi(black_box(&h), &budget).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, verification, construction, exact);
criterion_main!(benches);
