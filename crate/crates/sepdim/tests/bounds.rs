use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sepdim::bounds::{
    bound_report, check_bipartition_certificate, clique_lower_bound, integer_lower_bound, subdivided_clique_bounds,
    BipartitionCertificate, ReportOptions,
};
use sepdim::constructions::{subdivision_family, Options};
use sepdim::exact::{exact_pi, Budget};
use sepdim::{generate, GeneratorSpec, Hypergraph};

fn corpus() -> Vec<(String, Hypergraph)> {
    let mut specs = vec![
        GeneratorSpec::Clique { n: 4 },
        GeneratorSpec::Clique { n: 5 },
        GeneratorSpec::Clique { n: 6 },
        GeneratorSpec::CompleteBipartite { m: 4, n: 4 },
        GeneratorSpec::CompleteBipartite { m: 2, n: 5 },
        GeneratorSpec::Grid { rows: 3, cols: 3 },
        GeneratorSpec::Hypercube { d: 3 },
        GeneratorSpec::SubdividedClique { n: 4 },
        GeneratorSpec::Cycle { n: 7 },
        GeneratorSpec::Path { n: 6 },
        GeneratorSpec::Star { leaves: 5 },
    ];
    specs.extend((0..8).map(|seed| GeneratorSpec::Gnp { n: 7, p: 0.5, seed }));
    specs.into_iter().map(|s| (s.name(), generate(&s).unwrap())).collect()
}

#[test]
fn reports_bracket_the_exact_value() {
    let mut exact_runs = 0;
    for (name, h) in corpus() {
        let r = bound_report(&h, &name, &ReportOptions::default()).unwrap();
        r.check_bracketing().unwrap();
        if let Some(x) = r.exact() {
            exact_runs += 1;
            for e in r.entries.iter().filter(|e| e.kind == sepdim::bounds::BoundKind::Lower && !e.is_advisory()) {
                assert!(integer_lower_bound(e.value) <= x, "{name}: {} = {}", e.name, e.value);
            }
        }
    }
    assert!(exact_runs >= 15);
}

#[test]
fn complete_bipartite_certificate() {
    let h = generate(&GeneratorSpec::CompleteBipartite { m: 4, n: 4 }).unwrap();
    let cert = BipartitionCertificate {
        v1: (0..4).collect(),
        v2: (4..8).collect(),
        s1: 1,
        s2: 1,
    };
    let check = check_bipartition_certificate(&h, &cert).unwrap();
    assert!(check.valid);
    assert!(integer_lower_bound(check.bound) >= 2);
    let budget = Budget {
        max_pairs: 128,
        ..Budget::default()
    };
    assert_eq!(exact_pi(&h, &budget).unwrap().value, 3);
}

/// Any valid certificate, however it was found, is a lower bound.
#[test]
fn random_certificates_never_exceed_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut valid = 0;
    for (_, h) in corpus() {
        let Ok(exact) = exact_pi(&h, &Budget::default()) else {
            continue;
        };
        for _ in 0..30 {
            let mut side: Vec<Option<bool>> = (0..h.n()).map(|_| None).collect();
            for s in side.iter_mut() {
                *s = match rng.gen_range(0..3) {
                    0 => Some(false),
                    1 => Some(true),
                    _ => None,
                };
            }
            let v1: Vec<usize> = (0..h.n()).filter(|&v| side[v] == Some(false)).collect();
            let v2: Vec<usize> = (0..h.n()).filter(|&v| side[v] == Some(true)).collect();
            if v1.is_empty() || v2.is_empty() {
                continue;
            }
            let cert = BipartitionCertificate {
                s1: rng.gen_range(1..=v1.len()),
                s2: rng.gen_range(1..=v2.len()),
                v1,
                v2,
            };
            let check = check_bipartition_certificate(&h, &cert).unwrap();
            if check.valid {
                valid += 1;
                assert!(integer_lower_bound(check.bound) <= exact.value);
            } else {
                assert!(check.witness.is_some());
            }
        }
    }
    assert!(valid > 0);
}

#[test]
fn clique_bound_is_the_split_certificate() {
    for n in [4usize, 8, 9] {
        let h = generate(&GeneratorSpec::Clique { n }).unwrap();
        let c = clique_lower_bound(&h).unwrap();
        let check = check_bipartition_certificate(&h, c.certificate.as_ref().unwrap()).unwrap();
        assert_eq!(c.bound, check.bound);
        assert_eq!(c.bound, ((n / 2) as f64).log2());
    }
}

#[test]
fn subdivided_clique_bracket() {
    let budget = Budget {
        max_pairs: 1024,
        ..Budget::default()
    };
    for n in 4..=6 {
        let base = generate(&GeneratorSpec::Clique { n }).unwrap();
        let h = generate(&GeneratorSpec::SubdividedClique { n }).unwrap();
        let bounds = subdivided_clique_bounds(n).unwrap();
        let exact = exact_pi(&h, &budget).unwrap().value;
        let upper = subdivision_family(&base, None, &Options::default()).unwrap().size();
        assert!(bounds.lower_certificate <= exact && exact <= upper, "n = {n}");
    }
}
