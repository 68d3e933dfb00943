use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sepdim::boxbridge::{intervals_to_perms, perms_to_interval_graphs};
use sepdim::constructions::{construct, schnyder_coordinates, Method, Options};
use sepdim::exact::{exact_pi, Budget};
use sepdim::{
    disjoint_pairs, generate, line_graph, verify_family, Exec, GeneratorSpec, Hypergraph, Permutation,
    PermutationFamily, SuitabilityKind, Triangulation, Verdict,
};

fn order_strategy(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

/// Pairwise suitability by checking every pair of disjoint edges against
/// every permutation directly.
fn double_loop(h: &Hypergraph, f: &PermutationFamily) -> bool {
    let edges = h.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if edges[i].iter().any(|v| edges[j].contains(v)) {
                continue;
            }
            let ok = f.perms().iter().any(|p| {
                let before = |a: &[usize], b: &[usize]| {
                    a.iter().all(|&x| b.iter().all(|&y| p.position(x) < p.position(y)))
                };
                before(&edges[i], &edges[j]) || before(&edges[j], &edges[i])
            });
            if !ok {
                return false;
            }
        }
    }
    true
}

fn random_hypergraph(seed: u64, n: usize, m: usize, max_rank: usize) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    while edges.len() < m {
        let r = rng.gen_range(2..=max_rank.min(n));
        let mut e: Vec<usize> = rand::seq::index::sample(&mut rng, n, r).into_vec();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(n, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reversal_is_an_involution(order in order_strategy(12)) {
        let p = Permutation::from_order(order).unwrap();
        prop_assert_eq!(p.reverse().reverse(), p);
    }

    #[test]
    fn separation_is_symmetric_and_reversal_invariant(order in order_strategy(9), cut in 0usize..9) {
        let n = order.len();
        let p = Permutation::from_order(order).unwrap();
        let cut = cut % n;
        let e: Vec<usize> = (0..cut.max(1).min(n)).collect();
        let f: Vec<usize> = (e.len()..n).collect();
        if !f.is_empty() {
            let s = p.separates(&e, &f).unwrap();
            prop_assert_eq!(s, p.separates(&f, &e).unwrap());
            prop_assert_eq!(s, p.reverse().separates(&e, &f).unwrap());
        }
    }

    #[test]
    fn verify_agrees_with_double_loop(seed in 0u64..10_000, k in 0usize..4) {
        let h = random_hypergraph(seed, 7, 6, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x55);
        let perms = (0..k)
            .map(|_| {
                let mut o: Vec<usize> = (0..7).collect();
                rand::seq::SliceRandom::shuffle(o.as_mut_slice(), &mut rng);
                Permutation::from_order(o).unwrap()
            })
            .collect();
        let f = PermutationFamily::new(7, perms).unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let v = sepdim::suitability::verify_family_with(&h, &f, SuitabilityKind::PairwiseSuitable, exec).unwrap();
            prop_assert_eq!(v.passed(), double_loop(&h, &f));
        }
    }

    #[test]
    fn random_construction_verifies(seed in 0u64..1000, n in 2usize..24) {
        let g = generate(&GeneratorSpec::Gnp { n, p: 0.4, seed }).unwrap();
        let c = construct(&g, Method::Random, &Options::with_seed(seed)).unwrap();
        prop_assert!(double_loop(&g, &c.family));
    }

    #[test]
    fn schnyder_coordinates_separate(seed in 0u64..1000, n in 4usize..40) {
        let tri = Triangulation::random(n, seed).unwrap();
        let real = schnyder_coordinates(&tri).unwrap();
        let g = tri.graph();
        for p in disjoint_pairs(&g) {
            let e = [g.edge(p.e)[0], g.edge(p.e)[1]];
            let f = [g.edge(p.f)[0], g.edge(p.f)[1]];
            prop_assert!(real.separating_coordinate(e, f).is_some());
        }
    }
}

/// Deleting an edge never increases the separation dimension.
#[test]
fn monotone_under_edge_deletion() {
    let budget = Budget::default();
    let mut checked = 0;
    for seed in 0..100u64 {
        let g = generate(&GeneratorSpec::Gnp { n: 6, p: 0.6, seed }).unwrap();
        if g.m() == 0 {
            continue;
        }
        let drop = (seed as usize) % g.m();
        let keep: Vec<usize> = (0..g.m()).filter(|&i| i != drop).collect();
        let sub = g.with_edges(&keep);
        let (Ok(a), Ok(b)) = (exact_pi(&g, &budget), exact_pi(&sub, &budget)) else {
            continue;
        };
        assert!(b.value <= a.value, "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 90);
}

#[test]
fn perms_intervals_round_trip() {
    for spec in [GeneratorSpec::Clique { n: 4 }, GeneratorSpec::Path { n: 4 }] {
        let h = generate(&spec).unwrap();
        let fam = exact_pi(&h, &Budget::default()).unwrap().family;
        let reps = perms_to_interval_graphs(&h, &fam).unwrap();
        let back = intervals_to_perms(&h, &reps).unwrap();
        assert_eq!(back.len(), fam.len());
        assert_eq!(verify_family(&h, &back, SuitabilityKind::PairwiseSuitable).unwrap(), Verdict::Pass);
        let again = perms_to_interval_graphs(&h, &back).unwrap();
        let inter = sepdim::boxbridge::intersection_of(&again, h.m()).unwrap();
        assert!(inter.same_edges(&line_graph(&h)));
    }
}

#[test]
fn sequential_and_parallel_constructions_agree() {
    let g = generate(&GeneratorSpec::Gnp { n: 20, p: 0.3, seed: 9 }).unwrap();
    for m in [Method::Random, Method::Degeneracy, Method::Treewidth, Method::Partition] {
        let run = |exec| {
            let opts = Options { exec, ..Options::with_seed(5) };
            construct(&g, m, &opts).unwrap().family
        };
        assert_eq!(run(Exec::Sequential), run(Exec::Parallel), "{m}");
    }
}
