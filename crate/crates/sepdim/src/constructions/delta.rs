//! Families for bounded maximum degree: distance-two colourings, the
//! low-degree vertex partition, and the recursive construction built on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::forests::star_forest_family;
use super::partition::combine_partition;
use super::{certify, construct_degeneracy, construct_random, params, Certificate, Options};
use crate::error::{Error, Result};
use crate::hypergraph::{disjoint_pairs, Hypergraph};
use crate::par;
use crate::permutation::PermutationFamily;

/// Maximum degree at or below which [`construct_recursive_delta`] stops
/// recursing.
pub const DEFAULT_CUTOFF: usize = 64;

/// Resampling rounds allowed to [`degree_partition`] per vertex.
const RESAMPLINGS_PER_VERTEX: usize = 200;

/// A vertex partition in which every vertex has at most `cap` neighbours in
/// each part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePartition {
    pub parts: Vec<Vec<usize>>,
    pub cap: usize,
    pub resamplings: usize,
}

impl DegreePartition {
    /// First `(vertex, part)` with more than `cap` neighbours in the part.
    pub fn violation(&self, g: &Hypergraph) -> Option<(usize, usize)> {
        let mut part_of = vec![0; g.n()];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in p {
                part_of[v] = i;
            }
        }
        first_violation(&g.adjacency(), &part_of, self.parts.len(), self.cap)
    }
}

fn first_violation(adj: &[Vec<usize>], part_of: &[usize], parts: usize, cap: usize) -> Option<(usize, usize)> {
    let mut count = vec![0usize; parts];
    for (v, nbrs) in adj.iter().enumerate() {
        for &w in nbrs {
            count[part_of[w]] += 1;
        }
        let bad = nbrs.iter().map(|&w| part_of[w]).find(|&p| count[p] > cap);
        for &w in nbrs {
            count[part_of[w]] = 0;
        }
        if let Some(p) = bad {
            return Some((v, p));
        }
    }
    None
}

fn log2(x: usize) -> f64 {
    (x as f64).log2()
}

/// Splits `V(g)` into `⌈400Δ / log Δ⌉` parts with at most `⌈½ log Δ⌉`
/// neighbours of any vertex in any part.
///
/// Parts are drawn uniformly; while some vertex has too many neighbours in
/// one part, the parts of its neighbours are redrawn. Fails with
/// [`Error::Regime`] for `1 <= Δ <= 3` and with
/// [`Error::RetriesExhausted`] when the resampling budget runs out.
pub fn degree_partition(g: &Hypergraph, seed: u64) -> Result<DegreePartition> {
    g.require_graph()?;
    let n = g.n();
    let delta = g.max_degree();
    if delta == 0 {
        return Ok(DegreePartition {
            parts: vec![(0..n).collect()],
            cap: 0,
            resamplings: 0,
        });
    }
    if delta < 4 {
        return Err(Error::Regime(format!("maximum degree {delta} is below 4")));
    }
    let count = (400.0 * delta as f64 / log2(delta) - 1e-9).ceil() as usize;
    let cap = (0.5 * log2(delta) - 1e-9).ceil() as usize;
    let adj = g.adjacency();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut part_of: Vec<usize> = (0..n).map(|_| rng.gen_range(0..count)).collect();
    let budget = RESAMPLINGS_PER_VERTEX * n.max(1);
    let mut resamplings = 0;
    while let Some((v, _)) = first_violation(&adj, &part_of, count, cap) {
        if resamplings == budget {
            return Err(Error::RetriesExhausted {
                attempts: budget,
                size: count,
            });
        }
        resamplings += 1;
        for &w in &adj[v] {
            part_of[w] = rng.gen_range(0..count);
        }
    }
    let mut parts = vec![Vec::new(); count];
    for (v, &p) in part_of.iter().enumerate() {
        parts[p].push(v);
    }
    Ok(DegreePartition {
        parts,
        cap,
        resamplings,
    })
}

/// Greedy colouring in index order in which vertices at distance at most
/// two get distinct colours. Returns the colour classes; at most `Δ² + 1`.
pub fn distance_two_coloring(g: &Hypergraph) -> Result<Vec<Vec<usize>>> {
    g.require_graph()?;
    let adj = g.adjacency();
    let n = g.n();
    let mut colour = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut taken = Vec::new();
    for v in 0..n {
        taken.clear();
        for &w in &adj[v] {
            taken.push(colour[w]);
            taken.extend(adj[w].iter().map(|&x| colour[x]));
        }
        let c = (0..).find(|c| !taken.contains(c)).expect("some colour is free");
        colour[v] = c;
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(v);
    }
    Ok(classes)
}

/// Iterated logarithm, base 2: applications of `log` until the value is at
/// most 1.
fn log_star(x: usize) -> u32 {
    let mut v = x as f64;
    let mut k = 0;
    while v > 1.0 {
        v = v.log2();
        k += 1;
    }
    k
}

/// `2^(9 log* Δ) Δ`.
pub fn recursive_delta_bound(delta: usize) -> f64 {
    2f64.powi(9 * log_star(delta) as i32) * delta as f64
}

/// Smaller verified of the degeneracy and random constructions.
fn small_degree_family(g: &Hypergraph, opts: &Options) -> Result<PermutationFamily> {
    let tries = par::map(opts.exec, &[0u64, 1], |&which| {
        let o = opts.derive(100 + which);
        match which {
            0 => construct_degeneracy(g, &o),
            _ => construct_random(g, &o),
        }
    });
    let mut best: Option<PermutationFamily> = None;
    let mut last_err = None;
    for t in tries {
        match t {
            Ok(c) if best.as_ref().is_none_or(|b| c.family.len() < b.len()) => best = Some(c.family),
            Ok(_) => {}
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.expect("one of the two ran"))
}

fn recursive_family(g: &Hypergraph, cutoff: usize, opts: &Options) -> Result<(PermutationFamily, usize)> {
    let delta = g.max_degree();
    if disjoint_pairs(g).is_empty() {
        return Ok((PermutationFamily::empty(g.n()), 0));
    }
    if delta == 1 {
        return Ok((star_forest_family(g)?, 0));
    }
    if delta <= cutoff {
        return Ok((small_degree_family(g, opts)?, 0));
    }
    let parts = match degree_partition(g, opts.derive(200).seed) {
        Ok(p) => p.parts,
        Err(_) => distance_two_coloring(g)?,
    };
    let sub_opts = opts.derive(300);
    let depth = std::sync::atomic::AtomicUsize::new(0);
    let out = combine_partition(
        g,
        &parts,
        |sub| {
            let (f, d) = recursive_family(sub, cutoff, &sub_opts)?;
            depth.fetch_max(d, std::sync::atomic::Ordering::Relaxed);
            Ok(f)
        },
        opts,
    )?;
    Ok((out.family, depth.into_inner() + 1))
}

/// Recursively partitions by [`degree_partition`] (falling back to a
/// distance-two colouring when resampling fails) and combines the parts,
/// until the maximum degree is at most `cutoff`; below it, takes the smaller
/// of the degeneracy and random constructions. A matching gets one
/// permutation. Recorded against `2^(9 log* Δ) Δ`, which is only guaranteed
/// for `Δ <= 1` here.
pub fn construct_recursive_delta(g: &Hypergraph, cutoff: usize, opts: &Options) -> Result<Certificate> {
    g.require_graph()?;
    let delta = g.max_degree();
    let (family, depth) = recursive_family(g, cutoff, opts)?;
    let pars = params([
        ("delta", delta as f64),
        ("cutoff", cutoff as f64),
        ("depth", depth as f64),
    ]);
    certify(
        g,
        family,
        "recursive-delta",
        recursive_delta_bound(delta),
        delta <= 1,
        pars,
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec};

    #[test]
    fn matching_gets_one_permutation() {
        let g = Hypergraph::graph(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let c = construct_recursive_delta(&g, DEFAULT_CUTOFF, &Options::default()).unwrap();
        assert_eq!(c.size(), 1);
        assert!(c.ledger.in_regime);
    }

    #[test]
    fn cubic_graph_verifies() {
        let g = generate(&GeneratorSpec::Hypercube { d: 3 }).unwrap();
        let c = construct_recursive_delta(&g, DEFAULT_CUTOFF, &Options::with_seed(3)).unwrap();
        assert!(c.ledger.verified);
    }

    #[test]
    fn recursion_runs_below_a_small_cutoff() {
        let g = generate(&GeneratorSpec::Gnp { n: 24, p: 0.5, seed: 1 }).unwrap();
        let c = construct_recursive_delta(&g, 4, &Options::with_seed(3)).unwrap();
        assert!(c.ledger.params["depth"] >= 1.0);
        assert!(c.ledger.verified);
    }

    #[test]
    fn degree_partition_respects_the_cap() {
        let g = generate(&GeneratorSpec::Gnp { n: 40, p: 0.3, seed: 2 }).unwrap();
        let p = degree_partition(&g, 5).unwrap();
        assert_eq!(p.violation(&g), None);
        let total: usize = p.parts.iter().map(Vec::len).sum();
        assert_eq!(total, 40);
    }

    #[test]
    fn degree_partition_regimes() {
        let empty = generate(&GeneratorSpec::Empty { n: 4 }).unwrap();
        assert_eq!(degree_partition(&empty, 0).unwrap().parts.len(), 1);
        let matching = Hypergraph::graph(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(degree_partition(&matching, 0), Err(Error::Regime(_))));
    }

    #[test]
    fn distance_two_classes_are_spread() {
        let g = generate(&GeneratorSpec::Grid { rows: 4, cols: 4 }).unwrap();
        let classes = distance_two_coloring(&g).unwrap();
        assert!(classes.len() <= 4 * 4 + 1);
        let adj = g.adjacency();
        for class in &classes {
            for (i, &a) in class.iter().enumerate() {
                for &b in &class[i + 1..] {
                    assert!(!adj[a].contains(&b));
                    assert!(!adj[a].iter().any(|&w| adj[w].contains(&b)));
                }
            }
        }
    }

    #[test]
    fn bound_values() {
        assert_eq!(recursive_delta_bound(1), 1.0);
        assert_eq!(recursive_delta_bound(2), 512.0 * 2.0);
        assert_eq!(log_star(16), 3);
    }
}
