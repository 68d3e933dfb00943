//! Families assembled from a vertex partition: one sub-family per round of a
//! 1-factorization of the parts, plus block orders of the parts read from a
//! pairwise-suitable, 3-mixing family.

use serde::{Deserialize, Serialize};

use super::{certify, forests, params, Certificate, Options};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::par;
use crate::permutation::{Permutation, PermutationFamily};
use crate::suitability::{compact_random_family_with, verify_family_with, SuitabilityKind, Verdict};

/// Which part of the construction produced a permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "from", rename_all = "kebab-case")]
pub enum Origin {
    /// Merged sub-families of the pairs matched in this round.
    Matching { round: usize },
    /// Parts in block order, increasing within each part.
    Tau { index: usize },
    /// Parts in block order, decreasing within each part.
    Kappa { index: usize },
}

/// A family together with the origin of each permutation.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionFamily {
    pub family: PermutationFamily,
    pub origins: Vec<Origin>,
    /// Number of nonempty parts.
    pub parts: usize,
    /// Size of the block-order family over the parts.
    pub block_family_size: usize,
    /// Largest sub-family returned for a pair of parts.
    pub max_sub_size: usize,
}

/// Round-robin 1-factorization of `K_r`: `r - 1` perfect matchings for even
/// `r`, `r` near-perfect ones for odd `r`.
pub fn one_factorization(r: usize) -> Vec<Vec<(usize, usize)>> {
    if r < 2 {
        return Vec::new();
    }
    let m = if r % 2 == 0 { r } else { r + 1 };
    let fixed = m - 1;
    (0..fixed)
        .map(|i| {
            let mut round = Vec::with_capacity(m / 2);
            if fixed < r {
                round.push((i.min(fixed), i.max(fixed)));
            }
            for k in 1..m / 2 {
                let a = (i + k) % fixed;
                let b = (i + fixed - k) % fixed;
                round.push((a.min(b), a.max(b)));
            }
            round
        })
        .collect()
}

/// `13.68 log r + π̂ r`.
pub fn partition_bound(r: usize, max_sub_size: usize) -> f64 {
    13.68 * (r.max(1) as f64).log2() + (max_sub_size * r) as f64
}

fn check_partition(n: usize, parts: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; n];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            if v >= n {
                return Err(Error::NotAPartition(format!("part {} has vertex {} out of range", i + 1, v + 1)));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPartition(format!("vertex {} lies in two parts", v + 1)));
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(v) => Err(Error::NotAPartition(format!("vertex {} lies in no part", v + 1))),
        None => Ok(()),
    }
}

/// Combines sub-families for the subgraphs induced by pairs of parts into a
/// pairwise-suitable family for `g`.
///
/// `sub_solver` receives each pair-induced subgraph relabelled to
/// `0..|V_a| + |V_b|` (part `a` first). With a single part it is called on
/// `g` itself.
pub fn combine_partition<F>(
    g: &Hypergraph,
    parts: &[Vec<usize>],
    sub_solver: F,
    opts: &Options,
) -> Result<PartitionFamily>
where
    F: Fn(&Hypergraph) -> Result<PermutationFamily> + Sync + Send,
{
    g.require_graph()?;
    let n = g.n();
    check_partition(n, parts)?;
    let parts: Vec<Vec<usize>> = parts
        .iter()
        .filter(|p| !p.is_empty())
        .map(|p| {
            let mut p = p.clone();
            p.sort_unstable();
            p
        })
        .collect();
    let r = parts.len();
    if r <= 1 {
        let family = sub_solver(g)?;
        let size = family.len();
        return finish(
            g,
            PartitionFamily {
                origins: vec![Origin::Matching { round: 0 }; size],
                family,
                parts: r,
                block_family_size: 0,
                max_sub_size: size,
            },
            opts,
        );
    }

    let rounds = one_factorization(r);
    let tasks: Vec<(usize, usize)> = rounds.iter().flatten().copied().collect();
    let solved = par::map(opts.exec, &tasks, |&(a, b)| {
        let verts: Vec<usize> = parts[a].iter().chain(&parts[b]).copied().collect();
        let sub = sub_solver(&g.induced(&verts))?;
        let perms: Vec<Vec<usize>> = sub
            .perms()
            .iter()
            .map(|p| p.order().iter().map(|&i| verts[i]).collect())
            .collect();
        Ok::<_, Error>((verts, perms))
    });
    let solved: Vec<(Vec<usize>, Vec<Vec<usize>>)> = solved.into_iter().collect::<Result<_>>()?;
    let max_sub_size = solved.iter().map(|(_, p)| p.len()).max().unwrap_or(0);

    let mut perms = Vec::new();
    let mut origins = Vec::new();
    let mut next = 0;
    for (round, matching) in rounds.iter().enumerate() {
        let here = &solved[next..next + matching.len()];
        next += matching.len();
        let mut matched = vec![false; r];
        for &(a, b) in matching {
            matched[a] = true;
            matched[b] = true;
        }
        let rest: Vec<usize> = (0..r)
            .filter(|&p| !matched[p])
            .flat_map(|p| parts[p].iter().copied())
            .collect();
        let k = here.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
        for j in 0..k {
            let mut blocks: Vec<Vec<usize>> = here
                .iter()
                .map(|(verts, ps)| ps.get(j).or(ps.first()).unwrap_or(verts).clone())
                .collect();
            blocks.push(rest.clone());
            perms.push(Permutation::concat_blocks(&blocks)?);
            origins.push(Origin::Matching { round });
        }
    }

    let mut block_family_size = 0;
    if r >= 3 {
        let star = compact_random_family_with(
            r,
            SuitabilityKind::PairwiseSuitableAnd3Mixing,
            opts.seed,
            opts.retries,
            opts.exec,
        )?;
        block_family_size = star.len();
        for (index, sigma) in star.perms().iter().enumerate() {
            let tau: Vec<Vec<usize>> = sigma.order().iter().map(|&p| parts[p].clone()).collect();
            let kappa: Vec<Vec<usize>> = tau
                .iter()
                .map(|b| b.iter().rev().copied().collect())
                .collect();
            perms.push(Permutation::concat_blocks(&tau)?);
            origins.push(Origin::Tau { index });
            perms.push(Permutation::concat_blocks(&kappa)?);
            origins.push(Origin::Kappa { index });
        }
    }

    finish(
        g,
        PartitionFamily {
            family: PermutationFamily::new(n, perms)?,
            origins,
            parts: r,
            block_family_size,
            max_sub_size,
        },
        opts,
    )
}

fn finish(g: &Hypergraph, out: PartitionFamily, opts: &Options) -> Result<PartitionFamily> {
    match verify_family_with(g, &out.family, SuitabilityKind::PairwiseSuitable, opts.exec)? {
        Verdict::Pass => Ok(out),
        Verdict::Fail(v) => Err(Error::Verification(format!("partition family fails: {v}"))),
    }
}

/// Sub-solver for pair-induced subgraphs: one permutation for a star forest,
/// two for a forest, otherwise the degeneracy construction.
pub(crate) fn default_sub_solver(g: &Hypergraph, opts: &Options) -> Result<PermutationFamily> {
    if forests::find_non_star(g).is_none() {
        return forests::star_forest_family(g);
    }
    if forests::find_cycle(g).is_none() {
        return forests::forest_family(g);
    }
    super::construct_degeneracy(g, opts).map(|c| c.family)
}

/// [`combine_partition`] with the default sub-solver, certified against
/// `13.68 log r + π̂ r`.
pub fn construct_partition(h: &Hypergraph, parts: &[Vec<usize>], opts: &Options) -> Result<Certificate> {
    let sub_opts = opts.derive(1);
    let out = combine_partition(h, parts, |sub| default_sub_solver(sub, &sub_opts), opts)?;
    let bound = partition_bound(out.parts, out.max_sub_size);
    let pars = params([
        ("parts", out.parts as f64),
        ("max_sub_size", out.max_sub_size as f64),
        ("block_family_size", out.block_family_size as f64),
    ]);
    certify(h, out.family, "partition", bound, true, pars, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::distance_two_coloring;
    use crate::generate::{generate, GeneratorSpec};
    use crate::hypergraph::disjoint_pairs;

    #[test]
    fn factorization_covers_every_pair_once() {
        for r in 2..10 {
            let rounds = one_factorization(r);
            assert!(rounds.len() <= r);
            let mut all: Vec<(usize, usize)> = rounds.iter().flatten().copied().collect();
            for round in &rounds {
                let mut seen: Vec<usize> = round.iter().flat_map(|&(a, b)| [a, b]).collect();
                let len = seen.len();
                seen.sort_unstable();
                seen.dedup();
                assert_eq!(seen.len(), len, "round is a matching");
            }
            all.sort_unstable();
            let expected: Vec<(usize, usize)> =
                (0..r).flat_map(|a| (a + 1..r).map(move |b| (a, b))).collect();
            assert_eq!(all, expected);
        }
    }

    #[test]
    fn single_part_calls_sub_solver() {
        let g = generate(&GeneratorSpec::Path { n: 6 }).unwrap();
        let out = combine_partition(&g, &[(0..6).collect()], forests::forest_family, &Options::default())
            .unwrap();
        assert_eq!(out.family.len(), 2);
    }

    #[test]
    fn bad_partitions_are_rejected() {
        let g = generate(&GeneratorSpec::Path { n: 3 }).unwrap();
        let f = |s: &Hypergraph| forests::forest_family(s);
        let o = Options::default();
        assert!(matches!(
            combine_partition(&g, &[vec![0, 1]], f, &o),
            Err(Error::NotAPartition(_))
        ));
        assert!(matches!(
            combine_partition(&g, &[vec![0, 1], vec![1, 2]], f, &o),
            Err(Error::NotAPartition(_))
        ));
    }

    #[test]
    fn distance_two_parts_give_matchings() {
        let g = generate(&GeneratorSpec::Grid { rows: 3, cols: 4 }).unwrap();
        let parts = distance_two_coloring(&g).unwrap();
        let c = construct_partition(&g, &parts, &Options::with_seed(5)).unwrap();
        assert_eq!(c.ledger.params["max_sub_size"], 1.0);
        let r = parts.iter().filter(|p| !p.is_empty()).count() as f64;
        assert!(c.size() as f64 <= r + 13.68 * r.log2());
    }

    /// Pairs whose edges touch at most two parts are separated by a round
    /// permutation; pairs touching three or more by a block order.
    #[test]
    fn each_case_is_separated_by_its_sub_family() {
        let g = generate(&GeneratorSpec::Gnp { n: 12, p: 0.35, seed: 4 }).unwrap();
        let parts: Vec<Vec<usize>> = (0..4).map(|i| (0..12).filter(|v| v % 4 == i).collect()).collect();
        let opts = Options::with_seed(2);
        let out = combine_partition(&g, &parts, |s| default_sub_solver(s, &opts), &opts).unwrap();
        let part_of = |v: usize| v % 4;
        let mut cases = [0usize; 2];
        for pair in disjoint_pairs(&g) {
            let (e, f) = (g.edge(pair.e), g.edge(pair.f));
            let mut touched: Vec<usize> = e.iter().chain(f).map(|&v| part_of(v)).collect();
            touched.sort_unstable();
            touched.dedup();
            let by_block = touched.len() >= 3;
            cases[by_block as usize] += 1;
            let ok = out.family.perms().iter().zip(&out.origins).any(|(p, o)| {
                let from_block = !matches!(o, Origin::Matching { .. });
                from_block == by_block && p.separates(e, f).unwrap()
            });
            assert!(ok, "pair {pair:?} not separated by the predicted sub-family");
        }
        assert!(cases[0] > 0 && cases[1] > 0);
    }
}
