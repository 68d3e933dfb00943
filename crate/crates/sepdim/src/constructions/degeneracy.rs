//! Families for `k`-degenerate graphs: `4kr` permutations from `2k` star
//! forests and a 3-suitable family of size `r` over star and leaf labels.

use super::forests::{star_forest_decompose, StarForest};
use super::{certify, params, Certificate, Options};
use crate::bounds::{FormulaValue, FLAG_ASYMPTOTIC, FLAG_CLAMPED};
use crate::error::{Error, Result};
use crate::hypergraph::{degeneracy_order, Hypergraph};
use crate::permutation::{Permutation, PermutationFamily};
use crate::suitability::{compact_random_family_with, SuitabilityKind};

/// `4k (log log n + ½ log log log n + log √(2π))`: the size obtained with an
/// optimal 3-suitable family over `n` labels.
pub fn degeneracy_paper_formula(n: usize, k: usize) -> FormulaValue {
    let mut flags = vec![FLAG_ASYMPTOTIC.to_string()];
    let ll = (n.max(2) as f64).log2().log2();
    let lll = if ll > 0.0 {
        ll.log2()
    } else {
        flags.push(FLAG_CLAMPED.to_string());
        0.0
    };
    let r = ll.max(0.0) + 0.5 * lll + (2.0 * std::f64::consts::PI).sqrt().log2();
    FormulaValue {
        value: 4.0 * k as f64 * r.max(0.0),
        flags,
    }
}

/// The two permutations a star forest contributes for one label order
/// `sigma`: stars in `sigma` order (then reversed), and inside each star the
/// leaves in `sigma` order of their labels followed by the root.
fn star_forest_pair(f: &StarForest, sigma: &Permutation) -> Result<[Permutation; 2]> {
    let mut stars: Vec<usize> = (0..f.stars().len()).collect();
    stars.sort_by_key(|&s| sigma.position(s));
    let blocks: Vec<Vec<usize>> = stars
        .iter()
        .map(|&s| {
            let star = &f.stars()[s];
            let mut block = star.leaves.clone();
            block.sort_by_key(|&v| sigma.position(f.label(v)));
            block.push(star.root);
            block
        })
        .collect();
    let forward = Permutation::concat_blocks(&blocks)?;
    let reversed: Vec<Vec<usize>> = blocks.into_iter().rev().collect();
    Ok([forward, Permutation::concat_blocks(&reversed)?])
}

/// Builds `σ_i^j` and its block reversal for every star forest `i` of a
/// degeneracy-order decomposition and every permutation `σ^j` of a
/// 3-suitable family over the labels. Certified against `4kr`.
pub fn construct_degeneracy(g: &Hypergraph, opts: &Options) -> Result<Certificate> {
    g.require_graph()?;
    if g.m() == 0 {
        return Err(Error::param("g", "needs at least one edge"));
    }
    let (k, order) = degeneracy_order(g)?;
    let decomposition = star_forest_decompose(g, &order)?;
    decomposition.validate(g)?;
    let labels = decomposition
        .forests
        .iter()
        .map(|f| f.stars().len().max(f.max_star_size()))
        .max()
        .unwrap_or(0)
        .max(3);
    let suitable = compact_random_family_with(
        labels,
        SuitabilityKind::KSuitable(3),
        opts.seed,
        opts.retries,
        opts.exec,
    )?;
    let r = suitable.len();
    let mut perms = Vec::with_capacity(2 * r * decomposition.len());
    for f in &decomposition.forests {
        for sigma in suitable.perms() {
            perms.extend(star_forest_pair(f, sigma)?);
        }
    }
    let family = PermutationFamily::new(g.n(), perms)?;
    let bound = (4 * k * r) as f64;
    let pars = params([
        ("degeneracy", k as f64),
        ("star_forests", decomposition.len() as f64),
        ("labels", labels as f64),
        ("suitable_size", r as f64),
    ]);
    certify(g, family, "degeneracy", bound, true, pars, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec};

    fn run(spec: GeneratorSpec) -> Certificate {
        construct_degeneracy(&generate(&spec).unwrap(), &Options::with_seed(11)).unwrap()
    }

    #[test]
    fn tree_uses_at_most_4r() {
        let c = run(GeneratorSpec::Path { n: 9 });
        assert_eq!(c.ledger.params["degeneracy"], 1.0);
        assert!(c.size() as f64 <= 4.0 * c.ledger.params["suitable_size"]);
    }

    #[test]
    fn subdivided_clique_uses_at_most_8r() {
        let c = run(GeneratorSpec::SubdividedClique { n: 6 });
        assert_eq!(c.ledger.params["degeneracy"], 2.0);
        assert!(c.size() as f64 <= 8.0 * c.ledger.params["suitable_size"]);
    }

    #[test]
    fn single_star_is_one_block() {
        let c = run(GeneratorSpec::Star { leaves: 6 });
        assert_eq!(c.ledger.params["star_forests"], 1.0);
        assert!(c.ledger.verified);
    }

    #[test]
    fn dense_graphs_verify() {
        for spec in [
            GeneratorSpec::Clique { n: 7 },
            GeneratorSpec::Grid { rows: 4, cols: 4 },
            GeneratorSpec::Gnp { n: 14, p: 0.3, seed: 9 },
        ] {
            assert!(run(spec).ledger.verified);
        }
    }

    #[test]
    fn edgeless_is_rejected() {
        let g = generate(&GeneratorSpec::Empty { n: 3 }).unwrap();
        assert!(construct_degeneracy(&g, &Options::default()).is_err());
    }

    #[test]
    fn formula_grows_with_k() {
        let a = degeneracy_paper_formula(1 << 16, 1).value;
        let b = degeneracy_paper_formula(1 << 16, 2).value;
        assert!((b - 2.0 * a).abs() < 1e-9);
    }
}
