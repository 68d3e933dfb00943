//! Families for the hypercube `Q_d`: permute the bit positions by each
//! member of a 3-suitable family and list the vertices in the resulting
//! binary order.

use super::{certify, params, Certificate, Options};
use crate::error::{Error, Result};
use crate::generate::{generate, GeneratorSpec};
use crate::hypergraph::Hypergraph;
use crate::permutation::{Permutation, PermutationFamily};
use crate::suitability::{compact_random_family_with, SuitabilityKind};

/// `log log d + ½ log log log d + log √(2π)` with non-positive logarithms
/// dropped: the size of an optimal 3-suitable family on `d` positions.
pub fn three_suitable_estimate(d: usize) -> f64 {
    let ll = (d.max(2) as f64).log2().log2();
    let lll = if ll > 0.0 { ll.log2() } else { 0.0 };
    ll.max(0.0) + 0.5 * lll.max(0.0) + (2.0 * std::f64::consts::PI).sqrt().log2()
}

/// One permutation of `Q_d` per member of a 3-suitable family over the bit
/// positions: vertex `u` is keyed by `Σ bit_i(u) 2^rank(i)`, where `rank`
/// is the position of bit `i` in the member. Positions are drawn from
/// `max(d, 3)` labels and restricted to the first `d`.
pub fn hypercube_family(d: usize, opts: &Options) -> Result<Certificate> {
    let q = generate(&GeneratorSpec::Hypercube { d })?;
    let n = q.n();
    let family = if d == 1 {
        PermutationFamily::empty(n)
    } else {
        let suitable = compact_random_family_with(
            d.max(3),
            SuitabilityKind::KSuitable(3),
            opts.seed,
            opts.retries,
            opts.exec,
        )?;
        let perms = suitable
            .perms()
            .iter()
            .map(|sigma| {
                let mut rank = vec![0usize; d];
                for (r, &i) in sigma.order().iter().filter(|&&i| i < d).enumerate() {
                    rank[i] = r;
                }
                Permutation::sorted_by_key(n, |u| {
                    (0..d).filter(|&i| u >> i & 1 == 1).map(|i| 1usize << rank[i]).sum::<usize>()
                })
            })
            .collect();
        PermutationFamily::new(n, perms)?
    };
    let size = family.len();
    let pars = params([("d", d as f64), ("spencer_estimate", three_suitable_estimate(d))]);
    certify(&q, family, "hypercube", size as f64, true, pars, opts)
}

/// [`hypercube_family`] for `h`, which must be `Q_d` in binary labelling.
pub(crate) fn construct_for_hypercube(h: &Hypergraph, opts: &Options) -> Result<Certificate> {
    let n = h.n();
    let not_cube = || Error::Regime("not a hypercube in binary labelling".into());
    if n < 2 || !n.is_power_of_two() {
        return Err(not_cube());
    }
    let d = n.trailing_zeros() as usize;
    let q = generate(&GeneratorSpec::Hypercube { d })?;
    if !q.same_edges(h) {
        return Err(not_cube());
    }
    hypercube_family(d, opts)
}
