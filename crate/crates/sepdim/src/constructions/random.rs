use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{certify, params, Certificate, Options};
use crate::bounds::hypergraph_c2;
use crate::error::{Error, Result};
use crate::hypergraph::{disjoint_pairs, Hypergraph};
use crate::par;
use crate::permutation::PermutationFamily;
use crate::suitability::{random_permutation, verify_family_with, SuitabilityKind};

/// Size drawn by [`construct_random`]: `6.84 log n` for graphs and
/// `(e ln 2 / π√2) 4^r √r log n` for rank-`r` hypergraphs.
pub fn random_bound(h: &Hypergraph) -> f64 {
    let logn = (h.n().max(1) as f64).log2();
    if h.is_graph() {
        6.84 * logn
    } else {
        let r = h.rank() as f64;
        hypergraph_c2() * 4f64.powf(r) * r.sqrt() * logn
    }
}

/// Draws `⌈bound⌉` uniform permutations and keeps the first attempt that is
/// pairwise suitable for `h`. Attempt `i` uses stream `i` of a generator
/// seeded with `opts.seed`.
pub fn construct_random(h: &Hypergraph, opts: &Options) -> Result<Certificate> {
    let bound = random_bound(h);
    let pars = params([("n", h.n() as f64), ("rank", h.rank() as f64)]);
    if disjoint_pairs(h).is_empty() {
        return certify(h, PermutationFamily::empty(h.n()), "random", bound, false, pars, opts);
    }
    if h.n() < 2 {
        return Err(Error::param("n", "need at least 2 vertices"));
    }
    let size = (bound - 1e-9).ceil().max(1.0) as usize;
    let attempts = opts.retries.max(1);
    let n = h.n();
    let found = par::find_map_first_range(opts.exec, attempts, |attempt| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(attempt as u64);
        let perms = (0..size).map(|_| random_permutation(n, &mut rng)).collect();
        let family = PermutationFamily::new(n, perms).expect("sizes match");
        verify_family_with(h, &family, SuitabilityKind::PairwiseSuitable, par::Exec::Sequential)
            .ok()
            .filter(|v| v.passed())
            .map(|_| family)
    });
    let family = found.ok_or(Error::RetriesExhausted { attempts, size })?;
    certify(h, family, "random", bound, true, pars, opts)
}
