//! Constructive upper bounds. Every construction returns a [`Certificate`]:
//! a family verified pairwise suitable for its input, with a size ledger
//! comparing the size against the closed-form bound it realizes.

mod coloring;
mod degeneracy;
mod delta;
mod forests;
mod hypercube;
mod partition;
mod planar;
mod random;
mod subdivision;
mod treewidth;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use coloring::{
    check_coloring, coloring_bound, construct_coloring, greedy_acyclic_coloring, greedy_star_coloring,
    ColoringMode,
};
pub use degeneracy::{construct_degeneracy, degeneracy_paper_formula};
pub use delta::{
    construct_recursive_delta, degree_partition, distance_two_coloring, recursive_delta_bound,
    DegreePartition, DEFAULT_CUTOFF,
};
pub use forests::{
    forest_family, star_forest_decompose, star_forest_family, Star, StarForest,
    StarForestDecomposition,
};
pub use hypercube::{hypercube_family, three_suitable_estimate};
pub use partition::{
    combine_partition, construct_partition, one_factorization, partition_bound, Origin, PartitionFamily,
};
pub use planar::{schnyder_coordinates, schnyder_family, SchnyderRealizer};
pub use random::{construct_random, random_bound};
pub use subdivision::{color_block_order, interval_collection, subdivision_family, IntervalCollection};
pub(crate) use subdivision::recover_base;
pub use treewidth::{construct_treewidth, treewidth_bound, OrderedTreeDecomposition};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::par::Exec;
use crate::permutation::PermutationFamily;
use crate::suitability::{verify_family_with, SuitabilityKind, Verdict, DEFAULT_RETRIES};

/// Seed, scheduling and retry budget shared by all constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub exec: Exec,
    pub retries: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            exec: Exec::default(),
            retries: DEFAULT_RETRIES,
        }
    }
}

impl Options {
    pub fn with_seed(seed: u64) -> Self {
        Options {
            seed,
            ..Options::default()
        }
    }

    /// Options for an independent sub-construction.
    pub(crate) fn derive(&self, salt: u64) -> Self {
        Options {
            seed: splitmix(self.seed ^ splitmix(salt)),
            ..*self
        }
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Size bookkeeping for one construction run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeLedger {
    pub method: String,
    pub size: usize,
    /// The bound the construction realizes, evaluated on this instance.
    pub paper_bound: f64,
    pub verified: bool,
    /// Whether the instance meets the hypotheses under which
    /// `size <= paper_bound` is guaranteed; checked when true.
    pub in_regime: bool,
    pub seed: u64,
    /// Measured quantities that enter the bound (degeneracy, width, ...).
    pub params: BTreeMap<String, f64>,
}

/// A verified family with its ledger.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub family: PermutationFamily,
    pub ledger: SizeLedger,
}

impl Certificate {
    pub fn size(&self) -> usize {
        self.family.len()
    }

    pub fn ledger_json(&self) -> String {
        serde_json::to_string(&self.ledger).expect("ledger serializes")
    }
}

/// Verifies `family` for `h` and records the ledger. Fails when the family is
/// not pairwise suitable, or when it exceeds the ceiling of an in-regime
/// bound.
pub(crate) fn certify(
    h: &Hypergraph,
    family: PermutationFamily,
    method: &str,
    paper_bound: f64,
    in_regime: bool,
    params: BTreeMap<String, f64>,
    opts: &Options,
) -> Result<Certificate> {
    if let Verdict::Fail(v) = verify_family_with(h, &family, SuitabilityKind::PairwiseSuitable, opts.exec)? {
        return Err(Error::Verification(format!("{method} family fails: {v}")));
    }
    let size = family.len();
    if in_regime && size as f64 > (paper_bound - 1e-9).ceil() {
        return Err(Error::Verification(format!(
            "{method} family has {size} permutations, above its bound {paper_bound:.3}"
        )));
    }
    Ok(Certificate {
        family,
        ledger: SizeLedger {
            method: method.to_string(),
            size,
            paper_bound,
            verified: true,
            in_regime,
            seed: opts.seed,
            params,
        },
    })
}

pub(crate) fn params<const N: usize>(items: [(&str, f64); N]) -> BTreeMap<String, f64> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Construction methods selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Random,
    Degeneracy,
    Treewidth,
    Coloring,
    Planar,
    Subdivision,
    Hypercube,
    RecursiveDelta,
    Partition,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Random,
        Method::Degeneracy,
        Method::Treewidth,
        Method::Coloring,
        Method::Planar,
        Method::Subdivision,
        Method::Hypercube,
        Method::RecursiveDelta,
        Method::Partition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Random => "random",
            Method::Degeneracy => "degeneracy",
            Method::Treewidth => "treewidth",
            Method::Coloring => "coloring",
            Method::Planar => "planar",
            Method::Subdivision => "subdivision",
            Method::Hypercube => "hypercube",
            Method::RecursiveDelta => "recursive-delta",
            Method::Partition => "partition",
        }
    }

    pub fn parse(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::param("method", format!("unknown method `{s}`")))
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Runs `method` on `h` with default auxiliary inputs: min-fill tree
/// decompositions, greedy acyclic colourings, the embedding of a maximal
/// planar graph, colour-block base orders, and distance-two colour classes.
/// Methods tied to a specific graph family fail with [`Error::Regime`] on
/// other inputs.
pub fn construct(h: &Hypergraph, method: Method, opts: &Options) -> Result<Certificate> {
    match method {
        Method::Random => construct_random(h, opts),
        Method::Degeneracy => construct_degeneracy(h, opts),
        Method::Treewidth => {
            let td = OrderedTreeDecomposition::min_fill(h)?;
            construct_treewidth(h, &td, opts)
        }
        Method::Coloring => {
            let c = greedy_acyclic_coloring(h)?;
            construct_coloring(h, &c, ColoringMode::Acyclic, opts)
        }
        Method::Planar => {
            let tri = crate::triangulation::Triangulation::from_maximal_planar(h)?;
            schnyder_family(&tri, opts)
        }
        Method::Subdivision => subdivision::construct_for_subdivided(h, opts),
        Method::Hypercube => hypercube::construct_for_hypercube(h, opts),
        Method::RecursiveDelta => construct_recursive_delta(h, DEFAULT_CUTOFF, opts),
        Method::Partition => {
            let parts = distance_two_coloring(h)?;
            construct_partition(h, &parts, opts)
        }
    }
}
