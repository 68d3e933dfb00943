//! Verification of pairwise-suitable, 3-mixing and k-suitable families, and
//! Las Vegas construction of such families.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::k_subsets;
use crate::hypergraph::{disjoint_pairs, DisjointPair, Hypergraph};
use crate::par::{self, Exec};
use crate::permutation::{Permutation, PermutationFamily};

/// Default number of Las Vegas attempts.
pub const DEFAULT_RETRIES: usize = 32;

/// The property a family is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuitabilityKind {
    PairwiseSuitable,
    PairwiseSuitableAnd3Mixing,
    KSuitable(usize),
}

/// The first violation found, in lexicographic order of the witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    /// No permutation separates the two edges.
    Unseparated {
        pair: DisjointPair,
        e: Vec<usize>,
        f: Vec<usize>,
    },
    /// No permutation puts `center` between `b` and `c`.
    Unmixed { center: usize, b: usize, c: usize },
    /// No permutation puts `element` after the rest of `set`.
    NotLast { set: Vec<usize>, element: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |s: &[usize]| -> String {
            let v: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
            format!("{{{}}}", v.join(","))
        };
        match self {
            Violation::Unseparated { pair, e, f: g } => write!(
                f,
                "edges #{} {} and #{} {} are not separated",
                pair.e + 1,
                one(e),
                pair.f + 1,
                one(g)
            ),
            Violation::Unmixed { center, b, c } => write!(
                f,
                "no permutation places {} between {} and {}",
                center + 1,
                b + 1,
                c + 1
            ),
            Violation::NotLast { set, element } => write!(
                f,
                "no permutation places {} after the rest of {}",
                element + 1,
                one(set)
            ),
        }
    }
}

/// Outcome of [`verify_family`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Checks `family` against `h` for the requested property.
///
/// For [`SuitabilityKind::KSuitable`] the edges of `h` are ignored and the
/// check runs over all `k`-subsets of the ground set.
pub fn verify_family(
    h: &Hypergraph,
    family: &PermutationFamily,
    kind: SuitabilityKind,
) -> Result<Verdict> {
    verify_family_with(h, family, kind, Exec::default())
}

pub fn verify_family_with(
    h: &Hypergraph,
    family: &PermutationFamily,
    kind: SuitabilityKind,
    exec: Exec,
) -> Result<Verdict> {
    if family.n() != h.n() {
        return Err(Error::GroundSetMismatch {
            expected: h.n(),
            found: family.n(),
        });
    }
    match kind {
        SuitabilityKind::PairwiseSuitable => Ok(verify_pairwise(h, family, exec)),
        SuitabilityKind::PairwiseSuitableAnd3Mixing => {
            h.require_graph()?;
            match verify_pairwise(h, family, exec) {
                Verdict::Pass => Ok(verify_mixing(h, family, exec)),
                fail => Ok(fail),
            }
        }
        SuitabilityKind::KSuitable(k) => verify_k_suitable(family, k, exec),
    }
}

fn verify_pairwise(h: &Hypergraph, family: &PermutationFamily, exec: Exec) -> Verdict {
    let pairs = disjoint_pairs(h);
    if pairs.is_empty() {
        return Verdict::Pass;
    }
    // spans[p][e] = (min, max) position of edge e under permutation p
    let spans: Vec<Vec<(usize, usize)>> = par::map(exec, family.perms(), |p| {
        h.edges().iter().map(|e| p.span(e)).collect()
    });
    let hit = par::find_map_first(exec, &pairs, |pair| {
        let separated = spans.iter().any(|s| {
            let (a, b) = (s[pair.e], s[pair.f]);
            a.1 < b.0 || b.1 < a.0
        });
        (!separated).then_some(*pair)
    });
    match hit {
        None => Verdict::Pass,
        Some(pair) => Verdict::Fail(Violation::Unseparated {
            pair,
            e: h.edge(pair.e).to_vec(),
            f: h.edge(pair.f).to_vec(),
        }),
    }
}

fn verify_mixing(h: &Hypergraph, family: &PermutationFamily, exec: Exec) -> Verdict {
    let adj = h.adjacency();
    let hit = par::find_map_first_range(exec, h.n(), |a| {
        let nb = &adj[a];
        for (i, &b) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                let mixed = family.perms().iter().any(|p| {
                    let (pa, pb, pc) = (p.position(a), p.position(b), p.position(c));
                    (pb < pa && pa < pc) || (pc < pa && pa < pb)
                });
                if !mixed {
                    return Some(Violation::Unmixed { center: a, b, c });
                }
            }
        }
        None
    });
    hit.map_or(Verdict::Pass, Verdict::Fail)
}

/// Checks that for every `k`-subset `A` and `a ∈ A` some permutation places
/// `A \ {a}` before `a`.
pub fn verify_k_suitable(family: &PermutationFamily, k: usize, exec: Exec) -> Result<Verdict> {
    if k == 0 {
        return Err(Error::param("k", "must be at least 1"));
    }
    let n = family.n();
    if k > n {
        return Ok(Verdict::Pass);
    }
    // Split the lexicographic subset stream by least element.
    let hit = par::find_map_first_range(exec, n - k + 1, |first| {
        for rest in k_subsets(n - first - 1, k - 1) {
            let set: Vec<usize> = std::iter::once(first)
                .chain(rest.iter().map(|&x| x + first + 1))
                .collect();
            if let Some(v) = uncovered_last(family.perms(), &set) {
                return Some(Violation::NotLast { set, element: v });
            }
        }
        None
    });
    Ok(hit.map_or(Verdict::Pass, Verdict::Fail))
}

fn uncovered_last(perms: &[Permutation], set: &[usize]) -> Option<usize> {
    let mut covered = vec![false; set.len()];
    for p in perms {
        let last = (0..set.len())
            .max_by_key(|&i| p.position(set[i]))
            .expect("nonempty set");
        covered[last] = true;
    }
    covered.iter().position(|c| !c).map(|i| set[i])
}

fn clique(n: usize) -> Hypergraph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    Hypergraph::graph(n, &pairs).expect("clique is valid")
}

fn check_universe(n: usize, kind: SuitabilityKind, family: &PermutationFamily, exec: Exec) -> bool {
    let universe = match kind {
        SuitabilityKind::KSuitable(_) => Hypergraph::new(n, Vec::new()).expect("edgeless"),
        _ => clique(n),
    };
    verify_family_with(&universe, family, kind, exec)
        .map(|v| v.passed())
        .unwrap_or(false)
}

pub(crate) fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    Permutation::from_order(order).expect("shuffle is a permutation")
}

/// Draws `target_size` uniform permutations of `0..n` and returns them if
/// they satisfy `kind` over its universe (pairs of `K_n` for the pairwise
/// kinds, all `(A, a)` for k-suitable); otherwise retries with fresh
/// randomness. Returns the empty family when it already satisfies `kind`.
pub fn random_suitable_family(
    n: usize,
    kind: SuitabilityKind,
    target_size: usize,
    seed: u64,
    max_retries: usize,
) -> Result<PermutationFamily> {
    random_suitable_family_with(n, kind, target_size, seed, max_retries, Exec::default())
}

pub fn random_suitable_family_with(
    n: usize,
    kind: SuitabilityKind,
    target_size: usize,
    seed: u64,
    max_retries: usize,
    exec: Exec,
) -> Result<PermutationFamily> {
    if let SuitabilityKind::KSuitable(0) = kind {
        return Err(Error::param("k", "must be at least 1"));
    }
    let empty = PermutationFamily::empty(n);
    if check_universe(n, kind, &empty, exec) {
        return Ok(empty);
    }
    if target_size == 0 {
        return Err(Error::param("target_size", "must be at least 1"));
    }
    let attempts = max_retries.max(1);
    // Attempt i uses stream i of the seeded generator, so the accepted family
    // is the same whatever the schedule.
    let found = par::find_map_first_range(exec, attempts, |attempt| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let perms = (0..target_size)
            .map(|_| random_permutation(n, &mut rng))
            .collect();
        let family = PermutationFamily::new(n, perms).expect("sizes match");
        check_universe(n, kind, &family, Exec::Sequential).then_some(family)
    });
    found.ok_or(Error::RetriesExhausted {
        attempts,
        size: target_size,
    })
}

/// Theorem-size default for the pairwise kinds: `⌈6.84 log n⌉`.
pub fn pi_star_size_bound(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    (6.84 * (n as f64).log2() - 1e-9).ceil() as usize
}

/// Size at which a uniform random family is k-suitable with positive
/// probability by the union bound over all `(A, a)`.
pub fn k_suitable_union_bound(n: usize, k: usize) -> usize {
    if k > n || k < 2 {
        return k.max(1);
    }
    let events = ln_binomial(n, k) + (k as f64).ln();
    let per = -(1.0 - 1.0 / k as f64).ln();
    (events / per).ceil() as usize + 1
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// Smallest size, scanning upwards from the trivial lower bound, at which
/// [`random_suitable_family`] succeeds. Gives smaller families than the
/// theorem-size default at the cost of extra attempts.
pub fn smallest_random_family(
    n: usize,
    kind: SuitabilityKind,
    seed: u64,
    retries_per_size: usize,
) -> Result<PermutationFamily> {
    smallest_random_family_with(n, kind, seed, retries_per_size, Exec::default())
}

pub fn smallest_random_family_with(
    n: usize,
    kind: SuitabilityKind,
    seed: u64,
    retries_per_size: usize,
    exec: Exec,
) -> Result<PermutationFamily> {
    let start = match kind {
        SuitabilityKind::KSuitable(k) => k.min(n).max(1),
        _ => 1,
    };
    let cap = size_cap(n, kind);
    let mut last = None;
    for size in start..=cap.max(start) {
        let s = seed ^ ((size as u64) << 32);
        match random_suitable_family_with(n, kind, size, s, retries_per_size, exec) {
            Ok(f) => return Ok(f),
            Err(e @ Error::RetriesExhausted { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or(Error::RetriesExhausted {
        attempts: retries_per_size,
        size: cap,
    }))
}

/// Largest ground set on which [`compact_random_family_with`] scans sizes.
pub const SCAN_LIMIT: usize = 24;

/// Small random family for `kind`: [`smallest_random_family_with`] up to
/// [`SCAN_LIMIT`] elements, [`shortest_random_prefix_with`] beyond, where
/// the scan's retries get too slow.
pub fn compact_random_family_with(
    n: usize,
    kind: SuitabilityKind,
    seed: u64,
    retries: usize,
    exec: Exec,
) -> Result<PermutationFamily> {
    if n <= SCAN_LIMIT {
        smallest_random_family_with(n, kind, seed, retries, exec)
    } else {
        shortest_random_prefix_with(n, kind, seed, PREFIX_STREAMS, exec)
    }
}

fn size_cap(n: usize, kind: SuitabilityKind) -> usize {
    match kind {
        SuitabilityKind::KSuitable(k) => k_suitable_union_bound(n, k) + k,
        _ => pi_star_size_bound(n).max(3) + 8,
    }
}

/// Default number of streams for [`shortest_random_prefix`].
pub const PREFIX_STREAMS: usize = 8;

/// Permutations drawn before the unmet requirements are collected.
const HEAD: usize = 8;

/// One requirement of a suitability property, vertices stored flat.
#[derive(Clone, Copy, Debug)]
enum Shape {
    /// `[a, b, c, d]`: `{a, b}` and `{c, d}` on opposite sides.
    Pair,
    /// `[a, b, c]`: `a` strictly between `b` and `c`.
    Mix,
    /// `[a, rest..]`: `a` after the rest.
    Last(usize),
}

impl Shape {
    fn of(kind: SuitabilityKind) -> Vec<Shape> {
        match kind {
            SuitabilityKind::PairwiseSuitable => vec![Shape::Pair],
            SuitabilityKind::PairwiseSuitableAnd3Mixing => vec![Shape::Pair, Shape::Mix],
            SuitabilityKind::KSuitable(k) => vec![Shape::Last(k)],
        }
    }

    fn width(self) -> usize {
        match self {
            Shape::Pair => 4,
            Shape::Mix => 3,
            Shape::Last(k) => k,
        }
    }

    fn holds(self, pos: &[u32], r: &[u32]) -> bool {
        let p = |i: usize| pos[r[i] as usize];
        match self {
            Shape::Pair => {
                let (lo, hi) = (p(0).min(p(1)), p(0).max(p(1)));
                let (lo2, hi2) = (p(2).min(p(3)), p(2).max(p(3)));
                hi < lo2 || hi2 < lo
            }
            Shape::Mix => (p(1) < p(0) && p(0) < p(2)) || (p(2) < p(0) && p(0) < p(1)),
            Shape::Last(k) => (1..k).all(|i| p(i) < p(0)),
        }
    }

    /// Calls `f` on every requirement over the complete universe on `0..n`.
    fn for_each(self, n: usize, f: &mut dyn FnMut(&[u32])) {
        let n32 = n as u32;
        match self {
            Shape::Pair => {
                for a in 0..n32 {
                    for b in a + 1..n32 {
                        for c in (a + 1..n32).filter(|&c| c != b) {
                            for d in (c + 1..n32).filter(|&d| d != b) {
                                f(&[a, b, c, d]);
                            }
                        }
                    }
                }
            }
            Shape::Mix => {
                for a in 0..n32 {
                    for b in (0..n32).filter(|&b| b != a) {
                        for c in (b + 1..n32).filter(|&c| c != a) {
                            f(&[a, b, c]);
                        }
                    }
                }
            }
            Shape::Last(k) => {
                if k > n {
                    return;
                }
                let mut buf = vec![0u32; k];
                for set in k_subsets(n, k) {
                    for i in 0..k {
                        buf[0] = set[i] as u32;
                        let rest = set.iter().enumerate().filter(|&(j, _)| j != i);
                        for (slot, (_, &v)) in buf[1..].iter_mut().zip(rest) {
                            *slot = v as u32;
                        }
                        f(&buf);
                    }
                }
            }
        }
    }
}

/// Shortest prefix of stream `stream` that meets every requirement, or
/// `None` past `max_len` permutations.
fn prefix_on_stream(n: usize, shapes: &[Shape], seed: u64, stream: u64, max_len: usize) -> Option<Vec<Permutation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut perms = Vec::new();
    let mut positions: Vec<Vec<u32>> = Vec::new();
    let mut draw = |perms: &mut Vec<Permutation>, positions: &mut Vec<Vec<u32>>| {
        let p = random_permutation(n, &mut rng);
        positions.push((0..n).map(|v| p.position(v) as u32).collect());
        perms.push(p);
    };
    for _ in 0..HEAD.min(max_len) {
        draw(&mut perms, &mut positions);
    }
    // Requirements met within the head only fix how much of it is needed.
    let mut needed = 0;
    let mut unmet: Vec<(Shape, Vec<u32>)> = shapes.iter().map(|&s| (s, Vec::new())).collect();
    for (shape, flat) in unmet.iter_mut() {
        shape.for_each(n, &mut |r| match positions.iter().position(|pos| shape.holds(pos, r)) {
            Some(i) => needed = needed.max(i + 1),
            None => flat.extend_from_slice(r),
        });
    }
    while unmet.iter().any(|(_, flat)| !flat.is_empty()) {
        if perms.len() >= max_len {
            return None;
        }
        draw(&mut perms, &mut positions);
        let pos = positions.last().expect("just drawn");
        for (shape, flat) in unmet.iter_mut() {
            let w = shape.width();
            let mut keep = 0;
            for i in (0..flat.len()).step_by(w) {
                if !shape.holds(pos, &flat[i..i + w]) {
                    flat.copy_within(i..i + w, keep);
                    keep += w;
                }
            }
            flat.truncate(keep);
        }
        needed = perms.len();
    }
    perms.truncate(needed);
    Some(perms)
}

/// Shortest prefix of a seeded stream of uniform permutations that
/// satisfies `kind` over its universe, taking the shortest over `streams`
/// streams (ties go to the lowest stream).
///
/// Each stream costs one pass over the requirements, so this scales to
/// ground sets where [`smallest_random_family`] retries for minutes.
pub fn shortest_random_prefix(n: usize, kind: SuitabilityKind, seed: u64, streams: usize) -> Result<PermutationFamily> {
    shortest_random_prefix_with(n, kind, seed, streams, Exec::default())
}

pub fn shortest_random_prefix_with(
    n: usize,
    kind: SuitabilityKind,
    seed: u64,
    streams: usize,
    exec: Exec,
) -> Result<PermutationFamily> {
    if let SuitabilityKind::KSuitable(0) = kind {
        return Err(Error::param("k", "must be at least 1"));
    }
    let shapes = Shape::of(kind);
    let max_len = 4 * size_cap(n, kind).max(HEAD);
    let streams = streams.max(1);
    let found = par::map_range(exec, streams, |s| prefix_on_stream(n, &shapes, seed, s as u64, max_len));
    match found.into_iter().flatten().min_by_key(|p| p.len()) {
        Some(perms) => PermutationFamily::new(n, perms),
        None => Err(Error::RetriesExhausted {
            attempts: streams,
            size: max_len,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec};

    fn g(spec: GeneratorSpec) -> Hypergraph {
        generate(&spec).unwrap()
    }

    #[test]
    fn star_with_empty_family_passes() {
        let s3 = g(GeneratorSpec::Star { leaves: 3 });
        let v = verify_family(&s3, &PermutationFamily::empty(4), SuitabilityKind::PairwiseSuitable)
            .unwrap();
        assert!(v.passed());
    }

    #[test]
    fn k4_needs_three_permutations() {
        let k4 = g(GeneratorSpec::Clique { n: 4 });
        // Each permutation of 4 vertices separates exactly one of the 3 pairs.
        for order in [[0, 1, 2, 3], [0, 2, 1, 3], [1, 3, 0, 2]] {
            let p = Permutation::from_order(order.to_vec()).unwrap();
            let f = PermutationFamily::new(4, vec![p]).unwrap();
            let separated = disjoint_pairs(&k4)
                .iter()
                .filter(|pr| f.perms()[0].separates(k4.edge(pr.e), k4.edge(pr.f)).unwrap())
                .count();
            assert_eq!(separated, 1);
        }
        let two = PermutationFamily::new(
            4,
            vec![
                Permutation::from_order(vec![0, 1, 2, 3]).unwrap(),
                Permutation::from_order(vec![0, 2, 1, 3]).unwrap(),
            ],
        )
        .unwrap();
        let v = verify_family(&k4, &two, SuitabilityKind::PairwiseSuitable).unwrap();
        assert!(matches!(v, Verdict::Fail(Violation::Unseparated { .. })));
    }

    #[test]
    fn path_with_identity_passes() {
        let p4 = g(GeneratorSpec::Path { n: 4 });
        let f = PermutationFamily::new(4, vec![Permutation::identity(4)]).unwrap();
        assert!(verify_family(&p4, &f, SuitabilityKind::PairwiseSuitable)
            .unwrap()
            .passed());
    }

    #[test]
    fn ground_set_mismatch_is_an_error() {
        let p4 = g(GeneratorSpec::Path { n: 4 });
        assert!(verify_family(&p4, &PermutationFamily::empty(3), SuitabilityKind::PairwiseSuitable)
            .is_err());
    }

    #[test]
    fn first_witness_is_lexicographically_smallest() {
        let k5 = g(GeneratorSpec::Clique { n: 5 });
        let f = PermutationFamily::new(5, vec![Permutation::identity(5)]).unwrap();
        let expected = disjoint_pairs(&k5)
            .into_iter()
            .find(|p| !f.perms()[0].separates(k5.edge(p.e), k5.edge(p.f)).unwrap())
            .unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            match verify_family_with(&k5, &f, SuitabilityKind::PairwiseSuitable, exec).unwrap() {
                Verdict::Fail(Violation::Unseparated { pair, .. }) => assert_eq!(pair, expected),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn mixing_needs_each_center_in_the_middle() {
        let k3 = g(GeneratorSpec::Clique { n: 3 });
        let f = PermutationFamily::new(
            3,
            vec![
                Permutation::from_order(vec![1, 0, 2]).unwrap(),
                Permutation::from_order(vec![0, 1, 2]).unwrap(),
            ],
        )
        .unwrap();
        let v = verify_family(&k3, &f, SuitabilityKind::PairwiseSuitableAnd3Mixing).unwrap();
        assert_eq!(
            v,
            Verdict::Fail(Violation::Unmixed {
                center: 2,
                b: 0,
                c: 1
            })
        );
    }

    #[test]
    fn k_suitable_witness() {
        let f = PermutationFamily::new(3, vec![Permutation::identity(3)]).unwrap();
        let v = verify_k_suitable(&f, 3, Exec::Sequential).unwrap();
        assert_eq!(
            v,
            Verdict::Fail(Violation::NotLast {
                set: vec![0, 1, 2],
                element: 0
            })
        );
    }

    #[test]
    fn random_family_for_k2_is_empty() {
        let f = random_suitable_family(2, SuitabilityKind::PairwiseSuitable, 1, 0, 1).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn random_pi_star_family_for_k16() {
        let size = pi_star_size_bound(16);
        assert_eq!(size, 28);
        let f = random_suitable_family(
            16,
            SuitabilityKind::PairwiseSuitableAnd3Mixing,
            size,
            11,
            DEFAULT_RETRIES,
        )
        .unwrap();
        assert!(f.len() <= 28);
        let k16 = g(GeneratorSpec::Clique { n: 16 });
        assert!(verify_family(&k16, &f, SuitabilityKind::PairwiseSuitableAnd3Mixing)
            .unwrap()
            .passed());
    }

    #[test]
    fn random_family_is_seed_deterministic() {
        let a = random_suitable_family(10, SuitabilityKind::KSuitable(3), 20, 5, 32).unwrap();
        let b = random_suitable_family(10, SuitabilityKind::KSuitable(3), 20, 5, 32).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn too_small_target_exhausts_retries() {
        let err = random_suitable_family(8, SuitabilityKind::PairwiseSuitable, 1, 0, 4).unwrap_err();
        assert!(matches!(err, Error::RetriesExhausted { attempts: 4, size: 1 }));
    }

    #[test]
    fn smallest_family_for_three_suitable_on_three() {
        let f = smallest_random_family(3, SuitabilityKind::KSuitable(3), 1, DEFAULT_RETRIES).unwrap();
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn shortest_prefix_satisfies_and_is_minimal() {
        let kinds = [
            SuitabilityKind::PairwiseSuitable,
            SuitabilityKind::PairwiseSuitableAnd3Mixing,
            SuitabilityKind::KSuitable(3),
        ];
        for kind in kinds {
            for n in 1..10 {
                let f = shortest_random_prefix_with(n, kind, 3, 4, Exec::Sequential).unwrap();
                assert!(check_universe(n, kind, &f, Exec::Sequential), "{kind:?} n={n}");
                if !f.is_empty() {
                    let shorter = PermutationFamily::new(n, f.perms()[..f.len() - 1].to_vec()).unwrap();
                    assert!(!check_universe(n, kind, &shorter, Exec::Sequential), "{kind:?} n={n}");
                }
                assert_eq!(f, shortest_random_prefix_with(n, kind, 3, 4, Exec::Parallel).unwrap());
            }
        }
    }

    #[test]
    fn prefix_requirements_match_the_clique_universe() {
        let mut pairs = 0;
        Shape::Pair.for_each(7, &mut |_| pairs += 1);
        assert_eq!(pairs, disjoint_pairs(&clique(7)).len());
        let mut mixes = 0;
        Shape::Mix.for_each(7, &mut |_| mixes += 1);
        assert_eq!(mixes, 7 * 15);
        let mut lasts = 0;
        Shape::Last(3).for_each(7, &mut |_| lasts += 1);
        assert_eq!(lasts, 35 * 3);
    }
}
