//! Families for full subdivisions `G^{1/2}`: a realizer of the interval
//! order of the edges under a base order of `V(G)`, plus two orders keeping
//! each subdivision vertex next to one of its neighbours.

use std::collections::HashSet;

use super::{certify, params, Certificate, Options};
use crate::error::{Error, Result};
use crate::exact::{exact_poset_dim, interval_order, Budget, Poset, Realizer};
use crate::generate::subdivide;
use crate::hypergraph::{disjoint_pairs, Hypergraph};
use crate::permutation::{Permutation, PermutationFamily};

/// The open intervals `(σ(u), σ(v))`, `u` before `v`, one per edge of a
/// graph, with 0-based positions as endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCollection {
    /// `intervals[i]` belongs to edge `i`.
    pub intervals: Vec<(usize, usize)>,
}

impl IntervalCollection {
    pub fn order(&self) -> Result<Poset> {
        interval_order(&self.intervals)
    }

    /// Number of intervals in a longest chain.
    pub fn height(&self) -> usize {
        let mut sorted = self.intervals.clone();
        sorted.sort_by_key(|&(a, b)| (b, a));
        // Longest chain ending at each interval, in order of right end.
        let mut best: Vec<usize> = Vec::with_capacity(sorted.len());
        for (i, &(a, _)) in sorted.iter().enumerate() {
            let before = (0..i).filter(|&j| sorted[j].1 <= a).map(|j| best[j]).max().unwrap_or(0);
            best.push(before + 1);
        }
        best.into_iter().max().unwrap_or(0)
    }
}

pub fn interval_collection(g: &Hypergraph, sigma: &Permutation) -> Result<IntervalCollection> {
    g.require_graph()?;
    if sigma.len() != g.n() {
        return Err(Error::GroundSetMismatch {
            expected: g.n(),
            found: sigma.len(),
        });
    }
    let intervals = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (sigma.position(e[0]), sigma.position(e[1]));
            (a.min(b), a.max(b))
        })
        .collect();
    Ok(IntervalCollection { intervals })
}

/// Vertices grouped by a greedy proper colouring in index order, classes in
/// colour order.
pub fn color_block_order(g: &Hypergraph) -> Result<Permutation> {
    g.require_graph()?;
    let adj = g.adjacency();
    let mut colour = vec![usize::MAX; g.n()];
    for v in 0..g.n() {
        colour[v] = (0..).find(|c| adj[v].iter().all(|&w| colour[w] != *c)).expect("a colour is free");
    }
    Ok(Permutation::sorted_by_key(g.n(), |v| colour[v]))
}

/// Realizer by repeated greedy linear extensions: each pass places, among
/// the minimal remaining elements, the one that puts the most still-needed
/// incomparable pairs in the needed order. A pass that gains nothing is
/// replaced by an extension forcing the first needed pair.
pub(crate) fn greedy_realizer(p: &Poset) -> Result<Realizer> {
    let n = p.size();
    let mut need: HashSet<(usize, usize)> = p
        .incomparable_pairs()
        .into_iter()
        .flat_map(|(x, y)| [(x, y), (y, x)])
        .collect();
    let mut extensions = Vec::new();
    if n > 0 && need.is_empty() {
        extensions.push(extension_of(p, None)?);
    }
    while !need.is_empty() {
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let best = (0..n)
                .filter(|&x| !placed[x] && (0..n).all(|z| !p.less(z, x) || placed[z]))
                .max_by_key(|&x| {
                    let gain = (0..n).filter(|&y| !placed[y] && need.contains(&(x, y))).count() as i64;
                    let loss = (0..n).filter(|&y| !placed[y] && need.contains(&(y, x))).count() as i64;
                    (gain - loss, std::cmp::Reverse(x))
                })
                .expect("a minimal element remains");
            placed[best] = true;
            order.push(best);
        }
        let mut ext = Permutation::from_order(order)?;
        let before = need.len();
        need.retain(|&(x, y)| ext.position(x) > ext.position(y));
        if need.len() == before {
            let &forced = need.iter().min().expect("nonempty");
            ext = extension_of(p, Some(forced))?;
            need.retain(|&(x, y)| ext.position(x) > ext.position(y));
        }
        extensions.push(ext);
    }
    let r = Realizer { extensions };
    r.check(p)?;
    Ok(r)
}

/// A linear extension of `p`, with `extra` added as a relation if given.
fn extension_of(p: &Poset, extra: Option<(usize, usize)>) -> Result<Permutation> {
    let mut rel = p.relations();
    rel.extend(extra);
    let q = Poset::new(p.size(), &rel)?;
    // In a closed order, the number of elements below strictly increases
    // along every relation.
    Ok(Permutation::sorted_by_key(q.size(), |v| (0..q.size()).filter(|&z| q.less(z, v)).count()))
}

/// Places `G^{1/2}` by one realizer member: subdivision vertices in member
/// order, then each original vertex as early as possible after the previous
/// original and after every subdivision vertex of an edge to an earlier one.
fn realizer_permutation(
    n: usize,
    edges: &[(usize, usize)],
    rank_of: &[usize],
    member: &Permutation,
) -> Result<Permutation> {
    let m = edges.len();
    let slot: Vec<usize> = (0..m).map(|i| member.position(i)).collect();
    let mut by_rank = vec![0; n];
    for v in 0..n {
        by_rank[rank_of[v]] = v;
    }
    // threshold[r]: number of subdivision vertices before the original of rank r.
    let mut latest = vec![0usize; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        let right = rank_of[u].max(rank_of[v]);
        latest[right] = latest[right].max(slot[i] + 1);
    }
    let mut threshold = vec![0; n];
    let mut t = 0;
    for r in 0..n {
        t = t.max(latest[r]);
        threshold[r] = t;
    }
    let mut order = Vec::with_capacity(n + m);
    let mut r = 0;
    for s in 0..=m {
        while r < n && threshold[r] == s {
            order.push(by_rank[r]);
            r += 1;
        }
        if s < m {
            order.push(n + member.order()[s]);
        }
    }
    Permutation::from_order(order)
}

/// Originals in base order with each subdivision vertex right after its
/// left end (`after_left`) or right before its right end.
fn neighbour_permutation(n: usize, edges: &[(usize, usize)], rank_of: &[usize], after_left: bool) -> Permutation {
    Permutation::sorted_by_key(n + edges.len(), |x| {
        if x < n {
            return 2 * rank_of[x] + 1;
        }
        let (u, v) = edges[x - n];
        if after_left {
            2 * rank_of[u].min(rank_of[v]) + 2
        } else {
            2 * rank_of[u].max(rank_of[v])
        }
    })
}

/// A family for `subdivide(g)` (edge `i` subdivided by vertex `n + i`) of
/// size `d + 2`, where `d` is the size of a realizer of the interval order
/// of `g` under `sigma` (default: [`color_block_order`]). The realizer is
/// exact within the default budget and greedy otherwise.
pub fn subdivision_family(g: &Hypergraph, sigma: Option<&Permutation>, opts: &Options) -> Result<Certificate> {
    let h = subdivide(g)?;
    let n = g.n();
    let base = match sigma {
        Some(s) => s.clone(),
        None => color_block_order(g)?,
    };
    let collection = interval_collection(g, &base)?;
    let height = collection.height();
    if disjoint_pairs(&h).is_empty() {
        let pars = params([("realizer", 0.0), ("height", height as f64), ("exact", 1.0)]);
        return certify(&h, PermutationFamily::empty(h.n()), "subdivision", 0.0, true, pars, opts);
    }
    let poset = collection.order()?;
    let budget = Budget {
        exec: opts.exec,
        ..Budget::default()
    };
    let (realizer, exact) = match exact_poset_dim(&poset, &budget) {
        Ok(sol) => (sol.realizer, true),
        Err(Error::TooLarge(_)) | Err(Error::RetriesExhausted { .. }) => (greedy_realizer(&poset)?, false),
        Err(e) => return Err(e),
    };
    let rank_of: Vec<usize> = (0..n).map(|v| base.position(v)).collect();
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e[0], e[1])).collect();
    let mut perms = realizer
        .extensions
        .iter()
        .map(|member| realizer_permutation(n, &edges, &rank_of, member))
        .collect::<Result<Vec<_>>>()?;
    perms.push(neighbour_permutation(n, &edges, &rank_of, true));
    perms.push(neighbour_permutation(n, &edges, &rank_of, false));
    let d = realizer.extensions.len();
    let family = PermutationFamily::new(h.n(), perms)?;
    let pars = params([
        ("realizer", d as f64),
        ("height", height as f64),
        ("exact", if exact { 1.0 } else { 0.0 }),
    ]);
    certify(&h, family, "subdivision", (d + 2) as f64, true, pars, opts)
}

/// Recovers `G` from a graph `h` that is a full subdivision: in every
/// component, coloured from its least vertex, the opposite side must consist
/// of degree-2 vertices, otherwise the starting side. Returns `G`, the
/// vertex of `h` for each vertex of `G`, then the vertex of `h` for each
/// edge of `G`.
pub(crate) fn recover_base(h: &Hypergraph) -> Result<(Hypergraph, Vec<usize>, Vec<usize>)> {
    h.require_graph()?;
    let not_sub = |why: &str| Error::Regime(format!("not a full subdivision: {why}"));
    let adj = h.adjacency();
    let deg = h.degrees();
    let mut side = vec![usize::MAX; h.n()];
    let mut is_sub = vec![false; h.n()];
    for comp in h.components() {
        side[comp[0]] = 0;
        let mut stack = vec![comp[0]];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if side[w] == usize::MAX {
                    side[w] = 1 - side[u];
                    stack.push(w);
                } else if side[w] == side[u] {
                    return Err(not_sub("odd cycle"));
                }
            }
        }
        if comp.len() == 1 {
            continue;
        }
        let chosen = [1, 0]
            .into_iter()
            .find(|&s| comp.iter().filter(|&&v| side[v] == s).all(|&v| deg[v] == 2))
            .ok_or_else(|| not_sub("no side of degree-2 vertices"))?;
        for &v in &comp {
            is_sub[v] = side[v] == chosen;
        }
    }
    let originals: Vec<usize> = (0..h.n()).filter(|&v| !is_sub[v]).collect();
    let subs: Vec<usize> = (0..h.n()).filter(|&v| is_sub[v]).collect();
    let mut local = vec![usize::MAX; h.n()];
    for (i, &v) in originals.iter().enumerate() {
        local[v] = i;
    }
    let mut seen = HashSet::new();
    let mut pairs = Vec::with_capacity(subs.len());
    for &s in &subs {
        let (a, b) = (local[adj[s][0]], local[adj[s][1]]);
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(not_sub("two subdivision vertices share both neighbours"));
        }
        pairs.push((a, b));
    }
    Ok((Hypergraph::graph(originals.len(), &pairs)?, originals, subs))
}

/// [`subdivision_family`] for a graph given as a full subdivision, mapped
/// back to its labels.
pub(crate) fn construct_for_subdivided(h: &Hypergraph, opts: &Options) -> Result<Certificate> {
    let (g, originals, subs) = recover_base(h)?;
    let cert = subdivision_family(&g, None, opts)?;
    let back: Vec<usize> = originals.iter().chain(&subs).copied().collect();
    let perms = cert
        .family
        .perms()
        .iter()
        .map(|p| Permutation::from_order(p.order().iter().map(|&x| back[x]).collect()))
        .collect::<Result<Vec<_>>>()?;
    let family = PermutationFamily::new(h.n(), perms)?;
    let ledger = cert.ledger;
    certify(h, family, "subdivision", ledger.paper_bound, true, ledger.params, opts)
}
