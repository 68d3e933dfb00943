//! Interval representations and the correspondence between pairwise-suitable
//! families of a hypergraph and box representations of its line graph.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{disjoint_pairs, line_graph, sorted_disjoint, Hypergraph};
use crate::permutation::{Permutation, PermutationFamily};
use crate::suitability::{verify_family, SuitabilityKind, Verdict};

pub type Rational = Ratio<i64>;

/// A closed interval `[l, r]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub l: Rational,
    pub r: Rational,
}

impl Interval {
    pub fn integer(l: i64, r: i64) -> Self {
        Interval {
            l: Rational::from_integer(l),
            r: Rational::from_integer(r),
        }
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.l.max(other.l) <= self.r.min(other.r)
    }
}

/// One closed interval per element `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalRepresentation {
    intervals: Vec<Interval>,
}

#[derive(Serialize, Deserialize)]
struct ItemFile {
    id: usize,
    l: [i64; 2],
    r: [i64; 2],
}

#[derive(Serialize, Deserialize)]
struct RepresentationFile {
    items: Vec<ItemFile>,
}

impl IntervalRepresentation {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if let Some(i) = intervals.iter().position(|iv| iv.l > iv.r) {
            return Err(Error::InvalidRepresentation(format!(
                "item {} has l > r",
                i + 1
            )));
        }
        Ok(IntervalRepresentation { intervals })
    }

    pub fn from_integers(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(l, r)| Interval::integer(l, r)).collect())
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn intersects(&self, i: usize, j: usize) -> bool {
        self.intervals[i].intersects(&self.intervals[j])
    }

    /// The interval graph of this representation.
    pub fn intersection_graph(&self) -> Hypergraph {
        let mut pairs = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.intersects(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        Hypergraph::graph(self.len(), &pairs).expect("pairs are valid")
    }

    /// `{"items": [{"id", "l": [num, den], "r": [num, den]}, ..]}`, ids 1-based.
    pub fn to_json(&self) -> String {
        let items = self
            .intervals
            .iter()
            .enumerate()
            .map(|(i, iv)| ItemFile {
                id: i + 1,
                l: [*iv.l.numer(), *iv.l.denom()],
                r: [*iv.r.numer(), *iv.r.denom()],
            })
            .collect();
        serde_json::to_string(&RepresentationFile { items }).expect("representation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: RepresentationFile = serde_json::from_str(s)?;
        let len = file.items.len();
        let mut slots: Vec<Option<Interval>> = vec![None; len];
        for item in file.items {
            if item.id == 0 || item.id > len {
                return Err(Error::InvalidRepresentation(format!(
                    "id {} outside 1..={len}",
                    item.id
                )));
            }
            if item.l[1] == 0 || item.r[1] == 0 {
                return Err(Error::InvalidRepresentation("zero denominator".into()));
            }
            let iv = Interval {
                l: Rational::new(item.l[0], item.l[1]),
                r: Rational::new(item.r[0], item.r[1]),
            };
            if slots[item.id - 1].replace(iv).is_some() {
                return Err(Error::InvalidRepresentation(format!("duplicate id {}", item.id)));
            }
        }
        Self::new(slots.into_iter().map(|s| s.expect("ids cover 1..=len")).collect())
    }
}

/// Adjacency of the intersection of several interval graphs on `len`
/// elements; with no representations every pair is adjacent.
pub fn intersection_of(reps: &[IntervalRepresentation], len: usize) -> Result<Hypergraph> {
    if let Some(r) = reps.iter().find(|r| r.len() != len) {
        return Err(Error::GroundSetMismatch {
            expected: len,
            found: r.len(),
        });
    }
    let mut pairs = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            if reps.iter().all(|r| r.intersects(i, j)) {
                pairs.push((i, j));
            }
        }
    }
    Hypergraph::graph(len, &pairs)
}

/// Maps each permutation to the interval representation
/// `e ↦ [min σ(v), max σ(v)]` over the edges of `h`. The joint intersection
/// is the line graph of `h`.
pub fn perms_to_interval_graphs(
    h: &Hypergraph,
    family: &PermutationFamily,
) -> Result<Vec<IntervalRepresentation>> {
    if let Verdict::Fail(v) = verify_family(h, family, SuitabilityKind::PairwiseSuitable)? {
        return Err(Error::Verification(format!(
            "family is not pairwise suitable: {v}"
        )));
    }
    let reps: Vec<IntervalRepresentation> = family
        .perms()
        .iter()
        .map(|p| {
            let pairs: Vec<(i64, i64)> = h
                .edges()
                .iter()
                .map(|e| {
                    let (lo, hi) = p.span(e);
                    (lo as i64 + 1, hi as i64 + 1)
                })
                .collect();
            IntervalRepresentation::from_integers(&pairs).expect("lo <= hi")
        })
        .collect();
    if !intersection_of(&reps, h.m())?.same_edges(&line_graph(h)) {
        return Err(Error::Verification(
            "interval intersection differs from the line graph".into(),
        ));
    }
    Ok(reps)
}

/// Reads one permutation per representation by ordering vertices by their
/// clique regions (the intersection of the intervals of their incident
/// edges), ties by left endpoint then vertex index. Vertices without edges
/// go last.
pub fn intervals_to_perms(
    h: &Hypergraph,
    reps: &[IntervalRepresentation],
) -> Result<PermutationFamily> {
    let m = h.m();
    if let Some(r) = reps.iter().find(|r| r.len() != m) {
        return Err(Error::GroundSetMismatch {
            expected: m,
            found: r.len(),
        });
    }
    for i in 0..m {
        for j in i + 1..m {
            let meet = !sorted_disjoint(h.edge(i), h.edge(j));
            if meet && !reps.iter().all(|r| r.intersects(i, j)) {
                return Err(Error::InvalidRepresentation(format!(
                    "intersecting edges #{} and #{} are disjoint in some representation",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    for p in disjoint_pairs(h) {
        if reps.iter().all(|r| r.intersects(p.e, p.f)) {
            return Err(Error::InvalidRepresentation(format!(
                "disjoint edges #{} and #{} intersect in every representation",
                p.e + 1,
                p.f + 1
            )));
        }
    }
    let inc = h.incidence();
    let mut perms = Vec::with_capacity(reps.len());
    for (ri, rep) in reps.iter().enumerate() {
        let mut keyed = Vec::with_capacity(h.n());
        let mut isolated = Vec::new();
        for (u, edges) in inc.iter().enumerate() {
            if edges.is_empty() {
                isolated.push(u);
                continue;
            }
            let l = edges.iter().map(|&e| rep.intervals[e].l).max().expect("nonempty");
            let r = edges.iter().map(|&e| rep.intervals[e].r).min().expect("nonempty");
            if l > r {
                return Err(Error::InvalidRepresentation(format!(
                    "vertex {} has an empty clique region in representation {}",
                    u + 1,
                    ri + 1
                )));
            }
            keyed.push((l, u));
        }
        keyed.sort();
        let order: Vec<usize> = keyed.into_iter().map(|(_, u)| u).chain(isolated).collect();
        perms.push(Permutation::from_order(order)?);
    }
    let family = PermutationFamily::new(h.n(), perms)?;
    if let Verdict::Fail(v) = verify_family(h, &family, SuitabilityKind::PairwiseSuitable)? {
        return Err(Error::Verification(format!("derived family fails: {v}")));
    }
    Ok(family)
}

/// Why a graph is not an interval graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// An induced cycle of length at least 4.
    ChordlessCycle(Vec<usize>),
    /// Three pairwise non-adjacent vertices, each pair joined by a path
    /// avoiding the closed neighbourhood of the third.
    AsteroidalTriple([usize; 3]),
}

/// Outcome of interval-graph recognition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    Interval(IntervalRepresentation),
    NotInterval(Obstruction),
}

impl Recognition {
    pub fn is_interval(&self) -> bool {
        matches!(self, Recognition::Interval(_))
    }
}

/// Recognizes interval graphs as chordal graphs whose complement is
/// transitively orientable; the orientation is an interval order whose
/// nested down-sets give the endpoints.
pub fn is_interval_graph(g: &Hypergraph) -> Result<Recognition> {
    g.require_graph()?;
    let n = g.n();
    let adj = g.adjacency_matrix();
    if let Some(cycle) = chordless_cycle(&adj) {
        return Ok(Recognition::NotInterval(Obstruction::ChordlessCycle(cycle)));
    }
    let Some(below) = orient_complement(&adj) else {
        let triple = asteroidal_triple(&adj)
            .ok_or_else(|| Error::Verification("chordal non-interval graph without AT".into()))?;
        return Ok(Recognition::NotInterval(Obstruction::AsteroidalTriple(triple)));
    };
    // below[v] = elements u with u < v in the interval order
    let mut downs: Vec<Vec<bool>> = below.clone();
    downs.sort_by_key(|d| d.iter().filter(|&&b| b).count());
    downs.dedup();
    let index_of = |d: &Vec<bool>| downs.iter().position(|x| x == d).expect("present");
    let mut pairs = Vec::with_capacity(n);
    for v in 0..n {
        let l = index_of(&below[v]) as i64;
        let first_containing = downs.iter().position(|d| d[v]).unwrap_or(downs.len());
        let r = first_containing as i64 - 1;
        pairs.push((l, r));
    }
    let rep = IntervalRepresentation::from_integers(&pairs)?;
    if !rep.intersection_graph().same_edges(g) {
        return Err(Error::Verification(
            "interval construction does not reproduce the graph".into(),
        ));
    }
    Ok(Recognition::Interval(rep))
}

fn chordless_cycle(adj: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = adj.len();
    if is_chordal(adj) {
        return None;
    }
    for v in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&u| adj[v][u]).collect();
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if adj[u][w] {
                    continue;
                }
                let blocked: Vec<bool> = (0..n)
                    .map(|x| x == v || (adj[v][x] && x != u && x != w))
                    .collect();
                if let Some(path) = shortest_path(adj, u, w, &blocked) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn is_chordal(adj: &[Vec<bool>]) -> bool {
    // Maximum cardinality search; its reverse is a perfect elimination order
    // exactly when the graph is chordal.
    let n = adj.len();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("vertex left");
        done[v] = true;
        visit.push(v);
        for u in 0..n {
            if adj[v][u] && !done[u] {
                weight[u] += 1;
            }
        }
    }
    // Earlier-visited neighbours of each vertex must form a clique.
    for (i, &v) in visit.iter().enumerate() {
        let earlier: Vec<usize> = visit[..i].iter().copied().filter(|&u| adj[v][u]).collect();
        for (a, &x) in earlier.iter().enumerate() {
            for &y in &earlier[a + 1..] {
                if !adj[x][y] {
                    return false;
                }
            }
        }
    }
    true
}

fn shortest_path(adj: &[Vec<bool>], s: usize, t: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    while let Some(x) = queue.pop_front() {
        if x == t {
            let mut path = vec![t];
            let mut cur = t;
            while cur != s {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for y in 0..n {
            if adj[x][y] && !seen[y] && !blocked[y] {
                seen[y] = true;
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Transitive orientation of the complement by implication classes; returns
/// `below[v][u]` (u before v) or `None` when no transitive orientation exists.
fn orient_complement(adj: &[Vec<bool>]) -> Option<Vec<Vec<bool>>> {
    let n = adj.len();
    let mut alive: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| u != v && !adj[u][v]).collect())
        .collect();
    let mut arc = vec![vec![false; n]; n];
    loop {
        let Some((a, b)) = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .find(|&(u, v)| alive[u][v])
        else {
            break;
        };
        let mut class = vec![vec![false; n]; n];
        class[a][b] = true;
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((x, y)) = queue.pop_front() {
            for z in 0..n {
                // (x, y) forces (x, z) when y and z are not joined
                if z != y && alive[x][z] && !alive[y][z] && !class[x][z] {
                    class[x][z] = true;
                    queue.push_back((x, z));
                }
                // (x, y) forces (z, y) when x and z are not joined
                if z != x && alive[z][y] && !alive[x][z] && !class[z][y] {
                    class[z][y] = true;
                    queue.push_back((z, y));
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                if class[u][v] {
                    if class[v][u] {
                        return None;
                    }
                    arc[u][v] = true;
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                if class[u][v] {
                    alive[u][v] = false;
                    alive[v][u] = false;
                }
            }
        }
    }
    for u in 0..n {
        for v in 0..n {
            if arc[u][v] && (0..n).any(|w| arc[v][w] && !arc[u][w]) {
                return None;
            }
        }
    }
    Some((0..n).map(|v| (0..n).map(|u| arc[u][v]).collect()).collect())
}

fn asteroidal_triple(adj: &[Vec<bool>]) -> Option<[usize; 3]> {
    let n = adj.len();
    let avoids = |s: usize, t: usize, c: usize| {
        let blocked: Vec<bool> = (0..n).map(|x| x == c || adj[c][x]).collect();
        shortest_path(adj, s, t, &blocked).is_some()
    };
    for a in 0..n {
        for b in a + 1..n {
            if adj[a][b] {
                continue;
            }
            for c in b + 1..n {
                if adj[a][c] || adj[b][c] {
                    continue;
                }
                if avoids(a, b, c) && avoids(a, c, b) && avoids(b, c, a) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec};

    fn g(spec: GeneratorSpec) -> Hypergraph {
        generate(&spec).unwrap()
    }

    #[test]
    fn recognizes_paths_and_rejects_c4() {
        let p5 = g(GeneratorSpec::Path { n: 5 });
        assert!(is_interval_graph(&p5).unwrap().is_interval());
        match is_interval_graph(&g(GeneratorSpec::Cycle { n: 4 })).unwrap() {
            Recognition::NotInterval(Obstruction::ChordlessCycle(c)) => assert_eq!(c.len(), 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn asteroidal_triple_for_the_subdivided_claw() {
        // Claw with every edge subdivided: chordal, not interval.
        let t = Hypergraph::graph(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        match is_interval_graph(&t).unwrap() {
            Recognition::NotInterval(Obstruction::AsteroidalTriple(at)) => {
                assert_eq!(at, [2, 4, 6])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn complete_and_edgeless_graphs_are_interval() {
        assert!(is_interval_graph(&g(GeneratorSpec::Clique { n: 5 }))
            .unwrap()
            .is_interval());
        assert!(is_interval_graph(&g(GeneratorSpec::Empty { n: 4 }))
            .unwrap()
            .is_interval());
    }

    #[test]
    fn representation_json_round_trip() {
        let rep = IntervalRepresentation::new(vec![
            Interval::integer(1, 3),
            Interval {
                l: Rational::new(1, 2),
                r: Rational::new(7, 3),
            },
        ])
        .unwrap();
        let s = rep.to_json();
        assert_eq!(
            s,
            r#"{"items":[{"id":1,"l":[1,1],"r":[3,1]},{"id":2,"l":[1,2],"r":[7,3]}]}"#
        );
        assert_eq!(IntervalRepresentation::from_json(&s).unwrap(), rep);
        assert!(IntervalRepresentation::from_integers(&[(2, 1)]).is_err());
    }

    #[test]
    fn star_with_no_permutations_gives_no_representations() {
        let s = g(GeneratorSpec::Star { leaves: 4 });
        let reps = perms_to_interval_graphs(&s, &PermutationFamily::empty(5)).unwrap();
        assert!(reps.is_empty());
        assert_eq!(intersection_of(&reps, s.m()).unwrap(), line_graph(&s));
    }

    #[test]
    fn path_single_permutation_round_trip() {
        let p4 = g(GeneratorSpec::Path { n: 4 });
        let f = PermutationFamily::new(4, vec![Permutation::identity(4)]).unwrap();
        let reps = perms_to_interval_graphs(&p4, &f).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(is_interval_graph(&reps[0].intersection_graph())
            .unwrap()
            .is_interval());
        let back = intervals_to_perms(&p4, &reps).unwrap();
        assert_eq!(back.len(), 1);
    }

    #[test]
    fn unsuitable_family_is_rejected() {
        let k4 = g(GeneratorSpec::Clique { n: 4 });
        let f = PermutationFamily::new(4, vec![Permutation::identity(4)]).unwrap();
        assert!(matches!(
            perms_to_interval_graphs(&k4, &f),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn representation_missing_a_line_graph_edge_is_rejected() {
        let s = g(GeneratorSpec::Star { leaves: 2 });
        let rep = IntervalRepresentation::from_integers(&[(0, 1), (2, 3)]).unwrap();
        assert!(intervals_to_perms(&s, &[rep]).is_err());
    }
}
