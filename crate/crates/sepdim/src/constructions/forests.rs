//! Forests and star forests: covering a degenerate graph by star forests, and
//! the one- and two-permutation families of star forests and forests.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{disjoint_pairs, Hypergraph};
use crate::permutation::{Permutation, PermutationFamily};

/// A star: a root joined to each leaf. A star without leaves is a single
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub root: usize,
    pub leaves: Vec<usize>,
}

impl Star {
    pub fn size(&self) -> usize {
        self.leaves.len() + 1
    }
}

/// A spanning star forest: every vertex lies in exactly one star.
///
/// `star_of(v)` is the index of the star holding `v`; `label(v)` numbers
/// the vertices of a star, leaves `0..` in increasing order and the root
/// last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarForest {
    stars: Vec<Star>,
    star_of: Vec<usize>,
    label: Vec<usize>,
}

impl StarForest {
    /// Completes `stars` with singleton stars for uncovered vertices and
    /// orders all stars by least vertex.
    pub fn new(n: usize, mut stars: Vec<Star>) -> Result<Self> {
        let mut covered = vec![false; n];
        for s in &mut stars {
            s.leaves.sort_unstable();
            for &v in s.leaves.iter().chain(std::iter::once(&s.root)) {
                if v >= n {
                    return Err(Error::InvalidDecomposition(format!("vertex {} out of range", v + 1)));
                }
                if std::mem::replace(&mut covered[v], true) {
                    return Err(Error::InvalidDecomposition(format!(
                        "vertex {} lies in two stars",
                        v + 1
                    )));
                }
            }
        }
        stars.extend((0..n).filter(|&v| !covered[v]).map(|v| Star {
            root: v,
            leaves: Vec::new(),
        }));
        stars.sort_by_key(|s| s.leaves.first().map_or(s.root, |&l| l.min(s.root)));
        let mut star_of = vec![0; n];
        let mut label = vec![0; n];
        for (i, s) in stars.iter().enumerate() {
            for (j, &v) in s.leaves.iter().enumerate() {
                star_of[v] = i;
                label[v] = j;
            }
            star_of[s.root] = i;
            label[s.root] = s.leaves.len();
        }
        Ok(StarForest {
            stars,
            star_of,
            label,
        })
    }

    pub fn stars(&self) -> &[Star] {
        &self.stars
    }

    pub fn star_of(&self, v: usize) -> usize {
        self.star_of[v]
    }

    pub fn label(&self, v: usize) -> usize {
        self.label[v]
    }

    pub fn max_star_size(&self) -> usize {
        self.stars.iter().map(Star::size).max().unwrap_or(0)
    }

    /// Edges as `(root, leaf)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.stars
            .iter()
            .flat_map(|s| s.leaves.iter().map(move |&l| (s.root, l)))
    }
}

/// Edge-disjoint spanning star forests covering a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarForestDecomposition {
    pub n: usize,
    pub forests: Vec<StarForest>,
}

impl StarForestDecomposition {
    pub fn len(&self) -> usize {
        self.forests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forests.is_empty()
    }

    /// Checks that the forests use only edges of `g`, are pairwise
    /// edge-disjoint and together cover every edge.
    pub fn validate(&self, g: &Hypergraph) -> Result<()> {
        g.require_graph()?;
        if g.n() != self.n {
            return Err(Error::GroundSetMismatch {
                expected: g.n(),
                found: self.n,
            });
        }
        let edges: HashSet<[usize; 2]> = g.edges().iter().map(|e| [e[0], e[1]]).collect();
        let mut used = HashSet::new();
        for (i, f) in self.forests.iter().enumerate() {
            for (a, b) in f.edges() {
                let e = [a.min(b), a.max(b)];
                if !edges.contains(&e) {
                    return Err(Error::InvalidDecomposition(format!(
                        "forest {} uses non-edge {{{},{}}}",
                        i + 1,
                        e[0] + 1,
                        e[1] + 1
                    )));
                }
                if !used.insert(e) {
                    return Err(Error::InvalidDecomposition(format!(
                        "edge {{{},{}}} lies in two forests",
                        e[0] + 1,
                        e[1] + 1
                    )));
                }
            }
        }
        if let Some(e) = g.edges().iter().find(|e| !used.contains(&[e[0], e[1]])) {
            return Err(Error::InvalidDecomposition(format!(
                "edge {{{},{}}} is not covered",
                e[0] + 1,
                e[1] + 1
            )));
        }
        Ok(())
    }
}

/// Covers `g` by at most `2k` star forests, where `k` is the largest number
/// of neighbours any vertex has after it in `order`.
///
/// The `j`-th later neighbour of each vertex is its parent in forest `j`;
/// each forest then splits into the stars centred at even depth and the
/// stars centred at odd depth.
pub fn star_forest_decompose(g: &Hypergraph, order: &[usize]) -> Result<StarForestDecomposition> {
    g.require_graph()?;
    let n = g.n();
    if order.len() != n {
        return Err(Error::GroundSetMismatch {
            expected: n,
            found: order.len(),
        });
    }
    let sigma = Permutation::from_order(order.to_vec())?;
    let adj = g.adjacency();
    let mut parents: Vec<Vec<Option<usize>>> = Vec::new();
    for v in 0..n {
        let mut later: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&w| sigma.position(w) > sigma.position(v))
            .collect();
        later.sort_by_key(|&w| sigma.position(w));
        for (j, w) in later.into_iter().enumerate() {
            if parents.len() <= j {
                parents.push(vec![None; n]);
            }
            parents[j][v] = Some(w);
        }
    }
    let mut forests = Vec::with_capacity(2 * parents.len());
    for parent in &parents {
        // Parents come later in `order`, so a reverse sweep sees them first.
        let mut depth = vec![0usize; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        // A forest whose components are already stars stays whole.
        let pairs: Vec<(usize, usize)> = (0..n).filter_map(|v| parent[v].map(|p| (v, p))).collect();
        if let Some(stars) = stars_of(n, &pairs) {
            forests.push(StarForest::new(n, stars)?);
            continue;
        }
        for parity in [0, 1] {
            let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
            for v in 0..n {
                if let Some(p) = parent[v] {
                    if depth[p] % 2 == parity {
                        children[p].push(v);
                    }
                }
            }
            let stars: Vec<Star> = children
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_empty())
                .map(|(p, c)| oriented_star(p, c))
                .collect();
            if !stars.is_empty() {
                forests.push(StarForest::new(n, stars)?);
            }
        }
    }
    Ok(StarForestDecomposition { n, forests })
}

/// The stars of the graph on `pairs`, if every component with an edge is one.
fn stars_of(n: usize, pairs: &[(usize, usize)]) -> Option<Vec<Star>> {
    let g = Hypergraph::graph(n, pairs).ok()?;
    if find_non_star(&g).is_some() {
        return None;
    }
    let adj = g.adjacency();
    let stars = g
        .components()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let centre = *c.iter().max_by_key(|&&v| (adj[v].len(), std::cmp::Reverse(v))).expect("nonempty");
            oriented_star(centre, adj[centre].clone())
        })
        .collect();
    Some(stars)
}

/// A single edge is rooted at its lower end; larger stars at their centre.
fn oriented_star(centre: usize, leaves: Vec<usize>) -> Star {
    if leaves.len() == 1 && leaves[0] < centre {
        Star {
            root: leaves[0],
            leaves: vec![centre],
        }
    } else {
        Star {
            root: centre,
            leaves,
        }
    }
}

/// A cycle of `g` as a closed vertex sequence, if `g` is not a forest.
pub(crate) fn find_cycle(g: &Hypergraph) -> Option<Vec<usize>> {
    let adj = g.adjacency();
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if w == parent[u] {
                    continue;
                }
                if seen[w] {
                    // Both ends are in the DFS forest; join their root paths.
                    let path_to_root = |mut x: usize| {
                        let mut p = vec![x];
                        while parent[x] != usize::MAX {
                            x = parent[x];
                            p.push(x);
                        }
                        p
                    };
                    let pu = path_to_root(u);
                    let pw = path_to_root(w);
                    let common = pu.iter().find(|x| pw.contains(x)).copied()?;
                    let mut cycle: Vec<usize> = pu.iter().copied().take_while(|&x| x != common).collect();
                    cycle.push(common);
                    let back: Vec<usize> = pw.iter().copied().take_while(|&x| x != common).collect();
                    cycle.extend(back.into_iter().rev());
                    return Some(cycle);
                }
                seen[w] = true;
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    None
}

/// A component of `g` that is not a star, if any.
pub(crate) fn find_non_star(g: &Hypergraph) -> Option<Vec<usize>> {
    let deg = g.degrees();
    g.components().into_iter().find(|c| {
        let edges: usize = c.iter().map(|&v| deg[v]).sum::<usize>() / 2;
        let big = c.iter().filter(|&&v| deg[v] > 1).count();
        edges + 1 != c.len() || big > 1
    })
}

/// Preorder and postorder of each tree, trees laid out by least vertex.
/// Each tree is rooted at its least vertex with children in increasing order.
fn tree_orders(g: &Hypergraph) -> (Vec<usize>, Vec<usize>) {
    let adj = g.adjacency();
    let n = g.n();
    let mut seen = vec![false; n];
    let mut pre = Vec::with_capacity(n);
    let mut post = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        pre.push(s);
        let mut stack = vec![(s, 0usize)];
        while let Some((u, i)) = stack.pop() {
            let next = adj[u][i..].iter().position(|&w| !seen[w]).map(|k| i + k);
            match next {
                Some(k) => {
                    let w = adj[u][k];
                    seen[w] = true;
                    pre.push(w);
                    stack.push((u, k + 1));
                    stack.push((w, 0));
                }
                None => post.push(u),
            }
        }
    }
    (pre, post)
}

/// Preorder and postorder permutations of a forest: two permutations, or
/// none when no two edges are disjoint.
pub fn forest_family(g: &Hypergraph) -> Result<PermutationFamily> {
    g.require_graph()?;
    if let Some(c) = find_cycle(g) {
        let c: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
        return Err(Error::Regime(format!("not a forest: cycle {}", c.join("-"))));
    }
    if disjoint_pairs(g).is_empty() {
        return Ok(PermutationFamily::empty(g.n()));
    }
    let (pre, post) = tree_orders(g);
    PermutationFamily::new(
        g.n(),
        vec![Permutation::from_order(pre)?, Permutation::from_order(post)?],
    )
}

/// The stars of a star forest laid out one after another: one permutation,
/// or none when no two edges are disjoint.
pub fn star_forest_family(g: &Hypergraph) -> Result<PermutationFamily> {
    g.require_graph()?;
    if let Some(c) = find_non_star(g) {
        let c: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
        return Err(Error::Regime(format!(
            "not a star forest: component {{{}}}",
            c.join(",")
        )));
    }
    if disjoint_pairs(g).is_empty() {
        return Ok(PermutationFamily::empty(g.n()));
    }
    let p = Permutation::concat_blocks(&g.components())?;
    PermutationFamily::new(g.n(), vec![p])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec};
    use crate::hypergraph::degeneracy_order;
    use crate::suitability::verify_family;
    use crate::SuitabilityKind;

    fn decompose(g: &Hypergraph) -> StarForestDecomposition {
        let (_, order) = degeneracy_order(g).unwrap();
        let d = star_forest_decompose(g, &order).unwrap();
        d.validate(g).unwrap();
        d
    }

    fn labels_are_consistent(d: &StarForestDecomposition) {
        for f in &d.forests {
            for (i, s) in f.stars().iter().enumerate() {
                let mut labels: Vec<usize> = s.leaves.iter().map(|&v| f.label(v)).collect();
                labels.push(f.label(s.root));
                labels.sort_unstable();
                labels.dedup();
                assert_eq!(labels.len(), s.size());
                assert!(s.leaves.iter().all(|&v| f.star_of(v) == i));
                assert_eq!(f.star_of(s.root), i);
            }
        }
    }

    #[test]
    fn single_star_is_one_forest() {
        let g = generate(&GeneratorSpec::Star { leaves: 5 }).unwrap();
        let d = decompose(&g);
        assert_eq!(d.len(), 1);
        labels_are_consistent(&d);
    }

    #[test]
    fn path_needs_at_most_two() {
        let g = generate(&GeneratorSpec::Path { n: 5 }).unwrap();
        let d = decompose(&g);
        assert!(d.len() <= 2);
        labels_are_consistent(&d);
    }

    #[test]
    fn k4_needs_at_most_six() {
        let g = generate(&GeneratorSpec::Clique { n: 4 }).unwrap();
        let d = decompose(&g);
        assert!(d.len() <= 6);
        labels_are_consistent(&d);
    }

    #[test]
    fn grid_is_covered_by_four() {
        let g = generate(&GeneratorSpec::Grid { rows: 4, cols: 5 }).unwrap();
        let d = decompose(&g);
        assert!(d.len() <= 4);
        labels_are_consistent(&d);
    }

    #[test]
    fn overlapping_stars_are_rejected() {
        let stars = vec![
            Star { root: 0, leaves: vec![1] },
            Star { root: 1, leaves: vec![2] },
        ];
        assert!(StarForest::new(3, stars).is_err());
    }

    #[test]
    fn forest_family_has_two_permutations() {
        let g = Hypergraph::graph(8, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (6, 7)]).unwrap();
        let f = forest_family(&g).unwrap();
        assert_eq!(f.len(), 2);
        assert!(verify_family(&g, &f, SuitabilityKind::PairwiseSuitable).unwrap().passed());
    }

    #[test]
    fn forest_family_rejects_cycles() {
        let g = generate(&GeneratorSpec::Cycle { n: 5 }).unwrap();
        assert!(matches!(forest_family(&g), Err(Error::Regime(_))));
        assert_eq!(find_cycle(&g).unwrap().len(), 5);
    }

    #[test]
    fn star_forest_family_has_one_permutation() {
        let g = Hypergraph::graph(7, &[(0, 1), (0, 2), (0, 3), (4, 5), (4, 6)]).unwrap();
        let f = star_forest_family(&g).unwrap();
        assert_eq!(f.len(), 1);
        assert!(verify_family(&g, &f, SuitabilityKind::PairwiseSuitable).unwrap().passed());
        let p4 = generate(&GeneratorSpec::Path { n: 4 }).unwrap();
        assert!(star_forest_family(&p4).is_err());
    }
}
