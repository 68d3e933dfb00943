//! Families from ordered tree decompositions: block orders of the colour
//! classes of the chordal completion, plus orders read from a depth-first
//! traversal of the decomposition tree.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use super::{certify, params, Certificate, Options};
use crate::error::{Error, Result};
use crate::hypergraph::{parse_numbers, Hypergraph};
use crate::permutation::{Permutation, PermutationFamily};
use crate::suitability::{compact_random_family_with, SuitabilityKind};

/// A tree decomposition with a root and ordered children.
///
/// Nodes are `0..bags.len()`; children are visited in increasing order. One
/// depth-first clock numbers both the discovery (`preorder`) and the finish
/// (`postorder`) of every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedTreeDecomposition {
    n: usize,
    bags: Vec<Vec<usize>>,
    root: usize,
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    preorder: Vec<usize>,
    postorder: Vec<usize>,
    level: Vec<usize>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidDecomposition(msg.into())
}

impl OrderedTreeDecomposition {
    /// Builds a decomposition over vertices `0..n` from bags and tree edges.
    /// Fails unless the edges form a tree on the bags.
    pub fn new(n: usize, bags: Vec<Vec<usize>>, edges: &[(usize, usize)], root: usize) -> Result<Self> {
        let k = bags.len();
        if k == 0 {
            return Err(bad("no bags"));
        }
        if root >= k {
            return Err(bad(format!("root {} is not a bag", root + 1)));
        }
        let bags: Vec<Vec<usize>> = bags
            .into_iter()
            .map(|b| b.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        if let Some(v) = bags.iter().flatten().find(|&&v| v >= n) {
            return Err(bad(format!("bag vertex {} out of range", v + 1)));
        }
        if edges.len() + 1 != k {
            return Err(bad(format!("{} tree edges for {} bags", edges.len(), k)));
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in edges {
            if a >= k || b >= k || a == b {
                return Err(bad(format!("bad tree edge {}-{}", a + 1, b + 1)));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![None; k];
        let mut level = vec![usize::MAX; k];
        let mut children = vec![Vec::new(); k];
        level[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if level[j] == usize::MAX {
                    level[j] = level[i] + 1;
                    parent[j] = Some(i);
                    children[i].push(j);
                    queue.push_back(j);
                }
            }
        }
        if let Some(i) = level.iter().position(|&l| l == usize::MAX) {
            return Err(bad(format!("bag {} is not connected to the root", i + 1)));
        }
        for c in &mut children {
            c.sort_unstable();
        }
        let mut preorder = vec![0; k];
        let mut postorder = vec![0; k];
        let mut clock = 0;
        let mut stack = vec![(root, 0usize)];
        preorder[root] = clock;
        while let Some((i, next)) = stack.pop() {
            clock += 1;
            if let Some(&c) = children[i].get(next) {
                stack.push((i, next + 1));
                preorder[c] = clock;
                stack.push((c, 0));
            } else {
                postorder[i] = clock;
            }
        }
        Ok(OrderedTreeDecomposition {
            n,
            bags,
            root,
            children,
            parent,
            preorder,
            postorder,
            level,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn preorder(&self, i: usize) -> usize {
        self.preorder[i]
    }

    pub fn postorder(&self, i: usize) -> usize {
        self.postorder[i]
    }

    pub fn level(&self, i: usize) -> usize {
        self.level[i]
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// For each vertex, the bag of least level containing it.
    pub fn bag_of(&self) -> Vec<Option<usize>> {
        let mut out: Vec<Option<usize>> = vec![None; self.n];
        for (i, b) in self.bags.iter().enumerate() {
            for &v in b {
                if out[v].is_none_or(|j| self.level[i] < self.level[j]) {
                    out[v] = Some(i);
                }
            }
        }
        out
    }

    /// Checks vertex coverage, edge coverage and that the bags holding each
    /// vertex form a subtree.
    pub fn validate(&self, g: &Hypergraph) -> Result<()> {
        g.require_graph()?;
        if g.n() != self.n {
            return Err(Error::GroundSetMismatch {
                expected: g.n(),
                found: self.n,
            });
        }
        let bag_of = self.bag_of();
        if let Some(v) = bag_of.iter().position(Option::is_none) {
            return Err(bad(format!("vertex {} lies in no bag", v + 1)));
        }
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, b) in self.bags.iter().enumerate() {
            for &v in b {
                holders[v].push(i);
            }
        }
        for e in g.edges() {
            let together = holders[e[0]].iter().any(|i| self.bags[*i].binary_search(&e[1]).is_ok());
            if !together {
                return Err(bad(format!("edge {{{},{}}} lies in no bag", e[0] + 1, e[1] + 1)));
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            let top = bag_of[v].expect("checked above");
            // Connected iff every holder other than the top has a holding parent.
            let broken = hs.iter().any(|&i| {
                i != top
                    && self.parent[i].is_none_or(|p| self.bags[p].binary_search(&v).is_err())
            });
            if broken {
                return Err(bad(format!("bags holding vertex {} are not connected", v + 1)));
            }
        }
        Ok(())
    }

    /// Min-fill elimination (ties by fewer neighbours, then lower index).
    /// Each eliminated vertex gives the bag of itself and its remaining
    /// neighbours, hung below the bag of the first of those neighbours to be
    /// eliminated; the bag of the last vertex is the root.
    pub fn min_fill(g: &Hypergraph) -> Result<Self> {
        g.require_graph()?;
        let n = g.n();
        if n == 0 {
            return Self::new(0, vec![Vec::new()], &[], 0);
        }
        let mut adj: Vec<BTreeSet<usize>> = g.adjacency().into_iter().map(|a| a.into_iter().collect()).collect();
        let mut alive = vec![true; n];
        let mut order = Vec::with_capacity(n);
        let mut later: Vec<Vec<usize>> = vec![Vec::new(); n];
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| alive[v])
                .min_by_key(|&v| (fill_in(&adj, v), adj[v].len(), v))
                .expect("a vertex is alive");
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
                adj[a].remove(&v);
            }
            alive[v] = false;
            later[v] = nbrs;
            order.push(v);
        }
        let mut step = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            step[v] = i;
        }
        let root = n - 1;
        let mut edges = Vec::with_capacity(n - 1);
        let bags: Vec<Vec<usize>> = order
            .iter()
            .map(|&v| {
                let mut b = later[v].clone();
                b.push(v);
                b
            })
            .collect();
        for (i, &v) in order.iter().enumerate().take(n - 1) {
            let parent = later[v].iter().map(|&w| step[w]).min().unwrap_or(root);
            edges.push((i, parent));
        }
        Self::new(n, bags, &edges, root)
    }

    /// Reads the PACE `.td` format. The first bag is the root.
    pub fn from_pace(s: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
        let mut edges = Vec::new();
        for (no, raw) in s.lines().enumerate() {
            let line = raw.trim();
            let err = |m: &str| Error::Parse(format!("line {}: {m}", no + 1));
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "s" => {
                    if words.len() != 5 || words[1] != "td" {
                        return Err(err("expected `s td <bags> <width+1> <vertices>`"));
                    }
                    let nums = parse_numbers(&words[2..].join(" "))?;
                    header = Some((nums[0], nums[2]));
                    bags = vec![None; nums[0]];
                }
                "b" => {
                    let nums = parse_numbers(&words[1..].join(" "))?;
                    let (&id, rest) = nums.split_first().ok_or_else(|| err("bag without id"))?;
                    let slot = id
                        .checked_sub(1)
                        .and_then(|i| bags.get_mut(i))
                        .ok_or_else(|| err("bag id out of range"))?;
                    if rest.contains(&0) {
                        return Err(err("vertices are 1-based"));
                    }
                    *slot = Some(rest.iter().map(|v| v - 1).collect());
                }
                _ => {
                    let nums = parse_numbers(line)?;
                    if nums.len() != 2 || nums.contains(&0) {
                        return Err(err("expected a tree edge `a b`"));
                    }
                    edges.push((nums[0] - 1, nums[1] - 1));
                }
            }
        }
        let (_, n) = header.ok_or_else(|| Error::Parse("missing `s td` line".into()))?;
        let bags: Vec<Vec<usize>> = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| Error::Parse(format!("bag {} missing", i + 1))))
            .collect::<Result<_>>()?;
        Self::new(n, bags, &edges, 0)
    }

    /// Writes the PACE `.td` format with this decomposition's root first.
    pub fn to_pace(&self) -> String {
        // Renumber so the root is bag 1.
        let k = self.bags.len();
        let mut id: Vec<usize> = (0..k).collect();
        id.swap(0, self.root);
        let mut new_of = vec![0; k];
        for (new, &old) in id.iter().enumerate() {
            new_of[old] = new;
        }
        let mut out = String::new();
        let _ = writeln!(out, "s td {} {} {}", k, self.width() + 1, self.n);
        for (new, &old) in id.iter().enumerate() {
            let _ = write!(out, "b {}", new + 1);
            for v in &self.bags[old] {
                let _ = write!(out, " {}", v + 1);
            }
            out.push('\n');
        }
        for i in 0..k {
            if let Some(p) = self.parent[i] {
                let _ = writeln!(out, "{} {}", new_of[p] + 1, new_of[i] + 1);
            }
        }
        out
    }
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Proper colouring of the chordal completion with at most `width + 1`
/// colours: walking the tree from the root, each vertex is coloured in its
/// top bag, avoiding the colours already in that bag.
fn completion_colouring(td: &OrderedTreeDecomposition) -> Vec<usize> {
    let bag_of = td.bag_of();
    let mut colour = vec![usize::MAX; td.n()];
    let mut stack = vec![td.root()];
    while let Some(i) = stack.pop() {
        let bag = &td.bags()[i];
        let used: Vec<usize> = bag.iter().map(|&v| colour[v]).filter(|&c| c != usize::MAX).collect();
        let mut free = (0..).filter(|c| !used.contains(c));
        for &v in bag {
            if bag_of[v] == Some(i) {
                colour[v] = free.next().expect("colours are unbounded");
            }
        }
        stack.extend(td.children(i).iter().rev());
    }
    colour
}

/// `15.68 ⌈log(t+1)⌉ + 2`.
pub fn treewidth_bound(width: usize) -> f64 {
    15.68 * ((width + 1) as f64).log2().ceil() + 2.0
}

/// Builds, for a decomposition of width `t`:
/// two block orders of the colour classes per permutation of a pairwise
/// suitable, 3-mixing family over the `t + 1` colours (within a class by
/// index, then reversed); one order by `preorder` or `postorder` of each
/// vertex's top bag for every bipartition of the colours by one bit of
/// their index and for its swap; and the all-`preorder` and all-`postorder`
/// orders. Certified against `15.68 ⌈log(t+1)⌉ + 2`.
pub fn construct_treewidth(g: &Hypergraph, td: &OrderedTreeDecomposition, opts: &Options) -> Result<Certificate> {
    td.validate(g)?;
    let n = g.n();
    let t = td.width();
    let colour = completion_colouring(td);
    let colours = colour.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut classes = vec![Vec::new(); colours];
    for (v, &c) in colour.iter().enumerate() {
        classes[c].push(v);
    }

    let mut perms = Vec::new();
    let mixing = compact_random_family_with(
        colours.max(1),
        SuitabilityKind::PairwiseSuitableAnd3Mixing,
        opts.seed,
        opts.retries,
        opts.exec,
    )?;
    for sigma in mixing.perms() {
        let tau: Vec<Vec<usize>> = sigma.order().iter().map(|&c| classes[c].clone()).collect();
        let tau_rev: Vec<Vec<usize>> = tau.iter().map(|b| b.iter().rev().copied().collect()).collect();
        perms.push(Permutation::concat_blocks(&tau)?);
        perms.push(Permutation::concat_blocks(&tau_rev)?);
    }

    let bag_of: Vec<usize> = td.bag_of().into_iter().map(|b| b.expect("validated")).collect();
    let splitting = |post: &dyn Fn(usize) -> bool| {
        Permutation::sorted_by_key(n, |v| {
            let b = bag_of[v];
            if post(colour[v]) {
                td.postorder(b)
            } else {
                td.preorder(b)
            }
        })
    };
    let bits = (colours.max(1) as f64).log2().ceil() as usize;
    for bit in 0..bits {
        perms.push(splitting(&|c| (c >> bit) & 1 == 1));
        perms.push(splitting(&|c| (c >> bit) & 1 == 0));
    }
    perms.push(splitting(&|_| false));
    perms.push(splitting(&|_| true));

    let family = PermutationFamily::new(n, perms)?;
    let pars = params([
        ("width", t as f64),
        ("colours", colours as f64),
        ("mixing_size", mixing.len() as f64),
    ]);
    certify(g, family, "treewidth", treewidth_bound(t), true, pars, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec};

    fn path_decomposition(n: usize) -> OrderedTreeDecomposition {
        let bags: Vec<Vec<usize>> = (0..n - 1).map(|i| vec![i, i + 1]).collect();
        let edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
        OrderedTreeDecomposition::new(n, bags, &edges, 0).unwrap()
    }

    #[test]
    fn clocks_follow_one_traversal() {
        let td = OrderedTreeDecomposition::new(4, vec![vec![0], vec![1], vec![2], vec![3]], &[(0, 1), (0, 2), (1, 3)], 0)
            .unwrap();
        assert_eq!((0..4).map(|i| td.preorder(i)).collect::<Vec<_>>(), vec![0, 1, 5, 2]);
        assert_eq!((0..4).map(|i| td.postorder(i)).collect::<Vec<_>>(), vec![7, 4, 6, 3]);
        assert_eq!(td.level(3), 2);
    }

    #[test]
    fn path_with_path_decomposition() {
        let g = generate(&GeneratorSpec::Path { n: 8 }).unwrap();
        let c = construct_treewidth(&g, &path_decomposition(8), &Options::default()).unwrap();
        assert_eq!(c.ledger.params["width"], 1.0);
        assert!(c.size() as f64 <= (15.68f64 + 2.0).floor());
    }

    #[test]
    fn k4_single_bag() {
        let g = generate(&GeneratorSpec::Clique { n: 4 }).unwrap();
        let td = OrderedTreeDecomposition::new(4, vec![vec![0, 1, 2, 3]], &[], 0).unwrap();
        let c = construct_treewidth(&g, &td, &Options::with_seed(2)).unwrap();
        assert_eq!(c.ledger.params["width"], 3.0);
        assert!(c.size() >= 3);
    }

    #[test]
    fn series_parallel_width_two() {
        // Two triangles glued along an edge, plus a pendant path.
        let g = Hypergraph::graph(6, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5)]).unwrap();
        let td = OrderedTreeDecomposition::min_fill(&g).unwrap();
        td.validate(&g).unwrap();
        assert_eq!(td.width(), 2);
        let c = construct_treewidth(&g, &td, &Options::with_seed(4)).unwrap();
        assert!(c.size() as f64 <= treewidth_bound(2));
    }

    #[test]
    fn min_fill_on_grid_and_random() {
        for spec in [
            GeneratorSpec::Grid { rows: 4, cols: 5 },
            GeneratorSpec::Gnp { n: 15, p: 0.3, seed: 7 },
            GeneratorSpec::Empty { n: 3 },
        ] {
            let g = generate(&spec).unwrap();
            let td = OrderedTreeDecomposition::min_fill(&g).unwrap();
            td.validate(&g).unwrap();
            construct_treewidth(&g, &td, &Options::with_seed(1)).unwrap();
        }
    }

    #[test]
    fn axioms_are_reported() {
        let g = generate(&GeneratorSpec::Path { n: 3 }).unwrap();
        let missing = OrderedTreeDecomposition::new(3, vec![vec![0, 1], vec![1]], &[(0, 1)], 0).unwrap();
        assert!(missing.validate(&g).unwrap_err().to_string().contains("lies in no bag"));
        let split = OrderedTreeDecomposition::new(
            3,
            vec![vec![0, 1], vec![2], vec![1, 2]],
            &[(0, 1), (1, 2)],
            0,
        )
        .unwrap();
        assert!(split.validate(&g).unwrap_err().to_string().contains("not connected"));
        assert!(OrderedTreeDecomposition::new(2, vec![vec![0], vec![1]], &[], 0).is_err());
    }

    #[test]
    fn pace_round_trip() {
        let g = generate(&GeneratorSpec::Grid { rows: 3, cols: 3 }).unwrap();
        let td = OrderedTreeDecomposition::min_fill(&g).unwrap();
        let back = OrderedTreeDecomposition::from_pace(&td.to_pace()).unwrap();
        back.validate(&g).unwrap();
        assert_eq!(back.width(), td.width());
        let text = "c example\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
        let td = OrderedTreeDecomposition::from_pace(text).unwrap();
        td.validate(&generate(&GeneratorSpec::Path { n: 3 }).unwrap()).unwrap();
    }
}
