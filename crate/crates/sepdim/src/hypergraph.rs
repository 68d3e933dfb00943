//! Hypergraphs over dense vertex ids, line graphs, disjoint edge pairs,
//! degeneracy orders and the JSON / text file formats.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether every edge has exactly two vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Graph,
    Hypergraph,
}

/// A hypergraph on vertices `0..n`.
///
/// Edges are stored sorted and duplicate-free. An edgeless hypergraph counts
/// as a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// Two edge indices `e < f` whose vertex sets are disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DisjointPair {
    pub e: usize,
    pub f: usize,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge and rejecting empty edges,
    /// repeated vertices, out-of-range vertices and duplicate edges.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut out = Vec::with_capacity(edges.len());
        for (index, mut edge) in edges.into_iter().enumerate() {
            if edge.is_empty() {
                return Err(Error::InvalidEdge {
                    index,
                    reason: "edge is empty".into(),
                });
            }
            edge.sort_unstable();
            if let Some(&v) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidEdge {
                    index,
                    reason: format!("vertex {} outside 1..={n}", v + 1),
                });
            }
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge {
                    index,
                    reason: "repeated vertex".into(),
                });
            }
            if !seen.insert(edge.clone()) {
                return Err(Error::DuplicateEdge(edge.iter().map(|v| v + 1).collect()));
            }
            out.push(edge);
        }
        Ok(Hypergraph { n, edges: out })
    }

    /// Equality of vertex count and edge set, ignoring edge order.
    pub fn same_edges(&self, other: &Hypergraph) -> bool {
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// Builds a graph from vertex pairs.
    pub fn graph(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(u, v)| vec![u, v]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn kind(&self) -> Kind {
        if self.edges.iter().all(|e| e.len() == 2) {
            Kind::Graph
        } else {
            Kind::Hypergraph
        }
    }

    pub fn is_graph(&self) -> bool {
        self.kind() == Kind::Graph
    }

    /// Largest edge size, 0 for an edgeless hypergraph.
    pub fn rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub(crate) fn require_graph(&self) -> Result<()> {
        if self.is_graph() {
            Ok(())
        } else {
            Err(Error::NotAGraph)
        }
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Sorted neighbour lists (vertices sharing an edge).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.n];
        for e in &self.edges {
            for &u in e {
                for &v in e {
                    if u != v {
                        adj[u].insert(v);
                    }
                }
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Dense adjacency matrix of the 2-section.
    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let mut mat = vec![vec![false; self.n]; self.n];
        for e in &self.edges {
            for &u in e {
                for &v in e {
                    if u != v {
                        mat[u][v] = true;
                    }
                }
            }
        }
        mat
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn has_edge(&self, e: &[usize]) -> bool {
        let mut e = e.to_vec();
        e.sort_unstable();
        self.edges.iter().any(|f| *f == e)
    }

    /// Same vertex set, keeping the edges whose indices are listed.
    pub fn with_edges(&self, keep: &[usize]) -> Self {
        Hypergraph {
            n: self.n,
            edges: keep.iter().map(|&i| self.edges[i].clone()).collect(),
        }
    }

    /// Induced sub-hypergraph on `vertices`, relabelled to `0..vertices.len()`
    /// in the given order. Edges keep their relative order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| local[v] != usize::MAX))
            .map(|e| {
                let mut f: Vec<usize> = e.iter().map(|&v| local[v]).collect();
                f.sort_unstable();
                f
            })
            .collect();
        Hypergraph {
            n: vertices.len(),
            edges,
        }
    }

    /// Connected components of the 2-section, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for &w in &adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

pub(crate) fn sorted_disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// The intersection graph of the edges of `h`; vertex `i` is edge `i`.
pub fn line_graph(h: &Hypergraph) -> Hypergraph {
    let mut edges = Vec::new();
    for i in 0..h.m() {
        for j in i + 1..h.m() {
            if !sorted_disjoint(&h.edges[i], &h.edges[j]) {
                edges.push(vec![i, j]);
            }
        }
    }
    Hypergraph { n: h.m(), edges }
}

/// All pairs of disjoint edges, sorted lexicographically.
pub fn disjoint_pairs(h: &Hypergraph) -> Vec<DisjointPair> {
    let mut out = Vec::new();
    for e in 0..h.m() {
        for f in e + 1..h.m() {
            if sorted_disjoint(&h.edges[e], &h.edges[f]) {
                out.push(DisjointPair { e, f });
            }
        }
    }
    out
}

/// Degeneracy `k` and an order in which every vertex has at most `k`
/// neighbours after it, by repeated removal of a minimum-degree vertex
/// (lowest index on ties).
pub fn degeneracy_order(g: &Hypergraph) -> Result<(usize, Vec<usize>)> {
    g.require_graph()?;
    let adj = g.adjacency();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..g.n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; g.n];
    let mut order = Vec::with_capacity(g.n);
    let mut k = 0;
    while let Some((d, v)) = queue.pop_first() {
        k = k.max(d);
        removed[v] = true;
        order.push(v);
        for &w in &adj[v] {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    Ok((k, order))
}

#[derive(Serialize, Deserialize)]
struct HypergraphFile {
    n: usize,
    edges: Vec<Vec<usize>>,
}

fn from_one_based(n: usize, edges: Vec<Vec<usize>>) -> Result<Hypergraph> {
    let mut out = Vec::with_capacity(edges.len());
    for (index, e) in edges.into_iter().enumerate() {
        let mut f = Vec::with_capacity(e.len());
        for v in e {
            if v == 0 || v > n {
                return Err(Error::InvalidEdge {
                    index,
                    reason: format!("vertex {v} outside 1..={n}"),
                });
            }
            f.push(v - 1);
        }
        out.push(f);
    }
    Hypergraph::new(n, out)
}

impl Hypergraph {
    fn one_based_edges(&self) -> Vec<Vec<usize>> {
        self.edges
            .iter()
            .map(|e| e.iter().map(|v| v + 1).collect())
            .collect()
    }

    /// `{"n": .., "edges": [[..], ..]}` with 1-based vertices.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&HypergraphFile {
            n: self.n,
            edges: self.one_based_edges(),
        })
        .expect("hypergraph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: HypergraphFile = serde_json::from_str(s)?;
        from_one_based(file.n, file.edges)
    }

    /// First line `n m`, then one line of 1-based vertices per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for e in self.one_based_edges() {
            let line: Vec<String> = e.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n m` header".into()))?;
        let nums = parse_numbers(header)?;
        let [n, m] = nums[..] else {
            return Err(Error::Parse(format!("header must be `n m`, got `{header}`")));
        };
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            edges.push(parse_numbers(line)?);
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header announces {m} edges, found {}",
                edges.len()
            )));
        }
        from_one_based(n, edges)
    }

    /// Parses JSON when the input starts with `{`, text otherwise.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            Self::from_json(s)
        } else {
            Self::from_text(s)
        }
    }
}

pub(crate) fn parse_numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not a nonnegative integer: `{t}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> Hypergraph {
        Hypergraph::graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(matches!(
            Hypergraph::new(3, vec![vec![0, 1], vec![1, 0]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(Hypergraph::new(3, vec![vec![0, 0]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![3]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![2]]).is_ok());
    }

    #[test]
    fn kind_and_rank() {
        let h = Hypergraph::new(4, vec![vec![0, 1, 2], vec![3]]).unwrap();
        assert_eq!(h.kind(), Kind::Hypergraph);
        assert_eq!(h.rank(), 3);
        assert_eq!(path4().kind(), Kind::Graph);
        assert_eq!(path4().rank(), 2);
    }

    #[test]
    fn line_graph_examples() {
        let p3 = Hypergraph::graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(line_graph(&p3).edges(), &[vec![0, 1]]);
        let k3 = Hypergraph::graph(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(line_graph(&k3).m(), 3);
        let matching = Hypergraph::graph(4, &[(0, 1), (2, 3)]).unwrap();
        let l = line_graph(&matching);
        assert_eq!((l.n(), l.m()), (2, 0));
    }

    #[test]
    fn disjoint_pairs_examples() {
        assert_eq!(disjoint_pairs(&path4()), vec![DisjointPair { e: 0, f: 2 }]);
        let k3 = Hypergraph::graph(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(disjoint_pairs(&k3).is_empty());
    }

    #[test]
    fn singleton_edges_are_disjoint_from_edges_missing_their_vertex() {
        let h = Hypergraph::new(3, vec![vec![0], vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(disjoint_pairs(&h), vec![DisjointPair { e: 0, f: 1 }]);
    }

    #[test]
    fn degeneracy_of_a_path() {
        let (k, order) = degeneracy_order(&path4()).unwrap();
        assert_eq!(k, 1);
        assert_eq!(order.len(), 4);
    }

    #[test]
    fn text_and_json_round_trip() {
        let h = Hypergraph::new(5, vec![vec![0, 4], vec![1, 2, 3], vec![2]]).unwrap();
        assert_eq!(Hypergraph::from_json(&h.to_json()).unwrap(), h);
        assert_eq!(Hypergraph::from_text(&h.to_text()).unwrap(), h);
        assert_eq!(h.to_json(), r#"{"n":5,"edges":[[1,5],[2,3,4],[3]]}"#);
    }

    #[test]
    fn text_format_rejects_count_mismatch() {
        assert!(Hypergraph::from_text("3 2\n1 2\n").is_err());
        assert!(Hypergraph::from_text("3 1\n1 4\n").is_err());
    }

    #[test]
    fn induced_relabels() {
        let h = path4();
        let sub = h.induced(&[3, 2, 1]);
        assert_eq!(sub.edges(), &[vec![1, 2], vec![0, 1]]);
    }
}
