//! Planar triangulations as rotation systems with a designated outer face.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// A maximal planar graph on `0..n` given by the cyclic order of the
/// neighbours around each vertex, with one face marked as outer.
///
/// Faces are the triangles `(x, y, succ(x, y))`, where `succ(x, y)` follows
/// `y` in the rotation of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    n: usize,
    rot: Vec<Vec<usize>>,
    outer: [usize; 3],
    /// `index[x][&y]` is the position of `y` in `rot[x]`.
    index: Vec<HashMap<usize, usize>>,
}

#[derive(Serialize, Deserialize)]
struct TriangulationFile {
    n: usize,
    rot: Vec<Vec<usize>>,
    outer: [usize; 3],
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidTriangulation(msg.into())
}

impl Triangulation {
    /// Checks that the rotation system is symmetric, connected, has only
    /// triangular faces, has `3n - 6` edges (hence is a sphere), and that
    /// `outer` is one of its faces.
    pub fn new(n: usize, rot: Vec<Vec<usize>>, outer: [usize; 3]) -> Result<Self> {
        if n < 3 {
            return Err(bad(format!("need at least 3 vertices, got {n}")));
        }
        if rot.len() != n {
            return Err(bad(format!("{} rotations for {n} vertices", rot.len())));
        }
        let mut index = Vec::with_capacity(n);
        for (v, r) in rot.iter().enumerate() {
            let mut map = HashMap::with_capacity(r.len());
            for (i, &w) in r.iter().enumerate() {
                if w >= n || w == v {
                    return Err(bad(format!("vertex {} has bad neighbour {}", v + 1, w + 1)));
                }
                if map.insert(w, i).is_some() {
                    return Err(bad(format!("vertex {} lists {} twice", v + 1, w + 1)));
                }
            }
            index.push(map);
        }
        let darts: usize = rot.iter().map(Vec::len).sum();
        for (v, r) in rot.iter().enumerate() {
            if let Some(&w) = r.iter().find(|&&w| !index[w].contains_key(&v)) {
                return Err(bad(format!("{} lists {} but not conversely", v + 1, w + 1)));
            }
        }
        if darts != 2 * (3 * n - 6) {
            return Err(bad(format!("{} edges, expected {}", darts / 2, 3 * n - 6)));
        }
        let t = Triangulation {
            n,
            rot,
            outer,
            index,
        };
        for x in 0..n {
            for &y in &t.rot[x] {
                let z = t.succ(x, y);
                if t.succ(y, z) != x || t.succ(z, x) != y {
                    return Err(bad(format!("face at dart {}->{} is not a triangle", x + 1, y + 1)));
                }
            }
        }
        if t.graph().components().len() != 1 {
            return Err(bad("not connected"));
        }
        let [a, b, c] = outer;
        if a >= n || b >= n || c >= n {
            return Err(bad("outer vertex out of range"));
        }
        let is_face = t.index[a].contains_key(&b) && {
            let z = t.succ(a, b);
            z == c || t.succ(b, a) == c
        };
        if !is_face {
            return Err(bad(format!("outer {{{},{},{}}} is not a face", a + 1, b + 1, c + 1)));
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn outer(&self) -> [usize; 3] {
        self.outer
    }

    /// Neighbour of `x` following `y` in the rotation of `x`.
    pub fn succ(&self, x: usize, y: usize) -> usize {
        let r = &self.rot[x];
        r[(self.index[x][&y] + 1) % r.len()]
    }

    /// Neighbour of `x` preceding `y` in the rotation of `x`.
    pub fn pred(&self, x: usize, y: usize) -> usize {
        let r = &self.rot[x];
        r[(self.index[x][&y] + r.len() - 1) % r.len()]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.index[x].contains_key(&y)
    }

    pub fn graph(&self) -> Hypergraph {
        let mut pairs = Vec::new();
        for (v, r) in self.rot.iter().enumerate() {
            pairs.extend(r.iter().filter(|&&w| v < w).map(|&w| (v, w)));
        }
        Hypergraph::graph(self.n, &pairs).expect("rotation edges are valid")
    }

    /// All `2n - 4` faces in sorted order, each starting from its least vertex.
    pub fn faces(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::with_capacity(2 * self.n);
        for x in 0..self.n {
            for &y in &self.rot[x] {
                let z = self.succ(x, y);
                if x < y && x < z {
                    out.push([x, y, z]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn to_json(&self) -> String {
        let file = TriangulationFile {
            n: self.n,
            rot: self
                .rot
                .iter()
                .map(|r| r.iter().map(|v| v + 1).collect())
                .collect(),
            outer: self.outer.map(|v| v + 1),
        };
        serde_json::to_string(&file).expect("triangulation serializes")
    }

    /// `{"n", "rot", "outer"}` with 1-based vertices.
    pub fn from_json(s: &str) -> Result<Self> {
        let file: TriangulationFile = serde_json::from_str(s)?;
        let one = |v: usize| v.checked_sub(1).ok_or_else(|| bad("vertices are 1-based"));
        let rot = file
            .rot
            .iter()
            .map(|r| r.iter().map(|&v| one(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let outer = [one(file.outer[0])?, one(file.outer[1])?, one(file.outer[2])?];
        Self::new(file.n, rot, outer)
    }

    /// Recovers the embedding of a maximal planar graph: its faces are the
    /// triangles whose removal leaves the graph connected, oriented
    /// consistently across shared edges. The outer face is the
    /// lexicographically least face.
    pub fn from_maximal_planar(g: &Hypergraph) -> Result<Self> {
        g.require_graph()?;
        let n = g.n();
        if n < 3 || g.m() != 3 * n - 6 {
            return Err(bad(format!(
                "a maximal planar graph on {n} vertices has {} edges, got {}",
                (3 * n).saturating_sub(6),
                g.m()
            )));
        }
        let adj = g.adjacency();
        let mut triangles = Vec::new();
        for a in 0..n {
            for &b in adj[a].iter().filter(|&&b| b > a) {
                for &c in adj[b].iter().filter(|&&c| c > b) {
                    if adj[a].binary_search(&c).is_ok() {
                        triangles.push([a, b, c]);
                    }
                }
            }
        }
        let faces: Vec<[usize; 3]> = if n == 3 {
            vec![[0, 1, 2], [0, 2, 1]]
        } else {
            let unoriented: Vec<[usize; 3]> = triangles
                .into_iter()
                .filter(|t| connected_without(&adj, t))
                .collect();
            orient(&unoriented)?
        };
        if faces.len() != 2 * n - 4 {
            return Err(bad(format!("found {} faces, expected {}", faces.len(), 2 * n - 4)));
        }
        let outer = faces.iter().map(|f| sorted(*f)).min().expect("faces exist");
        Self::new(n, rotations_from_faces(n, &faces)?, outer)
    }

    /// Random triangulation on `n >= 3` vertices: each new vertex is inserted
    /// into a random face, then `2n` random edge flips are attempted.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::param("n", format!("must be at least 3, got {n}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
        let mut dart: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        let mut deg = vec![0usize; n];
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let set_face = |faces: &mut Vec<[usize; 3]>, dart: &mut HashMap<(usize, usize), usize>, i: usize, f: [usize; 3]| {
            faces[i] = f;
            for k in 0..3 {
                dart.insert((f[k], f[(k + 1) % 3]), i);
            }
        };
        for i in 0..2 {
            let f = faces[i];
            set_face(&mut faces, &mut dart, i, f);
        }
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            edges.insert((a, b));
            deg[a] += 1;
            deg[b] += 1;
        }
        for v in 3..n {
            let i = rng.gen_range(0..faces.len());
            let [x, y, z] = faces[i];
            set_face(&mut faces, &mut dart, i, [x, y, v]);
            faces.push([0; 3]);
            let j = faces.len() - 1;
            set_face(&mut faces, &mut dart, j, [y, z, v]);
            faces.push([0; 3]);
            let k = faces.len() - 1;
            set_face(&mut faces, &mut dart, k, [z, x, v]);
            for w in [x, y, z] {
                edges.insert(key(v, w));
                deg[w] += 1;
            }
            deg[v] = 3;
        }
        for _ in 0..2 * n {
            let i = rng.gen_range(0..faces.len());
            let s = rng.gen_range(0..3);
            let f = faces[i];
            let (x, y, z) = (f[s], f[(s + 1) % 3], f[(s + 2) % 3]);
            let j = dart[&(y, x)];
            let g = faces[j];
            let w = g[(g.iter().position(|&u| u == y).expect("dart lies on face") + 2) % 3];
            if z == w || edges.contains(&key(z, w)) || deg[x] <= 3 || deg[y] <= 3 {
                continue;
            }
            dart.remove(&(x, y));
            dart.remove(&(y, x));
            edges.remove(&key(x, y));
            edges.insert(key(z, w));
            deg[x] -= 1;
            deg[y] -= 1;
            deg[z] += 1;
            deg[w] += 1;
            set_face(&mut faces, &mut dart, i, [x, w, z]);
            set_face(&mut faces, &mut dart, j, [w, y, z]);
        }
        let outer = sorted(faces[0]);
        Self::new(n, rotations_from_faces(n, &faces)?, outer)
    }

    /// `K_4` embedded in the plane.
    pub fn tetrahedron() -> Self {
        let g = Hypergraph::graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("K4");
        Self::from_maximal_planar(&g).expect("K4 is maximal planar")
    }

    /// The octahedron `K_{2,2,2}`; antipodal pairs are `{0,1}`, `{2,3}`, `{4,5}`.
    pub fn octahedron() -> Self {
        let mut pairs = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                if a / 2 != b / 2 {
                    pairs.push((a, b));
                }
            }
        }
        let g = Hypergraph::graph(6, &pairs).expect("octahedron");
        Self::from_maximal_planar(&g).expect("octahedron is maximal planar")
    }
}

fn sorted(mut f: [usize; 3]) -> [usize; 3] {
    f.sort_unstable();
    f
}

fn connected_without(adj: &[Vec<usize>], t: &[usize; 3]) -> bool {
    let n = adj.len();
    let Some(start) = (0..n).find(|v| !t.contains(v)) else {
        return true;
    };
    let mut seen = vec![false; n];
    for &v in t {
        seen[v] = true;
    }
    seen[start] = true;
    let mut count = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == n - 3
}

/// Orients triangles so that every edge is traversed once in each direction.
fn orient(triangles: &[[usize; 3]]) -> Result<Vec<[usize; 3]>> {
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, t) in triangles.iter().enumerate() {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            by_edge.entry((a, b)).or_default().push(i);
        }
    }
    if let Some(((a, b), _)) = by_edge.iter().find(|(_, fs)| fs.len() != 2) {
        return Err(bad(format!("edge {{{},{}}} does not lie on exactly two faces", a + 1, b + 1)));
    }
    let mut oriented: Vec<Option<[usize; 3]>> = vec![None; triangles.len()];
    let mut queue = VecDeque::new();
    for s in 0..triangles.len() {
        if oriented[s].is_some() {
            continue;
        }
        oriented[s] = Some(triangles[s]);
        queue.push_back(s);
        while let Some(i) = queue.pop_front() {
            let f = oriented[i].expect("queued faces are oriented");
            for k in 0..3 {
                let (x, y) = (f[k], f[(k + 1) % 3]);
                let j = by_edge[&(x.min(y), x.max(y))]
                    .iter()
                    .copied()
                    .find(|&j| j != i)
                    .expect("two faces per edge");
                let t = triangles[j];
                let w = t.iter().copied().find(|&u| u != x && u != y).expect("third vertex");
                let want = [y, x, w];
                match oriented[j] {
                    None => {
                        oriented[j] = Some(want);
                        queue.push_back(j);
                    }
                    Some(have) if same_cycle(have, want) => {}
                    Some(_) => return Err(bad("faces cannot be oriented consistently")),
                }
            }
        }
    }
    Ok(oriented.into_iter().map(|f| f.expect("all faces reached")).collect())
}

fn same_cycle(a: [usize; 3], b: [usize; 3]) -> bool {
    (0..3).any(|s| (0..3).all(|k| a[(k + s) % 3] == b[k]))
}

/// Rotation of each vertex from oriented faces: `succ(x, y) = z` for each
/// face `(x, y, z)` and its cyclic shifts.
fn rotations_from_faces(n: usize, faces: &[[usize; 3]]) -> Result<Vec<Vec<usize>>> {
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for f in faces {
        for k in 0..3 {
            let (x, y, z) = (f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
            if succ[x].insert(y, z).is_some() {
                return Err(bad("a dart lies on two faces"));
            }
        }
    }
    let mut rot = Vec::with_capacity(n);
    for (x, s) in succ.iter().enumerate() {
        let start = *s.keys().min().ok_or_else(|| bad(format!("vertex {} is isolated", x + 1)))?;
        let mut r = vec![start];
        let mut cur = s[&start];
        while cur != start {
            if r.len() > s.len() {
                return Err(bad(format!("rotation at {} is not a single cycle", x + 1)));
            }
            r.push(cur);
            cur = *s.get(&cur).ok_or_else(|| bad(format!("rotation at {} is open", x + 1)))?;
        }
        if r.len() != s.len() {
            return Err(bad(format!("rotation at {} is not a single cycle", x + 1)));
        }
        rot.push(r);
    }
    Ok(rot)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_solids() {
        let t = Triangulation::tetrahedron();
        assert_eq!(t.faces().len(), 4);
        let o = Triangulation::octahedron();
        assert_eq!(o.faces().len(), 8);
        assert_eq!(o.graph().m(), 12);
    }

    #[test]
    fn triangle_has_two_faces() {
        let g = Hypergraph::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = Triangulation::from_maximal_planar(&g).unwrap();
        assert_eq!(t.faces().len(), 2);
    }

    #[test]
    fn random_triangulations_are_valid() {
        for (n, seed) in [(3, 0), (4, 1), (10, 2), (40, 3), (120, 4)] {
            let t = Triangulation::random(n, seed).unwrap();
            assert_eq!(t.graph().m(), 3 * n - 6);
            let back = Triangulation::from_maximal_planar(&t.graph()).unwrap();
            assert_eq!(back.faces().len(), 2 * n - 4);
        }
    }

    #[test]
    fn json_round_trip() {
        let t = Triangulation::random(12, 9).unwrap();
        let back = Triangulation::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn non_triangulations_are_rejected() {
        let k5 = crate::generate::generate(&crate::generate::GeneratorSpec::Clique { n: 5 }).unwrap();
        assert!(Triangulation::from_maximal_planar(&k5).is_err());
        let c4 = crate::generate::generate(&crate::generate::GeneratorSpec::Cycle { n: 4 }).unwrap();
        assert!(Triangulation::from_maximal_planar(&c4).is_err());
        let bad = r#"{"n":4,"rot":[[2,3,4],[1,3,4],[1,2,4],[1,2,3]],"outer":[1,2,3]}"#;
        assert!(Triangulation::from_json(bad).is_err());
    }
}
