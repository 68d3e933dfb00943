//! Three permutations for a plane triangulation, read off the face-count
//! coordinates of a Schnyder wood.

use super::{certify, params, Certificate, Options};
use crate::error::{Error, Result};
use crate::permutation::{Permutation, PermutationFamily};
use crate::triangulation::Triangulation;

/// A Schnyder wood of a triangulation with the coordinates it induces.
///
/// Outer vertices `a_1, a_2, a_3` are `outer()[0..3]`. Every inner vertex has
/// one parent per colour; following colour `i` ends at `a_i`. Coordinate `i`
/// of an inner vertex counts the inner faces in the region cut out by its
/// other two paths, opposite `a_i`; the three always sum to `2n - 5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchnyderRealizer {
    /// Vertices in canonical order, starting `a_1, a_2` and ending `a_3`.
    pub canonical_order: Vec<usize>,
    pub parent: Vec<[Option<usize>; 3]>,
    pub coords: Vec<[usize; 3]>,
}

impl SchnyderRealizer {
    /// Some colour `i` such that every endpoint of one edge has a smaller
    /// coordinate `i` than every endpoint of the other.
    pub fn separating_coordinate(&self, e: [usize; 2], f: [usize; 2]) -> Option<usize> {
        (0..3).find(|&i| {
            let (lo_e, hi_e) = span(e.map(|v| self.coords[v][i]));
            let (lo_f, hi_f) = span(f.map(|v| self.coords[v][i]));
            hi_e < lo_f || hi_f < lo_e
        })
    }
}

fn span([a, b]: [usize; 2]) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn broken(msg: impl Into<String>) -> Error {
    Error::InvalidTriangulation(msg.into())
}

/// Canonical order by peeling from `a_3`, with the wood read off the peeling:
/// a removed vertex points to its two boundary neighbours (colours 1 and 2)
/// and the vertices it exposes point to it (colour 3).
fn peel(tri: &Triangulation) -> Result<(Vec<usize>, Vec<[Option<usize>; 3]>)> {
    let n = tri.n();
    let [a1, a2, a3] = tri.outer();
    let mut parent = vec![[None; 3]; n];
    let mut removed = vec![false; n];
    let mut cnt = vec![0usize; n];
    let mut path = vec![a1, a3, a2];
    for &v in &path {
        for &w in tri.rotation(v) {
            cnt[w] += 1;
        }
    }
    let mut removal = Vec::with_capacity(n);
    while path.len() > 2 {
        let i = (1..path.len() - 1)
            .find(|&i| cnt[path[i]] == 2)
            .ok_or_else(|| broken("no removable boundary vertex"))?;
        let (v, left, right) = (path[i], path[i - 1], path[i + 1]);
        let walk = |next: &dyn Fn(usize) -> usize| {
            let mut arc = Vec::new();
            let mut cur = next(left);
            while cur != right {
                arc.push(cur);
                cur = next(cur);
            }
            arc
        };
        let fwd = walk(&|u| tri.succ(v, u));
        let back = walk(&|u| tri.pred(v, u));
        let clean = |arc: &[usize]| arc.iter().all(|&u| !removed[u]);
        let arc = match (clean(&fwd), clean(&back)) {
            (true, true) if fwd.is_empty() => back,
            (true, _) => fwd,
            (false, true) => back,
            (false, false) => return Err(broken(format!("vertex {} has no exposed side", v + 1))),
        };
        if v != a3 {
            parent[v][0] = Some(left);
            parent[v][1] = Some(right);
        }
        removed[v] = true;
        for &w in tri.rotation(v) {
            cnt[w] -= 1;
        }
        for &u in &arc {
            parent[u][2] = Some(v);
            for &w in tri.rotation(u) {
                cnt[w] += 1;
            }
        }
        path.splice(i..=i, arc);
        removal.push(v);
    }
    removal.extend([a2, a1]);
    removal.reverse();
    Ok((removal, parent))
}

/// Face-count coordinates from a Schnyder wood by flood-filling the inner
/// faces between each vertex's three paths.
fn coordinates(tri: &Triangulation, parent: &[[Option<usize>; 3]]) -> Result<Vec<[usize; 3]>> {
    let n = tri.n();
    let outer = tri.outer();
    let faces = tri.faces();
    let face_of = |x: usize, y: usize| -> usize {
        let z = tri.succ(x, y);
        let f = [x, y, z];
        let s = (0..3).min_by_key(|&k| f[k]).expect("three vertices");
        let key = [f[s], f[(s + 1) % 3], f[(s + 2) % 3]];
        faces.binary_search(&key).expect("every dart lies on a listed face")
    };
    let outer_face = if tri.succ(outer[0], outer[1]) == outer[2] {
        face_of(outer[0], outer[1])
    } else {
        face_of(outer[1], outer[0])
    };
    let inner_faces = 2 * n - 5;
    let mut coords = vec![[0usize; 3]; n];
    for (i, &a) in outer.iter().enumerate() {
        coords[a][i] = inner_faces;
    }
    let mut wall = std::collections::HashSet::new();
    let mut seen = vec![false; faces.len()];
    for v in (0..n).filter(|v| !outer.contains(v)) {
        wall.clear();
        for c in 0..3 {
            let mut u = v;
            while let Some(p) = parent[u][c] {
                wall.insert((u.min(p), u.max(p)));
                u = p;
            }
            if u != outer[c] {
                return Err(broken(format!("colour {} path from {} misses its root", c + 1, v + 1)));
            }
        }
        for i in 0..3 {
            let (b, c) = (outer[(i + 1) % 3], outer[(i + 2) % 3]);
            let seed = [face_of(b, c), face_of(c, b)]
                .into_iter()
                .find(|&f| f != outer_face)
                .expect("an outer edge borders one inner face");
            seen.iter_mut().for_each(|s| *s = false);
            seen[seed] = true;
            let mut stack = vec![seed];
            let mut count = 0;
            while let Some(f) = stack.pop() {
                count += 1;
                let t = faces[f];
                for k in 0..3 {
                    let (x, y) = (t[k], t[(k + 1) % 3]);
                    if wall.contains(&(x.min(y), x.max(y))) || is_outer_edge(&outer, x, y) {
                        continue;
                    }
                    let g = face_of(y, x);
                    if g != outer_face && !seen[g] {
                        seen[g] = true;
                        stack.push(g);
                    }
                }
            }
            coords[v][i] = count;
        }
        if coords[v].iter().sum::<usize>() != inner_faces {
            return Err(broken(format!("regions of {} do not tile the inner faces", v + 1)));
        }
    }
    Ok(coords)
}

fn is_outer_edge(outer: &[usize; 3], x: usize, y: usize) -> bool {
    outer.contains(&x) && outer.contains(&y)
}

/// Schnyder wood by canonical ordering, with its face-count coordinates.
pub fn schnyder_coordinates(tri: &Triangulation) -> Result<SchnyderRealizer> {
    let (canonical_order, parent) = peel(tri)?;
    let coords = coordinates(tri, &parent)?;
    Ok(SchnyderRealizer {
        canonical_order,
        parent,
        coords,
    })
}

/// Three permutations, one per coordinate, each sorting by coordinate `i`,
/// then coordinate `i + 1`, then vertex index. Sorting by the third
/// coordinate is sorting by `x + y` reversed in the drawing plane.
pub fn schnyder_family(tri: &Triangulation, opts: &Options) -> Result<Certificate> {
    let real = schnyder_coordinates(tri)?;
    let n = tri.n();
    let perms = (0..3)
        .map(|i| Permutation::sorted_by_key(n, |v| (real.coords[v][i], real.coords[v][(i + 1) % 3])))
        .collect();
    let family = PermutationFamily::new(n, perms)?;
    let pars = params([("inner_faces", (2 * n - 5) as f64)]);
    certify(&tri.graph(), family, "planar", 3.0, true, pars, opts)
}
