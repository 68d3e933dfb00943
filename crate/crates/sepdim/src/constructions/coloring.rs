//! Families from acyclic and star colourings: any two colour classes induce
//! a forest (two permutations) or a star forest (one permutation), and the
//! classes are combined as a vertex partition.

use serde::{Deserialize, Serialize};

use super::forests::{find_cycle, find_non_star, forest_family, star_forest_family};
use super::partition::combine_partition;
use super::{certify, params, Certificate, Options};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// What any two colour classes must induce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoringMode {
    /// A forest.
    Acyclic,
    /// A star forest.
    Star,
}

fn classes(colouring: &[usize]) -> Vec<Vec<usize>> {
    let k = colouring.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut out = vec![Vec::new(); k];
    for (v, &c) in colouring.iter().enumerate() {
        out[c].push(v);
    }
    out
}

fn show(vs: &[usize]) -> String {
    let v: Vec<String> = vs.iter().map(|x| (x + 1).to_string()).collect();
    v.join(",")
}

/// Checks that `colouring` is proper and that every two classes induce what
/// `mode` requires, reporting a monochromatic edge, a two-coloured cycle or
/// a two-coloured non-star component.
pub fn check_coloring(g: &Hypergraph, colouring: &[usize], mode: ColoringMode) -> Result<()> {
    g.require_graph()?;
    if colouring.len() != g.n() {
        return Err(Error::GroundSetMismatch {
            expected: g.n(),
            found: colouring.len(),
        });
    }
    if let Some(e) = g.edges().iter().find(|e| colouring[e[0]] == colouring[e[1]]) {
        return Err(Error::InvalidColoring(format!(
            "edge {{{}}} is monochromatic",
            show(e)
        )));
    }
    let cls = classes(colouring);
    for a in 0..cls.len() {
        for b in a + 1..cls.len() {
            if let Some(bad) = pair_violation(g, &cls[a], &cls[b], mode) {
                return Err(Error::InvalidColoring(format!(
                    "colours {} and {} induce {}",
                    a + 1,
                    b + 1,
                    bad
                )));
            }
        }
    }
    Ok(())
}

fn pair_violation(g: &Hypergraph, a: &[usize], b: &[usize], mode: ColoringMode) -> Option<String> {
    let verts: Vec<usize> = a.iter().chain(b).copied().collect();
    let sub = g.induced(&verts);
    let global = |local: Vec<usize>| -> Vec<usize> { local.into_iter().map(|i| verts[i]).collect() };
    match mode {
        ColoringMode::Acyclic => find_cycle(&sub).map(|c| format!("cycle {}", show(&global(c)))),
        ColoringMode::Star => find_non_star(&sub).map(|c| format!("non-star component {{{}}}", show(&global(c)))),
    }
}

fn greedy(g: &Hypergraph, mode: ColoringMode) -> Result<Vec<usize>> {
    g.require_graph()?;
    let adj = g.adjacency();
    let n = g.n();
    let mut colour = vec![usize::MAX; n];
    for v in 0..n {
        let mut c = 0;
        loop {
            if adj[v].iter().all(|&w| colour[w] != c) {
                colour[v] = c;
                if fits(g, &colour, v, mode) {
                    break;
                }
            }
            c += 1;
        }
    }
    Ok(colour)
}

/// Whether the classes of `v` and of each neighbour colour still induce what
/// `mode` requires, counting only coloured vertices.
fn fits(g: &Hypergraph, colour: &[usize], v: usize, mode: ColoringMode) -> bool {
    let c = colour[v];
    let adj = g.adjacency();
    let mut others: Vec<usize> = adj[v].iter().map(|&w| colour[w]).filter(|&d| d != usize::MAX).collect();
    others.sort_unstable();
    others.dedup();
    others.into_iter().all(|d| {
        let a: Vec<usize> = (0..g.n()).filter(|&u| colour[u] == c).collect();
        let b: Vec<usize> = (0..g.n()).filter(|&u| colour[u] == d).collect();
        pair_violation(g, &a, &b, mode).is_none()
    })
}

/// Greedy acyclic colouring in index order: each vertex takes the least
/// colour that keeps the colouring proper and every two classes acyclic.
pub fn greedy_acyclic_coloring(g: &Hypergraph) -> Result<Vec<usize>> {
    greedy(g, ColoringMode::Acyclic)
}

/// Greedy star colouring in index order.
pub fn greedy_star_coloring(g: &Hypergraph) -> Result<Vec<usize>> {
    greedy(g, ColoringMode::Star)
}

/// `2χ + 13.68 log χ` for acyclic colourings, `χ + 13.68 log χ` for star
/// colourings.
pub fn coloring_bound(colours: usize, mode: ColoringMode) -> f64 {
    let per = match mode {
        ColoringMode::Acyclic => 2.0,
        ColoringMode::Star => 1.0,
    };
    per * colours as f64 + 13.68 * (colours.max(1) as f64).log2()
}

/// Combines the colour classes with forest (acyclic mode) or star-forest
/// (star mode) sub-families. The colouring is checked first.
pub fn construct_coloring(
    g: &Hypergraph,
    colouring: &[usize],
    mode: ColoringMode,
    opts: &Options,
) -> Result<Certificate> {
    check_coloring(g, colouring, mode)?;
    let parts = classes(colouring);
    let colours = parts.iter().filter(|p| !p.is_empty()).count();
    let out = match mode {
        ColoringMode::Acyclic => combine_partition(g, &parts, forest_family, opts)?,
        ColoringMode::Star => combine_partition(g, &parts, star_forest_family, opts)?,
    };
    let pars = params([
        ("colours", colours as f64),
        ("block_family_size", out.block_family_size as f64),
    ]);
    let method = match mode {
        ColoringMode::Acyclic => "coloring-acyclic",
        ColoringMode::Star => "coloring-star",
    };
    certify(g, out.family, method, coloring_bound(colours, mode), true, pars, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec};

    #[test]
    fn star_forest_with_one_class_pattern() {
        let g = Hypergraph::graph(7, &[(0, 1), (0, 2), (0, 3), (4, 5), (4, 6)]).unwrap();
        let colouring = vec![0, 1, 1, 1, 0, 1, 1];
        let c = construct_coloring(&g, &colouring, ColoringMode::Star, &Options::default()).unwrap();
        assert_eq!(c.size(), 1);
    }

    #[test]
    fn forest_as_two_classes_uses_two() {
        let g = generate(&GeneratorSpec::Path { n: 7 }).unwrap();
        let colouring: Vec<usize> = (0..7).map(|v| v % 2).collect();
        let c = construct_coloring(&g, &colouring, ColoringMode::Acyclic, &Options::default()).unwrap();
        assert_eq!(c.size(), 2);
    }

    #[test]
    fn outerplanar_with_three_colours() {
        // A fan: path 1..6 plus a hub adjacent to all of it.
        let mut pairs: Vec<(usize, usize)> = (1..6).map(|i| (i, i + 1)).collect();
        pairs.extend((1..7).map(|i| (0, i)));
        let g = Hypergraph::graph(7, &pairs).unwrap();
        let colouring = vec![0, 1, 2, 1, 2, 1, 2];
        check_coloring(&g, &colouring, ColoringMode::Acyclic).unwrap();
        let c = construct_coloring(&g, &colouring, ColoringMode::Acyclic, &Options::with_seed(1)).unwrap();
        assert!(c.size() as f64 <= 2.0 * 3.0 + 13.68 * 3f64.log2());
    }

    #[test]
    fn bad_colourings_carry_witnesses() {
        let c4 = generate(&GeneratorSpec::Cycle { n: 4 }).unwrap();
        let err = check_coloring(&c4, &[0, 1, 0, 1], ColoringMode::Acyclic).unwrap_err();
        assert!(err.to_string().contains("cycle"));
        let p4 = generate(&GeneratorSpec::Path { n: 4 }).unwrap();
        let err = check_coloring(&p4, &[0, 1, 0, 1], ColoringMode::Star).unwrap_err();
        assert!(err.to_string().contains("non-star"));
        let err = check_coloring(&p4, &[0, 0, 1, 2], ColoringMode::Star).unwrap_err();
        assert!(err.to_string().contains("monochromatic"));
    }

    #[test]
    fn greedy_colourings_pass_their_checks() {
        for spec in [
            GeneratorSpec::Grid { rows: 4, cols: 4 },
            GeneratorSpec::Clique { n: 5 },
            GeneratorSpec::Gnp { n: 16, p: 0.25, seed: 3 },
        ] {
            let g = generate(&spec).unwrap();
            check_coloring(&g, &greedy_acyclic_coloring(&g).unwrap(), ColoringMode::Acyclic).unwrap();
            check_coloring(&g, &greedy_star_coloring(&g).unwrap(), ColoringMode::Star).unwrap();
        }
    }
}
