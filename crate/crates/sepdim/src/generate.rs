//! Standard instance families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// A named instance family with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Clique { n: usize },
    CompleteBipartite { m: usize, n: usize },
    CompleteUniform { n: usize, r: usize },
    Hypercube { d: usize },
    Grid { rows: usize, cols: usize },
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    Empty { n: usize },
    Gnp { n: usize, p: f64, seed: u64 },
    SubdividedClique { n: usize },
    Subdivided { base: Box<GeneratorSpec> },
    DoubleGrid { n: usize },
}

fn at_least(field: &'static str, value: usize, min: usize) -> Result<()> {
    if value < min {
        Err(Error::param(field, format!("must be at least {min}, got {value}")))
    } else {
        Ok(())
    }
}

fn at_most(field: &'static str, value: usize, max: usize) -> Result<()> {
    if value > max {
        Err(Error::param(field, format!("must be at most {max}, got {value}")))
    } else {
        Ok(())
    }
}

impl GeneratorSpec {
    /// Short instance name used in reports, e.g. `K8`, `grid3x3`.
    pub fn name(&self) -> String {
        match self {
            GeneratorSpec::Clique { n } => format!("K{n}"),
            GeneratorSpec::CompleteBipartite { m, n } => format!("K{m},{n}"),
            GeneratorSpec::CompleteUniform { n, r } => format!("K{n}^{r}"),
            GeneratorSpec::Hypercube { d } => format!("Q{d}"),
            GeneratorSpec::Grid { rows, cols } => format!("grid{rows}x{cols}"),
            GeneratorSpec::Path { n } => format!("P{n}"),
            GeneratorSpec::Cycle { n } => format!("C{n}"),
            GeneratorSpec::Star { leaves } => format!("S{leaves}"),
            GeneratorSpec::Empty { n } => format!("E{n}"),
            GeneratorSpec::Gnp { n, p, seed } => format!("G({n},{p},{seed})"),
            GeneratorSpec::SubdividedClique { n } => format!("K{n}^1/2"),
            GeneratorSpec::Subdivided { base } => format!("({})^1/2", base.name()),
            GeneratorSpec::DoubleGrid { n } => format!("doublegrid{n}"),
        }
    }
}

/// Generates the instance described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<Hypergraph> {
    match *spec {
        GeneratorSpec::Clique { n } => {
            at_least("n", n, 1)?;
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    pairs.push((u, v));
                }
            }
            Hypergraph::graph(n, &pairs)
        }
        GeneratorSpec::CompleteBipartite { m, n } => {
            at_least("m", m, 1)?;
            at_least("n", n, 1)?;
            let mut pairs = Vec::new();
            for u in 0..m {
                for v in 0..n {
                    pairs.push((u, m + v));
                }
            }
            Hypergraph::graph(m + n, &pairs)
        }
        GeneratorSpec::CompleteUniform { n, r } => {
            at_least("n", n, 1)?;
            at_least("r", r, 1)?;
            at_most("r", r, n)?;
            Hypergraph::new(n, k_subsets(n, r))
        }
        GeneratorSpec::Hypercube { d } => {
            at_least("d", d, 1)?;
            at_most("d", d, 20)?;
            let n = 1usize << d;
            let mut pairs = Vec::new();
            for v in 0..n {
                for i in 0..d {
                    let w = v ^ (1 << i);
                    if v < w {
                        pairs.push((v, w));
                    }
                }
            }
            Hypergraph::graph(n, &pairs)
        }
        GeneratorSpec::Grid { rows, cols } => {
            at_least("rows", rows, 1)?;
            at_least("cols", cols, 1)?;
            Hypergraph::graph(rows * cols, &grid_pairs(rows, cols, 0))
        }
        GeneratorSpec::Path { n } => {
            at_least("n", n, 1)?;
            let pairs: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            Hypergraph::graph(n, &pairs)
        }
        GeneratorSpec::Cycle { n } => {
            at_least("n", n, 3)?;
            let pairs: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
            Hypergraph::graph(n, &pairs)
        }
        GeneratorSpec::Star { leaves } => {
            at_least("leaves", leaves, 1)?;
            let pairs: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
            Hypergraph::graph(leaves + 1, &pairs)
        }
        GeneratorSpec::Empty { n } => {
            at_least("n", n, 1)?;
            Hypergraph::new(n, Vec::new())
        }
        GeneratorSpec::Gnp { n, p, seed } => {
            at_least("n", n, 1)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::param("p", format!("must lie in [0, 1], got {p}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        pairs.push((u, v));
                    }
                }
            }
            Hypergraph::graph(n, &pairs)
        }
        GeneratorSpec::SubdividedClique { n } => {
            at_least("n", n, 1)?;
            subdivide(&generate(&GeneratorSpec::Clique { n })?)
        }
        GeneratorSpec::Subdivided { ref base } => subdivide(&generate(base)?),
        GeneratorSpec::DoubleGrid { n } => {
            at_least("n", n, 1)?;
            let layer = n * n;
            let mut pairs = grid_pairs(n, n, 0);
            pairs.extend(grid_pairs(n, n, layer));
            pairs.extend((0..layer).map(|v| (v, v + layer)));
            Hypergraph::graph(2 * layer, &pairs)
        }
    }
}

fn grid_pairs(rows: usize, cols: usize, offset: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = offset + r * cols + c;
            if c + 1 < cols {
                pairs.push((v, v + 1));
            }
            if r + 1 < rows {
                pairs.push((v, v + cols));
            }
        }
    }
    pairs
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - r + i {
                cur[i] += 1;
                for j in i + 1..r {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Replaces every edge `{u, v}` (the `i`-th) by the path `u, n + i, v`.
/// Original vertices keep their labels.
pub fn subdivide(g: &Hypergraph) -> Result<Hypergraph> {
    g.require_graph()?;
    let n = g.n();
    let mut pairs = Vec::with_capacity(2 * g.m());
    for (i, e) in g.edges().iter().enumerate() {
        pairs.push((e[0], n + i));
        pairs.push((e[1], n + i));
    }
    Hypergraph::graph(n + g.m(), &pairs)
}
