//! Lower-bound certificates, closed-form bound formulas and the bracketing
//! report. All logarithms are base 2.

mod report;

pub use report::{bound_report, BoundEntry, BoundKind, BoundReport, ReportOptions, Skipped, FLAG_ADVISORY};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Slack applied before rounding a real lower bound up to an integer.
pub const CERT_TOL: f64 = 1e-9;

/// Node budget for the subset search in [`check_bipartition_certificate`].
pub const SUBSET_NODE_BUDGET: u64 = 1_000_000;

/// Integer lower bound implied by a real one: `⌈x − CERT_TOL⌉`, never
/// negative.
pub fn integer_lower_bound(x: f64) -> usize {
    if x.is_nan() || x <= 0.0 {
        0
    } else {
        (x - CERT_TOL).ceil().max(0.0) as usize
    }
}

/// Two disjoint vertex sets with subset sizes. Valid when every
/// `s1`-subset of `v1` and every `s2`-subset of `v2` are joined by an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionCertificate {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub s1: usize,
    pub s2: usize,
}

/// Two subsets with no edge between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingEdgeWitness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub valid: bool,
    /// `min(log(|V1|/s1), log(|V2|/s2))` when valid, 0 otherwise.
    pub bound: f64,
    pub witness: Option<MissingEdgeWitness>,
}

impl BipartitionCertificate {
    fn validate(&self, n: usize) -> Result<()> {
        if self.v1.is_empty() || self.v2.is_empty() {
            return Err(Error::OverlappingSets);
        }
        let mut seen = vec![false; n];
        for &v in self.v1.iter().chain(&self.v2) {
            if v >= n {
                return Err(Error::param("certificate", format!("vertex {} out of range", v + 1)));
            }
            if seen[v] {
                return Err(Error::OverlappingSets);
            }
            seen[v] = true;
        }
        if self.s1 == 0 || self.s1 > self.v1.len() {
            return Err(Error::param("s1", format!("must lie in 1..={}", self.v1.len())));
        }
        if self.s2 == 0 || self.s2 > self.v2.len() {
            return Err(Error::param("s2", format!("must lie in 1..={}", self.v2.len())));
        }
        Ok(())
    }

    /// The bound the certificate yields when valid.
    pub fn value(&self) -> f64 {
        let a = (self.v1.len() as f64 / self.s1 as f64).log2();
        let b = (self.v2.len() as f64 / self.s2 as f64).log2();
        a.min(b)
    }
}

type Bits = Vec<u64>;

fn bits(n: usize) -> Bits {
    vec![0; n.div_ceil(64).max(1)]
}

fn count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn members(b: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &w) in b.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(i * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

/// Brute-force check: searches for an `s1`-subset `A` of `V1` whose common
/// non-neighbourhood in `V2` still has `s2` vertices, pruning as soon as it
/// shrinks below `s2`.
pub fn check_bipartition_certificate(
    g: &Hypergraph,
    cert: &BipartitionCertificate,
) -> Result<CertificateCheck> {
    g.require_graph()?;
    cert.validate(g.n())?;
    let n = g.n();
    // Enumerate subsets of the side whose non-neighbourhood is tested on the
    // other; pick the orientation with fewer subsets.
    let swap = binomial(cert.v2.len(), cert.s2) < binomial(cert.v1.len(), cert.s1);
    let (side, s, other, t) = if swap {
        (&cert.v2, cert.s2, &cert.v1, cert.s1)
    } else {
        (&cert.v1, cert.s1, &cert.v2, cert.s2)
    };
    let mut non = vec![bits(n); n];
    let adj = g.adjacency_matrix();
    for &a in side {
        for &b in other {
            if !adj[a][b] {
                non[a][b / 64] |= 1 << (b % 64);
            }
        }
    }
    let mut all = bits(n);
    for &b in other {
        all[b / 64] |= 1 << (b % 64);
    }
    let mut nodes = 0u64;
    let mut chosen = Vec::new();
    let found = search_subset(side, s, t, &non, &all, 0, &mut chosen, &mut nodes)?;
    Ok(match found {
        Some((a, rest)) => {
            let b: Vec<usize> = members(&rest).into_iter().take(t).collect();
            let (a, b) = if swap { (b, a) } else { (a, b) };
            CertificateCheck {
                valid: false,
                bound: 0.0,
                witness: Some(MissingEdgeWitness { a, b }),
            }
        }
        None => CertificateCheck {
            valid: true,
            bound: cert.value(),
            witness: None,
        },
    })
}

#[allow(clippy::too_many_arguments)]
fn search_subset(
    side: &[usize],
    s: usize,
    t: usize,
    non: &[Bits],
    common: &Bits,
    from: usize,
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
) -> Result<Option<(Vec<usize>, Bits)>> {
    *nodes += 1;
    if *nodes > SUBSET_NODE_BUDGET {
        return Err(Error::TooLarge(format!(
            "certificate search exceeded {SUBSET_NODE_BUDGET} nodes"
        )));
    }
    if chosen.len() == s {
        return Ok(Some((chosen.clone(), common.clone())));
    }
    let need = s - chosen.len();
    for i in from..side.len() {
        if side.len() - i < need {
            break;
        }
        let v = side[i];
        let next: Bits = common.iter().zip(&non[v]).map(|(a, b)| a & b).collect();
        if count(&next) < t {
            continue;
        }
        chosen.push(v);
        let r = search_subset(side, s, t, non, &next, i + 1, chosen, nodes)?;
        chosen.pop();
        if r.is_some() {
            return Ok(r);
        }
    }
    Ok(None)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}

/// A maximum clique, by branch and bound with greedy colouring bounds.
/// Limited to 64 vertices.
pub fn max_clique(g: &Hypergraph) -> Result<Vec<usize>> {
    g.require_graph()?;
    let n = g.n();
    if n > 64 {
        return Err(Error::TooLarge(format!("max clique limited to 64 vertices, got {n}")));
    }
    let mut adj = vec![0u64; n];
    for e in g.edges() {
        adj[e[0]] |= 1 << e[1];
        adj[e[1]] |= 1 << e[0];
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0u64;
    expand(&adj, 0, all, &mut best);
    Ok((0..n).filter(|&v| best >> v & 1 == 1).collect())
}

fn expand(adj: &[u64], current: u64, mut cand: u64, best: &mut u64) {
    let size = current.count_ones();
    // Greedy colouring of the candidates gives an upper bound per vertex.
    let mut order = Vec::new();
    let mut colour_of = Vec::new();
    let mut uncoloured = cand;
    let mut colour = 0;
    while uncoloured != 0 {
        colour += 1;
        let mut avail = uncoloured;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !adj[v];
            uncoloured &= !(1 << v);
            order.push(v);
            colour_of.push(colour);
        }
    }
    for i in (0..order.len()).rev() {
        if size + colour_of[i] <= best.count_ones() {
            return;
        }
        let v = order[i];
        let next = current | 1 << v;
        let sub = cand & adj[v];
        if sub == 0 {
            if next.count_ones() > best.count_ones() {
                *best = next;
            }
        } else {
            expand(adj, next, sub, best);
        }
        cand &= !(1 << v);
    }
}

/// The clique number with the certificate that yields `log⌊ω/2⌋`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliqueBound {
    pub omega: usize,
    pub clique: Vec<usize>,
    /// Balanced split of the clique; absent when `ω < 2`.
    pub certificate: Option<BipartitionCertificate>,
    pub bound: f64,
}

/// `π(g) ≥ log⌊ω/2⌋`, derived by validating the balanced split of a
/// maximum clique as a bipartition certificate.
pub fn clique_lower_bound(g: &Hypergraph) -> Result<CliqueBound> {
    let clique = max_clique(g)?;
    let omega = clique.len();
    let half = omega / 2;
    if half == 0 {
        return Ok(CliqueBound {
            omega,
            clique,
            certificate: None,
            bound: 0.0,
        });
    }
    let cert = BipartitionCertificate {
        v1: clique[..half].to_vec(),
        v2: clique[half..2 * half].to_vec(),
        s1: 1,
        s2: 1,
    };
    let check = check_bipartition_certificate(g, &cert)?;
    if !check.valid {
        return Err(Error::Verification("clique split is not a valid certificate".into()));
    }
    Ok(CliqueBound {
        omega,
        clique,
        certificate: Some(cert),
        bound: check.bound,
    })
}

/// A closed-form value with the caveats attached to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub value: f64,
    pub flags: Vec<String>,
}

pub const FLAG_ASYMPTOTIC: &str = "asymptotic";
pub const FLAG_CLAMPED: &str = "clamped";
pub const FLAG_OUT_OF_REGIME: &str = "out-of-regime";

/// `log(np) − log log(np) − 2.5`, clamped below at 0. Holds asymptotically
/// almost surely for `G(n, p)`; not a per-instance certificate.
pub fn random_graph_bound(n: usize, p: f64) -> Result<FormulaValue> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::param("p", format!("must lie in (0, 1], got {p}")));
    }
    let mut flags = vec![FLAG_ASYMPTOTIC.to_string()];
    let d = (n as f64 * p).log2();
    let raw = if d > 0.0 { d - d.log2() - 2.5 } else { f64::NEG_INFINITY };
    let value = if raw > 0.0 {
        raw
    } else {
        flags.push(FLAG_CLAMPED.to_string());
        0.0
    };
    Ok(FormulaValue { value, flags })
}

/// The certificate used in the random-graph argument: a random balanced split
/// with `s = ⌈2 ln(np) / p⌉` on both sides (capped at the side sizes).
pub fn random_graph_certificate(g: &Hypergraph, p: f64, seed: u64) -> Result<BipartitionCertificate> {
    g.require_graph()?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::param("p", format!("must lie in (0, 1], got {p}")));
    }
    let n = g.n();
    if n < 2 {
        return Err(Error::param("n", "need at least 2 vertices"));
    }
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let half = n / 2;
    let mut v1 = vs[..half].to_vec();
    let mut v2 = vs[half..2 * half].to_vec();
    v1.sort_unstable();
    v2.sort_unstable();
    let s = ((2.0 * (n as f64 * p).ln() / p).ceil().max(1.0) as usize).min(half);
    Ok(BipartitionCertificate { v1, v2, s1: s, s2: s })
}

pub const HYPERGRAPH_C1: f64 = 1.0 / 128.0;

/// `e ln 2 / (π √2)`.
pub fn hypergraph_c2() -> f64 {
    std::f64::consts::E * std::f64::consts::LN_2 / (std::f64::consts::PI * std::f64::consts::SQRT_2)
}

/// Lower and upper formula values for the complete `r`-uniform hypergraph,
/// valid once `n` is sufficiently larger than `r`.
pub fn hypergraph_clique_bounds(n: usize, r: usize) -> Result<(FormulaValue, FormulaValue)> {
    if r <= 2 {
        return Err(Error::param("r", format!("must exceed 2, got {r}")));
    }
    if n <= r {
        return Err(Error::param("n", format!("must exceed r = {r}, got {n}")));
    }
    let logn = (n as f64).log2();
    let four = 4f64.powi(r as i32);
    let mut flags = vec![FLAG_ASYMPTOTIC.to_string()];
    // A rough marker for "n sufficiently larger than r".
    if logn < four {
        flags.push(FLAG_OUT_OF_REGIME.to_string());
    }
    let lower = HYPERGRAPH_C1 * four / ((r - 2) as f64).sqrt() * logn;
    let upper = hypergraph_c2() * four * (r as f64).sqrt() * logn;
    Ok((
        FormulaValue {
            value: lower,
            flags: flags.clone(),
        },
        FormulaValue { value: upper, flags },
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubdividedCliqueBounds {
    /// `½⌊log log(n−1)⌋`.
    pub lower: f64,
    /// Integer certificate: `⌊lower⌋`.
    pub lower_certificate: usize,
    /// `log log(n−1) + ½ log log log(n−1) + 2`, terms with nonpositive
    /// arguments dropped.
    pub upper: FormulaValue,
}

fn lg_pos(x: f64) -> Option<f64> {
    (x > 0.0).then(|| x.log2())
}

pub fn subdivided_clique_bounds(n: usize) -> Result<SubdividedCliqueBounds> {
    if n < 3 {
        return Err(Error::param("n", format!("must be at least 3, got {n}")));
    }
    let m = (n - 1) as f64;
    let ll = lg_pos(m.log2()).unwrap_or(0.0);
    let lower = 0.5 * ll.max(0.0).floor();
    let mut flags = vec![FLAG_ASYMPTOTIC.to_string()];
    let lll = match lg_pos(ll) {
        Some(x) => x,
        None => {
            flags.push(FLAG_CLAMPED.to_string());
            0.0
        }
    };
    let upper = ll.max(0.0) + 0.5 * lll + 2.0;
    Ok(SubdividedCliqueBounds {
        lower,
        lower_certificate: lower.floor() as usize,
        upper: FormulaValue { value: upper, flags },
    })
}
