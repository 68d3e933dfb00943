//! Exact solvers for small instances: separation dimension, boxicity and
//! poset dimension. All three reduce to one slot search.

mod poset;
mod slots;

pub use poset::{canonical_interval_elements, canonical_interval_order, interval_order, Poset, Realizer};

use crate::bounds::max_clique;
use crate::boxbridge::IntervalRepresentation;
use crate::error::{Error, Result};
use crate::hypergraph::{disjoint_pairs, Hypergraph};
use crate::par::Exec;
use crate::permutation::{Permutation, PermutationFamily};
use crate::suitability::{verify_family, SuitabilityKind, Verdict};
use slots::{SearchControl, SlotProblem};

/// Decision procedure used for each candidate number of slots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    /// Backtracking over slot assignments with incremental cycle checks.
    Backtrack,
    /// CNF encoding handed to a CDCL solver.
    Sat,
    /// Backtracking up to a node limit per top-level branch, then CNF.
    #[default]
    Hybrid,
}

/// Per-branch node limit used by [`Engine::Hybrid`] when none is given.
pub const HYBRID_NODE_LIMIT: u64 = 50_000;

/// Size caps and scheduling for the exact solvers. Exceeding a cap is an
/// error, never an approximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of disjoint edge pairs for [`exact_pi`].
    pub max_pairs: usize,
    /// Maximum vertex count for [`exact_boxicity`].
    pub max_vertices: usize,
    /// Maximum number of critical pairs for [`exact_poset_dim`].
    pub max_critical_pairs: usize,
    pub engine: Engine,
    /// Cap on backtracking nodes per top-level branch.
    pub node_limit: Option<u64>,
    /// Report the witness of the lexicographically first successful
    /// top-level branch. When false, any successful branch may be reported.
    pub deterministic: bool,
    pub exec: Exec,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 64,
            max_vertices: 9,
            max_critical_pairs: 512,
            engine: Engine::default(),
            node_limit: None,
            deterministic: true,
            exec: Exec::default(),
        }
    }
}

impl Budget {
    fn control(&self) -> SearchControl {
        SearchControl {
            node_limit: self.node_limit,
            exec: self.exec,
            deterministic: self.deterministic,
        }
    }
}

/// π(h) with a family of exactly that size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiSolution {
    pub value: usize,
    pub family: PermutationFamily,
}

/// Boxicity with one interval representation per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxicitySolution {
    pub value: usize,
    pub representations: Vec<IntervalRepresentation>,
}

/// Poset dimension with a realizer of that size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionSolution {
    pub value: usize,
    pub realizer: Realizer,
}

fn too_large(what: String) -> Error {
    Error::TooLarge(what)
}

fn search(problem: &SlotProblem, k: usize, budget: &Budget) -> Result<Option<slots::Solution>> {
    match budget.engine {
        Engine::Backtrack => problem
            .solve(k, budget.control())
            .map_err(|_| too_large(format!("node limit reached while testing {k} slots"))),
        Engine::Sat => Ok(problem.solve_sat(k)),
        Engine::Hybrid => {
            let mut ctl = budget.control();
            ctl.node_limit = Some(budget.node_limit.unwrap_or(HYBRID_NODE_LIMIT));
            match problem.solve(k, ctl) {
                Ok(found) => Ok(found),
                Err(_) => Ok(problem.solve_sat(k)),
            }
        }
    }
}

/// Certified lower bound used to start the search: 1 when any disjoint pair
/// exists, raised by the clique certificate on graphs.
fn pi_start(h: &Hypergraph) -> usize {
    let mut lb = 1;
    if h.is_graph() && h.n() <= 64 {
        if let Ok(clique) = max_clique(h) {
            let half = clique.len() / 2;
            if half >= 2 {
                lb = lb.max((half as f64).log2().ceil() as usize);
            }
        }
    }
    lb
}

/// Separation dimension by iterative deepening on the number of slots.
///
/// Each disjoint pair goes to one slot with an orientation; orienting `e`
/// before `f` adds arcs from every vertex of `e` to every vertex of `f`, and a
/// slot is realizable by a permutation iff its digraph is acyclic.
pub fn exact_pi(h: &Hypergraph, budget: &Budget) -> Result<PiSolution> {
    let pairs = disjoint_pairs(h);
    if pairs.len() > budget.max_pairs {
        return Err(too_large(format!(
            "{} disjoint pairs exceed the budget of {}",
            pairs.len(),
            budget.max_pairs
        )));
    }
    if pairs.is_empty() {
        return Ok(PiSolution {
            value: 0,
            family: PermutationFamily::empty(h.n()),
        });
    }
    // Static tie-break: pairs touching many other pairs first.
    let mut touch = vec![0usize; h.n()];
    for p in &pairs {
        for &v in h.edge(p.e).iter().chain(h.edge(p.f)) {
            touch[v] += 1;
        }
    }
    let score = |p: &crate::hypergraph::DisjointPair| -> usize {
        h.edge(p.e).iter().chain(h.edge(p.f)).map(|&v| touch[v]).sum()
    };
    let mut ordered = pairs.clone();
    ordered.sort_by_key(|p| (std::cmp::Reverse(score(p)), *p));
    let items = ordered
        .iter()
        .map(|p| {
            let (e, f) = (h.edge(p.e).to_vec(), h.edge(p.f).to_vec());
            vec![(e.clone(), f.clone()), (f, e)]
        })
        .collect();
    let problem = SlotProblem::new(h.n(), &[], items, true);
    for k in pi_start(h)..=pairs.len() {
        if let Some(sol) = search(&problem, k, budget)? {
            let perms = sol
                .orders
                .into_iter()
                .map(Permutation::from_order)
                .collect::<Result<Vec<_>>>()?;
            let family = PermutationFamily::new(h.n(), perms)?;
            if let Verdict::Fail(v) = verify_family(h, &family, SuitabilityKind::PairwiseSuitable)? {
                return Err(Error::Verification(format!("exact witness fails: {v}")));
            }
            return Ok(PiSolution { value: k, family });
        }
    }
    unreachable!("one slot per pair always suffices")
}

/// Decides whether `h` has a pairwise-suitable family of `k` permutations.
pub fn pi_at_most(h: &Hypergraph, k: usize, budget: &Budget) -> Result<Option<PermutationFamily>> {
    let pairs = disjoint_pairs(h);
    if pairs.len() > budget.max_pairs {
        return Err(too_large(format!(
            "{} disjoint pairs exceed the budget of {}",
            pairs.len(),
            budget.max_pairs
        )));
    }
    let items = pairs
        .iter()
        .map(|p| {
            let (e, f) = (h.edge(p.e).to_vec(), h.edge(p.f).to_vec());
            vec![(e.clone(), f.clone()), (f, e)]
        })
        .collect();
    let problem = SlotProblem::new(h.n(), &[], items, true);
    Ok(search(&problem, k, budget)?.map(|sol| {
        let perms = sol
            .orders
            .into_iter()
            .map(|o| Permutation::from_order(o).expect("topological order"))
            .collect();
        PermutationFamily::new(h.n(), perms).expect("sizes match")
    }))
}

fn left(v: usize) -> usize {
    2 * v
}

fn right(v: usize) -> usize {
    2 * v + 1
}

/// Boxicity by search over interval supergraphs.
///
/// Each slot is a linear order of the `2n` interval endpoints. Every edge of
/// `g` forces its two intervals to meet (`l_u < r_v` and `l_v < r_u`) in all
/// slots; each non-edge goes to one slot where its intervals are disjoint in
/// one of two orders (`r_u < l_v` or `r_v < l_u`).
pub fn exact_boxicity(g: &Hypergraph, budget: &Budget) -> Result<BoxicitySolution> {
    g.require_graph()?;
    let n = g.n();
    if n > budget.max_vertices {
        return Err(too_large(format!(
            "{n} vertices exceed the cap of {}",
            budget.max_vertices
        )));
    }
    let adj = g.adjacency_matrix();
    let mut base = Vec::new();
    for v in 0..n {
        base.push((left(v), right(v)));
    }
    for e in g.edges() {
        let (u, v) = (e[0], e[1]);
        base.push((left(u), right(v)));
        base.push((left(v), right(u)));
    }
    let mut items = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !adj[u][v] {
                items.push(vec![
                    (vec![right(u)], vec![left(v)]),
                    (vec![right(v)], vec![left(u)]),
                ]);
            }
        }
    }
    if items.is_empty() {
        return Ok(BoxicitySolution {
            value: 0,
            representations: Vec::new(),
        });
    }
    let problem = SlotProblem::new(2 * n, &base, items, true);
    let max_k = problem.item_count();
    for k in 1..=max_k {
        if let Some(sol) = search(&problem, k, budget)? {
            let reps = sol
                .orders
                .iter()
                .map(|order| {
                    let mut pos = vec![0i64; 2 * n];
                    for (i, &p) in order.iter().enumerate() {
                        pos[p] = i as i64;
                    }
                    let pairs: Vec<(i64, i64)> =
                        (0..n).map(|v| (pos[left(v)], pos[right(v)])).collect();
                    IntervalRepresentation::from_integers(&pairs)
                })
                .collect::<Result<Vec<_>>>()?;
            if !crate::boxbridge::intersection_of(&reps, n)?.same_edges(g) {
                return Err(Error::Verification(
                    "boxicity witness does not reproduce the graph".into(),
                ));
            }
            return Ok(BoxicitySolution {
                value: k,
                representations: reps,
            });
        }
    }
    unreachable!("one slot per non-edge always suffices")
}

/// Interval recognition by exhaustive search; an oracle for the polynomial
/// recognizer.
pub fn interval_representation_by_search(g: &Hypergraph) -> Result<Option<IntervalRepresentation>> {
    let budget = Budget {
        max_vertices: usize::MAX,
        ..Budget::default()
    };
    let sol = exact_boxicity(g, &budget)?;
    Ok(match sol.value {
        0 => Some(IntervalRepresentation::from_integers(&vec![(0, 0); g.n()])?),
        1 => sol.representations.into_iter().next(),
        _ => None,
    })
}

/// Poset dimension by placing each critical pair `(x, y)` into a slot that
/// puts `y` before `x`; each slot extends the order acyclically.
pub fn exact_poset_dim(p: &Poset, budget: &Budget) -> Result<DimensionSolution> {
    if p.size() == 0 {
        return Ok(DimensionSolution {
            value: 0,
            realizer: Realizer {
                extensions: Vec::new(),
            },
        });
    }
    let critical = p.critical_pairs();
    if critical.len() > budget.max_critical_pairs {
        return Err(too_large(format!(
            "{} critical pairs exceed the budget of {}",
            critical.len(),
            budget.max_critical_pairs
        )));
    }
    let items: Vec<_> = critical
        .iter()
        .map(|&(x, y)| vec![(vec![y], vec![x])])
        .collect();
    let problem = SlotProblem::new(p.size(), &p.relations(), items, false);
    let start = if critical.is_empty() { 1 } else { 2 };
    for k in start..=critical.len().max(1) {
        if let Some(sol) = search(&problem, k, budget)? {
            let extensions = sol
                .orders
                .into_iter()
                .map(Permutation::from_order)
                .collect::<Result<Vec<_>>>()?;
            let realizer = Realizer { extensions };
            realizer.check(p)?;
            return Ok(DimensionSolution { value: k, realizer });
        }
    }
    unreachable!("one slot per critical pair always suffices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec};
    use crate::hypergraph::line_graph;

    fn g(spec: GeneratorSpec) -> Hypergraph {
        generate(&spec).unwrap()
    }

    #[test]
    fn named_values() {
        let b = Budget::default();
        assert_eq!(exact_pi(&g(GeneratorSpec::Clique { n: 4 }), &b).unwrap().value, 3);
        assert_eq!(exact_pi(&g(GeneratorSpec::Clique { n: 3 }), &b).unwrap().value, 0);
        assert_eq!(exact_pi(&g(GeneratorSpec::Star { leaves: 5 }), &b).unwrap().value, 0);
        assert_eq!(exact_pi(&g(GeneratorSpec::Path { n: 4 }), &b).unwrap().value, 1);
    }

    #[test]
    fn boxicity_values() {
        let b = Budget::default();
        assert_eq!(exact_boxicity(&g(GeneratorSpec::Clique { n: 5 }), &b).unwrap().value, 0);
        assert_eq!(exact_boxicity(&g(GeneratorSpec::Cycle { n: 4 }), &b).unwrap().value, 2);
        assert_eq!(exact_boxicity(&g(GeneratorSpec::Path { n: 5 }), &b).unwrap().value, 1);
        // Complement of a perfect matching on 6 vertices has boxicity 3.
        let mut pairs = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                if v != u + 3 {
                    pairs.push((u, v));
                }
            }
        }
        let cocktail = Hypergraph::graph(6, &pairs).unwrap();
        assert_eq!(exact_boxicity(&cocktail, &b).unwrap().value, 3);
    }

    #[test]
    fn line_graph_identity_on_k4() {
        let k4 = g(GeneratorSpec::Clique { n: 4 });
        let b = Budget::default();
        assert_eq!(
            exact_pi(&k4, &b).unwrap().value,
            exact_boxicity(&line_graph(&k4), &b).unwrap().value
        );
    }

    #[test]
    fn budgets_are_enforced() {
        let tight = Budget {
            max_pairs: 2,
            max_vertices: 3,
            ..Budget::default()
        };
        assert!(matches!(
            exact_pi(&g(GeneratorSpec::Clique { n: 4 }), &tight),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            exact_boxicity(&g(GeneratorSpec::Cycle { n: 4 }), &tight),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn poset_dimension_basics() {
        let b = Budget::default();
        let chain = Poset::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(exact_poset_dim(&chain, &b).unwrap().value, 1);
        let antichain = Poset::new(3, &[]).unwrap();
        assert_eq!(exact_poset_dim(&antichain, &b).unwrap().value, 2);
        let single = Poset::new(1, &[]).unwrap();
        assert_eq!(exact_poset_dim(&single, &b).unwrap().value, 1);
        // Standard example S_3: a_i < b_j for i != j has dimension 3.
        let mut rel = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    rel.push((i, 3 + j));
                }
            }
        }
        let s3 = Poset::new(6, &rel).unwrap();
        assert_eq!(exact_poset_dim(&s3, &b).unwrap().value, 3);
    }

    #[test]
    fn interval_search_agrees_on_small_cases() {
        assert!(interval_representation_by_search(&g(GeneratorSpec::Path { n: 4 }))
            .unwrap()
            .is_some());
        assert!(interval_representation_by_search(&g(GeneratorSpec::Cycle { n: 4 }))
            .unwrap()
            .is_none());
    }
}
