//! Slot-assignment search shared by the exact solvers.
//!
//! A problem has `points`, a set of base arcs present in every slot, and
//! items. Each item offers one or more arc bundles (`from × to`); a solution
//! with `k` slots puts every item into one slot with one bundle so that every
//! slot's digraph stays acyclic. Each slot keeps the transitive closure of
//! its digraph as bit rows, so cycle checks and implication tests are row
//! intersections.

use std::cell::Cell;

use varisat::{ExtendFormula, Lit, Solver};

use crate::par::{self, Exec};

#[derive(Clone, Debug)]
pub(crate) struct Bundle {
    from: Vec<usize>,
    to: Vec<usize>,
    from_mask: Vec<u64>,
    to_mask: Vec<u64>,
}

#[derive(Clone, Debug)]
pub(crate) struct SlotProblem {
    points: usize,
    words: usize,
    base: Vec<u64>,
    items: Vec<Vec<Bundle>>,
    mirror: bool,
}

/// Limits and scheduling for one search.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SearchControl {
    pub node_limit: Option<u64>,
    pub exec: Exec,
    pub deterministic: bool,
}

impl SearchControl {
    pub fn sequential() -> Self {
        SearchControl {
            node_limit: None,
            exec: Exec::Sequential,
            deterministic: true,
        }
    }
}

#[derive(Debug)]
pub(crate) struct NodeLimit;

/// Item placements and the per-slot linear orders of the points.
#[derive(Clone, Debug)]
pub(crate) struct Solution {
    #[cfg_attr(not(test), allow(dead_code))]
    pub placement: Vec<(usize, usize)>,
    pub orders: Vec<Vec<usize>>,
}

#[derive(Clone)]
struct State {
    reach: Vec<Vec<u64>>,
    used: usize,
    placed: Vec<Option<(usize, usize)>>,
}

enum Pick {
    Dead,
    Complete,
    Branch(usize, Vec<(usize, usize)>),
}

fn mask(words: usize, set: &[usize]) -> Vec<u64> {
    let mut m = vec![0u64; words];
    for &x in set {
        m[x / 64] |= 1 << (x % 64);
    }
    m
}

fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

fn contains_all(row: &[u64], m: &[u64]) -> bool {
    row.iter().zip(m).all(|(r, x)| x & !r == 0)
}

impl SlotProblem {
    /// `items[i]` lists the bundles of item `i` as `(from, to)` point sets.
    /// With `mirror`, reversing a slot is a symmetry of the problem, so the
    /// first item placed into a fresh slot only takes its first bundle.
    pub fn new(
        points: usize,
        base_arcs: &[(usize, usize)],
        items: Vec<Vec<(Vec<usize>, Vec<usize>)>>,
        mirror: bool,
    ) -> Self {
        let words = points.div_ceil(64).max(1);
        let items = items
            .into_iter()
            .map(|opts| {
                opts.into_iter()
                    .map(|(from, to)| Bundle {
                        from_mask: mask(words, &from),
                        to_mask: mask(words, &to),
                        from,
                        to,
                    })
                    .collect()
            })
            .collect();
        let mut p = SlotProblem {
            points,
            words,
            base: vec![0; points * words],
            items,
            mirror,
        };
        let mut base = std::mem::take(&mut p.base);
        for &(a, b) in base_arcs {
            let arc = Bundle {
                from: vec![a],
                to: vec![b],
                from_mask: mask(words, &[a]),
                to_mask: mask(words, &[b]),
            };
            debug_assert!(p.feasible(&base, &arc), "base arcs must be acyclic");
            p.add(&mut base, &arc);
        }
        p.base = base;
        p
    }

    pub fn item_count(&self) -> usize {
        self.items.len()
    }

    fn row<'a>(&self, reach: &'a [u64], x: usize) -> &'a [u64] {
        &reach[x * self.words..(x + 1) * self.words]
    }

    fn feasible(&self, reach: &[u64], b: &Bundle) -> bool {
        if intersects(&b.from_mask, &b.to_mask) {
            return false;
        }
        b.to.iter().all(|&t| !intersects(self.row(reach, t), &b.from_mask))
    }

    fn implied(&self, reach: &[u64], b: &Bundle) -> bool {
        b.from.iter().all(|&f| contains_all(self.row(reach, f), &b.to_mask))
    }

    fn add(&self, reach: &mut [u64], b: &Bundle) {
        let w = self.words;
        let mut gain = b.to_mask.clone();
        for &t in &b.to {
            for (g, r) in gain.iter_mut().zip(&reach[t * w..(t + 1) * w]) {
                *g |= r;
            }
        }
        for x in 0..self.points {
            let hit = b.from_mask[x / 64] >> (x % 64) & 1 == 1
                || intersects(&reach[x * w..(x + 1) * w], &b.from_mask);
            if hit {
                for (r, g) in reach[x * w..(x + 1) * w].iter_mut().zip(&gain) {
                    *r |= g;
                }
            }
        }
    }

    /// Searches for a placement into `k` slots.
    pub fn solve(&self, k: usize, ctl: SearchControl) -> Result<Option<Solution>, NodeLimit> {
        if self.items.is_empty() {
            return Ok(Some(self.extract(&State {
                reach: vec![self.base.clone(); k],
                used: 0,
                placed: Vec::new(),
            })));
        }
        if k == 0 {
            return Ok(None);
        }
        let mut root = State {
            reach: vec![self.base.clone(); k],
            used: 0,
            placed: vec![None; self.items.len()],
        };
        let mut trail = Vec::new();
        let (item, choices) = match self.pick(&mut root, &mut trail) {
            Pick::Dead => return Ok(None),
            Pick::Complete => return Ok(Some(self.extract(&root))),
            Pick::Branch(i, c) => (i, c),
        };
        // Each top-level branch counts its own nodes, so whether the limit is
        // hit does not depend on the schedule.
        let run = |&(slot, opt): &(usize, usize)| -> Option<Result<State, NodeLimit>> {
            let counter = Counter::new(ctl.node_limit);
            let mut st = root.clone();
            self.place(&mut st, item, slot, opt);
            match self.dfs(&mut st, &counter) {
                Ok(true) => Some(Ok(st)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        };
        let found = if ctl.deterministic {
            par::find_map_first(ctl.exec, &choices, run)
        } else {
            par::find_map_any(ctl.exec, &choices, run)
        };
        match found {
            None => Ok(None),
            Some(Err(e)) => Err(e),
            Some(Ok(st)) => Ok(Some(self.extract(&st))),
        }
    }

    fn place(&self, st: &mut State, item: usize, slot: usize, opt: usize) {
        let mut reach = std::mem::take(&mut st.reach[slot]);
        self.add(&mut reach, &self.items[item][opt]);
        st.reach[slot] = reach;
        st.used = st.used.max(slot + 1);
        st.placed[item] = Some((slot, opt));
    }

    fn dfs(&self, st: &mut State, counter: &Counter) -> Result<bool, NodeLimit> {
        counter.tick()?;
        let mut trail = Vec::new();
        let (item, choices) = match self.pick(st, &mut trail) {
            Pick::Complete => return Ok(true),
            Pick::Dead => {
                undo(st, &trail);
                return Ok(false);
            }
            Pick::Branch(i, c) => (i, c),
        };
        for (slot, opt) in choices {
            let saved = st.reach[slot].clone();
            let used = st.used;
            self.place(st, item, slot, opt);
            if self.dfs(st, counter)? {
                return Ok(true);
            }
            st.reach[slot] = saved;
            st.used = used;
            st.placed[item] = None;
        }
        undo(st, &trail);
        Ok(false)
    }

    /// Places implied items for free, then returns the unplaced item with the
    /// fewest feasible placements (lowest index on ties).
    fn pick(&self, st: &mut State, trail: &mut Vec<usize>) -> Pick {
        let k = st.reach.len();
        let mut best: Option<(usize, usize)> = None;
        for i in 0..self.items.len() {
            if st.placed[i].is_some() {
                continue;
            }
            let opts = &self.items[i];
            let scan = st.used.max(1).min(k);
            let implied = (0..scan).find_map(|s| {
                opts.iter()
                    .position(|b| self.implied(&st.reach[s], b))
                    .map(|o| (s, o))
            });
            if let Some(p) = implied {
                st.placed[i] = Some(p);
                trail.push(i);
                continue;
            }
            let mut count = 0;
            for s in 0..st.used {
                count += opts.iter().filter(|b| self.feasible(&st.reach[s], b)).count();
            }
            if st.used < k {
                count += self.fresh_options(st, opts).count();
            }
            if count == 0 {
                return Pick::Dead;
            }
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((i, count));
            }
        }
        let Some((item, _)) = best else {
            return Pick::Complete;
        };
        let opts = &self.items[item];
        let mut choices = Vec::new();
        for s in 0..st.used {
            for (o, b) in opts.iter().enumerate() {
                if self.feasible(&st.reach[s], b) {
                    choices.push((s, o));
                }
            }
        }
        if st.used < k {
            choices.extend(self.fresh_options(st, opts).map(|o| (st.used, o)));
        }
        Pick::Branch(item, choices)
    }

    /// Same decision as [`SlotProblem::solve`] by a CNF encoding: one
    /// tournament per slot, forbidden 3-cycles, and a selector per
    /// (item, slot, bundle) implying the bundle's arcs.
    pub fn solve_sat(&self, k: usize) -> Option<Solution> {
        if self.items.is_empty() {
            return self.solve(k, SearchControl::sequential()).ok().flatten();
        }
        if k == 0 {
            return None;
        }
        let p = self.points;
        let mut solver = Solver::new();
        // order[s][a * p + b] for a < b: a precedes b in slot s.
        let order: Vec<Vec<Option<Lit>>> = (0..k)
            .map(|_| {
                let mut row = vec![None; p * p];
                for a in 0..p {
                    for b in a + 1..p {
                        row[a * p + b] = Some(solver.new_var().positive());
                    }
                }
                row
            })
            .collect();
        let before = |s: usize, a: usize, b: usize| -> Lit {
            if a < b {
                order[s][a * p + b].expect("var")
            } else {
                !order[s][b * p + a].expect("var")
            }
        };
        for s in 0..k {
            for a in 0..p {
                for b in a + 1..p {
                    for c in b + 1..p {
                        let (ab, bc, ac) = (before(s, a, b), before(s, b, c), before(s, a, c));
                        solver.add_clause(&[!ab, !bc, ac]);
                        solver.add_clause(&[ab, bc, !ac]);
                    }
                }
            }
            for x in 0..p {
                for w in 0..self.words {
                    let mut bits = self.base[x * self.words + w];
                    while bits != 0 {
                        let y = w * 64 + bits.trailing_zeros() as usize;
                        solver.add_clause(&[before(s, x, y)]);
                        bits &= bits - 1;
                    }
                }
            }
        }
        let mut selectors = Vec::with_capacity(self.items.len());
        for (i, opts) in self.items.iter().enumerate() {
            let mut any = Vec::new();
            let mut sel = Vec::new();
            // Slots are interchangeable: item i may use only slots 0..=i.
            for s in 0..k.min(i + 1) {
                for (o, b) in opts.iter().enumerate() {
                    if i == 0 && self.mirror && o > 0 {
                        continue;
                    }
                    if intersects(&b.from_mask, &b.to_mask) {
                        continue;
                    }
                    let z = solver.new_var().positive();
                    for &x in &b.from {
                        for &y in &b.to {
                            solver.add_clause(&[!z, before(s, x, y)]);
                        }
                    }
                    any.push(z);
                    sel.push((z, s, o));
                }
            }
            solver.add_clause(&any);
            selectors.push(sel);
        }
        if !solver.solve().expect("in-memory solve") {
            return None;
        }
        let model: std::collections::HashSet<Lit> =
            solver.model().expect("satisfiable").into_iter().collect();
        let placement = selectors
            .iter()
            .map(|sel| {
                let &(_, s, o) = sel.iter().find(|(z, _, _)| model.contains(z)).expect("one selected");
                (s, o)
            })
            .collect();
        let orders = (0..k)
            .map(|s| {
                let mut ahead = vec![0usize; p];
                for a in 0..p {
                    for b in a + 1..p {
                        if model.contains(&before(s, a, b)) {
                            ahead[b] += 1;
                        } else {
                            ahead[a] += 1;
                        }
                    }
                }
                let mut o: Vec<usize> = (0..p).collect();
                o.sort_by_key(|&x| (ahead[x], x));
                o
            })
            .collect();
        Some(Solution { placement, orders })
    }

    /// Options allowed in the first unused slot.
    fn fresh_options<'a>(&'a self, st: &'a State, opts: &'a [Bundle]) -> impl Iterator<Item = usize> + 'a {
        let fresh = if self.mirror { 1 } else { opts.len() };
        (0..fresh).filter(move |&o| self.feasible(&st.reach[st.used], &opts[o]))
    }

    fn extract(&self, st: &State) -> Solution {
        let orders = st
            .reach
            .iter()
            .map(|reach| {
                // In a transitively closed DAG, sorting by ancestor count is a
                // topological order.
                let mut ancestors = vec![0usize; self.points];
                for x in 0..self.points {
                    for (w, &word) in self.row(reach, x).iter().enumerate() {
                        let mut bits = word;
                        while bits != 0 {
                            let b = bits.trailing_zeros() as usize;
                            ancestors[w * 64 + b] += 1;
                            bits &= bits - 1;
                        }
                    }
                }
                let mut order: Vec<usize> = (0..self.points).collect();
                order.sort_by_key(|&x| (ancestors[x], x));
                order
            })
            .collect();
        Solution {
            placement: st.placed.iter().map(|p| p.expect("complete")).collect(),
            orders,
        }
    }
}

fn undo(st: &mut State, trail: &[usize]) {
    for &i in trail {
        st.placed[i] = None;
    }
}

struct Counter {
    limit: Option<u64>,
    nodes: Cell<u64>,
}

impl Counter {
    fn new(limit: Option<u64>) -> Self {
        Counter {
            limit,
            nodes: Cell::new(0),
        }
    }

    fn tick(&self) -> Result<(), NodeLimit> {
        let Some(limit) = self.limit else {
            return Ok(());
        };
        let n = self.nodes.get();
        if n >= limit {
            return Err(NodeLimit);
        }
        self.nodes.set(n + 1);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CTL: SearchControl = SearchControl {
        node_limit: None,
        exec: Exec::Sequential,
        deterministic: true,
    };

    fn respects(order: &[usize], from: &[usize], to: &[usize]) -> bool {
        let pos = |x: usize| order.iter().position(|&y| y == x).unwrap();
        from.iter().all(|&a| to.iter().all(|&b| pos(a) < pos(b)))
    }

    #[test]
    fn cyclic_demands_need_two_slots() {
        // a<b, b<c, c<a cannot share a slot.
        let items = vec![
            vec![(vec![0], vec![1])],
            vec![(vec![1], vec![2])],
            vec![(vec![2], vec![0])],
        ];
        let p = SlotProblem::new(3, &[], items.clone(), false);
        assert!(p.solve(1, CTL).unwrap().is_none());
        let sol = p.solve(2, CTL).unwrap().unwrap();
        for (i, &(slot, opt)) in sol.placement.iter().enumerate() {
            let (from, to) = &items[i][opt];
            assert!(respects(&sol.orders[slot], from, to));
        }
    }

    #[test]
    fn base_arcs_constrain_every_slot() {
        let items = vec![vec![(vec![1], vec![0])]];
        let p = SlotProblem::new(2, &[(0, 1)], items, false);
        assert!(p.solve(3, CTL).unwrap().is_none());
    }

    #[test]
    fn sat_agrees_with_search() {
        let items = vec![
            vec![(vec![0], vec![1])],
            vec![(vec![1], vec![2])],
            vec![(vec![2], vec![0])],
        ];
        let p = SlotProblem::new(3, &[], items.clone(), false);
        assert!(p.solve_sat(1).is_none());
        let sol = p.solve_sat(2).unwrap();
        for (i, &(slot, opt)) in sol.placement.iter().enumerate() {
            let (from, to) = &items[i][opt];
            assert!(respects(&sol.orders[slot], from, to));
        }
        let blocked = SlotProblem::new(2, &[(0, 1)], vec![vec![(vec![1], vec![0])]], false);
        assert!(blocked.solve_sat(3).is_none());
    }

    #[test]
    fn node_limit_is_reported() {
        let items: Vec<_> = (0..6)
            .map(|i| vec![(vec![i], vec![(i + 1) % 6]), (vec![(i + 1) % 6], vec![i])])
            .collect();
        let p = SlotProblem::new(6, &[], items, true);
        let ctl = SearchControl {
            node_limit: Some(0),
            ..CTL
        };
        assert!(p.solve(1, ctl).is_err());
    }
}
