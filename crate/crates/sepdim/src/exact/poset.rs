//! Finite strict partial orders, linear extensions and realizers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// A strict partial order on `0..size`, stored transitively closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    size: usize,
    less: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct PosetFile {
    size: usize,
    lt: Vec<[usize; 2]>,
}

impl Poset {
    /// Transitive closure of the given relations; cycles are rejected.
    pub fn new(size: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut less = vec![vec![false; size]; size];
        for &(x, y) in relations {
            if x >= size || y >= size {
                return Err(Error::InvalidPoset(format!(
                    "relation ({}, {}) outside 1..={size}",
                    x + 1,
                    y + 1
                )));
            }
            less[x][y] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if less[i][k] {
                    for j in 0..size {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(x) = (0..size).find(|&x| less[x][x]) {
            return Err(Error::InvalidPoset(format!(
                "element {} lies on a cycle",
                x + 1
            )));
        }
        Ok(Poset { size, less })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.less[x][y]
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        x == y || self.less[x][y] || self.less[y][x]
    }

    /// All pairs `x < y` of the closed relation.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.size {
            for y in 0..self.size {
                if self.less[x][y] {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Unordered incomparable pairs `(x, y)` with `x < y` as integers.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.size {
            for y in x + 1..self.size {
                if !self.comparable(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Ordered pairs `(x, y)` of incomparable elements with everything below
    /// `x` below `y` and everything above `y` above `x`. A family of linear
    /// extensions is a realizer iff each such pair has `y` before `x` in
    /// some member.
    pub fn critical_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.size {
            for y in 0..self.size {
                if x == y || self.comparable(x, y) {
                    continue;
                }
                let down = (0..self.size).all(|z| !self.less[z][x] || self.less[z][y]);
                let up = (0..self.size).all(|z| !self.less[y][z] || self.less[x][z]);
                if down && up {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn is_linear_extension(&self, p: &Permutation) -> bool {
        p.len() == self.size
            && self
                .relations()
                .iter()
                .all(|&(x, y)| p.position(x) < p.position(y))
    }

    /// `{"size": n, "lt": [[x, y], ..]}` with 1-based elements; lists the
    /// closed relation.
    pub fn to_json(&self) -> String {
        let lt = self.relations().into_iter().map(|(x, y)| [x + 1, y + 1]).collect();
        serde_json::to_string(&PosetFile {
            size: self.size,
            lt,
        })
        .expect("poset serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(s)?;
        let mut rel = Vec::with_capacity(file.lt.len());
        for [x, y] in file.lt {
            if x == 0 || y == 0 {
                return Err(Error::InvalidPoset("elements are 1-based".into()));
            }
            rel.push((x - 1, y - 1));
        }
        Self::new(file.size, &rel)
    }
}

/// A family of linear extensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realizer {
    pub extensions: Vec<Permutation>,
}

impl Realizer {
    /// Checks that every member is a linear extension of `p` and every
    /// incomparable pair appears in both orders.
    pub fn check(&self, p: &Poset) -> Result<()> {
        if p.size() > 0 && self.extensions.is_empty() {
            return Err(Error::Verification("realizer is empty".into()));
        }
        if let Some(i) = self.extensions.iter().position(|e| !p.is_linear_extension(e)) {
            return Err(Error::Verification(format!(
                "member {} is not a linear extension",
                i + 1
            )));
        }
        for (x, y) in p.incomparable_pairs() {
            let fwd = self.extensions.iter().any(|e| e.position(x) < e.position(y));
            let back = self.extensions.iter().any(|e| e.position(y) < e.position(x));
            if !(fwd && back) {
                return Err(Error::Verification(format!(
                    "incomparable pair ({}, {}) is not reversed",
                    x + 1,
                    y + 1
                )));
            }
        }
        Ok(())
    }
}

/// Elements of the canonical interval order on `[n]`: all `(a, b)` with
/// `a < b`, 0-based, in lexicographic order.
pub fn canonical_interval_elements(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push((a, b));
        }
    }
    out
}

/// The canonical interval order: `(a, b) ◁ (c, d)` iff `b ≤ c`.
pub fn canonical_interval_order(n: usize) -> Result<Poset> {
    if n < 2 {
        return Err(Error::param("n", format!("must be at least 2, got {n}")));
    }
    interval_order(&canonical_interval_elements(n))
}

/// Interval order on open intervals given by endpoints.
pub fn interval_order(intervals: &[(usize, usize)]) -> Result<Poset> {
    let mut rel = Vec::new();
    for (i, &(_, b)) in intervals.iter().enumerate() {
        for (j, &(c, _)) in intervals.iter().enumerate() {
            if i != j && b <= c {
                rel.push((i, j));
            }
        }
    }
    Poset::new(intervals.len(), &rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycles() {
        let p = Poset::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.less(0, 2));
        assert!(Poset::new(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn canonical_order_on_three() {
        let p = canonical_interval_order(3).unwrap();
        // elements (1,2), (1,3), (2,3)
        assert_eq!(p.relations(), vec![(0, 2)]);
        assert_eq!(canonical_interval_order(2).unwrap().size(), 1);
    }

    #[test]
    fn antichain_critical_pairs_are_all_ordered_pairs() {
        let p = Poset::new(2, &[]).unwrap();
        assert_eq!(p.critical_pairs(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn json_round_trip() {
        let p = Poset::new(3, &[(0, 1), (2, 1)]).unwrap();
        assert_eq!(Poset::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn realizer_check_detects_missing_reversal() {
        let p = Poset::new(2, &[]).unwrap();
        let r = Realizer {
            extensions: vec![Permutation::identity(2)],
        };
        assert!(r.check(&p).is_err());
        let r = Realizer {
            extensions: vec![Permutation::identity(2), Permutation::identity(2).reverse()],
        };
        assert!(r.check(&p).is_ok());
    }
}
