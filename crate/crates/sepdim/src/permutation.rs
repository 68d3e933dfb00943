//! Permutations, families of permutations and the separation predicates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A linear order of `0..n`.
///
/// `order[i]` is the vertex at position `i`; `pos[v]` is the position of `v`.
/// Positions are 0-based; the 1-based rank is `pos + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            order: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    /// Builds from a left-to-right vertex listing.
    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::NotAPermutation(format!("entry {} exceeds {n}", v + 1)));
            }
            if pos[v] != usize::MAX {
                return Err(Error::NotAPermutation(format!("entry {} repeated", v + 1)));
            }
            pos[v] = i;
        }
        Ok(Permutation { order, pos })
    }

    /// Sorts `0..n` by `key`, ties by vertex index.
    pub fn sorted_by_key<K: Ord>(n: usize, key: impl Fn(usize) -> K) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (key(v), v));
        Self::from_order(order).expect("sorting yields a permutation")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Vertices left to right.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// 0-based position of `v`.
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// 1-based rank of `v`, i.e. σ(v).
    pub fn rank(&self, v: usize) -> usize {
        self.pos[v] + 1
    }

    pub fn positions(&self) -> &[usize] {
        &self.pos
    }

    pub fn reverse(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Self::from_order(order).expect("reversal of a permutation")
    }

    /// Lays out the blocks left to right, keeping each block's internal order.
    pub fn concat_blocks(blocks: &[Vec<usize>]) -> Result<Self> {
        let order: Vec<usize> = blocks.iter().flatten().copied().collect();
        Self::from_order(order).map_err(|e| Error::NotAPartition(e.to_string()))
    }

    fn check_sets(&self, a: &[usize], b: &[usize]) -> Result<()> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::OverlappingSets);
        }
        let n = self.len();
        if let Some(&v) = a.iter().chain(b).find(|&&v| v >= n) {
            return Err(Error::GroundSetMismatch {
                expected: n,
                found: v + 1,
            });
        }
        if a.iter().any(|x| b.contains(x)) {
            return Err(Error::OverlappingSets);
        }
        Ok(())
    }

    /// `A ≺σ B`: every element of `a` comes before every element of `b`.
    pub fn precedes(&self, a: &[usize], b: &[usize]) -> Result<bool> {
        self.check_sets(a, b)?;
        Ok(self.precedes_unchecked(a, b))
    }

    /// `σ` separates `e` and `f` when one entirely precedes the other.
    pub fn separates(&self, e: &[usize], f: &[usize]) -> Result<bool> {
        self.check_sets(e, f)?;
        Ok(self.precedes_unchecked(e, f) || self.precedes_unchecked(f, e))
    }

    pub(crate) fn precedes_unchecked(&self, a: &[usize], b: &[usize]) -> bool {
        let max_a = a.iter().map(|&v| self.pos[v]).max().unwrap_or(0);
        b.iter().all(|&v| self.pos[v] > max_a)
    }

    /// (min, max) position over `set`.
    pub(crate) fn span(&self, set: &[usize]) -> (usize, usize) {
        set.iter().fold((usize::MAX, 0), |(lo, hi), &v| {
            (lo.min(self.pos[v]), hi.max(self.pos[v]))
        })
    }
}

/// An ordered list of permutations over a common ground set `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermutationFamily {
    n: usize,
    perms: Vec<Permutation>,
}

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    n: usize,
    perms: Vec<Vec<usize>>,
}

impl PermutationFamily {
    pub fn new(n: usize, perms: Vec<Permutation>) -> Result<Self> {
        if let Some(p) = perms.iter().find(|p| p.len() != n) {
            return Err(Error::GroundSetMismatch {
                expected: n,
                found: p.len(),
            });
        }
        Ok(PermutationFamily { n, perms })
    }

    pub fn empty(n: usize) -> Self {
        PermutationFamily {
            n,
            perms: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn push(&mut self, p: Permutation) -> Result<()> {
        if p.len() != self.n {
            return Err(Error::GroundSetMismatch {
                expected: self.n,
                found: p.len(),
            });
        }
        self.perms.push(p);
        Ok(())
    }

    pub fn extend(&mut self, other: PermutationFamily) -> Result<()> {
        for p in other.perms {
            self.push(p)?;
        }
        Ok(())
    }

    pub fn into_perms(self) -> Vec<Permutation> {
        self.perms
    }

    /// `{"n": .., "perms": [[..], ..]}`, vertices left to right, 1-based.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyFile {
            n: self.n,
            perms: self
                .perms
                .iter()
                .map(|p| p.order.iter().map(|v| v + 1).collect())
                .collect(),
        })
        .expect("family serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: FamilyFile = serde_json::from_str(s)?;
        let mut perms = Vec::with_capacity(file.perms.len());
        for p in file.perms {
            if p.contains(&0) {
                return Err(Error::NotAPermutation("vertices are 1-based".into()));
            }
            perms.push(Permutation::from_order(p.into_iter().map(|v| v - 1).collect())?);
        }
        Self::new(file.n, perms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedes_examples() {
        let id = Permutation::identity(4);
        assert!(id.precedes(&[0, 1], &[2, 3]).unwrap());
        assert!(!id.precedes(&[0, 2], &[1, 3]).unwrap());
        assert!(!id.reverse().precedes(&[0, 1], &[2, 3]).unwrap());
        assert!(id.reverse().precedes(&[2, 3], &[0, 1]).unwrap());
        assert!(id.precedes(&[0, 1], &[1, 2]).is_err());
        assert!(id.precedes(&[], &[1]).is_err());
    }

    #[test]
    fn separates_examples() {
        let id = Permutation::identity(4);
        assert!(id.separates(&[0, 1], &[2, 3]).unwrap());
        assert!(!id.separates(&[0, 2], &[1, 3]).unwrap());
        assert!(id.separates(&[3], &[1]).unwrap());
    }

    #[test]
    fn reverse_and_blocks() {
        assert_eq!(Permutation::identity(3).reverse().order(), &[2, 1, 0]);
        let p = Permutation::concat_blocks(&[vec![1], vec![2, 0]]).unwrap();
        assert_eq!(p.order(), &[1, 2, 0]);
        assert!(Permutation::concat_blocks(&[vec![1], vec![1, 0]]).is_err());
        assert!(Permutation::concat_blocks(&[vec![1], vec![2]]).is_err());
    }

    #[test]
    fn from_order_rejects_non_bijections() {
        assert!(Permutation::from_order(vec![0, 0]).is_err());
        assert!(Permutation::from_order(vec![0, 2]).is_err());
    }

    #[test]
    fn family_json_round_trip() {
        let f = PermutationFamily::new(
            3,
            vec![Permutation::identity(3), Permutation::identity(3).reverse()],
        )
        .unwrap();
        let s = f.to_json();
        assert_eq!(s, r#"{"n":3,"perms":[[1,2,3],[3,2,1]]}"#);
        assert_eq!(PermutationFamily::from_json(&s).unwrap(), f);
        assert!(PermutationFamily::new(3, vec![Permutation::identity(2)]).is_err());
    }
}
