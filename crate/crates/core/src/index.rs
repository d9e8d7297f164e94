//! Multi-index combinatorics for tensor variables.
//!
//! A shape `(n_1, ..., n_d)` spans the grid `[n_1] x ... x [n_d]` of 1-based
//! multi-indices; every grid point labels one polynomial variable.  The grid
//! carries the componentwise (product) partial order, whose lattice
//! operations `meet`/`join` and whose incomparable pairs parameterize the
//! rank-one binomial generators built in [`crate::ideals`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Tensor size vector `(n_1, ..., n_d)` with `d >= 1` and every `n_i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorShape {
    dims: Vec<usize>,
}

impl TensorShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidShape("a shape needs at least one mode".into()));
        }
        if dims.iter().any(|&n| n == 0) {
            return Err(Error::InvalidShape(format!(
                "every mode size must be at least 1, got {dims:?}"
            )));
        }
        Ok(TensorShape { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of modes `d`.
    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    /// Number of grid points `n_1 * ... * n_d`, one variable per point.
    pub fn num_vars(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn contains(&self, a: &MultiIndex) -> bool {
        a.entries.len() == self.dims.len()
            && a.entries.iter().zip(&self.dims).all(|(&ai, &ni)| (1..=ni).contains(&ai))
    }

    /// 0-based position of `a` in the lexicographic enumeration of the grid.
    ///
    /// Variable precedence is tied to this rank: the variable of rank 0
    /// (index `(1,...,1)`) is the largest under the monomial orders in
    /// [`crate::poly`].
    pub fn rank_of(&self, a: &MultiIndex) -> Result<usize> {
        if !self.contains(a) {
            return Err(Error::OutOfBounds(format!("{a} is not in the grid of shape {self}")));
        }
        let mut rank = 0usize;
        for (&ai, &ni) in a.entries.iter().zip(&self.dims) {
            rank = rank * ni + (ai - 1);
        }
        Ok(rank)
    }

    /// Inverse of [`TensorShape::rank_of`].
    pub fn index_at_rank(&self, rank: usize) -> Result<MultiIndex> {
        if rank >= self.num_vars() {
            return Err(Error::OutOfBounds(format!(
                "rank {rank} out of range for shape {self} with {} variables",
                self.num_vars()
            )));
        }
        let mut entries = vec![1usize; self.dims.len()];
        let mut r = rank;
        for i in (0..self.dims.len()).rev() {
            entries[i] = r % self.dims[i] + 1;
            r /= self.dims[i];
        }
        Ok(MultiIndex { entries })
    }

    /// All grid points in lexicographic (= rank) order.
    pub fn indices(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        (0..self.num_vars()).map(move |r| self.index_at_rank(r).expect("rank in range"))
    }

    /// The multi-index `(1, ..., 1)` of rank 0.
    pub fn all_ones(&self) -> MultiIndex {
        MultiIndex { entries: vec![1; self.dims.len()] }
    }

    /// The index `(1, ..., 1, v, 1, ..., 1)` with `v` in mode `mode` (0-based).
    pub fn axis_index(&self, mode: usize, v: usize) -> Result<MultiIndex> {
        let mut entries = vec![1usize; self.dims.len()];
        if mode >= self.dims.len() || v < 1 || v > self.dims[mode] {
            return Err(Error::OutOfBounds(format!(
                "entry {v} in mode {mode} out of range for shape {self}"
            )));
        }
        entries[mode] = v;
        Ok(MultiIndex { entries })
    }

    /// Unordered pairs `{a, b}` that are incomparable in the product order,
    /// each listed once as `(a, b)` with `a < b` lexicographically, sorted.
    pub fn incomparable_pairs(&self) -> Vec<(MultiIndex, MultiIndex)> {
        let all: Vec<MultiIndex> = self.indices().collect();
        let mut pairs = Vec::new();
        for i in 0..all.len() {
            for j in (i + 1)..all.len() {
                let cmp = all[i].product_cmp(&all[j]).expect("same shape");
                if cmp.is_none() {
                    pairs.push((all[i].clone(), all[j].clone()));
                }
            }
        }
        pairs
    }
}

impl fmt::Display for TensorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for TensorShape {
    type Err = Error;

    /// Parses `"n1xn2x...xnd"`, e.g. `"3x3"` or `"2x2x2"`.
    fn from_str(s: &str) -> Result<Self> {
        let dims: Vec<usize> = s
            .split('x')
            .map(|part| {
                part.parse::<usize>()
                    .map_err(|_| Error::InvalidShape(format!("cannot parse mode size {part:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        TensorShape::new(dims)
    }
}

impl Serialize for TensorShape {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dims.len()))?;
        for n in &self.dims {
            seq.serialize_element(n)?;
        }
        seq.end()
    }
}

/// A 1-based point `(a_1, ..., a_d)` of an index grid.
///
/// `Ord` is lexicographic, matching the enumeration order used by
/// [`TensorShape::rank_of`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    entries: Vec<usize>,
}

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("a multi-index needs at least one entry".into()));
        }
        if entries.iter().any(|&e| e == 0) {
            return Err(Error::InvalidArgument(format!(
                "multi-index entries are 1-based, got {entries:?}"
            )));
        }
        Ok(MultiIndex { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn ndim(&self) -> usize {
        self.entries.len()
    }

    fn check_same_ndim(&self, other: &Self) -> Result<()> {
        if self.entries.len() != other.entries.len() {
            return Err(Error::ShapeMismatch(format!(
                "{self} and {other} have different numbers of modes"
            )));
        }
        Ok(())
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_same_ndim(other)?;
        Ok(MultiIndex {
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| a.min(b)).collect(),
        })
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_same_ndim(other)?;
        Ok(MultiIndex {
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| a.max(b)).collect(),
        })
    }

    /// Componentwise partial order; `Ok(None)` means incomparable, i.e. some
    /// entry is strictly larger and some other strictly smaller.
    pub fn product_cmp(&self, other: &Self) -> Result<Option<Ordering>> {
        self.check_same_ndim(other)?;
        let mut le = true;
        let mut ge = true;
        for (&a, &b) in self.entries.iter().zip(&other.entries) {
            if a < b {
                ge = false;
            }
            if a > b {
                le = false;
            }
        }
        Ok(match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        })
    }

    /// Number of entries different from 1.
    pub fn count_not_one(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 1).count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.entries.iter().all(|&e| e == 1)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for e in &self.entries {
            seq.serialize_element(e)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mi(entries: &[usize]) -> MultiIndex {
        MultiIndex::new(entries.to_vec()).unwrap()
    }

    fn shape(dims: &[usize]) -> TensorShape {
        TensorShape::new(dims.to_vec()).unwrap()
    }

    /// Independent incomparability test straight from the definition: some
    /// entry strictly larger and some other strictly smaller.
    fn incomparable_oracle(a: &MultiIndex, b: &MultiIndex) -> bool {
        let gt = a.entries().iter().zip(b.entries()).any(|(x, y)| x > y);
        let lt = a.entries().iter().zip(b.entries()).any(|(x, y)| x < y);
        gt && lt
    }

    /// Independent lexicographic enumeration via an odometer, used to pin the
    /// rank convention.
    fn odometer(dims: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![1usize; dims.len()];
        loop {
            out.push(cur.clone());
            let mut i = dims.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < dims[i] {
                    cur[i] += 1;
                    for e in cur.iter_mut().skip(i + 1) {
                        *e = 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn rejects_degenerate_shapes() {
        assert!(TensorShape::new(vec![]).is_err());
        assert!(TensorShape::new(vec![2, 0]).is_err());
        assert!("0x2".parse::<TensorShape>().is_err());
        assert!("2xx2".parse::<TensorShape>().is_err());
        assert_eq!("2x2x3".parse::<TensorShape>().unwrap(), shape(&[2, 2, 3]));
    }

    #[test]
    fn meet_join_componentwise() {
        assert_eq!(mi(&[1, 2]).meet(&mi(&[2, 1])).unwrap(), mi(&[1, 1]));
        assert_eq!(mi(&[1, 2]).join(&mi(&[2, 1])).unwrap(), mi(&[2, 2]));
        assert_eq!(mi(&[1, 3, 2]).meet(&mi(&[2, 1, 2])).unwrap(), mi(&[1, 1, 2]));
        assert_eq!(mi(&[1, 3, 2]).join(&mi(&[2, 1, 2])).unwrap(), mi(&[2, 3, 2]));
        assert!(mi(&[1, 2]).meet(&mi(&[1, 2, 3])).is_err());
    }

    #[test]
    fn product_order_detects_incomparability() {
        assert_eq!(mi(&[1, 1]).product_cmp(&mi(&[2, 2])).unwrap(), Some(Ordering::Less));
        assert_eq!(mi(&[2, 2]).product_cmp(&mi(&[2, 2])).unwrap(), Some(Ordering::Equal));
        assert_eq!(mi(&[1, 2]).product_cmp(&mi(&[2, 1])).unwrap(), None);
    }

    #[test]
    fn variable_rank_is_lexicographic_position() {
        let s = shape(&[2, 2]);
        // Frozen expectations computed with the odometer enumeration.
        assert_eq!(s.rank_of(&mi(&[1, 1])).unwrap(), 0);
        assert_eq!(s.rank_of(&mi(&[2, 1])).unwrap(), 2);
        let s3 = shape(&[2, 2, 2]);
        assert_eq!(s3.rank_of(&mi(&[1, 1, 2])).unwrap(), 1);

        for dims in [vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 2], vec![1, 4, 2]] {
            let s = shape(&dims);
            let listed = odometer(&dims);
            assert_eq!(s.num_vars(), listed.len());
            for (rank, entries) in listed.iter().enumerate() {
                let a = mi(entries);
                assert_eq!(s.rank_of(&a).unwrap(), rank);
                assert_eq!(s.index_at_rank(rank).unwrap(), a);
            }
        }
    }

    #[test]
    fn rank_rejects_out_of_grid() {
        let s = shape(&[2, 2]);
        assert!(s.rank_of(&mi(&[3, 1])).is_err());
        assert!(s.rank_of(&mi(&[1, 1, 1])).is_err());
        assert!(s.index_at_rank(4).is_err());
    }

    #[test]
    fn incomparable_pair_counts() {
        // Frozen counts, re-derived here by the brute-force oracle.
        let cases: [(&[usize], usize); 5] =
            [(&[2, 2], 1), (&[2, 3], 3), (&[3, 3], 9), (&[2, 2, 2], 9), (&[5], 0)];
        for (dims, expected) in cases {
            let s = shape(dims);
            let pairs = s.incomparable_pairs();
            assert_eq!(pairs.len(), expected, "shape {s}");

            let all: Vec<MultiIndex> = s.indices().collect();
            let mut oracle_count = 0usize;
            for i in 0..all.len() {
                for j in (i + 1)..all.len() {
                    if incomparable_oracle(&all[i], &all[j]) {
                        oracle_count += 1;
                        assert!(pairs.contains(&(all[i].clone(), all[j].clone())));
                    }
                }
            }
            assert_eq!(oracle_count, expected, "shape {s}");
        }
        assert_eq!(
            shape(&[2, 2]).incomparable_pairs(),
            vec![(mi(&[1, 2]), mi(&[2, 1]))]
        );
    }

    #[test]
    fn incomparable_pairs_empty_when_grid_is_a_chain() {
        // The product order is total exactly when at most one mode exceeds 1.
        for dims in [vec![4], vec![1, 3], vec![1, 1, 5], vec![2, 1]] {
            assert!(shape(&dims).incomparable_pairs().is_empty());
        }
        assert!(!shape(&[2, 2]).incomparable_pairs().is_empty());
    }

    #[test]
    fn display_forms() {
        assert_eq!(mi(&[1, 2]).to_string(), "(1,2)");
        assert_eq!(shape(&[2, 2, 3]).to_string(), "2x2x3");
        assert_eq!(serde_json::to_string(&mi(&[1, 2])).unwrap(), "[1,2]");
    }

    fn arb_index(d: usize, max: usize) -> impl Strategy<Value = MultiIndex> {
        proptest::collection::vec(1..=max, d).prop_map(|v| MultiIndex::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn lattice_laws((a, b, c) in (arb_index(3, 4), arb_index(3, 4), arb_index(3, 4))) {
            let m = |x: &MultiIndex, y: &MultiIndex| x.meet(y).unwrap();
            let j = |x: &MultiIndex, y: &MultiIndex| x.join(y).unwrap();
            prop_assert_eq!(m(&a, &b), m(&b, &a));
            prop_assert_eq!(j(&a, &b), j(&b, &a));
            prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
            prop_assert_eq!(j(&j(&a, &b), &c), j(&a, &j(&b, &c)));
            prop_assert_eq!(m(&a, &a), a.clone());
            prop_assert_eq!(j(&a, &a), a.clone());
            // meet is a lower bound, join an upper bound
            prop_assert!(m(&a, &b).product_cmp(&a).unwrap() != Some(Ordering::Greater));
            prop_assert!(j(&a, &b).product_cmp(&a).unwrap() != Some(Ordering::Less));
        }
    }
}
