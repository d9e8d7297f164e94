//! Sparse monomials and the monomial orders used across the crate.

use std::cmp::Ordering;
use std::collections::BTreeSet;

/// A sparse monomial: exponent vector stored as `(variable rank, exponent)`
/// pairs, sorted by rank, with all exponents positive.
///
/// `Ord` is graded reverse lexicographic (grevlex) with variable precedence
/// given by rank: rank 0 is the largest variable.  Higher degree wins; on a
/// degree tie, the monomial whose exponent difference has a *negative*
/// rightmost nonzero entry is the larger one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(rank: usize) -> Self {
        Monomial { exps: vec![(rank as u32, 1)] }
    }

    pub fn var_pow(rank: usize, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial { exps: vec![(rank as u32, exp)] }
        }
    }

    /// Builds from arbitrary `(rank, exponent)` pairs; merges duplicates and
    /// drops zero exponents.
    pub fn from_exponents<I: IntoIterator<Item = (usize, u32)>>(iter: I) -> Self {
        let mut exps: Vec<(u32, u32)> = Vec::new();
        for (rank, e) in iter {
            if e == 0 {
                continue;
            }
            exps.push((rank as u32, e));
        }
        exps.sort_by_key(|&(r, _)| r);
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(exps.len());
        for (r, e) in exps {
            match merged.last_mut() {
                Some((lr, le)) if *lr == r => *le += e,
                _ => merged.push((r, e)),
            }
        }
        Monomial { exps: merged }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent_of(&self, rank: usize) -> u32 {
        match self.exps.binary_search_by_key(&(rank as u32), |&(r, _)| r) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    /// Iterates `(rank, exponent)` pairs in increasing rank order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(r, e)| (r as usize, e))
    }

    pub fn ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().map(|&(r, _)| r as usize)
    }

    pub fn rank_set(&self) -> BTreeSet<usize> {
        self.ranks().collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(ra, ea)), Some(&(rb, eb))) => match ra.cmp(&rb) {
                    Ordering::Less => {
                        exps.push((ra, ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        exps.push((rb, eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        exps.push((ra, ea + eb));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&t), None) => {
                    exps.push(t);
                    i += 1;
                }
                (None, Some(&t)) => {
                    exps.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial { exps }
    }

    /// Exact division; `None` when some exponent of `other` exceeds ours.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut exps = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(r, e) in &self.exps {
            let mut rem = e;
            while j < other.exps.len() && other.exps[j].0 < r {
                return None; // divisor uses a variable we lack
            }
            if j < other.exps.len() && other.exps[j].0 == r {
                let eb = other.exps[j].1;
                if eb > e {
                    return None;
                }
                rem = e - eb;
                j += 1;
            }
            if rem > 0 {
                exps.push((r, rem));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div(self).is_some()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let ranks: BTreeSet<u32> =
            self.exps.iter().chain(&other.exps).map(|&(r, _)| r).collect();
        let exps = ranks
            .into_iter()
            .map(|r| (r, self.exponent_of(r as usize).max(other.exponent_of(r as usize))))
            .collect();
        Monomial { exps }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let exps = self
            .exps
            .iter()
            .filter_map(|&(r, e)| {
                let eb = other.exponent_of(r as usize);
                if eb == 0 {
                    None
                } else {
                    Some((r, e.min(eb)))
                }
            })
            .collect();
        Monomial { exps }
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Monomial::one();
        }
        Monomial { exps: self.exps.iter().map(|&(r, e)| (r, e * k)).collect() }
    }

    /// All exponents at most 1.
    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e <= 1)
    }

    /// All exponents even (true for the unit monomial).
    pub fn all_even(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e % 2 == 0)
    }

    /// Drops the given variable entirely.
    pub fn without_rank(&self, rank: usize) -> Self {
        Monomial {
            exps: self.exps.iter().copied().filter(|&(r, _)| r as usize != rank).collect(),
        }
    }

    /// Grevlex restricted to the ranks accepted by `keep`; used both for the
    /// plain order (keep everything) and for the blocks of the elimination
    /// order.
    fn cmp_grevlex_filtered(&self, other: &Self, keep: &dyn Fn(usize) -> bool) -> Ordering {
        let da: u64 =
            self.exps.iter().filter(|&&(r, _)| keep(r as usize)).map(|&(_, e)| e as u64).sum();
        let db: u64 =
            other.exps.iter().filter(|&&(r, _)| keep(r as usize)).map(|&(_, e)| e as u64).sum();
        if da != db {
            return da.cmp(&db);
        }
        // Walk the kept entries from the highest rank down; at the first rank
        // where the exponents differ, a negative difference means "greater".
        let mut i = self.exps.len();
        let mut j = other.exps.len();
        loop {
            let prev_a = self.exps[..i].iter().rposition(|&(r, _)| keep(r as usize));
            let prev_b = other.exps[..j].iter().rposition(|&(r, _)| keep(r as usize));
            match (prev_a, prev_b) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(ia), Some(ib)) => {
                    let (ra, ea) = self.exps[ia];
                    let (rb, eb) = other.exps[ib];
                    match ra.cmp(&rb) {
                        // we carry a positive exponent at a higher rank than
                        // the other side: difference positive at the
                        // rightmost nonzero entry, so we are smaller
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Equal => {
                            if ea != eb {
                                return if ea < eb { Ordering::Greater } else { Ordering::Less };
                            }
                            i = ia;
                            j = ib;
                        }
                    }
                }
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grevlex_filtered(other, &|_| true)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total monomial order used by the Groebner machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic order (the crate default).
    Grevlex,
    /// Product order for elimination: compare the eliminated-variable parts
    /// by grevlex first, then the remaining parts.  Any monomial involving an
    /// eliminated variable beats every monomial free of them, so a Groebner
    /// basis under this order intersects cleanly with the kept subring.
    Block { eliminated: BTreeSet<usize> },
}

impl MonomialOrder {
    pub fn elimination(eliminated: BTreeSet<usize>) -> Self {
        MonomialOrder::Block { eliminated }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp(b),
            MonomialOrder::Block { eliminated } => {
                let first = a.cmp_grevlex_filtered(b, &|r| eliminated.contains(&r));
                if first != Ordering::Equal {
                    return first;
                }
                a.cmp_grevlex_filtered(b, &|r| !eliminated.contains(&r))
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.compare(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}
