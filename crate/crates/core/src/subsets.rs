//! Subset enumeration and the lexicographic index of r-subsets.
//!
//! Every enumeration in the crate goes through this module so that the
//! ordering of r-subsets (and with it the layout of Plücker vectors) is the
//! same everywhere: sorted elements, lexicographic order.

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest ambient dimension accepted by the dense Plücker layout.
pub const MAX_AMBIENT: usize = 64;
/// Largest number of coordinates a dense Plücker vector may hold.
pub const MAX_COORDINATES: u64 = 1 << 24;

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// All size-`k` subsets of `omega` in lexicographic order.
///
/// `omega` is sorted before enumeration; the result is empty when
/// `omega.len() < k`.
pub fn column_subsets(omega: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut sorted = omega.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < k {
        return Vec::new();
    }
    sorted.into_iter().combinations(k).collect()
}

/// Position of an r-subset of `[m]` in lexicographic order.
///
/// Lexicographic ranking of r-subsets of `[m]` (0-based), shared by every
/// Plücker vector with the same `(r, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetIndex {
    m: usize,
    r: usize,
    len: usize,
}

impl SubsetIndex {
    pub fn new(m: usize, r: usize) -> Result<Self> {
        if m == 0 || m > MAX_AMBIENT {
            return Err(Error::TooLarge(format!("ambient dimension {m} outside 1..={MAX_AMBIENT}")));
        }
        if r > m {
            return Err(Error::arg(format!("subset size {r} exceeds ambient dimension {m}")));
        }
        let len = binomial(m, r);
        if len > MAX_COORDINATES {
            return Err(Error::TooLarge(format!("binomial({m}, {r}) = {len} coordinates")));
        }
        Ok(SubsetIndex { m, r, len: len as usize })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Rank of a sorted 0-based subset. Returns `None` for malformed input.
    pub fn rank(&self, subset: &[usize]) -> Option<usize> {
        if subset.len() != self.r || subset.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        if subset.last().is_some_and(|&x| x >= self.m) {
            return None;
        }
        let (m, r) = (self.m, self.r);
        let mut rank = 0u64;
        let mut lo = 0usize;
        for (i, &s) in subset.iter().enumerate() {
            // Subsets whose i-th element lies in lo..s come first.
            rank += binomial(m - lo, r - i) - binomial(m - s, r - i);
            lo = s + 1;
        }
        Some(rank as usize)
    }

    /// Inverse of [`SubsetIndex::rank`].
    pub fn unrank(&self, mut rank: usize) -> Vec<usize> {
        assert!(rank < self.len, "rank {rank} out of range");
        let mut out = Vec::with_capacity(self.r);
        let mut v = 0usize;
        for i in 0..self.r {
            loop {
                let block = binomial(self.m - 1 - v, self.r - 1 - i) as usize;
                if rank < block {
                    break;
                }
                rank -= block;
                v += 1;
            }
            out.push(v);
            v += 1;
        }
        out
    }

    /// Iterate over all subsets in index order.
    pub fn subsets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.m).combinations(self.r)
    }
}

/// Bitmask of a subset of `[m]`, `m <= 64`.
pub(crate) fn mask_of(subset: &[usize]) -> u64 {
    subset.iter().fold(0u64, |acc, &i| acc | (1u64 << i))
}

pub(crate) fn elements_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Sign of the permutation that sorts the concatenation `(subset, complement)`.
pub fn shuffle_sign(subset: &[usize], m: usize) -> i8 {
    // Each element s_i of the sorted subset jumps over the complement
    // elements smaller than it: s_i - i of them.
    let inversions: usize = subset.iter().enumerate().map(|(i, &s)| s - i).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        debug_assert!(subset.iter().all(|&s| s < m));
        -1
    }
}

pub fn complement(subset: &[usize], m: usize) -> Vec<usize> {
    (0..m).filter(|i| !subset.contains(i)).collect()
}
