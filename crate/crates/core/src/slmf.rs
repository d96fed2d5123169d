//! Supports of linkage matching fields (SLMFs).
//!
//! An `(r, m)`-SLMF is a list of `m − r` subsets `φ_j ⊆ [m]`, each of size
//! `r + 1`, such that every nonempty collection `T` of them covers at least
//! `#T + r` rows. Two independent tests are provided: a combinatorial one on
//! the supports and a randomized rank test of the dual basis they induce.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{exact_rank, Fp};
use crate::linalg::{numerical_rank, DEFAULT_RANK_TOL};
use crate::pattern::ObservationPattern;
use crate::plucker::{evaluate_bphi, plucker_of_rows, SubspaceBasis};
use crate::rng::trial_rng;
use crate::subsets::{mask_of, MAX_AMBIENT};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slmf {
    m: usize,
    r: usize,
    columns: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlmfMethod {
    Combinatorial,
    RandomizedRank,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlmfVerdict {
    pub is_slmf: bool,
    /// Violating column set (0-based), present for combinatorial failures.
    pub witness: Option<Vec<usize>>,
    pub method: SlmfMethod,
}

impl Slmf {
    /// Columns are 0-based row sets; each is sorted on construction.
    pub fn new(m: usize, r: usize, columns: Vec<Vec<usize>>) -> Result<Self> {
        if m == 0 || m > MAX_AMBIENT {
            return Err(Error::arg(format!("ambient dimension {m} outside 1..={MAX_AMBIENT}")));
        }
        if r > m {
            return Err(Error::arg(format!("rank {r} exceeds ambient dimension {m}")));
        }
        if columns.len() != m - r {
            return Err(Error::arg(format!(
                "expected {} columns, found {}",
                m - r,
                columns.len()
            )));
        }
        let mut cols = Vec::with_capacity(columns.len());
        for (j, mut c) in columns.into_iter().enumerate() {
            c.sort_unstable();
            c.dedup();
            if c.len() != r + 1 {
                return Err(Error::arg(format!(
                    "column {} has {} distinct rows, expected {}",
                    j + 1,
                    c.len(),
                    r + 1
                )));
            }
            if c.last().is_some_and(|&i| i >= m) {
                return Err(Error::arg(format!("column {} has a row outside [m]", j + 1)));
            }
            cols.push(c);
        }
        Ok(Slmf { m, r, columns: cols })
    }

    /// Read an SLMF from an `m × (m − r)` 0/1 pattern.
    pub fn from_pattern(pattern: &ObservationPattern, r: usize) -> Result<Self> {
        let m = pattern.m();
        if r >= m || pattern.n() != m - r {
            return Err(Error::arg(format!(
                "an ({r},{m})-SLMF grid needs {} columns, found {}",
                m.saturating_sub(r),
                pattern.n()
            )));
        }
        Self::new(m, r, pattern.supports().to_vec())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn to_pattern(&self) -> ObservationPattern {
        ObservationPattern::from_supports(self.m, &self.columns).expect("valid by construction")
    }

    fn masks(&self) -> Vec<u64> {
        self.columns.iter().map(|c| mask_of(c)).collect()
    }
}

/// Kuhn augmenting-path matching of left vertices (row masks) into rows.
struct RowMatcher<'a> {
    left: &'a [u64],
    owner: [Option<usize>; 64],
    seen: u64,
}

impl<'a> RowMatcher<'a> {
    fn new(left: &'a [u64]) -> Self {
        RowMatcher {
            left,
            owner: [None; 64],
            seen: 0,
        }
    }

    fn augment(&mut self, v: usize) -> bool {
        let mut avail = self.left[v] & !self.seen;
        while avail != 0 {
            let row = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            self.seen |= 1 << row;
            if self.owner[row].is_none_or(|w| self.augment(w)) {
                self.owner[row] = Some(v);
                return true;
            }
        }
        false
    }

    fn saturates_left(mut self) -> bool {
        for v in 0..self.left.len() {
            self.seen = 0;
            if !self.augment(v) {
                return false;
            }
        }
        true
    }
}

/// True iff every subset `T` of `masks` that contains `masks[pivot]` covers
/// at least `#T + r` rows.
///
/// Replicating the pivot `r + 1` times turns the surplus condition into
/// Hall's condition, decided by one bipartite matching.
pub(crate) fn surplus_holds_at(masks: &[u64], r: usize, pivot: usize) -> bool {
    let mut left = Vec::with_capacity(masks.len() + r);
    left.extend_from_slice(masks);
    left.extend(std::iter::repeat_n(masks[pivot], r));
    RowMatcher::new(&left).saturates_left()
}

/// True iff every nonempty subset of `masks` satisfies the surplus-`r` union bound.
pub(crate) fn surplus_holds(masks: &[u64], r: usize) -> bool {
    (0..masks.len()).all(|p| surplus_holds_at(masks, r, p))
}

/// Smallest violating `T`, ties broken lexicographically.
fn minimal_witness(masks: &[u64], r: usize) -> Option<Vec<usize>> {
    for size in 1..=masks.len() {
        for t in (0..masks.len()).combinations(size) {
            let union = t.iter().fold(0u64, |acc, &j| acc | masks[j]);
            if (union.count_ones() as usize) < size + r {
                return Some(t);
            }
        }
    }
    None
}

/// Decide the SLMF property from the supports alone.
pub fn check_slmf_combinatorial(phi: &Slmf) -> SlmfVerdict {
    let masks = phi.masks();
    let is_slmf = surplus_holds(&masks, phi.r);
    let witness = if is_slmf {
        None
    } else {
        Some(minimal_witness(&masks, phi.r).expect("a violated surplus condition has a witness"))
    };
    SlmfVerdict {
        is_slmf,
        witness,
        method: SlmfMethod::Combinatorial,
    }
}

/// Randomized test over `GF(2^61 − 1)`: the SLMF property holds iff the dual
/// basis `B_Φ` evaluated at a generic subspace has full column rank.
///
/// One full-rank trial is conclusive; a false answer after all trials is
/// wrong with probability at most `(deg / p)^trials`.
pub fn check_slmf_randomized(phi: &Slmf, trials: usize, seed: u64) -> Result<SlmfVerdict> {
    if trials == 0 {
        return Err(Error::arg("trials must be at least 1"));
    }
    let (m, r) = (phi.m, phi.r);
    let is_slmf = (0..trials as u64).any(|t| {
        let mut rng = trial_rng(seed, t);
        let rows: Vec<Vec<Fp>> = (0..m)
            .map(|_| (0..r).map(|_| Fp::random(&mut rng)).collect())
            .collect();
        let Some(p) = plucker_of_rows(m, r, &rows).expect("dimensions checked by Slmf") else {
            return false;
        };
        let b = evaluate_bphi(phi, &p).expect("matching dimensions");
        exact_rank(&b) == m - r
    });
    Ok(SlmfVerdict {
        is_slmf,
        witness: None,
        method: SlmfMethod::RandomizedRank,
    })
}

/// Floating-point variant of [`check_slmf_randomized`] for cross-checking.
pub fn check_slmf_randomized_float(phi: &Slmf, trials: usize, seed: u64) -> Result<SlmfVerdict> {
    if trials == 0 {
        return Err(Error::arg("trials must be at least 1"));
    }
    let (m, r) = (phi.m, phi.r);
    let mut is_slmf = false;
    for t in 0..trials as u64 {
        let basis = SubspaceBasis::random(m, r, &mut trial_rng(seed, t))?;
        let p = basis.plucker();
        let b = evaluate_bphi(phi, &p)?;
        let mat = nalgebra::DMatrix::from_fn(m, m - r, |i, j| b[i][j]);
        if numerical_rank(&mat, DEFAULT_RANK_TOL).rank() == Some(m - r) {
            is_slmf = true;
            break;
        }
    }
    Ok(SlmfVerdict {
        is_slmf,
        witness: None,
        method: SlmfMethod::RandomizedRank,
    })
}
