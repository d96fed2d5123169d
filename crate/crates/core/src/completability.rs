//! Completability certificates and the relaxed counting condition.
//!
//! A certificate partitions the columns of a pattern into `r` groups (finite
//! completability) or `r + 1` groups (unique completability) and exhibits,
//! for every group, an `(r, m)`-SLMF whose columns are `(r + 1)`-subsets of
//! supports of columns in that group.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{check_rank, ObservationPattern};
use crate::slmf::{check_slmf_combinatorial, surplus_holds_at, Slmf};
use crate::subsets::{column_subsets, elements_of, mask_of, MAX_AMBIENT};

/// Default search budget, in backtracking nodes.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Largest row count for which the relaxed condition is enumerated.
pub const MAX_RELAXED_ROWS: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Finite,
    Unique,
}

impl CertificateKind {
    pub fn groups(self, r: usize) -> usize {
        match self {
            CertificateKind::Finite => r,
            CertificateKind::Unique => r + 1,
        }
    }
}

/// One SLMF column together with the pattern column it was drawn from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlmfColumn {
    pub support: Vec<usize>,
    pub source_column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSlmf {
    pub columns: Vec<SlmfColumn>,
}

/// Partition-plus-SLMFs witness. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub partition: Vec<Vec<usize>>,
    pub slmfs: Vec<GroupSlmf>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    kind: CertificateKind,
    partition: Vec<Vec<usize>>,
    slmfs: Vec<GroupJson>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    columns: Vec<ColumnJson>,
}

#[derive(Serialize, Deserialize)]
struct ColumnJson {
    support: Vec<usize>,
    source_column: usize,
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn zero_based(v: &[usize]) -> Result<Vec<usize>> {
    v.iter()
        .map(|&i| i.checked_sub(1).ok_or_else(|| Error::arg("certificate indices are 1-based")))
        .collect()
}

impl Certificate {
    fn raw(&self) -> CertificateJson {
        CertificateJson {
            kind: self.kind,
            partition: self.partition.iter().map(|g| one_based(g)).collect(),
            slmfs: self
                .slmfs
                .iter()
                .map(|g| GroupJson {
                    columns: g
                        .columns
                        .iter()
                        .map(|c| ColumnJson {
                            support: one_based(&c.support),
                            source_column: c.source_column + 1,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.raw()).expect("certificate serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.raw()).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: CertificateJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let partition = raw.partition.iter().map(|g| zero_based(g)).collect::<Result<_>>()?;
        let slmfs = raw
            .slmfs
            .iter()
            .map(|g| {
                let columns = g
                    .columns
                    .iter()
                    .map(|c| {
                        Ok(SlmfColumn {
                            support: zero_based(&c.support)?,
                            source_column: zero_based(&[c.source_column])?[0],
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok(GroupSlmf { columns })
            })
            .collect::<Result<_>>()?;
        Ok(Certificate {
            kind: raw.kind,
            partition,
            slmfs,
        })
    }
}

/// The first clause a certificate fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateFailure {
    /// Clause (i): a column observes fewer than `r` rows.
    ColumnTooSmall { column: usize, size: usize },
    WrongGroupCount { expected: usize, found: usize },
    NotAPartition { detail: String },
    SlmfShape { group: usize, detail: String },
    SourceOutsideGroup { group: usize, slot: usize, source: usize },
    SupportOutsideSource { group: usize, slot: usize, source: usize },
    NotAnSlmf { group: usize, witness: Vec<usize> },
}

impl CertificateFailure {
    /// `"i"`, `"ii"` or `"structure"`.
    pub fn clause(&self) -> &'static str {
        match self {
            CertificateFailure::ColumnTooSmall { .. } => "i",
            CertificateFailure::WrongGroupCount { .. } | CertificateFailure::NotAPartition { .. } => "structure",
            _ => "ii",
        }
    }
}

impl fmt::Display for CertificateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CertificateFailure::*;
        match self {
            ColumnTooSmall { column, size } => {
                write!(f, "clause (i): column {} observes only {size} rows", column + 1)
            }
            WrongGroupCount { expected, found } => write!(f, "expected {expected} groups, found {found}"),
            NotAPartition { detail } => write!(f, "not a partition of the columns: {detail}"),
            SlmfShape { group, detail } => write!(f, "clause (ii): group {}: {detail}", group + 1),
            SourceOutsideGroup { group, slot, source } => write!(
                f,
                "clause (ii): group {} slot {} draws from column {} outside the group",
                group + 1,
                slot + 1,
                source + 1
            ),
            SupportOutsideSource { group, slot, source } => write!(
                f,
                "clause (ii): group {} slot {} is not contained in the support of column {}",
                group + 1,
                slot + 1,
                source + 1
            ),
            NotAnSlmf { group, witness } => write!(
                f,
                "clause (ii): group {} is not an SLMF, violated at columns {:?}",
                group + 1,
                one_based(witness)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCheck {
    pub valid: bool,
    pub failure: Option<CertificateFailure>,
}

impl CertificateCheck {
    fn fail(f: CertificateFailure) -> Self {
        CertificateCheck {
            valid: false,
            failure: Some(f),
        }
    }
}

/// Check both hypotheses of the certificate against the pattern.
pub fn verify_certificate(pattern: &ObservationPattern, r: usize, cert: &Certificate) -> CertificateCheck {
    let (m, n) = (pattern.m(), pattern.n());
    if let Some((j, s)) = pattern.column_sizes().into_iter().enumerate().find(|&(_, s)| s < r) {
        return CertificateCheck::fail(CertificateFailure::ColumnTooSmall { column: j, size: s });
    }
    let groups = cert.kind.groups(r);
    if cert.partition.len() != groups || cert.slmfs.len() != groups {
        return CertificateCheck::fail(CertificateFailure::WrongGroupCount {
            expected: groups,
            found: cert.partition.len(),
        });
    }
    let mut owner = vec![None; n];
    for (g, part) in cert.partition.iter().enumerate() {
        if part.is_empty() {
            return CertificateCheck::fail(CertificateFailure::NotAPartition {
                detail: format!("group {} is empty", g + 1),
            });
        }
        for &j in part {
            if j >= n {
                return CertificateCheck::fail(CertificateFailure::NotAPartition {
                    detail: format!("column {} does not exist", j + 1),
                });
            }
            if owner[j].replace(g).is_some() {
                return CertificateCheck::fail(CertificateFailure::NotAPartition {
                    detail: format!("column {} appears twice", j + 1),
                });
            }
        }
    }
    if let Some(j) = owner.iter().position(Option::is_none) {
        return CertificateCheck::fail(CertificateFailure::NotAPartition {
            detail: format!("column {} is not covered", j + 1),
        });
    }
    for (g, group) in cert.slmfs.iter().enumerate() {
        for (slot, col) in group.columns.iter().enumerate() {
            if col.source_column >= n || owner[col.source_column] != Some(g) {
                return CertificateCheck::fail(CertificateFailure::SourceOutsideGroup {
                    group: g,
                    slot,
                    source: col.source_column,
                });
            }
            let support = pattern.support(col.source_column);
            if col.support.len() != r + 1 || !col.support.iter().all(|i| support.contains(i)) {
                return CertificateCheck::fail(CertificateFailure::SupportOutsideSource {
                    group: g,
                    slot,
                    source: col.source_column,
                });
            }
        }
        let slmf = match Slmf::new(m, r, group.columns.iter().map(|c| c.support.clone()).collect()) {
            Ok(s) => s,
            Err(e) => {
                return CertificateCheck::fail(CertificateFailure::SlmfShape {
                    group: g,
                    detail: e.to_string(),
                })
            }
        };
        let verdict = check_slmf_combinatorial(&slmf);
        if !verdict.is_slmf {
            return CertificateCheck::fail(CertificateFailure::NotAnSlmf {
                group: g,
                witness: verdict.witness.unwrap_or_default(),
            });
        }
    }
    CertificateCheck {
        valid: true,
        failure: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Certificate),
    /// Exhaustive search found nothing.
    NotFound,
    BudgetExhausted,
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug)]
struct Exhausted;

struct Budget {
    remaining: u64,
}

impl Budget {
    fn tick(&mut self) -> std::result::Result<(), Exhausted> {
        if self.remaining == 0 {
            return Err(Exhausted);
        }
        self.remaining -= 1;
        Ok(())
    }
}

type Selection = Vec<(u64, usize)>;
type Assignment = (Vec<Vec<usize>>, Vec<Selection>);

struct CertificateSearch<'a> {
    r: usize,
    full: u64,
    slots: usize,
    groups: usize,
    useful: Vec<usize>,
    /// Masks of `Ω_k` per pattern column.
    candidates: &'a [Vec<u64>],
    memo: HashMap<Vec<usize>, Option<Selection>>,
    budget: Budget,
}

impl CertificateSearch<'_> {
    fn coverage(&self, columns: impl Iterator<Item = usize>) -> u64 {
        columns.fold(0, |acc, k| self.candidates[k].iter().fold(acc, |a, &c| a | c))
    }

    /// An SLMF drawn from the `Ω_k`, `k ∈ columns`, if one exists.
    fn group_slmf(&mut self, columns: &[usize]) -> std::result::Result<Option<Selection>, Exhausted> {
        if let Some(hit) = self.memo.get(columns) {
            return Ok(hit.clone());
        }
        let mut pool: Vec<(u64, usize)> = Vec::new();
        for &k in columns {
            for &c in &self.candidates[k] {
                if !pool.iter().any(|&(p, _)| p == c) {
                    pool.push((c, k));
                }
            }
        }
        pool.sort_by_key(|&(c, _)| elements_of(c));
        let result = if self.coverage(columns.iter().copied()) != self.full {
            None
        } else {
            let mut suffix = vec![0u64; pool.len() + 1];
            for i in (0..pool.len()).rev() {
                suffix[i] = suffix[i + 1] | pool[i].0;
            }
            let mut chosen = Vec::with_capacity(self.slots);
            self.extend(&pool, &suffix, 0, 0, &mut chosen)?
                .then(|| chosen.iter().map(|&i| pool[i]).collect())
        };
        self.memo.insert(columns.to_vec(), result.clone());
        Ok(result)
    }

    fn extend(
        &mut self,
        pool: &[(u64, usize)],
        suffix: &[u64],
        start: usize,
        union: u64,
        chosen: &mut Vec<usize>,
    ) -> std::result::Result<bool, Exhausted> {
        if chosen.len() == self.slots {
            return Ok(true);
        }
        let need = self.slots - chosen.len();
        if pool.len() < start + need {
            return Ok(false);
        }
        let mut masks: Vec<u64> = chosen.iter().map(|&i| pool[i].0).collect();
        for i in start..=pool.len() - need {
            if (union | suffix[i]) != self.full {
                break;
            }
            self.budget.tick()?;
            masks.push(pool[i].0);
            let ok = surplus_holds_at(&masks, self.r, masks.len() - 1);
            masks.pop();
            if !ok {
                continue;
            }
            chosen.push(i);
            if self.extend(pool, suffix, i + 1, union | pool[i].0, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    /// Restricted-growth assignment of useful columns to groups, groups
    /// ordered by their smallest column.
    fn assign(&mut self, pos: usize, groups: &mut Vec<Vec<usize>>) -> std::result::Result<Option<Assignment>, Exhausted> {
        self.budget.tick()?;
        let left = self.useful.len() - pos;
        if left + groups.len() < self.groups {
            return Ok(None);
        }
        // Every group must still be able to cover all rows.
        let rest = self.coverage(self.useful[pos..].iter().copied());
        if groups
            .iter()
            .any(|g| (self.coverage(g.iter().copied()) | rest) != self.full)
        {
            return Ok(None);
        }
        if pos == self.useful.len() {
            let mut found = Vec::with_capacity(groups.len());
            for g in groups.iter() {
                match self.group_slmf(g)? {
                    Some(sel) => found.push(sel),
                    None => return Ok(None),
                }
            }
            return Ok(Some((groups.clone(), found)));
        }
        let col = self.useful[pos];
        for g in 0..groups.len() {
            groups[g].push(col);
            let res = self.assign(pos + 1, groups)?;
            groups[g].pop();
            if res.is_some() {
                return Ok(res);
            }
        }
        if groups.len() < self.groups {
            groups.push(vec![col]);
            let res = self.assign(pos + 1, groups)?;
            groups.pop();
            if res.is_some() {
                return Ok(res);
            }
        }
        Ok(None)
    }
}

fn find_certificate(
    pattern: &ObservationPattern,
    r: usize,
    kind: CertificateKind,
    budget: u64,
) -> Result<SearchOutcome> {
    check_rank(pattern, r)?;
    let (m, n) = (pattern.m(), pattern.n());
    if m > MAX_AMBIENT {
        return Err(Error::TooLarge(format!("{m} rows exceeds {MAX_AMBIENT}")));
    }
    let groups = kind.groups(r);
    let sizes = pattern.column_sizes();
    if sizes.iter().any(|&s| s < r) || n < groups {
        return Ok(SearchOutcome::NotFound);
    }
    if m == r {
        // Zero-column SLMFs: any partition into nonempty groups works.
        let mut partition: Vec<Vec<usize>> = (0..groups).map(|g| vec![g]).collect();
        partition[groups - 1].extend(groups..n);
        let slmfs = vec![GroupSlmf { columns: vec![] }; groups];
        return Ok(SearchOutcome::Found(Certificate { kind, partition, slmfs }));
    }
    let candidates: Vec<Vec<u64>> = pattern
        .supports()
        .iter()
        .map(|s| column_subsets(s, r + 1).iter().map(|c| mask_of(c)).collect())
        .collect();
    let useful: Vec<usize> = (0..n).filter(|&j| sizes[j] > r).collect();
    let mut search = CertificateSearch {
        r,
        full: if m == 64 { u64::MAX } else { (1u64 << m) - 1 },
        slots: m - r,
        groups,
        useful,
        candidates: &candidates,
        memo: HashMap::new(),
        budget: Budget { remaining: budget },
    };
    let mut assignment = Vec::new();
    let (mut groups_cols, selections) = match search.assign(0, &mut assignment) {
        Err(Exhausted) => return Ok(SearchOutcome::BudgetExhausted),
        Ok(None) => return Ok(SearchOutcome::NotFound),
        Ok(Some(found)) => found,
    };
    // Columns observing exactly r rows carry no subsets; they join the last group.
    let harmless: Vec<usize> = (0..n).filter(|&j| sizes[j] == r).collect();
    let mut partition: Vec<Vec<usize>> = Vec::new();
    let mut slmfs = Vec::new();
    groups_cols[groups - 1].extend(harmless);
    for (mut cols, sel) in groups_cols.into_iter().zip(selections) {
        cols.sort_unstable();
        partition.push(cols);
        slmfs.push(GroupSlmf {
            columns: sel
                .into_iter()
                .map(|(mask, source)| SlmfColumn {
                    support: elements_of(mask),
                    source_column: source,
                })
                .collect(),
        });
    }
    let mut order: Vec<usize> = (0..partition.len()).collect();
    order.sort_by_key(|&g| partition[g][0]);
    let cert = Certificate {
        kind,
        partition: order.iter().map(|&g| partition[g].clone()).collect(),
        slmfs: order.iter().map(|&g| slmfs[g].clone()).collect(),
    };
    debug_assert!(verify_certificate(pattern, r, &cert).valid);
    Ok(SearchOutcome::Found(cert))
}

/// Search for an `r`-group certificate of finite completability.
pub fn find_finite_certificate(pattern: &ObservationPattern, r: usize, budget: u64) -> Result<SearchOutcome> {
    find_certificate(pattern, r, CertificateKind::Finite, budget)
}

/// Search for an `(r + 1)`-group certificate of unique completability.
pub fn find_unique_certificate(pattern: &ObservationPattern, r: usize, budget: u64) -> Result<SearchOutcome> {
    find_certificate(pattern, r, CertificateKind::Unique, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelaxedViolation {
    SizeMismatch { required: usize, actual: usize },
    /// Inequality fails at this row set (0-based).
    Inequality { rows: Vec<usize>, lhs: usize, rhs: usize },
    /// Inequality holds at `[m]` but not with equality.
    NotTight { lhs: usize, rhs: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelaxedVerdict {
    pub holds: bool,
    pub violation: Option<RelaxedViolation>,
}

fn relaxed_lhs(columns: &[u64], rows: u64, r: usize) -> usize {
    columns
        .iter()
        .map(|&c| ((c & rows).count_ones() as usize).saturating_sub(r))
        .sum()
}

fn relaxed_violation(
    columns: &[u64],
    m: usize,
    r: usize,
    budget: &mut Budget,
) -> std::result::Result<Option<RelaxedViolation>, Exhausted> {
    for size in r + 1..=m {
        for rows in (0..m).combinations(size) {
            budget.tick()?;
            let lhs = relaxed_lhs(columns, mask_of(&rows), r);
            let rhs = r * (size - r);
            if lhs > rhs {
                return Ok(Some(RelaxedViolation::Inequality { rows, lhs, rhs }));
            }
        }
    }
    let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let lhs = relaxed_lhs(columns, all, r);
    let rhs = r * (m - r);
    Ok((lhs != rhs).then_some(RelaxedViolation::NotTight { lhs, rhs }))
}

fn column_masks(pattern: &ObservationPattern) -> Vec<u64> {
    pattern.supports().iter().map(|s| mask_of(s)).collect()
}

fn relaxed_guard(pattern: &ObservationPattern, r: usize) -> Result<()> {
    check_rank(pattern, r)?;
    if pattern.m() > MAX_RELAXED_ROWS {
        return Err(Error::TooLarge(format!(
            "relaxed condition enumerates 2^{} row sets (limit 2^{MAX_RELAXED_ROWS})",
            pattern.m()
        )));
    }
    Ok(())
}

/// Exact-size pattern satisfying the row-subset counting inequality for every
/// `I` with `#I ≥ r + 1`, with equality at `I = [m]`. Violations are reported
/// for the smallest `I`, ties broken lexicographically.
pub fn check_relaxed_slmf(pattern: &ObservationPattern, r: usize) -> Result<RelaxedVerdict> {
    relaxed_guard(pattern, r)?;
    let required = r * (pattern.m() + pattern.n() - r);
    if pattern.len() != required {
        return Ok(RelaxedVerdict {
            holds: false,
            violation: Some(RelaxedViolation::SizeMismatch {
                required,
                actual: pattern.len(),
            }),
        });
    }
    let mut unlimited = Budget { remaining: u64::MAX };
    let violation = relaxed_violation(&column_masks(pattern), pattern.m(), r, &mut unlimited)
        .expect("unbounded budget");
    Ok(RelaxedVerdict {
        holds: violation.is_none(),
        violation,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NecessaryOutcome {
    /// A sub-pattern of size `r(m+n−r)` satisfying the relaxed condition.
    Contains { witness: ObservationPattern },
    NotContained,
    Inconclusive,
}

/// Search the size-`r(m+n−r)` sub-patterns for one satisfying the relaxed
/// condition. Every generically finitely completable pattern contains one.
///
/// The budget counts evaluated `(sub-pattern, row set)` pairs.
pub fn check_necessary_condition(pattern: &ObservationPattern, r: usize, budget: u64) -> Result<NecessaryOutcome> {
    relaxed_guard(pattern, r)?;
    let (m, n) = (pattern.m(), pattern.n());
    let target = r * (m + n - r);
    if pattern.len() < target {
        return Ok(NecessaryOutcome::NotContained);
    }
    let entries = pattern.entries_by_column();
    let surplus = entries.len() - target;
    let mut budget = Budget { remaining: budget };
    let base = column_masks(pattern);
    for removed in (0..entries.len()).combinations(surplus) {
        let mut cols = base.clone();
        for &e in &removed {
            let (i, j) = entries[e];
            cols[j] &= !(1u64 << i);
        }
        match relaxed_violation(&cols, m, r, &mut budget) {
            Err(Exhausted) => return Ok(NecessaryOutcome::Inconclusive),
            Ok(Some(_)) => continue,
            Ok(None) => {
                let kept = entries
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| !removed.contains(k))
                    .map(|(_, &e)| e);
                let witness = ObservationPattern::new(m, n, kept)?;
                return Ok(NecessaryOutcome::Contains { witness });
            }
        }
    }
    Ok(NecessaryOutcome::NotContained)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_pattern, extended_pattern, phi1, phi2, phi3, relaxed_counterexample};

    fn reference_certificate() -> Certificate {
        let col = |s: &[usize], src: usize| SlmfColumn {
            support: s.to_vec(),
            source_column: src,
        };
        let g1 = phi1().columns().iter().enumerate().map(|(k, s)| col(s, if k < 3 { 0 } else { 1 })).collect();
        let g2 = phi2().columns().iter().enumerate().map(|(k, s)| col(s, if k < 3 { 3 } else { 4 })).collect();
        Certificate {
            kind: CertificateKind::Finite,
            partition: vec![vec![0, 1], vec![2, 3, 4]],
            slmfs: vec![GroupSlmf { columns: g1 }, GroupSlmf { columns: g2 }],
        }
    }

    #[test]
    fn reference_certificate_verifies() {
        let check = verify_certificate(&example_pattern(), 2, &reference_certificate());
        assert!(check.valid, "{:?}", check.failure);
    }

    #[test]
    fn extended_certificate_verifies() {
        let mut cert = reference_certificate();
        cert.kind = CertificateKind::Unique;
        cert.partition = vec![vec![0, 1], vec![3, 4], vec![2, 5]];
        let sources = [2, 2, 5, 5];
        cert.slmfs.push(GroupSlmf {
            columns: phi3()
                .columns()
                .iter()
                .zip(sources)
                .map(|(s, src)| SlmfColumn {
                    support: s.clone(),
                    source_column: src,
                })
                .collect(),
        });
        let check = verify_certificate(&extended_pattern(), 2, &cert);
        assert!(check.valid, "{:?}", check.failure);
    }

    #[test]
    fn verification_failures_name_the_clause() {
        let p = example_pattern();
        let mut cert = reference_certificate();
        cert.slmfs[0].columns[0].source_column = 3;
        let c = verify_certificate(&p, 2, &cert);
        assert_eq!(c.failure.as_ref().unwrap().clause(), "ii");
        assert!(matches!(c.failure, Some(CertificateFailure::SourceOutsideGroup { .. })));

        let mut cert = reference_certificate();
        cert.slmfs[0].columns[3].support = vec![3, 4, 5];
        cert.slmfs[0].columns[3].source_column = 0;
        assert!(matches!(
            verify_certificate(&p, 2, &cert).failure,
            Some(CertificateFailure::SupportOutsideSource { .. })
        ));

        let mut cert = reference_certificate();
        cert.partition = vec![vec![0, 1], vec![3, 4]];
        assert!(matches!(
            verify_certificate(&p, 2, &cert).failure,
            Some(CertificateFailure::NotAPartition { .. })
        ));

        let small = p.without_entry(1, 2);
        let c = verify_certificate(&small, 2, &reference_certificate());
        assert_eq!(c.failure.as_ref().unwrap().clause(), "i");
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = reference_certificate();
        let text = cert.to_json();
        assert!(text.contains(r#""partition":[[1,2],[3,4,5]]"#));
        assert!(text.contains(r#"{"support":[4,5,6],"source_column":2}"#));
        assert_eq!(Certificate::from_json(&text).unwrap(), cert);
    }

    #[test]
    fn finds_finite_certificate_for_example() {
        let p = example_pattern();
        let out = find_finite_certificate(&p, 2, DEFAULT_BUDGET).unwrap();
        let cert = out.certificate().expect("certificate");
        assert_eq!(cert.partition, vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(cert.slmfs[0].columns.iter().map(|c| c.support.clone()).collect::<Vec<_>>(), phi1().columns());
        assert!(verify_certificate(&p, 2, cert).valid);
    }

    #[test]
    fn no_unique_certificate_for_example() {
        assert_eq!(
            find_unique_certificate(&example_pattern(), 2, DEFAULT_BUDGET).unwrap(),
            SearchOutcome::NotFound
        );
    }

    #[test]
    fn finds_unique_certificate_for_extension() {
        let p = extended_pattern();
        let out = find_unique_certificate(&p, 2, DEFAULT_BUDGET).unwrap();
        let cert = out.certificate().expect("certificate");
        assert_eq!(cert.partition, vec![vec![0, 1], vec![2, 5], vec![3, 4]]);
        assert!(verify_certificate(&p, 2, cert).valid);
    }

    #[test]
    fn single_removals_have_no_certificate() {
        let p = example_pattern();
        for (i, j) in p.entries() {
            let q = p.without_entry(i, j);
            assert_eq!(find_finite_certificate(&q, 2, DEFAULT_BUDGET).unwrap(), SearchOutcome::NotFound);
        }
    }

    #[test]
    fn small_column_short_circuits() {
        let p = example_pattern().without_entry(1, 2);
        assert_eq!(find_finite_certificate(&p, 2, 1).unwrap(), SearchOutcome::NotFound);
    }

    #[test]
    fn too_few_columns_for_groups() {
        let p = ObservationPattern::full(6, 2).unwrap();
        assert_eq!(find_unique_certificate(&p, 2, DEFAULT_BUDGET).unwrap(), SearchOutcome::NotFound);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        assert_eq!(
            find_unique_certificate(&example_pattern(), 2, 3).unwrap(),
            SearchOutcome::BudgetExhausted
        );
    }

    #[test]
    fn rank_equal_to_rows() {
        let p = ObservationPattern::full(2, 4).unwrap();
        let cert = find_unique_certificate(&p, 2, 10).unwrap();
        assert!(verify_certificate(&p, 2, cert.certificate().unwrap()).valid);
    }

    #[test]
    fn relaxed_condition_on_example() {
        let v = check_relaxed_slmf(&example_pattern(), 2).unwrap();
        assert!(v.holds, "{v:?}");
    }

    #[test]
    fn relaxed_counterexample_is_rejected_at_first_rows() {
        let v = check_relaxed_slmf(&relaxed_counterexample(), 2).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.violation,
            Some(RelaxedViolation::Inequality {
                rows: vec![0, 1, 2],
                lhs: 3,
                rhs: 2
            })
        );
    }

    #[test]
    fn relaxed_size_mismatch() {
        let v = check_relaxed_slmf(&extended_pattern(), 2).unwrap();
        assert_eq!(
            v.violation,
            Some(RelaxedViolation::SizeMismatch {
                required: 20,
                actual: 24
            })
        );
    }

    #[test]
    fn necessary_condition_outcomes() {
        match check_necessary_condition(&example_pattern(), 2, DEFAULT_BUDGET).unwrap() {
            NecessaryOutcome::Contains { witness } => assert_eq!(witness, example_pattern()),
            other => panic!("{other:?}"),
        }
        match check_necessary_condition(&extended_pattern(), 2, DEFAULT_BUDGET).unwrap() {
            NecessaryOutcome::Contains { witness } => {
                assert_eq!(witness.len(), 20);
                assert!(check_relaxed_slmf(&witness, 2).unwrap().holds);
                assert!(witness.entries().all(|(i, j)| extended_pattern().contains(i, j)));
            }
            other => panic!("{other:?}"),
        }
        let small = example_pattern().without_entry(0, 0);
        assert_eq!(
            check_necessary_condition(&small, 2, DEFAULT_BUDGET).unwrap(),
            NecessaryOutcome::NotContained
        );
        assert_eq!(
            check_necessary_condition(&extended_pattern(), 2, 5).unwrap(),
            NecessaryOutcome::Inconclusive
        );
    }
}
