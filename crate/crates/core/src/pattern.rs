//! Observation patterns: the mask of observed positions of an m x n matrix.
//!
//! Indices are 0-based in memory and 1-based in every file format and report.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::master_rng;
use crate::subsets::column_subsets;

/// A set of observed positions `Ω ⊂ [m] × [n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationPattern {
    m: usize,
    n: usize,
    entries: BTreeSet<(usize, usize)>,
    supports: Vec<Vec<usize>>,
}

/// The per-column supports `ω_j` of a pattern, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnSupportFamily {
    pub supports: Vec<Vec<usize>>,
}

impl ColumnSupportFamily {
    /// `Ω_j`: the size-`k` subsets of column `j`'s support.
    pub fn subsets_of(&self, j: usize, k: usize) -> Vec<Vec<usize>> {
        column_subsets(&self.supports[j], k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SizeCheck {
    pub required: usize,
    pub actual: usize,
    pub pass: bool,
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    m: usize,
    n: usize,
    entries: Vec<[usize; 2]>,
}

impl ObservationPattern {
    pub fn new(m: usize, n: usize, entries: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::arg(format!("pattern dimensions must be positive, got {m}x{n}")));
        }
        let mut set = BTreeSet::new();
        for (i, j) in entries {
            if i >= m || j >= n {
                return Err(Error::arg(format!(
                    "entry ({}, {}) outside a {m}x{n} pattern",
                    i + 1,
                    j + 1
                )));
            }
            set.insert((i, j));
        }
        let mut supports = vec![Vec::new(); n];
        for &(i, j) in &set {
            supports[j].push(i);
        }
        for s in &mut supports {
            s.sort_unstable();
        }
        Ok(ObservationPattern {
            m,
            n,
            entries: set,
            supports,
        })
    }

    /// Build a pattern from 0-based column supports.
    pub fn from_supports(m: usize, supports: &[Vec<usize>]) -> Result<Self> {
        let entries = supports
            .iter()
            .enumerate()
            .flat_map(|(j, s)| s.iter().map(move |&i| (i, j)));
        Self::new(m, supports.len(), entries)
    }

    /// Fully observed `m x n` pattern.
    pub fn full(m: usize, n: usize) -> Result<Self> {
        Self::new(m, n, (0..m).flat_map(|i| (0..n).map(move |j| (i, j))))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `#Ω`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.entries.contains(&(i, j))
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().copied()
    }

    /// Entries in column-major order (column by column, rows ascending).
    pub fn entries_by_column(&self) -> Vec<(usize, usize)> {
        self.supports
            .iter()
            .enumerate()
            .flat_map(|(j, s)| s.iter().map(move |&i| (i, j)))
            .collect()
    }

    pub fn support(&self, j: usize) -> &[usize] {
        &self.supports[j]
    }

    pub fn supports(&self) -> &[Vec<usize>] {
        &self.supports
    }

    pub fn column_supports(&self) -> ColumnSupportFamily {
        ColumnSupportFamily {
            supports: self.supports.clone(),
        }
    }

    pub fn column_sizes(&self) -> Vec<usize> {
        self.supports.iter().map(Vec::len).collect()
    }

    /// Columns with no observed entry (0-based).
    pub fn empty_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.supports[j].is_empty()).collect()
    }

    pub fn without_entry(&self, i: usize, j: usize) -> Self {
        let entries = self.entries.iter().copied().filter(|&e| e != (i, j));
        Self::new(self.m, self.n, entries).expect("sub-pattern of a valid pattern")
    }

    pub fn with_entry(&self, i: usize, j: usize) -> Result<Self> {
        Self::new(self.m, self.n, self.entries.iter().copied().chain([(i, j)]))
    }

    /// Simultaneously relabel rows and columns: entry `(i, j)` moves to
    /// `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        if row_perm.len() != self.m || col_perm.len() != self.n {
            return Err(Error::arg("permutation length mismatch"));
        }
        Self::new(
            self.m,
            self.n,
            self.entries.iter().map(|&(i, j)| (row_perm[i], col_perm[j])),
        )
    }

    /// Parse either the JSON form or the ASCII grid form.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_grid(text)
        }
    }

    /// Parse an ASCII 0/1 grid, one matrix row per line.
    ///
    /// Whitespace between cells is ignored, so `1 0 1` and `101` are the same
    /// row. Trailing blank lines are ignored.
    pub fn parse_grid(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
        let last = lines
            .iter()
            .rposition(|l| !l.trim().is_empty())
            .ok_or_else(|| Error::Parse {
                line: 1,
                column: 1,
                message: "empty input".into(),
            })?;
        let mut width = None;
        let mut entries = Vec::new();
        for (li, line) in lines[..=last].iter().enumerate() {
            let mut col = 0usize;
            for (ci, ch) in line.chars().enumerate() {
                match ch {
                    ' ' | '\t' => continue,
                    '0' => {}
                    '1' => entries.push((li, col)),
                    other => {
                        return Err(Error::Parse {
                            line: li + 1,
                            column: ci + 1,
                            message: format!("illegal character {other:?}"),
                        })
                    }
                }
                col += 1;
            }
            if col == 0 {
                return Err(Error::Parse {
                    line: li + 1,
                    column: 1,
                    message: "empty row".into(),
                });
            }
            match width {
                None => width = Some(col),
                Some(w) if w != col => {
                    return Err(Error::Parse {
                        line: li + 1,
                        column: col.min(w) + 1,
                        message: format!("ragged row: expected {w} cells, found {col}"),
                    })
                }
                _ => {}
            }
        }
        Self::new(last + 1, width.unwrap_or(0), entries)
    }

    /// Parse `{"m":…, "n":…, "entries":[[i,j],…]}` with 1-based indices.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PatternJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        for [i, j] in raw.entries {
            if i == 0 || j == 0 {
                return Err(Error::arg("pattern JSON indices are 1-based"));
            }
            entries.push((i - 1, j - 1));
        }
        Self::new(raw.m, raw.n, entries)
    }

    pub fn to_json(&self) -> String {
        let raw = PatternJson {
            m: self.m,
            n: self.n,
            entries: self.entries.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        };
        serde_json::to_string(&raw).expect("pattern serializes")
    }

    /// The ASCII grid form, newline-terminated.
    pub fn to_grid(&self) -> String {
        let mut out = String::with_capacity(self.m * (self.n + 1));
        for i in 0..self.m {
            for j in 0..self.n {
                out.push(if self.contains(i, j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// `#Ω ≥ r(m+n−r)`, the dimension count every finitely completable
    /// pattern must meet.
    pub fn minimum_size_check(&self, r: usize) -> Result<SizeCheck> {
        check_rank(self, r)?;
        let required = r * (self.m + self.n - r);
        Ok(SizeCheck {
            required,
            actual: self.len(),
            pass: self.len() >= required,
        })
    }
}

impl fmt::Display for ObservationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid())
    }
}

pub(crate) fn check_rank(pattern: &ObservationPattern, r: usize) -> Result<()> {
    if r == 0 || r > pattern.m().min(pattern.n()) {
        return Err(Error::arg(format!(
            "rank {r} outside 1..=min(m, n) = {}",
            pattern.m().min(pattern.n())
        )));
    }
    Ok(())
}

/// Pattern whose columns each observe a uniformly random size-`k` subset of
/// the rows, independently per column.
pub fn random_pattern(m: usize, n: usize, k: usize, seed: u64) -> Result<ObservationPattern> {
    if k > m {
        return Err(Error::arg(format!("per-column count {k} exceeds row count {m}")));
    }
    let mut rng = master_rng(seed);
    let supports: Vec<Vec<usize>> = (0..n).map(|_| sample(&mut rng, m, k).into_vec()).collect();
    ObservationPattern::from_supports(m, &supports)
}
