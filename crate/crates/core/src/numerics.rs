//! Generic sampling, exact completion from a known column space, generic-rank
//! tests and export of the linear part of the Plücker system.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::determinant;
use crate::linalg::{max_abs, numerical_rank, rows_of, select_rows, RankOutcome};
use crate::pattern::{check_rank, ObservationPattern};
use crate::plucker::{section_functional, PluckerVector, SubspaceBasis};
use crate::rng::{master_rng, trial_rng};
use crate::subsets::{column_subsets, SubsetIndex};

/// Relative residual above which observations are rejected as inconsistent.
pub const CONSISTENCY_TOL: f64 = 1e-8;
/// Default rank threshold for finite-difference Jacobians, whose noise floor
/// sits near `1e-10` relative.
pub const SECTION_RANK_TOL: f64 = 1e-6;
pub const FD_STEP: f64 = 1e-6;
pub const FD_CHECK_STEP: f64 = 1e-7;
/// Relative disagreement between the two steps that invalidates a trial.
pub const FD_DISCREPANCY: f64 = 1e-4;
const SAMPLE_ATTEMPTS: usize = 5;

/// Partially observed real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservedMatrix {
    pattern: ObservationPattern,
    values: BTreeMap<(usize, usize), f64>,
}

impl ObservedMatrix {
    pub fn new(pattern: ObservationPattern, values: BTreeMap<(usize, usize), f64>) -> Result<Self> {
        if values.len() != pattern.len() || !values.keys().all(|&(i, j)| pattern.contains(i, j)) {
            return Err(Error::arg("values must be given exactly on the observed entries"));
        }
        if let Some(((i, j), _)) = values.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::arg(format!("entry ({}, {}) is not finite", i + 1, j + 1)));
        }
        Ok(ObservedMatrix { pattern, values })
    }

    /// `π_Ω(x)` of a dense matrix.
    pub fn from_dense(pattern: ObservationPattern, x: &DMatrix<f64>) -> Result<Self> {
        if (x.nrows(), x.ncols()) != (pattern.m(), pattern.n()) {
            return Err(Error::arg("matrix and pattern dimensions differ"));
        }
        let values = pattern.entries().map(|(i, j)| ((i, j), x[(i, j)])).collect();
        Self::new(pattern, values)
    }

    pub fn pattern(&self) -> &ObservationPattern {
        &self.pattern
    }

    pub fn m(&self) -> usize {
        self.pattern.m()
    }

    pub fn n(&self) -> usize {
        self.pattern.n()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.values.get(&(i, j)).copied()
    }

    pub fn values(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.values
    }

    /// Observed entries of column `j`, keyed by row.
    pub fn column(&self, j: usize) -> BTreeMap<usize, f64> {
        self.pattern.support(j).iter().map(|&i| (i, self.values[&(i, j)])).collect()
    }
}

/// Outcome of a generic-rank test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    /// Largest determinate rank over all trials.
    pub tested_rank: usize,
    pub target: usize,
    pub trials: usize,
    /// Trials reaching the target.
    pub pass_count: usize,
    pub tolerance: f64,
    /// Trials whose spectrum had no clear gap at the threshold.
    pub indeterminate_trials: usize,
    /// Trials discarded by the finite-difference cross-check.
    pub invalid_trials: usize,
    pub warnings: Vec<String>,
}

impl RankReport {
    fn new(target: usize, trials: usize, tolerance: f64) -> Self {
        RankReport {
            tested_rank: 0,
            target,
            trials,
            pass_count: 0,
            tolerance,
            indeterminate_trials: 0,
            invalid_trials: 0,
            warnings: Vec::new(),
        }
    }

    fn record(&mut self, outcome: RankOutcome) {
        match outcome.rank() {
            Some(rank) => {
                self.tested_rank = self.tested_rank.max(rank);
                if rank == self.target {
                    self.pass_count += 1;
                }
            }
            None => self.indeterminate_trials += 1,
        }
    }

    pub fn passed(&self) -> bool {
        self.tested_rank == self.target
    }

    /// No trial produced a usable rank.
    pub fn inconclusive(&self) -> bool {
        self.indeterminate_trials + self.invalid_trials == self.trials
    }
}

/// Standard-normal `m × r` basis, deterministic per seed.
pub fn sample_generic_subspace(m: usize, r: usize, seed: u64) -> Result<SubspaceBasis> {
    let mut rng = master_rng(seed);
    let mut last = None;
    for _ in 0..SAMPLE_ATTEMPTS {
        match SubspaceBasis::random(m, r, &mut rng) {
            Ok(b) => return Ok(b),
            Err(e @ Error::NotABasis { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn complete_column_at(
    basis: &SubspaceBasis,
    observed: &BTreeMap<usize, f64>,
    column: usize,
) -> Result<DVector<f64>> {
    let b = basis.matrix();
    let r = basis.r();
    let omega: Vec<usize> = observed.keys().copied().collect();
    if let Some(&i) = omega.iter().find(|&&i| i >= basis.m()) {
        return Err(Error::arg(format!("row {} outside the basis", i + 1)));
    }
    let b_omega = rows_of(b, &omega);
    if omega.len() < r || numerical_rank(&b_omega, crate::linalg::DEFAULT_RANK_TOL).rank() != Some(r) {
        return Err(Error::DegenerateProjection { column: column + 1 });
    }
    let (psi, _) = select_rows(b, &omega, r).ok_or(Error::DegenerateProjection { column: column + 1 })?;
    let b_psi = rows_of(b, &psi);
    let x_psi = DVector::from_iterator(r, psi.iter().map(|i| observed[i]));
    let coeff = b_psi
        .lu()
        .solve(&x_psi)
        .ok_or(Error::DegenerateProjection { column: column + 1 })?;
    let x_omega = DVector::from_iterator(omega.len(), omega.iter().map(|i| observed[i]));
    let fitted = &b_omega * &coeff;
    let scale = max_abs(&b_omega) * coeff.amax() * r as f64 + x_omega.amax();
    let residual = if scale == 0.0 { 0.0 } else { (fitted - &x_omega).amax() / scale };
    if residual > CONSISTENCY_TOL {
        return Err(Error::InconsistentObservation {
            column: column + 1,
            residual,
        });
    }
    Ok(b * coeff)
}

/// The unique `v ∈ span(B)` agreeing with `observed` on its rows, computed as
/// `B · B_ψ⁻¹ · x_ψ` for a well-conditioned `r`-subset `ψ` of the observed rows.
pub fn complete_column(basis: &SubspaceBasis, observed: &BTreeMap<usize, f64>) -> Result<DVector<f64>> {
    complete_column_at(basis, observed, 0)
}

/// Complete every column from the column space spanned by `basis`.
pub fn complete_matrix(obs: &ObservedMatrix, basis: &SubspaceBasis) -> Result<DMatrix<f64>> {
    if basis.m() != obs.m() {
        return Err(Error::arg(format!(
            "basis has {} rows, matrix has {}",
            basis.m(),
            obs.m()
        )));
    }
    let mut out = DMatrix::zeros(obs.m(), obs.n());
    for j in 0..obs.n() {
        let v = complete_column_at(basis, &obs.column(j), j)?;
        out.set_column(j, &v);
    }
    Ok(out)
}

/// Largest absolute deviation from the observed entries.
pub fn observed_residual(obs: &ObservedMatrix, x: &DMatrix<f64>) -> f64 {
    obs.values()
        .iter()
        .fold(0.0, |acc, (&(i, j), v)| acc.max((x[(i, j)] - v).abs()))
}

fn normal_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Rank of the differential of `(A, C) ↦ π_Ω(A·C)` at random factors.
/// Passes when the rank reaches `r(m + n − r)`.
pub fn jacobian_rank_test(pattern: &ObservationPattern, r: usize, trials: usize, seed: u64, tol: f64) -> Result<RankReport> {
    check_rank(pattern, r)?;
    let (m, n) = (pattern.m(), pattern.n());
    let mut report = RankReport::new(r * (m + n - r), trials, tol);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let a = normal_matrix(m, r, &mut rng);
        let c = normal_matrix(r, n, &mut rng);
        let mut jac = DMatrix::zeros(pattern.len(), r * (m + n));
        for (row, (i, j)) in pattern.entries().enumerate() {
            for k in 0..r {
                jac[(row, i * r + k)] = c[(k, j)];
                jac[(row, r * m + j * r + k)] = a[(i, k)];
            }
        }
        report.record(numerical_rank(&jac, tol));
    }
    Ok(report)
}

/// A point of the Grassmannian in standard local coordinates: `B = P·[I; C]`.
struct LocalChart {
    /// `rows[i]` is the row of `[I; C]` placed at position `i` of `B`.
    rows: Vec<usize>,
    r: usize,
}

impl LocalChart {
    fn basis(&self, c: &[f64]) -> DMatrix<f64> {
        let r = self.r;
        DMatrix::from_fn(self.rows.len(), r, |i, k| {
            let src = self.rows[i];
            if src < r {
                if src == k {
                    1.0
                } else {
                    0.0
                }
            } else {
                c[(src - r) * r + k]
            }
        })
    }
}

fn minor(b: &DMatrix<f64>, rows: &[usize]) -> f64 {
    let sub: Vec<Vec<f64>> = rows.iter().map(|&i| b.row(i).iter().copied().collect()).collect();
    determinant(&sub)
}

struct Section {
    /// `(r-subset, coefficient)` pairs.
    terms: Vec<(Vec<usize>, f64)>,
}

impl Section {
    fn value(&self, b: &DMatrix<f64>) -> f64 {
        self.terms.iter().map(|(psi, c)| c * minor(b, psi)).sum()
    }
}

fn section_jacobian(chart: &LocalChart, c: &[f64], sections: &[Section], h: f64) -> DMatrix<f64> {
    let mut jac = DMatrix::zeros(sections.len(), c.len());
    let mut point = c.to_vec();
    for v in 0..c.len() {
        point[v] = c[v] + h;
        let plus = chart.basis(&point);
        point[v] = c[v] - h;
        let minus = chart.basis(&point);
        point[v] = c[v];
        for (s, section) in sections.iter().enumerate() {
            jac[(s, v)] = (section.value(&plus) - section.value(&minus)) / (2.0 * h);
        }
    }
    jac
}

/// Rank of the hyperplane-section equations, as functions on the
/// Grassmannian, at a random point. For every column a base `r`-subset
/// `ψ_j ⊆ ω_j` with nondegenerate projection is chosen and one section per
/// `k ∈ ω_j ∖ ψ_j` is formed on `ψ_j ∪ {k}`. Passes at rank `r(m − r)`.
pub fn grassmann_section_rank_test(
    pattern: &ObservationPattern,
    r: usize,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<RankReport> {
    let (m, n) = (pattern.m(), pattern.n());
    if r == 0 || r > m {
        return Err(Error::arg(format!("rank {r} must lie in 1..={m}")));
    }
    if let Some(j) = (0..n).find(|&j| pattern.support(j).len() < r) {
        return Err(Error::arg(format!(
            "column {} observes {} < {r} rows; no nondegenerate base subset exists",
            j + 1,
            pattern.support(j).len()
        )));
    }
    let mut report = RankReport::new(r * (m - r), trials, tol);
    let expected = r * (m + n - r);
    if pattern.len() != expected {
        report.warnings.push(format!(
            "pattern has {} entries; {expected} = r(m+n-r) is the size for which the test is sharp",
            pattern.len()
        ));
    }
    if m == r {
        for _ in 0..trials {
            report.record(RankOutcome::Determinate { rank: 0 });
        }
        return Ok(report);
    }
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let (chart, c, sections) = sample_sections(pattern, r, &mut rng)?;
        let coarse = section_jacobian(&chart, &c, &sections, FD_STEP);
        let fine = section_jacobian(&chart, &c, &sections, FD_CHECK_STEP);
        let scale = max_abs(&coarse).max(f64::MIN_POSITIVE);
        if max_abs(&(&coarse - &fine)) / scale > FD_DISCREPANCY {
            report.invalid_trials += 1;
            continue;
        }
        report.record(numerical_rank(&coarse, tol));
    }
    Ok(report)
}

type SectionSample = (LocalChart, Vec<f64>, Vec<Section>);

fn sample_sections<R: Rng + ?Sized>(pattern: &ObservationPattern, r: usize, rng: &mut R) -> Result<SectionSample> {
    let m = pattern.m();
    let mut failed_column = 0;
    for _ in 0..SAMPLE_ATTEMPTS {
        let mut rows: Vec<usize> = (0..m).collect();
        rows.shuffle(rng);
        let chart = LocalChart { rows, r };
        let c: Vec<f64> = (0..(m - r) * r).map(|_| rng.sample(StandardNormal)).collect();
        let b = chart.basis(&c);
        let row_scale = (0..m).map(|i| b.row(i).norm()).fold(0.0, f64::max);
        let mut sections = Vec::new();
        let mut ok = true;
        for j in 0..pattern.n() {
            let omega = pattern.support(j);
            if omega.len() == r {
                continue;
            }
            let coeff = DVector::from_iterator(r, (0..r).map(|_| rng.sample(StandardNormal)));
            let x = &b * coeff;
            match select_rows(&b, omega, r) {
                Some((psi, resid)) if resid > 1e-9 * row_scale => {
                    for &k in omega.iter().filter(|k| !psi.contains(k)) {
                        let mut phi = psi.clone();
                        phi.push(k);
                        phi.sort_unstable();
                        let values: BTreeMap<usize, f64> = phi.iter().map(|&i| (i, x[i])).collect();
                        let f = section_functional(&phi, &values)?;
                        sections.push(Section { terms: f.terms });
                    }
                }
                _ => {
                    ok = false;
                    failed_column = j;
                    break;
                }
            }
        }
        if ok {
            return Ok((chart, c, sections));
        }
    }
    Err(Error::DegenerateProjection {
        column: failed_column + 1,
    })
}

/// One exported equation: the section of column `column` on the rows `phi`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemRow {
    pub column: usize,
    pub phi: Vec<usize>,
    /// `(coordinate index, coefficient)`, at most `r + 1` entries.
    pub coefficients: Vec<(usize, f64)>,
}

/// Linear part of the Plücker system of a partially observed matrix. The
/// quadratic Plücker relations are not included.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerSystem {
    index: SubsetIndex,
    rows: Vec<SystemRow>,
}

impl PluckerSystem {
    pub fn index(&self) -> &SubsetIndex {
        &self.index
    }

    pub fn rows(&self) -> &[SystemRow] {
        &self.rows
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.rows.len(), self.index.len());
        for (k, row) in self.rows.iter().enumerate() {
            for &(c, v) in &row.coefficients {
                out[(k, c)] += v;
            }
        }
        out
    }

    /// `‖M p‖_∞ / (max_k ‖M_k‖ · ‖p‖)`; zero for an empty system.
    pub fn residual(&self, p: &PluckerVector<f64>) -> Result<f64> {
        if p.m() != self.index.m() || p.r() != self.index.r() {
            return Err(Error::arg("Plücker vector does not match the system"));
        }
        let mut worst: f64 = 0.0;
        let mut row_norm: f64 = 0.0;
        for row in &self.rows {
            let dot: f64 = row.coefficients.iter().map(|&(c, v)| v * p.coords()[c]).sum();
            let norm = row.coefficients.iter().map(|(_, v)| v * v).sum::<f64>().sqrt();
            worst = worst.max(dot.abs());
            row_norm = row_norm.max(norm);
        }
        let denom = row_norm * p.norm();
        Ok(if denom == 0.0 { 0.0 } else { worst / denom })
    }

    /// Dense coefficient matrix, one line per equation.
    pub fn to_csv(&self) -> String {
        let m = self.matrix();
        let mut out = String::new();
        for row in m.row_iter() {
            let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Coordinate order and equation provenance, 1-based.
    pub fn index_map_json(&self) -> serde_json::Value {
        let coords: Vec<Vec<usize>> = self
            .index
            .subsets()
            .map(|s| s.iter().map(|i| i + 1).collect())
            .collect();
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "column": r.column + 1,
                    "phi": r.phi.iter().map(|i| i + 1).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "m": self.index.m(),
            "r": self.index.r(),
            "coordinates": coords,
            "rows": rows,
            "plucker_relations": "not included",
        })
    }
}

/// One section per column `j` and per `(r + 1)`-subset of `ω_j`, over the
/// lexicographic Plücker coordinates.
pub fn export_plucker_system(obs: &ObservedMatrix, r: usize) -> Result<PluckerSystem> {
    if r == 0 || r > obs.m() {
        return Err(Error::arg(format!("rank {r} must lie in 1..={}", obs.m())));
    }
    let index = SubsetIndex::new(obs.m(), r)?;
    let mut rows = Vec::new();
    for j in 0..obs.n() {
        let values = obs.column(j);
        for phi in column_subsets(obs.pattern().support(j), r + 1) {
            let f = section_functional(&phi, &values)?;
            let coefficients = f
                .terms
                .iter()
                .map(|(psi, c)| (index.rank(psi).expect("subset of [m]"), *c))
                .collect();
            rows.push(SystemRow {
                column: j,
                phi,
                coefficients,
            });
        }
    }
    Ok(PluckerSystem { index, rows })
}
