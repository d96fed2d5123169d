//! Dense floating-point helpers: numerical rank and pivoted row selection.

use nalgebra::DMatrix;
use serde::Serialize;

/// Default relative singular-value threshold.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;
/// Required ratio between the last retained and first discarded singular value.
pub const SPECTRAL_GAP: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankOutcome {
    Determinate { rank: usize },
    /// Singular values straddle the threshold without a clear gap.
    Indeterminate { counted: usize, gap: f64 },
}

impl RankOutcome {
    pub fn rank(self) -> Option<usize> {
        match self {
            RankOutcome::Determinate { rank } => Some(rank),
            RankOutcome::Indeterminate { .. } => None,
        }
    }
}

pub fn singular_values(a: &DMatrix<f64>) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Count singular values above `tol * σ_max`, demanding a spectral gap of at
/// least [`SPECTRAL_GAP`] at the cut.
pub fn numerical_rank(a: &DMatrix<f64>, tol: f64) -> RankOutcome {
    rank_from_singular_values(&singular_values(a), tol)
}

pub fn rank_from_singular_values(s: &[f64], tol: f64) -> RankOutcome {
    let Some(&smax) = s.first() else {
        return RankOutcome::Determinate { rank: 0 };
    };
    if smax == 0.0 || !smax.is_finite() {
        return RankOutcome::Determinate { rank: 0 };
    }
    let counted = s.iter().take_while(|&&v| v > tol * smax).count();
    if counted == 0 || counted == s.len() {
        return RankOutcome::Determinate { rank: counted };
    }
    let next = s[counted];
    let gap = if next == 0.0 { f64::INFINITY } else { s[counted - 1] / next };
    if gap >= SPECTRAL_GAP {
        RankOutcome::Determinate { rank: counted }
    } else {
        RankOutcome::Indeterminate { counted, gap }
    }
}

/// Greedy volume maximisation over the rows listed in `candidates`: picks
/// `k` rows of `a`, each time the one with the largest component orthogonal
/// to the rows already chosen. Returns the chosen rows sorted ascending,
/// together with the smallest residual norm encountered.
pub fn select_rows(a: &DMatrix<f64>, candidates: &[usize], k: usize) -> Option<(Vec<usize>, f64)> {
    if candidates.len() < k {
        return None;
    }
    let mut residual: Vec<Vec<f64>> = candidates
        .iter()
        .map(|&i| a.row(i).iter().copied().collect())
        .collect();
    let mut taken = vec![false; candidates.len()];
    let mut chosen = Vec::with_capacity(k);
    let mut min_norm = f64::INFINITY;
    for _ in 0..k {
        let (best, norm) = residual
            .iter()
            .enumerate()
            .filter(|(idx, _)| !taken[*idx])
            .map(|(idx, v)| (idx, v.iter().map(|x| x * x).sum::<f64>().sqrt()))
            .fold((usize::MAX, -1.0), |b, c| if c.1 > b.1 { c } else { b });
        if best == usize::MAX {
            return None;
        }
        min_norm = min_norm.min(norm);
        taken[best] = true;
        chosen.push(candidates[best]);
        if norm == 0.0 {
            continue;
        }
        let q: Vec<f64> = residual[best].iter().map(|x| x / norm).collect();
        for (idx, v) in residual.iter_mut().enumerate() {
            if taken[idx] {
                continue;
            }
            let dot: f64 = v.iter().zip(&q).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(&q) {
                *x -= dot * y;
            }
        }
    }
    chosen.sort_unstable();
    Some((chosen, min_norm))
}

/// Sub-matrix with the given rows, in the given order.
pub fn rows_of(a: &DMatrix<f64>, rows: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), a.ncols(), |i, j| a[(rows[i], j)])
}

pub fn max_abs(a: &DMatrix<f64>) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_with_gap() {
        let s = [10.0, 1.0, 1e-14];
        assert_eq!(rank_from_singular_values(&s, 1e-9), RankOutcome::Determinate { rank: 2 });
        let s = [10.0, 1e-7, 1e-9];
        assert!(matches!(
            rank_from_singular_values(&s, 1e-9),
            RankOutcome::Indeterminate { counted: 2, .. }
        ));
        assert_eq!(rank_from_singular_values(&[], 1e-9), RankOutcome::Determinate { rank: 0 });
        assert_eq!(rank_from_singular_values(&[0.0, 0.0], 1e-9), RankOutcome::Determinate { rank: 0 });
    }

    #[test]
    fn numerical_rank_of_outer_product() {
        let u = DMatrix::from_row_slice(3, 1, &[1.0, 2.0, 3.0]);
        let v = DMatrix::from_row_slice(1, 4, &[1.0, -1.0, 0.5, 2.0]);
        assert_eq!(numerical_rank(&(u * v), DEFAULT_RANK_TOL).rank(), Some(1));
    }

    #[test]
    fn select_rows_avoids_dependent_rows() {
        // rows 1 and 2 are parallel; a 2-row selection must not take both.
        let a = DMatrix::from_row_slice(4, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 2.0, 3.0, 4.0]);
        let (rows, norm) = select_rows(&a, &[1, 2], 2).unwrap();
        assert_eq!(rows, vec![1, 2]);
        assert!(norm < 1e-12);
        let (rows, norm) = select_rows(&a, &[0, 1, 2, 3], 2).unwrap();
        assert!(norm > 0.1);
        assert!(!(rows.contains(&1) && rows.contains(&2)));
    }
}
