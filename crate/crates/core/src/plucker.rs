//! Plücker coordinates of subspaces and the objects built from them.
//!
//! Coordinates are stored densely in the lexicographic order of r-subsets
//! given by [`SubsetIndex`]. All sign rules below are relative to sorted
//! subsets:
//!
//! * dual basis `B_Φ`: row `φ_j[i]` of column `j` carries `(−1)^i [φ_j ∖ φ_j[i]]`
//!   (0-based `i`);
//! * section functional on `φ`: term `k` is `(−1)^k x_{φ[k]} [φ ∖ φ[k]]`;
//! * duality: `[[m] ∖ ψ]_{V⊥} = sgn(ψ, [m] ∖ ψ) · [ψ]_V`, the sign of the
//!   permutation that sorts the concatenation.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{determinant, Fp, Scalar};
use crate::linalg::{numerical_rank, DEFAULT_RANK_TOL};
use crate::slmf::Slmf;
use crate::subsets::{complement, shuffle_sign, SubsetIndex};

/// Projective coordinate vector of an r-dimensional subspace of `m`-space.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerVector<T> {
    index: SubsetIndex,
    coords: Vec<T>,
}

impl<T: Scalar> PluckerVector<T> {
    pub fn new(m: usize, r: usize, coords: Vec<T>) -> Result<Self> {
        let index = SubsetIndex::new(m, r)?;
        if coords.len() != index.len() {
            return Err(Error::arg(format!(
                "expected {} coordinates for ({r},{m}), found {}",
                index.len(),
                coords.len()
            )));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::arg("all Plücker coordinates are zero"));
        }
        Ok(PluckerVector { index, coords })
    }

    pub fn m(&self) -> usize {
        self.index.m()
    }

    pub fn r(&self) -> usize {
        self.index.r()
    }

    pub fn index(&self) -> &SubsetIndex {
        &self.index
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    /// Coordinate `[ψ]` for a sorted 0-based r-subset.
    pub fn get(&self, psi: &[usize]) -> Result<T> {
        self.index
            .rank(psi)
            .map(|k| self.coords[k])
            .ok_or_else(|| Error::arg(format!("{psi:?} is not a sorted {}-subset of [{}]", self.r(), self.m())))
    }

    pub fn scaled(&self, s: T) -> Self {
        PluckerVector {
            index: self.index.clone(),
            coords: self.coords.iter().map(|&c| c * s).collect(),
        }
    }
}

impl PluckerVector<f64> {
    /// Equality up to a nonzero scalar, after normalising both vectors by
    /// their largest-magnitude coordinate.
    pub fn projectively_equal(&self, other: &Self, tol: f64) -> bool {
        if self.index != other.index {
            return false;
        }
        let normalise = |v: &[f64]| -> Vec<f64> {
            let (k, _) = v
                .iter()
                .enumerate()
                .fold((0, 0.0), |b, (k, x)| if x.abs() > b.1 { (k, x.abs()) } else { b });
            let s = v[k];
            v.iter().map(|x| x / s).collect()
        };
        let a = normalise(&self.coords);
        let b = normalise(&other.coords);
        // Normalising by the pivot of `a` must also work for `b` if they agree.
        let k = a.iter().position(|&x| x == 1.0).unwrap_or(0);
        if b[k].abs() < tol {
            return false;
        }
        let b: Vec<f64> = b.iter().map(|x| x / b[k]).collect();
        a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// JSON list of `{"subset": [...], "value": ...}`, 1-based subsets.
    pub fn to_json(&self) -> String {
        let entries: Vec<CoordinateEntry> = self
            .index
            .subsets()
            .zip(&self.coords)
            .map(|(s, &value)| CoordinateEntry {
                subset: s.iter().map(|i| i + 1).collect(),
                value,
            })
            .collect();
        serde_json::to_string(&entries).expect("coordinates serialize")
    }

    pub fn from_json(m: usize, r: usize, text: &str) -> Result<Self> {
        let entries: Vec<CoordinateEntry> = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let index = SubsetIndex::new(m, r)?;
        let mut coords = vec![0.0; index.len()];
        for e in entries {
            if e.subset.contains(&0) {
                return Err(Error::arg("Plücker subsets are 1-based"));
            }
            let s: Vec<usize> = e.subset.iter().map(|i| i - 1).collect();
            let k = index
                .rank(&s)
                .ok_or_else(|| Error::arg(format!("bad subset {:?}", e.subset)))?;
            coords[k] = e.value;
        }
        Self::new(m, r, coords)
    }
}

impl PluckerVector<Fp> {
    /// Exact projective equality by cross-multiplication.
    pub fn projectively_equal(&self, other: &Self) -> bool {
        if self.index != other.index {
            return false;
        }
        let Some(k) = self.coords.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let (a, b) = (self.coords[k], other.coords[k]);
        !b.is_zero()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(&x, &y)| x * b == y * a)
    }
}

#[derive(Serialize, Deserialize)]
struct CoordinateEntry {
    subset: Vec<usize>,
    value: f64,
}

/// Plücker vector of the column space of an `m × r` matrix given as rows.
/// `Ok(None)` when every `r × r` minor vanishes (rank-deficient input).
pub fn plucker_of_rows<T: Scalar>(m: usize, r: usize, rows: &[Vec<T>]) -> Result<Option<PluckerVector<T>>> {
    if rows.len() != m || rows.iter().any(|row| row.len() != r) {
        return Err(Error::arg(format!("expected a {m}x{r} matrix")));
    }
    let index = SubsetIndex::new(m, r)?;
    let coords: Vec<T> = index
        .subsets()
        .map(|psi| {
            let sub: Vec<Vec<T>> = psi.iter().map(|&i| rows[i].clone()).collect();
            determinant(&sub)
        })
        .collect();
    if coords.iter().all(|c| c.is_zero()) {
        return Ok(None);
    }
    Ok(Some(PluckerVector { index, coords }))
}

/// An `m × r` real matrix with linearly independent columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    matrix: DMatrix<f64>,
}

impl SubspaceBasis {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let r = matrix.ncols();
        if r == 0 || matrix.nrows() < r {
            return Err(Error::NotABasis {
                expected: r,
                found: matrix.nrows().min(r),
            });
        }
        match numerical_rank(&matrix, DEFAULT_RANK_TOL).rank() {
            Some(k) if k == r => Ok(SubspaceBasis { matrix }),
            other => Err(Error::NotABasis {
                expected: r,
                found: other.unwrap_or(0),
            }),
        }
    }

    pub fn from_rows(m: usize, r: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != m * r {
            return Err(Error::arg(format!("expected {} values for a {m}x{r} basis", m * r)));
        }
        Self::new(DMatrix::from_row_slice(m, r, rows))
    }

    /// Independent standard-normal entries.
    pub fn random<R: Rng + ?Sized>(m: usize, r: usize, rng: &mut R) -> Result<Self> {
        if r == 0 || r > m {
            return Err(Error::arg(format!("cannot draw a {r}-dimensional subspace of {m}-space")));
        }
        let data: Vec<f64> = (0..m * r).map(|_| rng.sample(StandardNormal)).collect();
        Self::new(DMatrix::from_row_slice(m, r, &data))
    }

    pub fn m(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn r(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.matrix
            .row_iter()
            .map(|row| row.iter().copied().collect())
            .collect()
    }

    pub fn plucker(&self) -> PluckerVector<f64> {
        plucker_of_basis(self)
    }
}

/// All `r × r` minors of the basis, rows in increasing order.
pub fn plucker_of_basis(basis: &SubspaceBasis) -> PluckerVector<f64> {
    plucker_of_rows(basis.m(), basis.r(), &basis.rows())
        .expect("basis dimensions are consistent")
        .expect("a basis has a nonzero minor")
}

/// Relative threshold below which a floating-point coordinate counts as zero.
pub const NONDEGENERACY_TOL: f64 = 1e-9;

/// `dim π_ψ(V) = r` iff `[ψ]_V ≠ 0`; zero means below `tol · max|[·]|`.
pub fn projection_nondegenerate(p: &PluckerVector<f64>, psi: &[usize], tol: f64) -> Result<bool> {
    let v = p.get(psi)?;
    Ok(v.abs() > tol * p.max_abs())
}

/// Plücker vector of the orthogonal complement, indexed by `(m − r)`-subsets.
///
/// Only meaningful for decomposable input; on arbitrary vectors the result
/// is not checked.
pub fn dual_plucker<T: Scalar>(p: &PluckerVector<T>) -> PluckerVector<T> {
    let (m, r) = (p.m(), p.r());
    let dual_index = SubsetIndex::new(m, m - r).expect("same ambient dimension");
    let mut coords = vec![T::zero(); dual_index.len()];
    for (psi, &value) in p.index.subsets().zip(&p.coords) {
        let comp = complement(&psi, m);
        let k = dual_index.rank(&comp).expect("complement is a valid subset");
        coords[k] = if shuffle_sign(&psi, m) > 0 { value } else { -value };
    }
    PluckerVector {
        index: dual_index,
        coords,
    }
}

/// One nonzero entry of `B_Φ`: a signed Plücker variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedCoordinate {
    pub negative: bool,
    /// Index of the r-subset in lexicographic order.
    pub coordinate: usize,
}

/// Symbolic `m × (m − r)` matrix `B_Φ` over Plücker variables.
#[derive(Debug, Clone, PartialEq)]
pub struct BphiTemplate {
    pub index: SubsetIndex,
    /// `entries[row][col]`, `None` off the support of Φ.
    pub entries: Vec<Vec<Option<SignedCoordinate>>>,
}

impl BphiTemplate {
    /// Render entry `(row, col)` as e.g. `-[13]`, 1-based, `0` off-support.
    pub fn render(&self, row: usize, col: usize) -> String {
        match self.entries[row][col] {
            None => "0".to_string(),
            Some(sc) => {
                let s: String = self
                    .index
                    .unrank(sc.coordinate)
                    .iter()
                    .map(|i| (i + 1).to_string())
                    .collect();
                format!("{}[{s}]", if sc.negative { "-" } else { "" })
            }
        }
    }
}

pub fn build_bphi(phi: &Slmf) -> BphiTemplate {
    let (m, r) = (phi.m(), phi.r());
    let index = SubsetIndex::new(m, r).expect("validated by Slmf");
    let mut entries = vec![vec![None; m - r]; m];
    for (j, col) in phi.columns().iter().enumerate() {
        for (i, &row) in col.iter().enumerate() {
            let rest: Vec<usize> = col.iter().copied().filter(|&x| x != row).collect();
            entries[row][j] = Some(SignedCoordinate {
                negative: i % 2 == 1,
                coordinate: index.rank(&rest).expect("r-subset of [m]"),
            });
        }
    }
    BphiTemplate { index, entries }
}

/// `B_Φ` evaluated at a Plücker vector, as rows.
pub fn evaluate_bphi<T: Scalar>(phi: &Slmf, p: &PluckerVector<T>) -> Result<Vec<Vec<T>>> {
    if p.m() != phi.m() || p.r() != phi.r() {
        return Err(Error::arg(format!(
            "SLMF is ({},{}) but the Plücker vector is ({},{})",
            phi.r(),
            phi.m(),
            p.r(),
            p.m()
        )));
    }
    let template = build_bphi(phi);
    Ok(template
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match e {
                    None => T::zero(),
                    Some(sc) if sc.negative => -p.coords[sc.coordinate],
                    Some(sc) => p.coords[sc.coordinate],
                })
                .collect()
        })
        .collect())
}

/// Linear form on Plücker coordinates expressing `π_φ(x) ∈ π_φ(V)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionFunctional<T> {
    /// Sorted `(r + 1)`-subset.
    pub phi: Vec<usize>,
    /// `(φ ∖ {φ[k]}, (−1)^k x_{φ[k]})` for `k = 0..=r`.
    pub terms: Vec<(Vec<usize>, T)>,
}

pub fn section_functional<T: Scalar>(phi: &[usize], x_values: &BTreeMap<usize, T>) -> Result<SectionFunctional<T>> {
    let mut phi = phi.to_vec();
    phi.sort_unstable();
    phi.dedup();
    let mut terms = Vec::with_capacity(phi.len());
    for (k, &i) in phi.iter().enumerate() {
        let x = *x_values
            .get(&i)
            .ok_or_else(|| Error::arg(format!("missing value for row {}", i + 1)))?;
        let rest: Vec<usize> = phi.iter().copied().filter(|&v| v != i).collect();
        terms.push((rest, if k % 2 == 0 { x } else { -x }));
    }
    Ok(SectionFunctional { phi, terms })
}

pub fn evaluate_section<T: Scalar>(f: &SectionFunctional<T>, p: &PluckerVector<T>) -> Result<T> {
    if f.phi.len() != p.r() + 1 {
        return Err(Error::arg(format!(
            "section on {} rows does not match rank {}",
            f.phi.len(),
            p.r()
        )));
    }
    f.terms
        .iter()
        .try_fold(T::zero(), |acc, (psi, c)| Ok(acc + *c * p.get(psi)?))
}

/// The single quadratic relation of `Gr(2,4)`:
/// `α₁₄α₂₃ + α₁₂α₃₄ − α₁₃α₂₄`.
pub fn gr24_relation_residual<T: Scalar>(p: &PluckerVector<T>) -> Result<T> {
    if (p.r(), p.m()) != (2, 4) {
        return Err(Error::arg(format!(
            "the Gr(2,4) relation needs (r,m) = (2,4), got ({},{})",
            p.r(),
            p.m()
        )));
    }
    let a = &p.coords; // 12 13 14 23 24 34
    Ok(a[2] * a[3] + a[0] * a[5] - a[1] * a[4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{phi1, phi2, repeated_phi};
    use crate::rng::master_rng;
    use nalgebra::DMatrix;

    fn example_basis() -> SubspaceBasis {
        SubspaceBasis::from_rows(4, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 2.0, 3.0, 4.0]).unwrap()
    }

    #[test]
    fn example_coordinates_are_exact() {
        let p = plucker_of_basis(&example_basis());
        assert_eq!(p.coords(), &[1.0, 2.0, 4.0, 0.0, -3.0, -6.0]);
    }

    #[test]
    fn coordinate_subspace() {
        let b = SubspaceBasis::from_rows(4, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let p = b.plucker();
        assert_eq!(p.coords(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(projection_nondegenerate(&p, &[0, 1], NONDEGENERACY_TOL).unwrap());
        for psi in p.index().subsets().skip(1) {
            assert!(!projection_nondegenerate(&p, &psi, NONDEGENERACY_TOL).unwrap());
        }
    }

    #[test]
    fn rank_deficient_basis_rejected() {
        let r = SubspaceBasis::from_rows(3, 2, &[1.0, 2.0, 2.0, 4.0, 3.0, 6.0]);
        assert!(matches!(r, Err(Error::NotABasis { expected: 2, found: 1 })));
    }

    #[test]
    fn nondegeneracy_on_example() {
        let p = plucker_of_basis(&example_basis());
        assert!(!projection_nondegenerate(&p, &[1, 2], NONDEGENERACY_TOL).unwrap());
        assert!(projection_nondegenerate(&p, &[0, 1], NONDEGENERACY_TOL).unwrap());
        assert!(projection_nondegenerate(&p, &[0, 0], NONDEGENERACY_TOL).is_err());
        assert!(projection_nondegenerate(&p, &[0], NONDEGENERACY_TOL).is_err());
    }

    #[test]
    fn basis_change_scales_by_determinant() {
        let mut rng = master_rng(11);
        for _ in 0..50 {
            let b = SubspaceBasis::random(6, 3, &mut rng).unwrap();
            let s = SubspaceBasis::random(3, 3, &mut rng).unwrap();
            let det = s.matrix().determinant();
            let bs = SubspaceBasis::new(b.matrix() * s.matrix()).unwrap();
            let lhs = bs.plucker();
            let rhs = b.plucker().scaled(det);
            let scale = rhs.max_abs();
            for (x, y) in lhs.coords().iter().zip(rhs.coords()) {
                assert!((x - y).abs() <= 1e-10 * scale);
            }
        }
    }

    #[test]
    fn basis_change_exact_over_fp() {
        let mut rng = master_rng(5);
        let b: Vec<Vec<Fp>> = (0..5).map(|_| (0..2).map(|_| Fp::random(&mut rng)).collect()).collect();
        let s = [[Fp::random(&mut rng), Fp::random(&mut rng)], [Fp::random(&mut rng), Fp::random(&mut rng)]];
        let bs: Vec<Vec<Fp>> = b
            .iter()
            .map(|row| (0..2).map(|c| row[0] * s[0][c] + row[1] * s[1][c]).collect())
            .collect();
        let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
        let p = plucker_of_rows(5, 2, &b).unwrap().unwrap();
        let q = plucker_of_rows(5, 2, &bs).unwrap().unwrap();
        assert_eq!(q, p.scaled(det));
        assert!(q.projectively_equal(&p));
    }

    #[test]
    fn dual_of_coordinate_plane() {
        let p = PluckerVector::new(4, 2, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let d = dual_plucker(&p);
        assert_eq!(d.r(), 2);
        assert_eq!(d.get(&[2, 3]).unwrap().abs(), 1.0);
        assert_eq!(d.coords().iter().filter(|c| **c != 0.0).count(), 1);
    }

    #[test]
    fn double_dual_is_projective_identity() {
        let mut rng = master_rng(2);
        for _ in 0..20 {
            let p = SubspaceBasis::random(5, 2, &mut rng).unwrap().plucker();
            assert!(dual_plucker(&dual_plucker(&p)).projectively_equal(&p, 1e-9));
        }
    }

    #[test]
    fn bphi_sign_layout() {
        let t = build_bphi(&phi1());
        let col = |j: usize| (0..6).map(|i| t.render(i, j)).collect::<Vec<_>>();
        assert_eq!(col(0), ["[23]", "-[13]", "[12]", "0", "0", "0"]);
        assert_eq!(col(1), ["[24]", "-[14]", "0", "[12]", "0", "0"]);
        assert_eq!(col(2), ["[25]", "-[15]", "0", "0", "[12]", "0"]);
        assert_eq!(col(3), ["0", "0", "0", "[56]", "-[46]", "[45]"]);
        let t = build_bphi(&phi2());
        let col = |j: usize| (0..6).map(|i| t.render(i, j)).collect::<Vec<_>>();
        assert_eq!(col(0), ["0", "[46]", "0", "-[26]", "0", "[24]"]);
        assert_eq!(col(3), ["[35]", "0", "-[15]", "0", "[13]", "0"]);
    }

    #[test]
    fn bphi_is_orthogonal_to_subspace() {
        let mut rng = master_rng(4);
        for _ in 0..20 {
            let b = SubspaceBasis::random(6, 2, &mut rng).unwrap();
            for phi in [phi1(), phi2()] {
                let e = evaluate_bphi(&phi, &b.plucker()).unwrap();
                let e = DMatrix::from_fn(6, 4, |i, j| e[i][j]);
                let prod = e.transpose() * b.matrix();
                assert!(prod.amax() < 1e-12 * e.amax() * b.matrix().amax());
                assert_eq!(numerical_rank(&e, DEFAULT_RANK_TOL).rank(), Some(4));
            }
            let e = evaluate_bphi(&repeated_phi(), &b.plucker()).unwrap();
            let e = DMatrix::from_fn(6, 4, |i, j| e[i][j]);
            assert!(numerical_rank(&e, DEFAULT_RANK_TOL).rank().unwrap() < 4);
        }
    }

    #[test]
    fn bphi_dimension_mismatch() {
        let p = PluckerVector::new(4, 2, vec![1.0; 6]).unwrap();
        assert!(evaluate_bphi(&phi1(), &p).is_err());
    }

    #[test]
    fn section_functional_layout() {
        let x: BTreeMap<usize, f64> = [(3, 2.0), (4, 3.0), (5, 5.0)].into_iter().collect();
        let f = section_functional(&[3, 4, 5], &x).unwrap();
        assert_eq!(f.terms, vec![(vec![4, 5], 2.0), (vec![3, 5], -3.0), (vec![3, 4], 5.0)]);
        let missing: BTreeMap<usize, f64> = [(3, 2.0)].into_iter().collect();
        assert!(section_functional(&[3, 4, 5], &missing).is_err());
    }

    #[test]
    fn section_vanishes_on_members_and_detects_perturbation() {
        let mut rng = master_rng(8);
        for _ in 0..20 {
            let b = SubspaceBasis::random(6, 2, &mut rng).unwrap();
            let p = b.plucker();
            let a = [rng.sample::<f64, _>(StandardNormal), rng.sample(StandardNormal)];
            let v: Vec<f64> = (0..6).map(|i| b.matrix()[(i, 0)] * a[0] + b.matrix()[(i, 1)] * a[1]).collect();
            let phi = [0usize, 2, 5];
            let x: BTreeMap<usize, f64> = phi.iter().map(|&i| (i, v[i])).collect();
            let f = section_functional(&phi, &x).unwrap();
            let scale = p.max_abs() * v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            assert!(evaluate_section(&f, &p).unwrap().abs() < 1e-12 * scale);
            // x = v + e_i: the functional picks up exactly ±[φ ∖ i].
            for (k, &i) in phi.iter().enumerate() {
                let mut xp = x.clone();
                *xp.get_mut(&i).unwrap() += 1.0;
                let val = evaluate_section(&section_functional(&phi, &xp).unwrap(), &p).unwrap();
                let rest: Vec<usize> = phi.iter().copied().filter(|&q| q != i).collect();
                let expected = if k % 2 == 0 { 1.0 } else { -1.0 } * p.get(&rest).unwrap();
                assert!((val - expected).abs() < 1e-10 * scale.max(1.0));
                assert!(val.abs() > 0.0);
            }
        }
    }

    #[test]
    fn gr24_relation() {
        let p = PluckerVector::new(4, 2, vec![1.0, 2.0, 4.0, 0.0, -3.0, -6.0]).unwrap();
        assert_eq!(gr24_relation_residual(&p).unwrap(), 0.0);
        let q = PluckerVector::new(4, 2, vec![1.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(gr24_relation_residual(&q).unwrap(), 1.0);
        let mut rng = master_rng(1);
        for _ in 0..50 {
            let p = SubspaceBasis::random(4, 2, &mut rng).unwrap().plucker();
            assert!(gr24_relation_residual(&p).unwrap().abs() < 1e-12 * p.max_abs().powi(2));
        }
        let wrong = PluckerVector::new(5, 2, vec![1.0; 10]).unwrap();
        assert!(gr24_relation_residual(&wrong).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = plucker_of_basis(&example_basis());
        let text = p.to_json();
        assert!(text.starts_with(r#"[{"subset":[1,2],"value":1.0}"#));
        assert_eq!(PluckerVector::from_json(4, 2, &text).unwrap(), p);
    }
}
