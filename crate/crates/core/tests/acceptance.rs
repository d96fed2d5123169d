//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeSet;
use std::fs;
use std::panic;
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde_json::Value;

use lrmc::completability::{
    check_relaxed_slmf, verify_certificate, Certificate, CertificateKind, GroupSlmf, RelaxedViolation, SlmfColumn,
};
use lrmc::fixtures::{
    example_pattern, phi1, phi2, relaxed_counterexample, EXAMPLE_GRID, EXTENDED_GRID,
};
use lrmc::linalg::{numerical_rank, DEFAULT_RANK_TOL};
use lrmc::numerics::{complete_matrix, export_plucker_system, jacobian_rank_test, ObservedMatrix};
use lrmc::plucker::{evaluate_bphi, gr24_relation_residual, projection_nondegenerate, NONDEGENERACY_TOL};
use lrmc::rng::master_rng;
use lrmc::slmf::{check_slmf_combinatorial, check_slmf_randomized};
use lrmc::{random_pattern, Slmf, SubspaceBasis};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn analyze_cli(grid: &str) -> Result<(i32, Value, Duration), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("pattern.txt");
    fs::write(&path, grid).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_lrmc"))
        .args(["analyze", path.to_str().unwrap(), "--rank", "2", "--json"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), report, elapsed))
}

/// Partition as a set of 1-based column sets, so group order does not matter.
fn partition_of(cert: &Value) -> BTreeSet<BTreeSet<u64>> {
    cert["partition"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect())
        .collect()
}

fn group_supports(cert: &Value, member: u64) -> BTreeSet<Vec<u64>> {
    let groups = cert["partition"].as_array().unwrap();
    let g = groups
        .iter()
        .position(|g| g.as_array().unwrap().iter().any(|v| v.as_u64() == Some(member)))
        .unwrap();
    cert["slmfs"][g]["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["support"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect())
        .collect()
}

fn sets(s: &[&[u64]]) -> BTreeSet<Vec<u64>> {
    s.iter().map(|v| v.to_vec()).collect()
}

fn groups(g: &[&[u64]]) -> BTreeSet<BTreeSet<u64>> {
    g.iter().map(|v| v.iter().copied().collect()).collect()
}

fn reference_finite_certificate() -> Certificate {
    let group = |phi: Slmf, sources: [usize; 4]| GroupSlmf {
        columns: phi
            .columns()
            .iter()
            .zip(sources)
            .map(|(s, source_column)| SlmfColumn {
                support: s.clone(),
                source_column,
            })
            .collect(),
    };
    Certificate {
        kind: CertificateKind::Finite,
        partition: vec![vec![0, 1], vec![2, 3, 4]],
        slmfs: vec![group(phi1(), [0, 0, 0, 1]), group(phi2(), [3, 3, 3, 4])],
    }
}

fn criterion_1() -> Check {
    let (code, rep, elapsed) = analyze_cli(EXAMPLE_GRID)?;
    ensure!(code == 0, "exit code {code}");
    let cert = &rep["finite_certificate"]["evidence"];
    ensure!(rep["finite_certificate"]["verdict"] == "pass", "no finite certificate");
    ensure!(
        partition_of(cert) == groups(&[&[1, 2], &[3, 4, 5]]),
        "partition {}",
        cert["partition"]
    );
    ensure!(
        group_supports(cert, 1) == sets(&[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[4, 5, 6]]),
        "group {{1,2}} SLMF differs from the reference"
    );
    let found = Certificate::from_json(&cert.to_string()).map_err(|e| e.to_string())?;
    let check = verify_certificate(&example_pattern(), 2, &found);
    ensure!(check.valid, "returned certificate fails verification: {:?}", check.failure);
    let reference = verify_certificate(&example_pattern(), 2, &reference_finite_certificate());
    ensure!(reference.valid, "reference certificate fails: {:?}", reference.failure);
    ensure!(rep["unique_certificate"]["verdict"] == "fail", "unexpected unique certificate");
    ensure!(rep["relaxed_slmf"]["verdict"] == "pass", "relaxed SLMF not confirmed");
    let jac = &rep["jacobian_rank"]["evidence"];
    ensure!(jac["tested_rank"] == 18 && jac["target"] == 18, "jacobian {jac}");
    let sec = &rep["section_rank"]["evidence"];
    ensure!(sec["tested_rank"] == 8 && sec["target"] == 8, "section {sec}");
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!(
        "partition {}, jacobian 18/18, section 8/8, {:.0?}",
        cert["partition"], elapsed
    ))
}

fn criterion_2() -> Check {
    let p = example_pattern();
    let mut count = 0;
    for (i, j) in p.entries() {
        let q = p.without_entry(i, j);
        ensure!(!q.minimum_size_check(2).unwrap().pass, "size check passes without ({}, {})", i + 1, j + 1);
        for seed in 0..10 {
            let rep = jacobian_rank_test(&q, 2, 1, seed, DEFAULT_RANK_TOL).unwrap();
            ensure!(
                rep.tested_rank == 17,
                "rank {} without ({}, {}) at seed {seed}",
                rep.tested_rank,
                i + 1,
                j + 1
            );
        }
        count += 1;
    }
    ensure!(count == 18, "{count} deletions");
    Ok("18 deletions x 10 seeds: size fails, rank 17".into())
}

fn criterion_3() -> Check {
    let (code, rep, elapsed) = analyze_cli(EXTENDED_GRID)?;
    ensure!(code == 0, "exit code {code}");
    ensure!(rep["unique_certificate"]["verdict"] == "pass", "no unique certificate");
    let cert = &rep["unique_certificate"]["evidence"];
    ensure!(
        partition_of(cert) == groups(&[&[1, 2], &[4, 5], &[3, 6]]),
        "partition {}",
        cert["partition"]
    );
    ensure!(
        group_supports(cert, 3) == sets(&[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[1, 2, 6]]),
        "group {{3,6}} SLMF differs from the reference"
    );
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("partition {}, {:.0?}", cert["partition"], elapsed))
}

fn criterion_4() -> Check {
    let b = SubspaceBasis::from_rows(4, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 2.0, 3.0, 4.0]).unwrap();
    let p = b.plucker();
    ensure!(p.coords() == [1.0, 2.0, 4.0, 0.0, -3.0, -6.0], "coordinates {:?}", p.coords());
    let res = gr24_relation_residual(&p).unwrap();
    ensure!(res == 0.0, "relation residual {res}");
    let degenerate: Vec<Vec<usize>> = p
        .index()
        .subsets()
        .filter(|psi| !projection_nondegenerate(&p, psi, NONDEGENERACY_TOL).unwrap())
        .collect();
    ensure!(degenerate == vec![vec![1, 2]], "degenerate subsets {degenerate:?}");
    Ok("(1,2,4,0,-3,-6), relation 0, degenerate only at {2,3}".into())
}

fn criterion_5() -> Check {
    let mut rng = master_rng(5);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let b = SubspaceBasis::random(6, 2, &mut rng).unwrap();
        let p = b.plucker();
        for phi in [phi1(), phi2()] {
            let rows = evaluate_bphi(&phi, &p).unwrap();
            let bphi = DMatrix::from_fn(6, 4, |i, k| rows[i][k]);
            let rank = numerical_rank(&bphi, DEFAULT_RANK_TOL).rank();
            ensure!(rank == Some(4), "rank {rank:?}");
            let inner = b.matrix().transpose() * &bphi;
            let rel = inner.amax() / (b.matrix().amax() * bphi.amax());
            worst = worst.max(rel);
        }
    }
    ensure!(worst < 1e-9, "orthogonality residual {worst:e}");
    Ok(format!("rank 4 in 400 evaluations, worst residual {worst:.1e}"))
}

fn criterion_6() -> Check {
    let pairs: Vec<Vec<usize>> = (0..4).flat_map(|a| (a + 1..4).map(move |b| vec![a, b])).collect();
    let mut checked = 0;
    for x in &pairs {
        for y in &pairs {
            for z in &pairs {
                let phi = Slmf::new(4, 1, vec![x.clone(), y.clone(), z.clone()]).unwrap();
                let c = check_slmf_combinatorial(&phi).is_slmf;
                let r = check_slmf_randomized(&phi, 3, checked).unwrap().is_slmf;
                ensure!(c == r, "disagreement on {:?}", phi.columns());
                checked += 1;
            }
        }
    }
    let mut rng = master_rng(6);
    for t in 0..500 {
        let cols = (0..4)
            .map(|_| {
                let mut s = rand::seq::index::sample(&mut rng, 6, 3).into_vec();
                s.sort_unstable();
                s
            })
            .collect();
        let phi = Slmf::new(6, 2, cols).unwrap();
        let c = check_slmf_combinatorial(&phi).is_slmf;
        let r = check_slmf_randomized(&phi, 3, t).unwrap().is_slmf;
        ensure!(c == r, "disagreement on {:?}", phi.columns());
        checked += 1;
    }
    Ok(format!("{checked} cases, 0 disagreements"))
}

fn criterion_7() -> Check {
    let mut rng = master_rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let b = SubspaceBasis::random(6, 2, &mut rng).unwrap();
        let coeff = DMatrix::from_fn(2, 5, |_, _| rng.sample::<f64, _>(StandardNormal));
        let x = b.matrix() * coeff;
        let obs = ObservedMatrix::from_dense(example_pattern(), &x).unwrap();
        let y = complete_matrix(&obs, &b).map_err(|e| e.to_string())?;
        worst = worst.max((y - &x).norm() / x.norm());
    }
    ensure!(worst < 1e-9, "relative error {worst:e}");
    Ok(format!("100 matrices, worst relative error {worst:.1e}"))
}

fn criterion_8() -> Check {
    let v = check_relaxed_slmf(&relaxed_counterexample(), 2).unwrap();
    ensure!(!v.holds, "counterexample accepted");
    let expected = RelaxedViolation::Inequality {
        rows: vec![0, 1, 2],
        lhs: 3,
        rhs: 2,
    };
    ensure!(v.violation == Some(expected), "violation {:?}", v.violation);
    Ok("rejected at I = {1,2,3}: 3 > 2".into())
}

fn criterion_9() -> Check {
    let mut rng = master_rng(9);
    let mut worst: f64 = 0.0;
    for t in 0..50 {
        let m = rng.random_range(5..=8);
        let n = rng.random_range(3..=7);
        let r = rng.random_range(1..=3);
        let k = rng.random_range(r..=m);
        let pattern = random_pattern(m, n, k, t).unwrap();
        let b = SubspaceBasis::random(m, r, &mut rng).unwrap();
        let coeff = DMatrix::from_fn(r, n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let obs = ObservedMatrix::from_dense(pattern, &(b.matrix() * coeff)).unwrap();
        let system = export_plucker_system(&obs, r).unwrap();
        worst = worst.max(system.residual(&b.plucker()).unwrap());
    }
    ensure!(worst < 1e-9, "residual {worst:e}");
    let x = DMatrix::from_fn(6, 5, |i, j| ((i + 1) * 10 + j + 1) as f64);
    let obs = ObservedMatrix::from_dense(example_pattern(), &x).unwrap();
    let system = export_plucker_system(&obs, 2).unwrap();
    let rows: Vec<_> = system.rows().iter().filter(|r| r.column == 1).collect();
    ensure!(rows.len() == 1, "column 2 contributes {} rows", rows.len());
    let idx = system.index();
    let expected = vec![
        (idx.rank(&[4, 5]).unwrap(), x[(3, 1)]),
        (idx.rank(&[3, 5]).unwrap(), -x[(4, 1)]),
        (idx.rank(&[3, 4]).unwrap(), x[(5, 1)]),
    ];
    ensure!(rows[0].coefficients == expected, "column 2 row {:?}", rows[0].coefficients);
    Ok(format!("50 systems, worst residual {worst:.1e}; column 2 row +x42[56] -x52[46] +x62[45]"))
}

fn criterion_10() -> Check {
    let draws = 100;
    let full = (0..draws)
        .filter(|&s| {
            let p = random_pattern(20, 36, 5, s).unwrap();
            jacobian_rank_test(&p, 2, 3, s, DEFAULT_RANK_TOL).unwrap().passed()
        })
        .count();
    let fraction = full as f64 / draws as f64;
    // Empirical expectation, not a proven bound.
    ensure!(fraction > 0.5, "full-rank fraction {fraction}");
    Ok(format!("full jacobian rank in {full}/{draws} draws"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("6x5 fixture analysis", criterion_1),
        ("single-entry removals", criterion_2),
        ("6x6 fixture unique certificate", criterion_3),
        ("Plücker fixture", criterion_4),
        ("B_phi rank and orthogonality", criterion_5),
        ("SLMF oracle agreement", criterion_6),
        ("completion round-trip", criterion_7),
        ("relaxed-SLMF counterexample", criterion_8),
        ("export soundness", criterion_9),
        ("Monte-Carlo full rank", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("acceptance {:>2} PASS {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {:>2} FAIL {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
