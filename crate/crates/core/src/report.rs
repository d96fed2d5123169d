//! Full analysis of a pattern and its machine-readable report.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::completability::{
    check_necessary_condition, check_relaxed_slmf, find_finite_certificate, find_unique_certificate,
    NecessaryOutcome, SearchOutcome,
};
use crate::error::{Error, Result};
use crate::linalg::DEFAULT_RANK_TOL;
use crate::numerics::{grassmann_section_rank_test, jacobian_rank_test, RankReport, SECTION_RANK_TOL};
use crate::pattern::{check_rank, ObservationPattern};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Random trials per rank test.
pub const ANALYZE_TRIALS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub verdict: Verdict,
    pub summary: String,
    pub evidence: Value,
}

impl Finding {
    fn new(verdict: Verdict, summary: impl Into<String>, evidence: Value) -> Self {
        Finding {
            verdict,
            summary: summary.into(),
            evidence,
        }
    }

    fn from_error(e: &Error) -> Self {
        Finding::new(Verdict::Inconclusive, e.to_string(), Value::Null)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatternSummary {
    pub m: usize,
    pub n: usize,
    pub entries: usize,
    pub column_sizes: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub rank: usize,
    pub seed: u64,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub seed: u64,
    pub rank: usize,
    pub budget: u64,
    pub pattern: PatternSummary,
    pub minimum_size: Finding,
    pub finite_certificate: Finding,
    pub unique_certificate: Finding,
    pub relaxed_slmf: Finding,
    pub necessary_condition: Finding,
    pub jacobian_rank: Finding,
    pub section_rank: Finding,
}

fn certificate_finding(outcome: Result<SearchOutcome>, what: &str) -> Finding {
    match outcome {
        Ok(SearchOutcome::Found(cert)) => Finding::new(
            Verdict::Pass,
            format!("{what} certificate found"),
            cert.to_json_value(),
        ),
        Ok(SearchOutcome::NotFound) => Finding::new(
            Verdict::Fail,
            format!("exhaustive search found no {what} certificate (absence proves nothing)"),
            Value::Null,
        ),
        Ok(SearchOutcome::BudgetExhausted) => Finding::new(
            Verdict::Inconclusive,
            "inconclusive: budget exhausted",
            Value::Null,
        ),
        Err(e) => Finding::from_error(&e),
    }
}

fn rank_finding(report: Result<RankReport>, what: &str) -> Finding {
    match report {
        Ok(rep) => {
            let verdict = if rep.passed() {
                Verdict::Pass
            } else if rep.inconclusive() {
                Verdict::Inconclusive
            } else {
                Verdict::Fail
            };
            let summary = format!("{what} rank {} of {}", rep.tested_rank, rep.target);
            Finding::new(verdict, summary, serde_json::to_value(rep).expect("report serializes"))
        }
        // Only a column with fewer than r observations makes the section test fail outright.
        Err(e @ Error::Argument(_)) => Finding::new(Verdict::Fail, e.to_string(), Value::Null),
        Err(e) => Finding::from_error(&e),
    }
}

fn one_based_entries(p: &ObservationPattern) -> Vec<[usize; 2]> {
    p.entries().map(|(i, j)| [i + 1, j + 1]).collect()
}

/// Run every test on `pattern`.
pub fn analyze(pattern: &ObservationPattern, opts: AnalysisOptions) -> Result<AnalysisReport> {
    let r = opts.rank;
    check_rank(pattern, r)?;
    let size = pattern.minimum_size_check(r)?;
    let minimum_size = Finding::new(
        if size.pass { Verdict::Pass } else { Verdict::Fail },
        format!("{} entries, at least {} required", size.actual, size.required),
        serde_json::to_value(size).expect("size check serializes"),
    );
    let finite_certificate = certificate_finding(find_finite_certificate(pattern, r, opts.budget), "finite");
    let unique_certificate = certificate_finding(find_unique_certificate(pattern, r, opts.budget), "unique");
    let relaxed_slmf = match check_relaxed_slmf(pattern, r) {
        Ok(v) => Finding::new(
            if v.holds { Verdict::Pass } else { Verdict::Fail },
            if v.holds {
                "pattern is a relaxed SLMF".to_owned()
            } else {
                "pattern is not a relaxed SLMF".to_owned()
            },
            json!({ "violation": v.violation.map(|x| one_based_violation(&x)) }),
        ),
        Err(e) => Finding::from_error(&e),
    };
    let necessary_condition = match check_necessary_condition(pattern, r, opts.budget) {
        Ok(NecessaryOutcome::Contains { witness }) => Finding::new(
            Verdict::Pass,
            "contains a relaxed-SLMF sub-pattern",
            json!({ "witness": one_based_entries(&witness) }),
        ),
        Ok(NecessaryOutcome::NotContained) => Finding::new(
            Verdict::Fail,
            "no relaxed-SLMF sub-pattern; not generically finitely completable",
            Value::Null,
        ),
        Ok(NecessaryOutcome::Inconclusive) => Finding::new(
            Verdict::Inconclusive,
            "inconclusive: budget exhausted",
            Value::Null,
        ),
        Err(e) => Finding::from_error(&e),
    };
    let jacobian_rank = rank_finding(
        jacobian_rank_test(pattern, r, ANALYZE_TRIALS, opts.seed, DEFAULT_RANK_TOL),
        "jacobian",
    );
    let section_rank = rank_finding(
        grassmann_section_rank_test(pattern, r, ANALYZE_TRIALS, opts.seed, SECTION_RANK_TOL),
        "grassmann-section",
    );
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        seed: opts.seed,
        rank: r,
        budget: opts.budget,
        pattern: PatternSummary {
            m: pattern.m(),
            n: pattern.n(),
            entries: pattern.len(),
            column_sizes: pattern.column_sizes(),
        },
        minimum_size,
        finite_certificate,
        unique_certificate,
        relaxed_slmf,
        necessary_condition,
        jacobian_rank,
        section_rank,
    })
}

fn one_based_violation(v: &crate::completability::RelaxedViolation) -> Value {
    use crate::completability::RelaxedViolation::*;
    match v {
        Inequality { rows, lhs, rhs } => json!({
            "kind": "inequality",
            "rows": rows.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "lhs": lhs,
            "rhs": rhs,
        }),
        other => serde_json::to_value(other).expect("violation serializes"),
    }
}

impl AnalysisReport {
    fn findings(&self) -> [(&'static str, &Finding); 7] {
        [
            ("minimum size", &self.minimum_size),
            ("finite certificate", &self.finite_certificate),
            ("unique certificate", &self.unique_certificate),
            ("relaxed SLMF", &self.relaxed_slmf),
            ("necessary condition", &self.necessary_condition),
            ("jacobian rank", &self.jacobian_rank),
            ("section rank", &self.section_rank),
        ]
    }

    /// 0 when finite completability is witnessed, 2 when refuted, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        let witnessed = [&self.finite_certificate, &self.unique_certificate, &self.jacobian_rank]
            .iter()
            .any(|f| f.verdict == Verdict::Pass);
        let refuted = [&self.minimum_size, &self.necessary_condition, &self.jacobian_rank]
            .iter()
            .any(|f| f.verdict == Verdict::Fail);
        if witnessed {
            0
        } else if refuted {
            2
        } else {
            3
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.pattern;
        let _ = writeln!(
            out,
            "pattern {}x{}, {} entries, rank {}, seed {}",
            p.m, p.n, p.entries, self.rank, self.seed
        );
        let _ = writeln!(out, "column sizes {:?}", p.column_sizes);
        for (name, f) in self.findings() {
            let _ = writeln!(out, "{name:<20} {:<12} {}", f.verdict.as_str(), f.summary);
        }
        for (name, f) in [("finite", &self.finite_certificate), ("unique", &self.unique_certificate)] {
            if f.verdict == Verdict::Pass {
                let _ = writeln!(out, "{name} certificate: {}", f.evidence);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completability::DEFAULT_BUDGET;
    use crate::fixtures::{example_pattern, extended_pattern};

    fn opts() -> AnalysisOptions {
        AnalysisOptions {
            rank: 2,
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }

    #[test]
    fn example_report() {
        let rep = analyze(&example_pattern(), opts()).unwrap();
        assert_eq!(rep.finite_certificate.verdict, Verdict::Pass);
        assert_eq!(rep.unique_certificate.verdict, Verdict::Fail);
        assert_eq!(rep.relaxed_slmf.verdict, Verdict::Pass);
        assert_eq!(rep.jacobian_rank.evidence["tested_rank"], 18);
        assert_eq!(rep.section_rank.evidence["tested_rank"], 8);
        assert_eq!(rep.exit_code(), 0);
        let v: Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
    }

    #[test]
    fn extended_report() {
        let rep = analyze(&extended_pattern(), opts()).unwrap();
        assert_eq!(rep.unique_certificate.verdict, Verdict::Pass);
        assert_eq!(rep.relaxed_slmf.verdict, Verdict::Fail);
        assert_eq!(rep.necessary_condition.verdict, Verdict::Pass);
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn removal_report() {
        let rep = analyze(&example_pattern().without_entry(0, 0), opts()).unwrap();
        assert_eq!(rep.minimum_size.verdict, Verdict::Fail);
        assert_eq!(rep.exit_code(), 2);
    }

    #[test]
    fn exhausted_budget_is_inconclusive() {
        let mut o = opts();
        o.budget = 2;
        let rep = analyze(&example_pattern(), o).unwrap();
        assert_eq!(rep.finite_certificate.verdict, Verdict::Inconclusive);
        assert!(rep.to_text().contains("budget exhausted"));
    }
}
