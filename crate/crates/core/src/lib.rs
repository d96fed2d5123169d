//! Analysis of observation patterns for low-rank matrix completion.
//!
//! The crate certifies finite and unique completability of a mask through
//! partitions into supports of linkage matching fields, runs the relaxed
//! counting test and numerical generic-rank tests, builds the Plücker
//! coordinate objects behind them (dual bases, hyperplane sections), and
//! completes a partially observed matrix once its column space is known.

pub mod completability;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod formats;
pub mod linalg;
pub mod numerics;
pub mod pattern;
pub mod plucker;
pub mod report;
pub mod rng;
pub mod slmf;
pub mod subsets;

pub use completability::{Certificate, CertificateKind, SearchOutcome};
pub use error::{Error, Result};
pub use numerics::{ObservedMatrix, RankReport};
pub use pattern::{random_pattern, ColumnSupportFamily, ObservationPattern, SizeCheck};
pub use plucker::{PluckerVector, SubspaceBasis};
pub use report::{analyze, AnalysisOptions, AnalysisReport, Verdict};
pub use slmf::{Slmf, SlmfVerdict};
