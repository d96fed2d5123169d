//! Reference patterns and SLMFs used throughout the tests and the docs.

use crate::pattern::ObservationPattern;
use crate::slmf::Slmf;

/// The 6 x 5 rank-2 pattern with 18 observed entries.
pub const EXAMPLE_GRID: &str = "\
10011
10110
10001
11110
11011
01010
";

/// The 6 x 6 extension of [`EXAMPLE_GRID`] that is uniquely completable at rank 2.
pub const EXTENDED_GRID: &str = "\
101111
101101
101010
111100
110111
010101
";

pub fn example_pattern() -> ObservationPattern {
    ObservationPattern::parse_grid(EXAMPLE_GRID).expect("fixture parses")
}

pub fn extended_pattern() -> ObservationPattern {
    ObservationPattern::parse_grid(EXTENDED_GRID).expect("fixture parses")
}

fn slmf_1based(m: usize, r: usize, columns: &[[usize; 3]]) -> Slmf {
    let cols = columns
        .iter()
        .map(|c| c.iter().map(|&i| i - 1).collect())
        .collect();
    Slmf::new(m, r, cols).expect("fixture is well formed")
}

/// (2,6)-SLMF drawn from columns 1 and 2 of [`EXAMPLE_GRID`].
pub fn phi1() -> Slmf {
    slmf_1based(6, 2, &[[1, 2, 3], [1, 2, 4], [1, 2, 5], [4, 5, 6]])
}

/// (2,6)-SLMF drawn from columns 4 and 5 of [`EXAMPLE_GRID`].
pub fn phi2() -> Slmf {
    slmf_1based(6, 2, &[[2, 4, 6], [1, 2, 4], [1, 2, 5], [1, 3, 5]])
}

/// (2,6)-SLMF drawn from columns 3 and 6 of [`EXTENDED_GRID`].
pub fn phi3() -> Slmf {
    slmf_1based(6, 2, &[[1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 2, 6]])
}

/// Four copies of `{1,2,3}`: fails the union bound at `T = {1,2}`.
pub fn repeated_phi() -> Slmf {
    slmf_1based(6, 2, &[[1, 2, 3], [1, 2, 3], [1, 2, 3], [1, 2, 3]])
}

/// 18 entries with supports {1,2,3} x3, {1,2,4,5}, {1,3,4,5,6}; violates the
/// relaxed counting inequality at I = {1,2,3}.
pub fn relaxed_counterexample() -> ObservationPattern {
    let supports: Vec<Vec<usize>> = [
        vec![1, 2, 3],
        vec![1, 2, 3],
        vec![1, 2, 3],
        vec![1, 2, 4, 5],
        vec![1, 3, 4, 5, 6],
    ]
    .into_iter()
    .map(|s| s.into_iter().map(|i| i - 1).collect())
    .collect();
    ObservationPattern::from_supports(6, &supports).expect("fixture is valid")
}
