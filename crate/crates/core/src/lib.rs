//! Squares that are sums of consecutive squares.
//!
//! Given a run length M ≥ 2, this crate finds every integer pair
//! (a, s) with a ≥ 1 such that
//!
//! ```text
//! a² + (a+1)² + ⋯ + (a+M−1)² = s²
//! ```
//!
//! M = 24, a = 1, s = 70 is the classic cannonball stacking: the first
//! 24 squares sum to 4900 = 70².
//!
//! The pipeline:
//!
//! 1. [`congruence`] filters M by residue classes; most M admit no
//!    solutions at all.
//! 2. For non-square M, [`solver`] rewrites the sum as a generalized
//!    Pell equation `X² − DY² = N` whose shape depends on M mod 4.
//!    [`pell`] produces the fundamental unit of `X² − DY² = 1` from the
//!    continued fraction of √D, and [`pell_general`] finds the σ
//!    fundamental solutions by a bounded scan and grows each into an
//!    infinite branch through Chebyshev polynomial identities
//!    ([`chebyshev`]).
//! 3. For square M = (6n−1)², the equation degenerates to a difference
//!    of squares and a finite factor-pair enumeration settles it.
//! 4. [`oracle`] is a deliberately dumb direct scan used to cross-check
//!    everything.
//!
//! All arithmetic is exact; values grow without bound along a branch,
//! so everything is [`num_bigint`]-backed.
//!
//! ```
//! use pellsum::solver::{solve, Limits};
//!
//! let result = solve(24, &Limits { max_count: Some(1), ..Limits::default() }).unwrap();
//! let first = &result.records[0];
//! assert_eq!((first.a.to_string().as_str(), first.s.to_string().as_str()), ("1", "70"));
//! ```

use std::fmt;

pub mod arith;
pub mod chebyshev;
pub mod congruence;
pub mod oracle;
pub mod pell;
pub mod pell_general;
pub mod solver;

pub use congruence::{classify, candidates_up_to, MClassification, Verdict};
pub use oracle::brute_force_solutions;
pub use solver::{solve, verify, Limits, SolutionRecord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The run length must be at least 2.
    MOutOfRange(u64),
    /// Continued fractions and Pell units require a non-square D.
    SquareD(u64),
    /// Non-square enumeration needs at least one finite limit.
    NoFiniteLimit,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MOutOfRange(m) => write!(f, "run length must be at least 2, got {m}"),
            Error::SquareD(d) => write!(f, "{d} is a perfect square; no Pell equation exists"),
            Error::NoFiniteLimit => {
                write!(f, "enumeration is infinite; set max_k, max_a or max_count")
            }
        }
    }
}

impl std::error::Error for Error {}
