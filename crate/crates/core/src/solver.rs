//! Problem assembly for a given run length M: builds the case-dependent
//! Pell instance, maps Pell solutions back to `(a, s)`, handles the
//! finite factor-pair path for square M, and merges the infinite
//! branches into one stream ordered by ascending a.
//!
//! The underlying identity is
//! `Σ_{i=0}^{M−1} (a+i)² = M[(a + (M−1)/2)² + (M²−1)/12] = s²`,
//! which becomes `X² − DY² = N` with case-dependent substitutions:
//!
//! | case        | X  | Y            | D   | N          |
//! |-------------|----|--------------|-----|------------|
//! | M odd       | s  | a + (M−1)/2  | M   | M(M²−1)/12 |
//! | M ≡ 0 mod 4 | s  | 2a + M − 1   | M/4 | M(M²−1)/12 |
//! | M ≡ 2 mod 4 | 2s | 2a + M − 1   | M   | M(M²−1)/3  |

use std::cmp::Ordering;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::even_factor_pairs;
use crate::congruence::{classify, ExclusionReason, MClassification, PellCase, Verdict};
use crate::pell::{pell_fundamental, PellUnit};
use crate::pell_general::{branch_iter, fundamental_solutions, BranchIter, FundamentalSolution};
use crate::Error;

/// The generalized Pell instance a non-square candidate M reduces to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellProblem {
    pub m: u64,
    pub case: PellCase,
    pub d: u64,
    pub n_rhs: BigUint,
}

/// One emitted answer: the sum of m squares starting at a² equals s².
/// `j` is the branch index (0 on the square-M path) and `k` the step
/// index within the branch (the factor-pair rank for square M).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub m: u64,
    pub j: usize,
    pub k: u64,
    pub a: BigUint,
    pub s: BigUint,
}

/// A candidate that maps to integers but fails `a ≥ 1`; kept for
/// diagnostic output only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedCandidate {
    pub m: u64,
    pub j: usize,
    pub k: u64,
    pub a: BigInt,
    pub s: BigUint,
}

/// Enumeration limits. Branches are infinite, so non-square solves
/// require at least one of these to be set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_k: Option<u64>,
    pub max_a: Option<u64>,
    pub max_count: Option<usize>,
}

impl Limits {
    pub fn is_bounded(&self) -> bool {
        self.max_k.is_some() || self.max_a.is_some() || self.max_count.is_some()
    }
}

/// Build the Pell instance for a non-square candidate.
///
/// Panics when called on an excluded or square classification; that is
/// a caller bug, not an input condition.
pub fn build_equation(cls: &MClassification) -> PellProblem {
    let Verdict::NonSquareCandidate(case) = cls.verdict else {
        panic!("build_equation requires a non-square candidate, got {:?}", cls.verdict);
    };
    let m = cls.m;
    let mb = BigUint::from(m);
    let m2_minus_1 = &mb * &mb - 1u32;
    let (d, divisor) = match case {
        PellCase::Odd => (m, 12u32),
        PellCase::ZeroMod4 => (m / 4, 12),
        PellCase::TwoMod4 => (m, 3),
    };
    let (n_rhs, rem) = (mb * m2_minus_1).div_rem(&BigUint::from(divisor));
    assert!(rem.is_zero(), "RHS not integral for m = {m}");
    let r = d.isqrt();
    assert_ne!(r * r, d, "D = {d} must be non-square for m = {m}");
    PellProblem { m, case, d, n_rhs }
}

/// Map a Pell solution (X, Y) to `(a, s)` without the positivity
/// filter; `None` when the case's parity requirements fail.
fn map_element(case: PellCase, m: u64, x: &BigUint, y: &BigUint) -> Option<(BigInt, BigUint)> {
    match case {
        PellCase::Odd => {
            let a = BigInt::from(y.clone()) - BigInt::from((m - 1) / 2);
            Some((a, x.clone()))
        }
        PellCase::ZeroMod4 => {
            if y.is_even() {
                return None;
            }
            let a = (BigInt::from(y.clone()) - BigInt::from(m - 1)) / 2;
            Some((a, x.clone()))
        }
        PellCase::TwoMod4 => {
            // X = 2s is always even here; an odd X cannot map back
            if x.is_odd() || y.is_even() {
                return None;
            }
            let a = (BigInt::from(y.clone()) - BigInt::from(m - 1)) / 2;
            Some((a, x >> 1u8))
        }
    }
}

/// Map a Pell solution (X, Y) to `(a, s)`. Absent when the parity
/// requirements of the case fail or when a < 1.
pub fn pell_to_as(case: PellCase, m: u64, x: &BigUint, y: &BigUint) -> Option<(BigUint, BigUint)> {
    map_element(case, m, x, y).and_then(|(a, s)| {
        if a.is_positive() {
            Some((a.to_biguint().expect("positive"), s))
        } else {
            None
        }
    })
}

/// Largest Y still mapping to a ≤ max_a.
fn y_cap(case: PellCase, m: u64, max_a: u64) -> BigUint {
    match case {
        PellCase::Odd => BigUint::from(max_a) + BigUint::from((m - 1) / 2),
        _ => (BigUint::from(max_a) << 1u8) + BigUint::from(m - 1),
    }
}

struct MappedElement {
    a: BigInt,
    s: BigUint,
    j: usize,
    k: u64,
    accepted: bool,
}

/// One branch filtered through the (a, s) map. Yields both accepted and
/// a < 1 elements (for diagnostics); parity misses are skipped. The
/// parity pattern of (X, Y) mod 2 repeats with period at most 3, so
/// three consecutive misses prove the branch never maps to integers
/// and the stream ends.
struct BranchStream {
    iter: BranchIter,
    case: PellCase,
    m: u64,
    max_k: Option<u64>,
    y_cap: Option<BigUint>,
    parity_misses: u32,
}

impl Iterator for BranchStream {
    type Item = MappedElement;

    fn next(&mut self) -> Option<MappedElement> {
        loop {
            let el = self.iter.next().expect("branch iterator is infinite");
            if self.max_k.is_some_and(|mk| el.k > mk) {
                return None;
            }
            if self.y_cap.as_ref().is_some_and(|cap| el.y > *cap) {
                return None;
            }
            match map_element(self.case, self.m, &el.x, &el.y) {
                None => {
                    self.parity_misses += 1;
                    if self.parity_misses >= 3 {
                        return None;
                    }
                }
                Some((a, s)) => {
                    self.parity_misses = 0;
                    let accepted = a.is_positive();
                    return Some(MappedElement { a, s, j: el.j, k: el.k, accepted });
                }
            }
        }
    }
}

struct HeapItem {
    el: MappedElement,
    stream: usize,
}

impl HeapItem {
    fn key(&self) -> (&BigInt, usize, u64) {
        (&self.el.a, self.el.j, self.el.k)
    }
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// Result of a non-square solve, with the intermediate objects exposed
/// for inspection.
#[derive(Debug, Clone)]
pub struct NonSquareOutcome {
    pub problem: PellProblem,
    pub unit: PellUnit,
    pub fundamentals: Vec<FundamentalSolution>,
    pub accepted: Vec<SolutionRecord>,
    pub rejected: Vec<RejectedCandidate>,
}

impl NonSquareOutcome {
    /// Number of solution branches.
    pub fn sigma(&self) -> usize {
        self.fundamentals.len()
    }
}

/// Solve a non-square candidate: find the σ fundamental solutions,
/// stream every branch through the (a, s) map, and k-way-merge them by
/// ascending a. Branch indices j follow ascending fundamental Y.
pub fn solve_nonsquare(m: u64, limits: &Limits) -> Result<NonSquareOutcome, Error> {
    let cls = classify(m)?;
    assert!(
        matches!(cls.verdict, Verdict::NonSquareCandidate(_)),
        "solve_nonsquare requires a non-square candidate, got {:?}",
        cls.verdict
    );
    if !limits.is_bounded() {
        return Err(Error::NoFiniteLimit);
    }
    let problem = build_equation(&cls);
    let case = problem.case;
    let unit = pell_fundamental(problem.d)?;
    let fundamentals = fundamental_solutions(problem.d, &problem.n_rhs, &unit);

    let mut streams: Vec<BranchStream> = fundamentals
        .iter()
        .map(|fs| BranchStream {
            iter: branch_iter(fs, &unit, problem.d),
            case,
            m,
            max_k: limits.max_k,
            y_cap: limits.max_a.map(|ma| y_cap(case, m, ma)),
            parity_misses: 0,
        })
        .collect();

    let mut heap = BinaryHeap::new();
    for (idx, stream) in streams.iter_mut().enumerate() {
        if let Some(el) = stream.next() {
            heap.push(Reverse(HeapItem { el, stream: idx }));
        }
    }

    let mut accepted: Vec<SolutionRecord> = Vec::new();
    let mut rejected: Vec<RejectedCandidate> = Vec::new();
    while let Some(Reverse(HeapItem { el, stream })) = heap.pop() {
        if el.accepted && limits.max_count.is_some_and(|mc| accepted.len() >= mc) {
            break;
        }
        if el.accepted {
            let a = el.a.to_biguint().expect("accepted implies a >= 1");
            debug_assert!(verify(m, &a, &el.s));
            accepted.push(SolutionRecord { m, j: el.j, k: el.k, a, s: el.s });
        } else {
            rejected.push(RejectedCandidate { m, j: el.j, k: el.k, a: el.a, s: el.s });
        }
        if let Some(next) = streams[stream].next() {
            heap.push(Reverse(HeapItem { el: next, stream }));
        }
    }
    Ok(NonSquareOutcome { problem, unit, fundamentals, accepted, rejected })
}

/// Result of the finite square-M path.
#[derive(Debug, Clone)]
pub struct SquareOutcome {
    /// Index with m = (6n−1)²; may be negative.
    pub n: i64,
    /// |6n−1|.
    pub root: u64,
    /// The decomposed target 2n(3n−1)(6n(3n−1)+1).
    pub rhs: BigUint,
    /// Number of even factor pairs.
    pub phi: usize,
    pub accepted: Vec<SolutionRecord>,
    pub rejected: Vec<RejectedCandidate>,
}

/// Solve a square candidate m = (6n−1)². Every even factor pair (u, v)
/// of N = 2n(3n−1)(6n(3n−1)+1) yields a candidate
/// `s = |6n−1|·(v+u)/2`, `a = (v−u)/2 − 6n(3n−1)`; those with a ≥ 1 are
/// solutions. Candidates are ranked by ascending a (k = 1..φ).
pub fn solve_square(cls: &MClassification) -> SquareOutcome {
    let Verdict::SquareCandidate { n, root } = cls.verdict else {
        panic!("solve_square requires a square candidate, got {:?}", cls.verdict);
    };
    let m = cls.m;
    let nb = BigInt::from(n);
    // n(3n−1) is positive and even for every n ≠ 0
    let p: BigInt = &nb * (&nb * 3 - 1);
    assert!(p.is_positive(), "factored target must be positive");
    let offset: BigInt = &p * 6;
    let rhs_signed: BigInt = &p * 2 * (&offset + 1);
    let rhs = rhs_signed.to_biguint().expect("positive by construction");
    let pairs = even_factor_pairs(&rhs);
    let phi = pairs.len();

    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    // ascending u means descending a; walk reversed so a ascends
    for (i, pair) in pairs.iter().rev().enumerate() {
        let k = (i + 1) as u64;
        let x = (&pair.v + &pair.u) >> 1u8;
        let y = (&pair.v - &pair.u) >> 1u8;
        let s = root * &x;
        let a = BigInt::from(y) - &offset;
        if a.is_positive() {
            let a = a.to_biguint().expect("positive");
            debug_assert!(verify(m, &a, &s));
            accepted.push(SolutionRecord { m, j: 0, k, a, s });
        } else {
            rejected.push(RejectedCandidate { m, j: 0, k, a, s });
        }
    }
    SquareOutcome { n, root, rhs, phi, accepted, rejected }
}

/// Exact check that the sum of m consecutive squares starting at a²
/// equals s². Evaluates both the quadratic form
/// `12s² = M(3(2a+M−1)² + M²−1)` and the direct summation; the two must
/// agree (they are the same identity), and their common value is
/// returned.
pub fn verify(m: u64, a: &BigUint, s: &BigUint) -> bool {
    assert!(m >= 2, "verify requires m >= 2");
    assert!(!a.is_zero() && !s.is_zero(), "verify requires a >= 1, s >= 1");
    let mb = BigUint::from(m);
    let base = (a << 1u8) + &mb - 1u32;
    let closed = s * s * 12u32 == &mb * (3u32 * &base * &base + &mb * &mb - 1u32);

    let mut sum = BigUint::zero();
    let end = a + &mb;
    let mut i = a.clone();
    while i < end {
        sum += &i * &i;
        i += 1u32;
    }
    let direct = sum == s * s;
    assert_eq!(closed, direct, "quadratic form and direct summation disagree for m = {m}");
    closed
}

/// How a solve was dispatched, with the per-path metadata.
#[derive(Debug, Clone)]
pub enum SolveKind {
    Excluded(ExclusionReason),
    NonSquare {
        problem: PellProblem,
        unit: PellUnit,
        sigma: usize,
    },
    Square {
        n: i64,
        root: u64,
        phi: usize,
    },
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub m: u64,
    pub kind: SolveKind,
    pub records: Vec<SolutionRecord>,
    pub rejected: Vec<RejectedCandidate>,
}

/// Classify m and dispatch: excluded values yield an empty result with
/// the reason surfaced, square candidates run the finite factor-pair
/// path, everything else runs the Pell pipeline.
pub fn solve(m: u64, limits: &Limits) -> Result<SolveResult, Error> {
    let cls = classify(m)?;
    match cls.verdict {
        Verdict::Excluded(reason) => Ok(SolveResult {
            m,
            kind: SolveKind::Excluded(reason),
            records: Vec::new(),
            rejected: Vec::new(),
        }),
        Verdict::SquareCandidate { .. } => {
            let out = solve_square(&cls);
            let mut records = out.accepted;
            if let Some(ma) = limits.max_a {
                let cap = BigUint::from(ma);
                records.retain(|r| r.a <= cap);
            }
            if let Some(mc) = limits.max_count {
                records.truncate(mc);
            }
            Ok(SolveResult {
                m,
                kind: SolveKind::Square { n: out.n, root: out.root, phi: out.phi },
                records,
                rejected: out.rejected,
            })
        }
        Verdict::NonSquareCandidate(_) => {
            let out = solve_nonsquare(m, limits)?;
            Ok(SolveResult {
                m,
                kind: SolveKind::NonSquare {
                    problem: out.problem,
                    unit: out.unit,
                    sigma: out.fundamentals.len(),
                },
                records: out.accepted,
                rejected: out.rejected,
            })
        }
    }
}
