//! Continued-fraction expansion of √D and the fundamental solution of
//! the simple Pell equation `X² − DY² = 1`.
//!
//! D must be a positive non-square, but is not required to be
//! squarefree: the expansion and the unit exist whenever √D is
//! irrational (M = 72 produces D = 18, for instance).

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::chebyshev::{cheb_t, cheb_u};
use crate::Error;

/// Canonical periodic continued fraction of √d:
/// `√d = [a0; period]` with the period repeating forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    pub d: u64,
    pub a0: u64,
    pub period: Vec<u64>,
}

/// The fundamental solution `(x, y)` of `X² − dY² = 1`: the smallest
/// nontrivial solution with `x > 1`, `y > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellUnit {
    pub d: u64,
    pub x: BigUint,
    pub y: BigUint,
}

fn require_nonsquare(d: u64) -> Result<u64, Error> {
    let a0 = d.isqrt();
    if a0 * a0 == d {
        Err(Error::SquareD(d))
    } else {
        Ok(a0)
    }
}

/// Periodic continued fraction of √d via the classical (P, Q) state
/// recurrence, run until the state returns to its initial value. All
/// state is exact integer arithmetic.
pub fn cf_sqrt(d: u64) -> Result<CfExpansion, Error> {
    let a0 = require_nonsquare(d)?;
    // state for the first complete quotient (a0 + √d)/(d − a0²)
    let start = (a0, d - a0 * a0);
    let (mut p, mut q) = start;
    let mut period = Vec::new();
    loop {
        let a = (a0 + p) / q;
        period.push(a);
        let p_next = a * q - p;
        debug_assert_eq!((d - p_next * p_next) % q, 0);
        let q_next = (d - p_next * p_next) / q;
        p = p_next;
        q = q_next;
        if (p, q) == start {
            break;
        }
    }
    debug_assert_eq!(*period.last().unwrap(), 2 * a0);
    Ok(CfExpansion { d, a0, period })
}

/// Fundamental solution of `X² − dY² = 1` from the convergents of √d.
///
/// With period length L, the convergent just before the end of the
/// first period solves `X² − dY² = (−1)^L`; when L is odd the +1
/// solution comes from running through two periods instead.
pub fn pell_fundamental(d: u64) -> Result<PellUnit, Error> {
    let cf = cf_sqrt(d)?;
    let len = cf.period.len();
    let terms = if len % 2 == 0 { len } else { 2 * len };
    // seed with the h₋₁/h₋₂ convention: p₋₁ = 1, q₋₁ = 0
    let (mut p_prev, mut p_cur) = (BigUint::one(), BigUint::from(cf.a0));
    let (mut q_prev, mut q_cur) = (BigUint::zero(), BigUint::one());
    for i in 1..terms {
        let t = cf.period[(i - 1) % len];
        let p_next = t * &p_cur + &p_prev;
        let q_next = t * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
    }
    debug_assert_eq!(&p_cur * &p_cur, d * &q_cur * &q_cur + 1u32);
    Ok(PellUnit {
        d,
        x: p_cur,
        y: q_cur,
    })
}

/// The k-th solution of `X² − dY² = 1`, k ≥ 1: `(T_k(x_f), y_f·U_{k−1}(x_f))`.
pub fn pell_kth_solution(unit: &PellUnit, k: u64) -> (BigUint, BigUint) {
    assert!(k >= 1, "solution index starts at 1");
    let x = cheb_t(k, &unit.x);
    let y = &unit.y * cheb_u(k as i64 - 1, &unit.x);
    (x, y)
}
