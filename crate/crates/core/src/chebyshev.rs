//! Exact integer evaluation of Chebyshev polynomials of the first and
//! second kinds at integer arguments `x ≥ 1`.
//!
//! The pair `(T_k(x), U_{k−1}(x))` solves the simple Pell equation
//! `t² − (x²−1)u² = 1`, which is what makes these polynomials generate
//! Pell solution branches. Indexing follows that use: a branch step k
//! consumes `T_{k−1}` and `U_{k−2}`, with the convention `U_{−1} = 0`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `T_k(x)` via `T_0 = 1`, `T_1 = x`, `T_k = 2x·T_{k−1} − T_{k−2}`.
pub fn cheb_t(k: u64, x: &BigUint) -> BigUint {
    assert!(!x.is_zero(), "argument must be >= 1");
    if k == 0 {
        return BigUint::one();
    }
    let two_x = x << 1u8;
    let mut prev = BigUint::one();
    let mut cur = x.clone();
    for _ in 1..k {
        let next = &two_x * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_k(x)` via `U_{−1} = 0`, `U_0 = 1`, `U_k = 2x·U_{k−1} − U_{k−2}`.
///
/// Accepts `k = −1` so that closed-form branch formulas are uniform at
/// their first step.
pub fn cheb_u(k: i64, x: &BigUint) -> BigUint {
    assert!(k >= -1, "index must be >= -1");
    assert!(!x.is_zero(), "argument must be >= 1");
    if k == -1 {
        return BigUint::zero();
    }
    let two_x = x << 1u8;
    let mut prev = BigUint::zero();
    let mut cur = BigUint::one();
    for _ in 0..k {
        let next = &two_x * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// One element of the incremental stream: `t = T_k(x)`, `u = U_{k−1}(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebPair {
    pub k: u64,
    pub t: BigUint,
    pub u: BigUint,
}

/// Infinite stream of [`ChebPair`]s for k = 0, 1, 2, … with O(1)
/// big-integer operations per step.
///
/// Advances through the coupled one-step identities
/// `T_{k+1} = x·T_k + (x²−1)·U_{k−1}` and `U_k = x·U_{k−1} + T_k`,
/// which never leave the non-negative integers.
pub fn cheb_pair_iter(x: BigUint) -> ChebPairs {
    assert!(!x.is_zero(), "argument must be >= 1");
    let x2m1 = &x * &x - 1u32;
    ChebPairs {
        x,
        x2m1,
        k: 0,
        t: BigUint::one(),
        u: BigUint::zero(),
    }
}

#[derive(Debug, Clone)]
pub struct ChebPairs {
    x: BigUint,
    x2m1: BigUint,
    k: u64,
    t: BigUint,
    u: BigUint,
}

impl Iterator for ChebPairs {
    type Item = ChebPair;

    fn next(&mut self) -> Option<ChebPair> {
        let out = ChebPair {
            k: self.k,
            t: self.t.clone(),
            u: self.u.clone(),
        };
        let t_next = &self.x * &self.t + &self.x2m1 * &self.u;
        let u_next = &self.x * &self.u + &self.t;
        self.t = t_next;
        self.u = u_next;
        self.k += 1;
        Some(out)
    }
}
