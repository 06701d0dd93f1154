//! Independent brute-force ground truth: find all (a, s) for a given m
//! by scanning a directly, with no Pell machinery involved. Shares
//! nothing with the solver pipeline except the perfect-square test.

use num_bigint::BigUint;

use crate::arith::{perfect_square_root, perfect_square_root_u64};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub m: u64,
    pub a_bound: u64,
    /// (a, s) pairs ascending in a.
    pub pairs: Vec<(BigUint, BigUint)>,
}

/// Scan a in `[1, a_max]` and report every a where the sum of m
/// consecutive squares starting at a² is a perfect square.
///
/// The sum `T(a) = m·a² + m(m−1)·a + (m−1)m(2m−1)/6` is advanced
/// incrementally: `T(a+1) − T(a) = 2m·a + m²`, whose own difference is
/// the constant 2m. Exact arithmetic throughout; a u64 loop is used
/// when the largest probed value fits.
pub fn brute_force_solutions(m: u64, a_max: u64) -> OracleResult {
    assert!(m >= 2, "need m >= 2");
    assert!(a_max >= 1, "need a_max >= 1");
    let m128 = m as u128;
    let worst = (a_max as u128 + m128)
        .checked_pow(2)
        .and_then(|sq| sq.checked_mul(m128))
        .unwrap_or(u128::MAX);
    let pairs = if worst <= u64::MAX as u128 {
        scan_u64(m, a_max)
            .into_iter()
            .map(|(a, s)| (BigUint::from(a), BigUint::from(s)))
            .collect()
    } else {
        scan_big(m, a_max)
    };
    OracleResult { m, a_bound: a_max, pairs }
}

fn scan_u64(m: u64, a_max: u64) -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    // T(1) in u128: the intermediate triple product is ~2m³ and can
    // overflow u64 even when every probed value fits
    let m128 = m as u128;
    let constant = (m128 - 1) * m128 * (2 * m128 - 1) / 6;
    let mut t = (m128 + m128 * (m128 - 1) + constant) as u64;
    // ΔT(1) = 2m + m²
    let mut delta = 2 * m + m * m;
    for a in 1..=a_max {
        if let Some(s) = perfect_square_root_u64(t) {
            pairs.push((a, s));
        }
        t += delta;
        delta += 2 * m;
    }
    pairs
}

fn scan_big(m: u64, a_max: u64) -> Vec<(BigUint, BigUint)> {
    let mut pairs = Vec::new();
    let mb = BigUint::from(m);
    let mut t = &mb + &mb * (&mb - 1u32) + (&mb - 1u32) * &mb * ((&mb << 1u8) - 1u32) / 6u32;
    let mut delta = (&mb << 1u8) + &mb * &mb;
    let two_m = &mb << 1u8;
    for a in 1..=a_max {
        if let Some(s) = perfect_square_root(&t) {
            pairs.push((BigUint::from(a), s));
        }
        t += &delta;
        delta += &two_m;
    }
    pairs
}
