//! Exact integer primitives shared by every other module: floor square
//! roots, perfect-square tests, and even factor-pair decomposition.
//!
//! Everything here is arbitrary precision and exact; no floating point.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Bitmask of quadratic residues mod 64. Squares can only land on 12 of
/// the 64 residues, so one AND rejects ~81% of non-squares before any
/// root extraction.
const SQUARE_MOD64: u64 = {
    let mut mask = 0u64;
    let mut i = 0u64;
    while i < 64 {
        mask |= 1 << ((i * i) % 64);
        i += 1;
    }
    mask
};

/// Floor of the square root: returns `r` with `r² ≤ n < (r+1)²`.
///
/// Newton iteration seeded with `2^⌈bits/2⌉ ≥ √n`; the iterate decreases
/// strictly until it reaches the floor root, so termination is guaranteed.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Exact square root: `Some(r)` iff `r² = n`.
pub fn perfect_square_root(n: &BigUint) -> Option<BigUint> {
    let low = n.iter_u64_digits().next().unwrap_or(0);
    if (SQUARE_MOD64 >> (low & 63)) & 1 == 0 {
        return None;
    }
    let r = isqrt(n);
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// `u64` fast path for hot scan loops; same contract as
/// [`perfect_square_root`].
pub fn perfect_square_root_u64(n: u64) -> Option<u64> {
    if (SQUARE_MOD64 >> (n & 63)) & 1 == 0 {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// `u128` tier of the same fast path.
pub fn perfect_square_root_u128(n: u128) -> Option<u128> {
    if (SQUARE_MOD64 >> (n as u64 & 63)) & 1 == 0 {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// A decomposition `n = u·v` with both factors even and `u ≤ v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPair {
    pub u: BigUint,
    pub v: BigUint,
}

/// All factorizations `n = u·v` with `u ≤ v` and `u ≡ v ≡ 0 (mod 2)`,
/// sorted by ascending `u`. Empty unless `n ≡ 0 (mod 4)`.
///
/// Trial division up to `√n`, so O(√n); the inputs produced by the
/// square-M path stay at desk scale.
pub fn even_factor_pairs(n: &BigUint) -> Vec<FactorPair> {
    let mut pairs = Vec::new();
    if n.is_zero() || !(n % 4u32).is_zero() {
        return pairs;
    }
    let limit = isqrt(n);
    let two = BigUint::from(2u32);
    let mut u = two.clone();
    while u <= limit {
        let (v, rem) = n.div_rem(&u);
        if rem.is_zero() && v.is_even() {
            pairs.push(FactorPair {
                u: u.clone(),
                v,
            });
        }
        u += &two;
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn isqrt_zero() {
        assert_eq!(isqrt(&big(0)), big(0));
    }

    #[test]
    fn isqrt_exact_square() {
        assert_eq!(isqrt(&big(121)), big(11));
    }

    #[test]
    fn isqrt_127449() {
        let r = isqrt(&big(127_449));
        assert_eq!(r, big(357));
        // independent confirmation by multiplication
        assert_eq!(&r * &r, big(127_449));
    }

    #[test]
    fn isqrt_bracketing_around_squares() {
        for r in (1u64..2000).chain([u32::MAX as u64, 1 << 40]) {
            let sq = BigUint::from(r) * BigUint::from(r);
            assert_eq!(isqrt(&(&sq - 1u32)), BigUint::from(r - 1));
            assert_eq!(isqrt(&sq), BigUint::from(r));
            assert_eq!(isqrt(&(&sq + 1u32)), BigUint::from(r));
        }
    }

    #[test]
    fn perfect_square_1444() {
        assert_eq!(perfect_square_root(&big(1444)), Some(big(38)));
    }

    #[test]
    fn perfect_square_rejects_two() {
        assert_eq!(perfect_square_root(&big(2)), None);
    }

    #[test]
    fn perfect_square_rejects_scan_probe() {
        // one probe of the D=842 fundamental-solution scan: N + 842·1²
        let probe = big(198_982_282) + big(842);
        assert_eq!(probe, big(198_983_124));
        assert_eq!(perfect_square_root(&probe), None);
    }

    #[test]
    fn u64_fast_path_agrees() {
        for n in 0u64..20_000 {
            assert_eq!(
                perfect_square_root_u64(n).map(BigUint::from),
                perfect_square_root(&BigUint::from(n)),
                "mismatch at {n}"
            );
        }
    }

    #[test]
    fn u128_fast_path_agrees() {
        for k in 0u128..2_000 {
            let base = (u64::MAX as u128 / 2) + 12_345_678_901 * k;
            for n in [base, base * base, base * base + 1, base * base - 1] {
                let via_big = perfect_square_root(&BigUint::from(n))
                    .map(|r| r.to_u64_digits().iter().rev().fold(0u128, |acc, d| (acc << 64) | *d as u128));
                assert_eq!(perfect_square_root_u128(n), via_big, "mismatch at {n}");
            }
        }
    }

    #[test]
    fn even_pairs_52() {
        let pairs = even_factor_pairs(&big(52));
        assert_eq!(
            pairs,
            vec![FactorPair {
                u: big(2),
                v: big(26)
            }]
        );
    }

    #[test]
    fn even_pairs_6960() {
        let pairs = even_factor_pairs(&big(6960));
        assert_eq!(pairs.len(), 12);
        assert_eq!(pairs[0].u, big(2));
        assert_eq!(pairs[0].v, big(3480));
        for p in &pairs {
            assert!(p.u.is_even() && p.v.is_even());
            assert!(p.u <= p.v);
            assert_eq!(&p.u * &p.v, big(6960));
        }
    }

    #[test]
    fn even_pairs_need_mod4() {
        assert!(even_factor_pairs(&big(2)).is_empty());
        assert!(even_factor_pairs(&big(6)).is_empty());
    }

    #[test]
    fn even_pairs_match_divisor_scan() {
        for n in (4u64..3000).step_by(4) {
            let expected = (2..=n.isqrt())
                .step_by(2)
                .filter(|u| n % u == 0 && (n / u) % 2 == 0)
                .count();
            assert_eq!(even_factor_pairs(&big(n)).len(), expected, "count for {n}");
        }
    }
}
