//! Fundamental solutions of the generalized Pell equation
//! `X² − DY² = N` (N > 0) and the infinite solution branches they
//! generate.
//!
//! Every solution class contains exactly one minimal positive
//! representative: the orbit element with `X > 0`, `Y ≥ 0` whose
//! backward unit step would push Y negative. Nagell's bound confines
//! one representative of each class (up to conjugation) to
//! `0 ≤ y ≤ y_f·√(N / (2(x_f+1)))`, so a finite scan of y finds every
//! class. Conjugates `(x, −y)` are materialized and then normalized
//! forward instead of handling `±` sign cases during generation.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{isqrt, perfect_square_root, perfect_square_root_u128, perfect_square_root_u64};
use crate::chebyshev::{cheb_t, cheb_u};
use crate::pell::PellUnit;

/// Minimal positive representative of one solution class of
/// `X² − DY² = N`; `j` is its 1-based rank in ascending (Y, X) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalSolution {
    pub x: BigUint,
    pub y: BigUint,
    pub j: usize,
}

/// One solution along a branch: the k-th unit multiple of a
/// fundamental solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchElement {
    pub x: BigUint,
    pub y: BigUint,
    pub k: u64,
    pub j: usize,
}

/// Inclusive scan bound on y: `⌊y_f·√(N/(2(x_f+1)))⌋ + 1`.
fn scan_bound(unit: &PellUnit, n: &BigUint) -> BigUint {
    let num = &unit.y * &unit.y * n;
    let den = (&unit.x + 1u32) << 1u8;
    isqrt(&(num / den)) + 1u32
}

/// Wheel for the y scan: 64·63·65, three pairwise-coprime moduli with
/// small square-residue sets.
const WHEEL: u64 = 64 * 63 * 65;
const WHEEL_MODULI: [u64; 3] = [64, 63, 65];

/// Residues r mod [`WHEEL`] for which N + D·r² is a square modulo 64,
/// 63 and 65 simultaneously. y outside these classes cannot satisfy
/// x² = N + D·y², so the scan only visits them (~1.5% of all y).
fn allowed_y_residues(d: u64, n: &BigUint) -> Vec<u64> {
    let tables: Vec<Vec<bool>> = WHEEL_MODULI
        .iter()
        .map(|&m| {
            let mut is_square = vec![false; m as usize];
            for r in 0..m {
                is_square[((r * r) % m) as usize] = true;
            }
            is_square
        })
        .collect();
    let n_mod: Vec<u64> = WHEEL_MODULI
        .iter()
        .map(|&m| (n % m).to_u64().expect("residue fits"))
        .collect();
    (0..WHEEL)
        .filter(|&r| {
            WHEEL_MODULI.iter().enumerate().all(|(i, &m)| {
                let probe = (n_mod[i] + (d % m) * ((r % m) * (r % m) % m)) % m;
                tables[i][probe as usize]
            })
        })
        .collect()
}

/// Collect the raw scan hits `(x, y)` with `x² = N + D·y²`, `0 ≤ y ≤ bound`.
///
/// Only y in residue classes allowed by [`allowed_y_residues`] are
/// probed; survivors get an exact perfect-square test in u64 or u128
/// when the largest probe fits, in big integers beyond that. The scan
/// is inherently linear in the bound, which grows with the unit's y_f,
/// so D with enormous units take correspondingly long.
fn scan_hits(d: u64, n: &BigUint, bound: &BigUint) -> Vec<(BigUint, BigUint)> {
    let mut hits = Vec::new();
    let max_probe = n + d * bound * bound;
    let allowed = allowed_y_residues(d, n);

    if let (Some(n64), Some(b64), Some(_)) = (n.to_u64(), bound.to_u64(), max_probe.to_u64()) {
        let mut base = 0u64;
        while base <= b64 {
            for &r in &allowed {
                let y = base + r;
                if y > b64 {
                    break;
                }
                if let Some(x) = perfect_square_root_u64(n64 + d * y * y) {
                    hits.push((BigUint::from(x), BigUint::from(y)));
                }
            }
            base += WHEEL;
        }
        return hits;
    }
    // the bound always fits u64 here: B² ≤ max_probe / D ≤ u128::MAX / 2
    if let (Some(n128), Some(b64), Some(_)) = (n.to_u128(), bound.to_u64(), max_probe.to_u128()) {
        let d128 = d as u128;
        let mut base = 0u64;
        while base <= b64 {
            for &r in &allowed {
                let Some(y) = base.checked_add(r) else { break };
                if y > b64 {
                    break;
                }
                let y128 = y as u128;
                if let Some(x) = perfect_square_root_u128(n128 + d128 * y128 * y128) {
                    hits.push((BigUint::from(x), BigUint::from(y)));
                }
            }
            let Some(next) = base.checked_add(WHEEL) else { break };
            base = next;
        }
        return hits;
    }
    let mut base = BigUint::zero();
    while base <= *bound {
        for &r in &allowed {
            let y = &base + r;
            if y > *bound {
                break;
            }
            if let Some(x) = perfect_square_root(&(n + d * &y * &y)) {
                hits.push((x, y));
            }
        }
        base += WHEEL;
    }
    hits
}

/// Normalize a class representative to the minimal positive element of
/// its orbit: step forward while Y < 0, then step backward while the
/// predecessor still lies in the closed positive quadrant.
fn normalize(
    mut x: BigInt,
    mut y: BigInt,
    d: &BigInt,
    xf: &BigInt,
    yf: &BigInt,
) -> (BigInt, BigInt) {
    while y.is_negative() {
        let x_next = xf * &x + d * yf * &y;
        let y_next = yf * &x + xf * &y;
        x = x_next;
        y = y_next;
    }
    loop {
        let bx = xf * &x - d * yf * &y;
        let by = xf * &y - yf * &x;
        if by.is_negative() || !bx.is_positive() {
            break;
        }
        x = bx;
        y = by;
    }
    debug_assert!(x.is_positive() && !y.is_negative());
    (x, y)
}

/// All fundamental solutions of `X² − DY² = N`, sorted by ascending
/// (Y, X) and numbered `j = 1..σ`. Empty (σ = 0) when the equation has
/// no solutions.
pub fn fundamental_solutions(d: u64, n: &BigUint, unit: &PellUnit) -> Vec<FundamentalSolution> {
    assert_eq!(unit.d, d, "unit belongs to a different D");
    assert!(!n.is_zero(), "N must be positive");
    let bound = scan_bound(unit, n);
    let db = BigInt::from(d);
    let xf = BigInt::from(unit.x.clone());
    let yf = BigInt::from(unit.y.clone());

    let mut reps: Vec<(BigInt, BigInt)> = Vec::new();
    for (x, y) in scan_hits(d, n, &bound) {
        let xi = BigInt::from(x);
        let yi = BigInt::from(y);
        reps.push(normalize(xi.clone(), yi.clone(), &db, &xf, &yf));
        if yi.is_positive() {
            // conjugate class
            reps.push(normalize(xi, -yi, &db, &xf, &yf));
        }
    }
    reps.sort_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)));
    reps.dedup();
    reps.into_iter()
        .enumerate()
        .map(|(i, (x, y))| FundamentalSolution {
            x: x.to_biguint().expect("normalized X > 0"),
            y: y.to_biguint().expect("normalized Y >= 0"),
            j: i + 1,
        })
        .collect()
}

/// Closed form for the k-th element of a branch (k ≥ 1):
/// `X_k = X₁·T_{k−1}(x_f) + D·Y₁·y_f·U_{k−2}(x_f)` and
/// `Y_k = X₁·y_f·U_{k−2}(x_f) + Y₁·T_{k−1}(x_f)`, with `U_{−1} = 0`.
pub fn branch_element(fs: &FundamentalSolution, unit: &PellUnit, d: u64, k: u64) -> BranchElement {
    assert!(k >= 1, "branch steps start at k = 1");
    let t = cheb_t(k - 1, &unit.x);
    let u = cheb_u(k as i64 - 2, &unit.x);
    let x = &fs.x * &t + d * &fs.y * &unit.y * &u;
    let y = &fs.x * &unit.y * &u + &fs.y * &t;
    BranchElement { x, y, k, j: fs.j }
}

/// Infinite stream of branch elements for k = 1, 2, 3, … via the O(1)
/// recurrence `X_k = x_f·X_{k−1} + D·y_f·Y_{k−1}`,
/// `Y_k = x_f·Y_{k−1} + y_f·X_{k−1}`.
pub fn branch_iter(fs: &FundamentalSolution, unit: &PellUnit, d: u64) -> BranchIter {
    BranchIter {
        xf: unit.x.clone(),
        yf: unit.y.clone(),
        dyf: d * &unit.y,
        x: fs.x.clone(),
        y: fs.y.clone(),
        k: 1,
        j: fs.j,
    }
}

#[derive(Debug, Clone)]
pub struct BranchIter {
    xf: BigUint,
    yf: BigUint,
    dyf: BigUint,
    x: BigUint,
    y: BigUint,
    k: u64,
    j: usize,
}

impl Iterator for BranchIter {
    type Item = BranchElement;

    fn next(&mut self) -> Option<BranchElement> {
        let out = BranchElement {
            x: self.x.clone(),
            y: self.y.clone(),
            k: self.k,
            j: self.j,
        };
        let x_next = &self.xf * &self.x + &self.dyf * &self.y;
        let y_next = &self.xf * &self.y + &self.yf * &self.x;
        self.x = x_next;
        self.y = y_next;
        self.k += 1;
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pell::pell_fundamental;

    /// `X² − DY² − N`; zero for genuine solutions.
    fn residual(d: u64, n: &BigUint, x: &BigUint, y: &BigUint) -> BigInt {
        BigInt::from(x * x) - BigInt::from(d * y * y) - BigInt::from(n.clone())
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn fundamentals(d: u64, n: u64) -> Vec<(u64, u64)> {
        let unit = pell_fundamental(d).unwrap();
        fundamental_solutions(d, &big(n), &unit)
            .iter()
            .map(|f| {
                (
                    f.x.to_u64_digits().first().copied().unwrap_or(0),
                    f.y.to_u64_digits().first().copied().unwrap_or(0),
                )
            })
            .collect()
    }

    #[test]
    fn d11_n110_two_classes() {
        assert_eq!(fundamentals(11, 110), vec![(11, 1), (77, 23)]);
    }

    #[test]
    fn d6_n1150_six_classes() {
        assert_eq!(
            fundamentals(6, 1150),
            vec![(34, 1), (38, 7), (50, 15), (70, 25), (106, 41), (158, 63)]
        );
    }

    #[test]
    fn d2_n2_self_conjugate_class() {
        // (2, 1) and its conjugate normalize to the same representative
        assert_eq!(fundamentals(2, 2), vec![(2, 1)]);
    }

    #[test]
    fn d842_no_classes() {
        let unit = pell_fundamental(842).unwrap();
        let sols = fundamental_solutions(842, &big(198_982_282), &unit);
        assert!(sols.is_empty());
    }

    #[test]
    fn d33_n2992_conjugates_leave_the_window() {
        // classes whose minimal representative lies far beyond the scan
        // bound are still found through their conjugate seed
        assert_eq!(
            fundamentals(33, 2992),
            vec![(55, 1), (88, 12), (143, 23), (253, 43), (440, 76), (1133, 197)]
        );
    }

    #[test]
    fn wheel_scan_equals_naive_scan() {
        // the residue wheel must not change the hit set
        for d in [2u64, 6, 11, 18, 33, 97, 842] {
            for n in [2u64, 110, 1150, 2992, 31098, 198_982/*arbitrary*/] {
                let nb = big(n);
                let bound = big(2000);
                let naive: Vec<(BigUint, BigUint)> = (0..=2000u64)
                    .filter_map(|y| {
                        let t = nb.clone() + d * big(y) * big(y);
                        crate::arith::perfect_square_root(&t).map(|x| (x, big(y)))
                    })
                    .collect();
                assert_eq!(scan_hits(d, &nb, &bound), naive, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn fundamentals_are_minimal() {
        // one backward unit step must leave the positive quadrant
        for (d, n) in [(11u64, 110u64), (6, 1150), (2, 2), (33, 2992), (18, 31098)] {
            let unit = pell_fundamental(d).unwrap();
            let xf = BigInt::from(unit.x.clone());
            let yf = BigInt::from(unit.y.clone());
            for fs in fundamental_solutions(d, &big(n), &unit) {
                let x = BigInt::from(fs.x.clone());
                let y = BigInt::from(fs.y.clone());
                let by = &xf * &y - &yf * &x;
                assert!(by.is_negative(), "D={d} N={n} j={}", fs.j);
            }
        }
    }

    #[test]
    fn branch_element_k1_is_fundamental() {
        let unit = pell_fundamental(11).unwrap();
        for fs in fundamental_solutions(11, &big(110), &unit) {
            let el = branch_element(&fs, &unit, 11, 1);
            assert_eq!((el.x, el.y), (fs.x.clone(), fs.y.clone()));
        }
    }

    #[test]
    fn branch_element_d11_first_class_k2() {
        let unit = pell_fundamental(11).unwrap();
        let fs = FundamentalSolution {
            x: big(11),
            y: big(1),
            j: 1,
        };
        let el = branch_element(&fs, &unit, 11, 2);
        assert_eq!((el.x, el.y), (big(143), big(43)));
    }

    #[test]
    fn branch_element_d6_first_class_k2() {
        let unit = pell_fundamental(6).unwrap();
        let fs = FundamentalSolution {
            x: big(34),
            y: big(1),
            j: 1,
        };
        let el = branch_element(&fs, &unit, 6, 2);
        assert_eq!((el.x, el.y), (big(182), big(73)));
    }

    #[test]
    fn branch_iter_d11_second_class_x_values() {
        let unit = pell_fundamental(11).unwrap();
        let fs = FundamentalSolution {
            x: big(77),
            y: big(23),
            j: 2,
        };
        let xs: Vec<BigUint> = branch_iter(&fs, &unit, 11).take(3).map(|e| e.x).collect();
        assert_eq!(xs, vec![big(77), big(1529), big(30503)]);
    }

    #[test]
    fn branch_iter_d2_k2() {
        let unit = pell_fundamental(2).unwrap();
        let fs = FundamentalSolution {
            x: big(2),
            y: big(1),
            j: 1,
        };
        let el = branch_iter(&fs, &unit, 2).nth(1).unwrap();
        assert_eq!((el.x, el.y, el.k), (big(10), big(7), 2));
    }

    #[test]
    fn branch_iter_k1_is_fundamental() {
        let unit = pell_fundamental(6).unwrap();
        for fs in fundamental_solutions(6, &big(1150), &unit) {
            let first = branch_iter(&fs, &unit, 6).next().unwrap();
            assert_eq!((first.x, first.y, first.k), (fs.x.clone(), fs.y.clone(), 1));
        }
    }

    #[test]
    fn recurrence_matches_closed_form() {
        for (d, n) in [(11u64, 110u64), (6, 1150), (2, 2), (33, 2992), (18, 31098)] {
            let unit = pell_fundamental(d).unwrap();
            for fs in fundamental_solutions(d, &big(n), &unit) {
                for el in branch_iter(&fs, &unit, d).take(12) {
                    let closed = branch_element(&fs, &unit, d, el.k);
                    assert_eq!((el.x, el.y), (closed.x, closed.y), "D={d} j={} k={}", fs.j, el.k);
                }
            }
        }
    }

    #[test]
    fn branches_satisfy_equation_and_grow() {
        for (d, n) in [(11u64, 110u64), (6, 1150), (2, 2), (33, 2992), (18, 31098)] {
            let unit = pell_fundamental(d).unwrap();
            let nb = big(n);
            for fs in fundamental_solutions(d, &nb, &unit) {
                let mut prev: Option<BranchElement> = None;
                for el in branch_iter(&fs, &unit, d).take(12) {
                    assert!(residual(d, &nb, &el.x, &el.y).is_zero(), "D={d} k={}", el.k);
                    if let Some(p) = prev {
                        assert!(el.x > p.x && el.y > p.y);
                    }
                    prev = Some(el);
                }
            }
        }
    }

    #[test]
    fn every_scanned_solution_is_on_a_branch() {
        // direct scan of y up to 10⁵ against the generated branches
        for (d, n) in [(11u64, 110u64), (6, 1150), (2, 2), (33, 2992), (18, 31098)] {
            let unit = pell_fundamental(d).unwrap();
            let nb = big(n);
            let fundamentals = fundamental_solutions(d, &nb, &unit);
            let mut from_branches: Vec<(BigUint, BigUint)> = Vec::new();
            let y_cap = big(100_000);
            for fs in &fundamentals {
                for el in branch_iter(fs, &unit, d) {
                    if el.y > y_cap {
                        break;
                    }
                    from_branches.push((el.x, el.y));
                }
            }
            from_branches.sort();
            let mut scanned = Vec::new();
            for y in 0..=100_000u64 {
                let t = n as u128 + d as u128 * y as u128 * y as u128;
                let r = isqrt(&BigUint::from(t));
                if &r * &r == BigUint::from(t) {
                    scanned.push((r, big(y)));
                }
            }
            scanned.sort();
            assert_eq!(from_branches, scanned, "D={d} N={n}");
        }
    }
}
