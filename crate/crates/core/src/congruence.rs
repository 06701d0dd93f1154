//! Classification of the run length M.
//!
//! A sum of M consecutive squares can only be a perfect square when M
//! falls in one of the residue classes
//! `M ≡ 0, 9, 24, 33 (mod 72)`, `M ≡ 1, 2, 16 (mod 24)`, or
//! `M ≡ 11 (mod 12)`; it never can when `M ≡ 3, 5, 6, 7, 8, 10 (mod 12)`.
//! Square M must additionally satisfy `M ≡ 1 (mod 24)`, which forces
//! `M = (6n−1)²` for some integer n. The filter is necessary, not
//! sufficient: a classified candidate may still turn out to have no
//! solutions (M = 842 is the classic case).

use crate::Error;

/// Why an M was ruled out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExclusionReason {
    /// `m ≡ 3, 5, 6, 7, 8 or 10 (mod 12)`.
    Mod12Excluded,
    /// m is a perfect square with `m ≢ 1 (mod 24)`.
    SquareNotOneMod24,
    /// m passes the mod-12 sieve but misses the finer allowed classes
    /// (e.g. m = 13: `13 ≡ 1 (mod 12)` yet `13 ≡ 13 (mod 24)`).
    NotInAllowedClass,
}

impl ExclusionReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ExclusionReason::Mod12Excluded => "mod12",
            ExclusionReason::SquareNotOneMod24 => "square-not-1-mod24",
            ExclusionReason::NotInAllowedClass => "not-in-allowed-class",
        }
    }
}

/// Mod-4 case of a non-square candidate; decides which generalized Pell
/// equation the problem reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PellCase {
    /// M odd: `s² − M·(a + (M−1)/2)² = M(M²−1)/12`.
    Odd,
    /// M ≡ 0 (mod 4): `s² − (M/4)·(2a + M − 1)² = M(M²−1)/12`.
    ZeroMod4,
    /// M ≡ 2 (mod 4): `(2s)² − M·(2a + M − 1)² = M(M²−1)/3`.
    TwoMod4,
}

impl PellCase {
    /// The scaling factor λ of the related simple Pell equation
    /// `X² − (λ²M)Y² = 1`.
    pub fn lambda(self) -> Lambda {
        match self {
            PellCase::ZeroMod4 => Lambda::Half,
            _ => Lambda::One,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PellCase::Odd => "odd",
            PellCase::ZeroMod4 => "mod4zero",
            PellCase::TwoMod4 => "mod4two",
        }
    }
}

/// λ ∈ {1, 1/2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lambda {
    One,
    Half,
}

impl Lambda {
    pub fn as_str(self) -> &'static str {
        match self {
            Lambda::One => "1",
            Lambda::Half => "1/2",
        }
    }
}

/// Verdict on one value of M.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Excluded(ExclusionReason),
    /// In an allowed class and not a perfect square; solved through the
    /// generalized Pell machinery.
    NonSquareCandidate(PellCase),
    /// `m = (6n−1)² ≡ 1 (mod 24)`; solved by even factor-pair
    /// decomposition. `root = |6n−1|`.
    SquareCandidate { n: i64, root: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MClassification {
    pub m: u64,
    pub verdict: Verdict,
}

impl MClassification {
    pub fn is_candidate(&self) -> bool {
        !matches!(self.verdict, Verdict::Excluded(_))
    }
}

fn in_allowed_class(m: u64) -> bool {
    matches!(m % 72, 0 | 9 | 24 | 33) || matches!(m % 24, 1 | 2 | 16) || m % 12 == 11
}

/// Classify a run length. The square test runs first so that excluded
/// squares report `SquareNotOneMod24` even when a congruence reason
/// would also apply.
pub fn classify(m: u64) -> Result<MClassification, Error> {
    if m < 2 {
        return Err(Error::MOutOfRange(m));
    }
    let root = m.isqrt();
    let verdict = if root * root == m {
        if m % 24 == 1 {
            // root is odd and coprime to 3, hence ≡ 1 or 5 (mod 6)
            let n = if root % 6 == 5 {
                (root as i64 + 1) / 6
            } else {
                (1 - root as i64) / 6
            };
            debug_assert_eq!((6 * n - 1).unsigned_abs(), root);
            Verdict::SquareCandidate { n, root }
        } else {
            Verdict::Excluded(ExclusionReason::SquareNotOneMod24)
        }
    } else if matches!(m % 12, 3 | 5 | 6 | 7 | 8 | 10) {
        Verdict::Excluded(ExclusionReason::Mod12Excluded)
    } else if in_allowed_class(m) {
        let case = match m % 4 {
            1 | 3 => PellCase::Odd,
            0 => PellCase::ZeroMod4,
            _ => PellCase::TwoMod4,
        };
        Verdict::NonSquareCandidate(case)
    } else {
        Verdict::Excluded(ExclusionReason::NotInAllowedClass)
    };
    Ok(MClassification { m, verdict })
}

/// All candidate m in `[2, limit]`, ascending.
pub fn candidates_up_to(limit: u64) -> Vec<MClassification> {
    (2..=limit)
        .map(|m| classify(m).expect("m >= 2"))
        .filter(MClassification::is_candidate)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(m: u64) -> Verdict {
        classify(m).unwrap().verdict
    }

    #[test]
    fn m11_odd_candidate() {
        assert_eq!(verdict(11), Verdict::NonSquareCandidate(PellCase::Odd));
        assert_eq!(PellCase::Odd.lambda(), Lambda::One);
    }

    #[test]
    fn m24_mod4zero_candidate() {
        assert_eq!(verdict(24), Verdict::NonSquareCandidate(PellCase::ZeroMod4));
        assert_eq!(PellCase::ZeroMod4.lambda(), Lambda::Half);
    }

    #[test]
    fn m2_mod4two_candidate() {
        assert_eq!(verdict(2), Verdict::NonSquareCandidate(PellCase::TwoMod4));
        assert_eq!(PellCase::TwoMod4.lambda(), Lambda::One);
    }

    #[test]
    fn m7_excluded_mod12() {
        assert_eq!(verdict(7), Verdict::Excluded(ExclusionReason::Mod12Excluded));
    }

    #[test]
    fn m9_excluded_square() {
        // 9 ≡ 9 (mod 72) passes the class filter, but 9 = 3² with
        // 9 ≢ 1 (mod 24); the square check wins.
        assert_eq!(
            verdict(9),
            Verdict::Excluded(ExclusionReason::SquareNotOneMod24)
        );
    }

    #[test]
    fn m16_excluded_square() {
        // 16 ≡ 16 (mod 24) is an allowed class, but 16 = 4² and
        // 4 ≠ |6n−1| for any n; must not reach the Pell path (D = 4
        // would be a perfect square).
        assert_eq!(
            verdict(16),
            Verdict::Excluded(ExclusionReason::SquareNotOneMod24)
        );
    }

    #[test]
    fn m289_square_candidate() {
        assert_eq!(verdict(289), Verdict::SquareCandidate { n: 3, root: 17 });
    }

    #[test]
    fn m49_square_candidate_negative_n() {
        // 6·(−1) − 1 = −7 and (−7)² = 49
        assert_eq!(verdict(49), Verdict::SquareCandidate { n: -1, root: 7 });
    }

    #[test]
    fn m842_candidate_despite_no_solutions() {
        assert_eq!(verdict(842), Verdict::NonSquareCandidate(PellCase::TwoMod4));
    }

    #[test]
    fn m_below_two_rejected() {
        assert_eq!(classify(0), Err(Error::MOutOfRange(0)));
        assert_eq!(classify(1), Err(Error::MOutOfRange(1)));
    }

    #[test]
    fn candidates_to_25() {
        let ms: Vec<u64> = candidates_up_to(25).iter().map(|c| c.m).collect();
        assert_eq!(ms, vec![2, 11, 23, 24, 25]);
        // 9 and 16 fall out as squares not ≡ 1 (mod 24)
        assert!(!ms.contains(&9));
        assert!(!ms.contains(&16));
    }

    #[test]
    fn candidates_to_2() {
        let ms: Vec<u64> = candidates_up_to(2).iter().map(|c| c.m).collect();
        assert_eq!(ms, vec![2]);
    }

    #[test]
    fn no_candidate_in_dead_mod12_classes() {
        for c in candidates_up_to(10_000) {
            assert!(!matches!(c.m % 12, 3 | 5 | 6 | 7 | 8 | 10), "m = {}", c.m);
        }
    }

    #[test]
    fn mod12_reason_is_exact() {
        for m in 2..=5000u64 {
            let cls = classify(m).unwrap();
            let is_mod12 = matches!(
                cls.verdict,
                Verdict::Excluded(ExclusionReason::Mod12Excluded)
            );
            let in_dead_class = matches!(m % 12, 3 | 5 | 6 | 7 | 8 | 10);
            let is_square = m.isqrt().pow(2) == m;
            assert_eq!(is_mod12, in_dead_class && !is_square, "m = {m}");
        }
    }

    #[test]
    fn square_candidates_reconstruct_m() {
        for m in 2..=100_000u64 {
            if let Verdict::SquareCandidate { n, root } = classify(m).unwrap().verdict {
                let six_n_minus_1 = 6 * n - 1;
                assert_eq!(six_n_minus_1 * six_n_minus_1, m as i64);
                assert_eq!(root as i64, six_n_minus_1.abs());
                assert_eq!(m % 24, 1);
            }
        }
    }
}
