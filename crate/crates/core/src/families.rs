//! Polygons on `n = 2m` vertices with exactly `m` symmetry axes.
//!
//! Every such class (for `n ≥ 6`) is represented by an alternating word
//! `(a, b, a, b, …)` with `a < b` both odd and `gcd(u, m) = 1`, where
//! `u = (a + b)/2` is the number of revolutions. Pairs with `u > m` are mirror
//! images of pairs with `u' = n − u < m`, so only `u ∈ [1, m − 1]` is counted.
//! For a given `u` the admissible pairs are `(1, 2u − 1), (3, 2u − 3), …`,
//! `⌊u/2⌋` of them.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::polygon::{CanonicalKey, EdgeWord, Relation};
use crate::validity::{alternating_word, AlternatingPair};

/// All `u ∈ [1, m − 1]` coprime to `m`, ascending.
pub fn admissible_u_values(m: u32) -> Vec<u32> {
    (1..m).filter(|u| u.gcd(&m) == 1).collect()
}

/// Odd pairs `a < b` with `a + b = 2u`, ordered by `a`.
pub fn pairs_for_u(n: u32, u: u32) -> Result<Vec<(u32, u32)>> {
    check_even(n)?;
    let m = n / 2;
    if u == 0 || u >= m {
        return Err(Error::RevolutionsOutOfRange { u, max: m - 1 });
    }
    Ok((1..u)
        .step_by(2)
        .map(|a| (a, 2 * u - a))
        .filter(|&(a, b)| a < b && b < n)
        .collect())
}

fn check_even(n: u32) -> Result<()> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::NotEvenPolygon(n));
    }
    Ok(())
}

/// Number of equivalence classes of n-polygons with `n/2` axes, by the
/// revolution-sum formula.
///
/// For `n = 4` this returns 0: the only 2-axis class there is the crossed
/// square `(1, 2, 3, 2)`, which is not alternating.
pub fn count_m_symmetric(n: u32) -> Result<u64> {
    check_even(n)?;
    Ok(admissible_u_values(n / 2)
        .into_iter()
        .map(|u| u64::from(if u % 2 == 0 { u / 2 } else { (u - 1) / 2 }))
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representative {
    pub u: u32,
    pub a: u32,
    pub b: u32,
    pub word: EdgeWord,
    pub key: CanonicalKey,
}

/// One alternating representative per class of `n/2`-axis polygons, sorted by `(u, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFamily {
    pub n: u32,
    pub m: u32,
    pub entries: Vec<Representative>,
}

impl PairFamily {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn enumerate_representatives(n: u32) -> Result<PairFamily> {
    check_even(n)?;
    let m = n / 2;
    let mut entries = Vec::new();
    for u in admissible_u_values(m) {
        for (a, b) in pairs_for_u(n, u)? {
            let pair = AlternatingPair::new(n, a, b)?;
            let word = alternating_word(&pair).into_edge_word()?;
            let key = word.canonical_key(Relation::Equivalent);
            entries.push(Representative { u, a, b, word, key });
        }
    }
    Ok(PairFamily { n, m, entries })
}

/// One row of the power-of-two table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerOfTwoRow {
    pub k: u32,
    pub n: u64,
    pub m: u64,
    pub count: u64,
    pub mersenne: u64,
    pub perfect: bool,
}

pub const MAX_POWER_OF_TWO_EXPONENT: u32 = 32;

/// `|P_{2^{k−1}}(2^k)| = 2^{k−3} · (2^{k−2} − 1)`.
///
/// The count is a perfect number exactly when `2^{k−2} − 1` is a Mersenne prime.
pub fn closed_form_power_of_two(k: u32) -> Result<PowerOfTwoRow> {
    if !(3..=MAX_POWER_OF_TWO_EXPONENT).contains(&k) {
        return Err(Error::ExponentOutOfRange {
            k,
            min: 3,
            max: MAX_POWER_OF_TWO_EXPONENT,
        });
    }
    let mersenne = (1u64 << (k - 2)) - 1;
    let count = (1u64 << (k - 3)) * mersenne;
    Ok(PowerOfTwoRow {
        k,
        n: 1 << k,
        m: 1 << (k - 1),
        count,
        mersenne,
        perfect: is_prime(mersenne),
    })
}

/// `|P_p(2p)| = ((p − 1)/2)²`, a square.
pub fn closed_form_twice_prime(p: u64) -> Result<u64> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let half = (p - 1) / 2;
    Ok(half * half)
}

/// `|P_m(2^k p)| = (n − 4)(n − 2^k) / 32` for `k > 1` and an odd prime `p`.
pub fn closed_form_2k_p(k: u32, p: u64) -> Result<u64> {
    if !(2..=40).contains(&k) {
        return Err(Error::ExponentOutOfRange { k, min: 2, max: 40 });
    }
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let pow = 1u64 << k;
    let n = pow * p;
    Ok((n - 4) * (n - pow) / 32)
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `σ(N) = 2N`, with the divisor sum taken by trial division.
pub fn is_perfect(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut sigma = 0u64;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            sigma += d;
            if d * d != n {
                sigma += n / d;
            }
        }
        d += 1;
    }
    sigma == 2 * n
}

/// Which closed forms apply to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    PowerOfTwo { k: u32 },
    TwicePrime { p: u64 },
    PowerOfTwoTimesPrime { k: u32, p: u64 },
}

impl ClosedForm {
    pub fn evaluate(self) -> Result<u64> {
        match self {
            ClosedForm::PowerOfTwo { k } => closed_form_power_of_two(k).map(|row| row.count),
            ClosedForm::TwicePrime { p } => closed_form_twice_prime(p),
            ClosedForm::PowerOfTwoTimesPrime { k, p } => closed_form_2k_p(k, p),
        }
    }
}

pub fn applicable_closed_forms(n: u64) -> Vec<ClosedForm> {
    if n < 4 || n % 2 != 0 {
        return Vec::new();
    }
    let k = n.trailing_zeros();
    let odd = n >> k;
    let mut forms = Vec::new();
    if odd == 1 && (3..=MAX_POWER_OF_TWO_EXPONENT).contains(&k) {
        forms.push(ClosedForm::PowerOfTwo { k });
    }
    if odd > 2 && is_prime(odd) {
        if k == 1 {
            forms.push(ClosedForm::TwicePrime { p: odd });
        } else {
            forms.push(ClosedForm::PowerOfTwoTimesPrime { k, p: odd });
        }
    }
    forms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::SymmetryProfile;

    #[test]
    fn u_values() {
        assert_eq!(admissible_u_values(15), vec![1, 2, 4, 7, 8, 11, 13, 14]);
        assert_eq!(admissible_u_values(2), vec![1]);
        assert_eq!(admissible_u_values(8), vec![1, 3, 5, 7]);
    }

    #[test]
    fn pairs_of_the_thirty_gon() {
        assert_eq!(pairs_for_u(30, 7).unwrap(), vec![(1, 13), (3, 11), (5, 9)]);
        assert!(pairs_for_u(30, 1).unwrap().is_empty());
        let p = pairs_for_u(30, 14).unwrap();
        assert_eq!(p.len(), 7);
        assert_eq!(p.first(), Some(&(1, 27)));
        assert_eq!(p.last(), Some(&(13, 15)));
        assert_eq!(pairs_for_u(30, 13).unwrap().last(), Some(&(11, 15)));
        assert!(pairs_for_u(30, 15).is_err());
        assert!(pairs_for_u(30, 0).is_err());
        assert!(pairs_for_u(31, 2).is_err());
    }

    #[test]
    fn pair_counts_follow_parity() {
        for n in (6..=200u32).step_by(2) {
            for u in 1..n / 2 {
                let expected = if u % 2 == 0 { u / 2 } else { (u - 1) / 2 };
                assert_eq!(pairs_for_u(n, u).unwrap().len() as u32, expected);
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count_m_symmetric(30).unwrap(), 28);
        assert_eq!(count_m_symmetric(10).unwrap(), 4);
        assert_eq!(count_m_symmetric(90).unwrap(), 264);
        assert_eq!(count_m_symmetric(4).unwrap(), 0);
        assert!(matches!(count_m_symmetric(7), Err(Error::NotEvenPolygon(7))));
        assert!(matches!(count_m_symmetric(2), Err(Error::NotEvenPolygon(2))));
    }

    #[test]
    fn representatives() {
        let family = enumerate_representatives(30).unwrap();
        assert_eq!(family.len(), 28);
        let first = &family.entries[0];
        assert_eq!((first.u, first.a, first.b), (2, 1, 3));
        let last = family.entries.last().unwrap();
        assert_eq!((last.u, last.a, last.b), (14, 13, 15));

        let six = enumerate_representatives(6).unwrap();
        assert_eq!(six.len(), 1);
        assert_eq!((six.entries[0].u, six.entries[0].a, six.entries[0].b), (2, 1, 3));

        assert_eq!(enumerate_representatives(12).unwrap().len(), 2);
        assert!(enumerate_representatives(4).unwrap().is_empty());
    }

    #[test]
    fn representatives_have_exactly_m_axes() {
        for n in (6..=60u32).step_by(2) {
            let m = n / 2;
            for rep in enumerate_representatives(n).unwrap().entries {
                let chords = rep.word.vertex_cycle().chord_set();
                let profile = crate::polygon::symmetry_profile(&chords);
                assert_eq!(profile, SymmetryProfile { axes: m, rotation_order: m }, "n = {n}, {rep:?}");
            }
        }
    }

    #[test]
    fn power_of_two_rows() {
        let row = closed_form_power_of_two(7).unwrap();
        assert_eq!((row.n, row.m, row.count, row.mersenne, row.perfect), (128, 64, 496, 31, true));
        let row = closed_form_power_of_two(3).unwrap();
        assert_eq!((row.count, row.mersenne, row.perfect), (1, 1, false));
        let row = closed_form_power_of_two(8).unwrap();
        assert_eq!((row.count, row.mersenne, row.perfect), (2016, 63, false));
        assert!(closed_form_power_of_two(2).is_err());
        assert!(closed_form_power_of_two(33).is_err());
    }

    #[test]
    fn perfect_flag_matches_divisor_sum() {
        for k in 3..=20 {
            let row = closed_form_power_of_two(k).unwrap();
            assert_eq!(row.perfect, is_perfect(row.count), "k = {k}");
        }
    }

    #[test]
    fn twice_prime() {
        assert_eq!(closed_form_twice_prime(7).unwrap(), 9);
        assert_eq!(closed_form_twice_prime(3).unwrap(), 1);
        assert_eq!(closed_form_twice_prime(23).unwrap(), 121);
        assert!(matches!(closed_form_twice_prime(2), Err(Error::NotOddPrime(2))));
        assert!(matches!(closed_form_twice_prime(9), Err(Error::NotOddPrime(9))));
    }

    #[test]
    fn two_k_p() {
        assert_eq!(closed_form_2k_p(2, 3).unwrap(), 2);
        assert_eq!(closed_form_2k_p(3, 3).unwrap(), 10);
        assert_eq!(closed_form_2k_p(3, 5).unwrap(), 36);
        assert!(closed_form_2k_p(1, 3).is_err());
        assert!(closed_form_2k_p(3, 15).is_err());
    }

    #[test]
    fn perfect_numbers() {
        assert!(is_perfect(28));
        assert!(is_perfect(6));
        assert!(is_perfect(8128));
        assert!(!is_perfect(1));
        assert!(!is_perfect(2016));
        let below_10k: Vec<u64> = (1..10_000).filter(|&n| is_perfect(n)).collect();
        assert_eq!(below_10k, vec![6, 28, 496, 8128]);
    }

    #[test]
    fn closed_form_detection() {
        assert_eq!(applicable_closed_forms(32), vec![ClosedForm::PowerOfTwo { k: 5 }]);
        assert_eq!(applicable_closed_forms(14), vec![ClosedForm::TwicePrime { p: 7 }]);
        assert_eq!(applicable_closed_forms(40), vec![ClosedForm::PowerOfTwoTimesPrime { k: 3, p: 5 }]);
        assert!(applicable_closed_forms(30).is_empty());
        assert!(applicable_closed_forms(4).is_empty());
    }
}
