//! Which step patterns close into a genuine n-polygon.
//!
//! A candidate word closes into a polygon iff none of its partial sums
//! `s_1 … s_{n−1}` is `≡ 0 (mod n)`, they are pairwise distinct mod `n`, and
//! `s_n ≡ 0 (mod n)`. For alternating words `(a, b, a, b, …)` on `n = 2m`
//! vertices this collapses to a gcd/parity test: `a` and `b` odd and
//! `gcd(a + b, n) = 2`, equivalently `gcd(u, m) = 1` with `u = (a + b)/2`.

use bitvec::prelude::*;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::polygon::EdgeWord;

/// A length-`n` word of steps in `[1, n − 1]` that has not been checked for closure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateWord {
    n: u32,
    steps: Vec<u32>,
}

impl CandidateWord {
    pub fn new(n: u32, steps: Vec<u32>) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if steps.len() != n as usize {
            return Err(Error::WrongLength {
                expected: n as usize,
                got: steps.len(),
            });
        }
        if let Some((index, &step)) = steps.iter().enumerate().find(|(_, &e)| e == 0 || e >= n) {
            return Err(Error::BadStepRange { index, step, max: n - 1 });
        }
        Ok(CandidateWord { n, steps })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn steps(&self) -> &[u32] {
        &self.steps
    }

    /// Promotes the candidate to an [`EdgeWord`] if it closes properly.
    pub fn into_edge_word(self) -> Result<EdgeWord> {
        EdgeWord::new(self.n, self.steps)
    }
}

/// `s_1 … s_n` without modular reduction.
pub fn partial_sums(w: &CandidateWord) -> Vec<u64> {
    w.steps
        .iter()
        .scan(0u64, |acc, &e| {
            *acc += u64::from(e);
            Some(*acc)
        })
        .collect()
}

pub fn is_valid_edge_word(w: &CandidateWord) -> bool {
    let n = u64::from(w.n);
    let sums = partial_sums(w);
    let (last, inner) = sums.split_last().expect("n >= 3");
    if last % n != 0 {
        return false;
    }
    let mut seen = bitvec![0; w.n as usize];
    seen.set(0, true);
    inner.iter().all(|s| {
        let r = (s % n) as usize;
        !seen.replace(r, true)
    })
}

/// A pair of sides `1 ≤ a < b ≤ n − 1` for an even `n ≥ 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlternatingPair {
    n: u32,
    a: u32,
    b: u32,
}

impl AlternatingPair {
    pub fn new(n: u32, a: u32, b: u32) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(Error::NotEvenPolygon(n));
        }
        if !(1 <= a && a < b && b < n) {
            return Err(Error::InvalidPair { n, a, b });
        }
        Ok(AlternatingPair { n, a, b })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.n / 2
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// `(a + b) / 2` when `a + b` is even.
    pub fn u(&self) -> Option<u32> {
        let sum = self.a + self.b;
        (sum % 2 == 0).then_some(sum / 2)
    }
}

pub fn alternating_word(p: &AlternatingPair) -> CandidateWord {
    let steps = [p.a, p.b].iter().copied().cycle().take(p.n as usize).collect();
    CandidateWord { n: p.n, steps }
}

/// Gcd/parity admissibility of an alternating pair.
pub fn induces_polygon(p: &AlternatingPair) -> bool {
    let admissible = p.a % 2 == 1 && p.b % 2 == 1 && (p.a + p.b).gcd(&p.n) == 2;
    debug_assert_eq!(
        admissible,
        is_valid_edge_word(&alternating_word(p)),
        "gcd/parity predicate disagrees with the partial-sum check for n = {}, (a, b) = ({}, {})",
        p.n,
        p.a,
        p.b
    );
    admissible
}

/// Number of full turns the closed path winds around the circle, `s_n / n`.
pub fn revolutions(w: &EdgeWord) -> u64 {
    let total: u64 = w.steps().iter().map(|&e| u64::from(e)).sum();
    total / u64::from(w.n())
}
