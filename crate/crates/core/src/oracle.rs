//! Brute-force ground truth: every Hamiltonian cycle on `n ≤ 14` vertices,
//! grouped into classes and binned by symmetry.
//!
//! The enumeration fixes `order[0] = 0` and keeps only `order[1] < order[n−1]`,
//! so each undirected cycle is produced exactly once, `(n − 1)!/2` in total.
//! Work is split by the value of `order[1]`; partitions are independent and
//! their tallies merge by summing multiplicities and keeping the least
//! representative, which makes the result independent of thread count.
//!
//! Inside the hot loop an edge word is packed four bits per step into a `u64`
//! (steps are at most 13), with the first step in the most significant nibble,
//! so that integer order is lexicographic order and cyclic shifts are bit
//! rotations. The canonical key is the least of all `2n` (or `4n`) rotations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{count_m_symmetric, enumerate_representatives};
use crate::polygon::{chord_set, symmetry_profile, CanonicalKey, Relation, SymmetryProfile, VertexCycle};
use crate::report::{CensusReport, Histograms, OracleCounts};

/// Largest `n` the oracle accepts. `13!/2 ≈ 3.1·10⁹` cycles is the practical ceiling.
pub const MAX_N: u32 = 14;

/// Largest `n` run without an explicit opt-in.
pub const DEFAULT_MAX_N: u32 = 12;

fn check_size(n: u32) -> Result<()> {
    if (3..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::OracleRange { n, max: MAX_N })
    }
}

/// `(n − 1)! / 2`
pub fn cycle_count(n: u32) -> u64 {
    (3..u64::from(n)).product::<u64>()
}

/// Every n-polygon once, in lexicographic order of the normalised vertex cycle.
pub fn enumerate_all_polygons(n: u32) -> Result<Polygons> {
    check_size(n)?;
    Ok(Polygons {
        order: (0..n).collect(),
        done: false,
    })
}

/// Iterator returned by [`enumerate_all_polygons`].
#[derive(Debug, Clone)]
pub struct Polygons {
    order: Vec<u32>,
    done: bool,
}

impl Iterator for Polygons {
    type Item = VertexCycle;

    fn next(&mut self) -> Option<VertexCycle> {
        while !self.done {
            let current = self.order.clone();
            self.done = !next_permutation(&mut self.order[1..]);
            let n = current.len();
            if current[1] < current[n - 1] {
                return Some(VertexCycle::new(current).expect("permutations are valid cycles"));
            }
        }
        None
    }
}

fn next_permutation(xs: &mut [u32]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|&x| x > xs[i]).expect("a larger element exists");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Backtracking over `order[2..]` with a used-vertex mask, for one value of
/// `order[1]`. Calls `f` with each complete, direction-deduplicated order.
fn visit_partition(n: usize, second: u8, f: &mut impl FnMut(&[u8])) {
    fn extend(order: &mut [u8; 16], depth: usize, n: usize, free: u32, f: &mut impl FnMut(&[u8])) {
        if depth == n - 1 {
            let last = free.trailing_zeros() as u8;
            if order[1] < last {
                order[depth] = last;
                f(&order[..n]);
            }
            return;
        }
        let mut rest = free;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            order[depth] = v as u8;
            extend(order, depth + 1, n, free & !(1 << v), f);
        }
    }
    let mut order = [0u8; 16];
    order[1] = second;
    let free = ((1u32 << n) - 1) & !1 & !(1 << second);
    extend(&mut order, 2, n, free, f);
}

/// Packs up to 16 values below 16 into a `u64`, first value most significant.
fn pack(values: impl Iterator<Item = u8>) -> u64 {
    values.fold(0, |acc, v| (acc << 4) | u64::from(v))
}

fn unpack(packed: u64, n: usize) -> Vec<u32> {
    (0..n).map(|i| ((packed >> (4 * (n - 1 - i))) & 0xf) as u32).collect()
}

#[derive(Clone, Copy)]
struct Packer {
    n: usize,
    mask: u64,
    all_n: u64,
}

impl Packer {
    fn new(n: usize) -> Self {
        let mask = if n == 16 { u64::MAX } else { (1u64 << (4 * n)) - 1 };
        let all_n = (0..n).fold(0, |acc, _| (acc << 4) | n as u64);
        Packer { n, mask, all_n }
    }

    fn least_rotation(&self, x: u64) -> u64 {
        let mut best = x;
        let mut cur = x;
        for _ in 1..self.n {
            cur = ((cur << 4) | (cur >> (4 * (self.n - 1)))) & self.mask;
            best = best.min(cur);
        }
        best
    }

    /// `(word, reversed word)` of an order.
    fn words(&self, order: &[u8]) -> (u64, u64) {
        let n = self.n as u8;
        let mut word = 0u64;
        let mut rev = 0u64;
        for i in 0..self.n {
            let next = order[(i + 1) % self.n];
            let e = u64::from((next + n - order[i]) % n);
            word = (word << 4) | e;
            rev |= e << (4 * i);
        }
        (word, rev)
    }

    /// Keys under `≡E` and `≡S`. The complement of a packed word is
    /// `all_n − word`, nibble by nibble, since every nibble is at most `n − 1`.
    fn keys(&self, order: &[u8]) -> (u64, u64) {
        let (word, rev) = self.words(order);
        let reversed_complement = self.all_n - rev;
        let equivalent = self
            .least_rotation(word)
            .min(self.least_rotation(reversed_complement));
        let similar = equivalent
            .min(self.least_rotation(self.all_n - word))
            .min(self.least_rotation(rev));
        (equivalent, similar)
    }
}

#[derive(Clone, Copy)]
struct Slot {
    representative: u64,
    multiplicity: u64,
}

#[derive(Default)]
struct Tally {
    equivalent: HashMap<u64, Slot>,
    similar: HashMap<u64, Slot>,
    cycles: u64,
}

fn record(map: &mut HashMap<u64, Slot>, key: u64, representative: u64) {
    map.entry(key)
        .and_modify(|slot| {
            slot.multiplicity += 1;
            slot.representative = slot.representative.min(representative);
        })
        .or_insert(Slot {
            representative,
            multiplicity: 1,
        });
}

fn merge_into(into: &mut HashMap<u64, Slot>, from: HashMap<u64, Slot>) {
    for (key, slot) in from {
        into.entry(key)
            .and_modify(|t| {
                t.multiplicity += slot.multiplicity;
                t.representative = t.representative.min(slot.representative);
            })
            .or_insert(slot);
    }
}

impl Tally {
    fn merge(mut self, mut other: Tally) -> Tally {
        if self.equivalent.len() + self.similar.len() < other.equivalent.len() + other.similar.len() {
            std::mem::swap(&mut self, &mut other);
        }
        merge_into(&mut self.equivalent, other.equivalent);
        merge_into(&mut self.similar, other.similar);
        self.cycles += other.cycles;
        self
    }
}

fn tally(n: u32, want_equivalent: bool, want_similar: bool) -> Tally {
    let size = n as usize;
    let packer = Packer::new(size);
    (1..n as u8)
        .into_par_iter()
        .fold(Tally::default, |mut t, second| {
            visit_partition(size, second, &mut |order| {
                let (equivalent, similar) = packer.keys(order);
                let representative = pack(order.iter().copied());
                if want_equivalent {
                    record(&mut t.equivalent, equivalent, representative);
                }
                if want_similar {
                    record(&mut t.similar, similar, representative);
                }
                t.cycles += 1;
            });
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// One class of polygons under a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub key: CanonicalKey,
    /// Least normalised vertex cycle in the class.
    pub representative: VertexCycle,
    pub profile: SymmetryProfile,
    /// Number of labelled cycles in the class.
    pub multiplicity: u64,
}

/// Number of classes per exact axis count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryHistogram {
    pub n: u32,
    pub relation: Relation,
    pub counts: BTreeMap<u32, u64>,
    pub total: u64,
}

impl SymmetryHistogram {
    pub fn count(&self, axes: u32) -> u64 {
        self.counts.get(&axes).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub n: u32,
    pub relation: Relation,
    pub labelled_cycles: u64,
    pub histogram: SymmetryHistogram,
    /// Sorted by canonical key.
    pub classes: Vec<ClassRecord>,
}

impl Classification {
    pub fn classes_with_axes(&self, axes: u32) -> impl Iterator<Item = &ClassRecord> {
        self.classes.iter().filter(move |c| c.profile.axes == axes)
    }
}

fn build(n: u32, relation: Relation, map: HashMap<u64, Slot>, cycles: u64) -> Classification {
    let size = n as usize;
    let mut keyed: Vec<(u64, Slot)> = map.into_iter().collect();
    keyed.par_sort_unstable_by_key(|(key, _)| *key);
    let classes: Vec<ClassRecord> = keyed
        .into_par_iter()
        .map(|(key, slot)| {
            let representative =
                VertexCycle::new(unpack(slot.representative, size)).expect("packed orders are valid cycles");
            let profile = symmetry_profile(&chord_set(&representative));
            ClassRecord {
                key: CanonicalKey {
                    relation,
                    word: unpack(key, size),
                },
                representative,
                profile,
                multiplicity: slot.multiplicity,
            }
        })
        .collect();
    let mut counts = BTreeMap::new();
    for class in &classes {
        *counts.entry(class.profile.axes).or_insert(0) += 1;
    }
    Classification {
        n,
        relation,
        labelled_cycles: cycles,
        histogram: SymmetryHistogram {
            n,
            relation,
            counts,
            total: classes.len() as u64,
        },
        classes,
    }
}

/// Groups every n-polygon by its canonical key under `relation`.
///
/// Runs on the current rayon pool; install a sized pool to control threads.
pub fn classify(n: u32, relation: Relation) -> Result<Classification> {
    check_size(n)?;
    let want_equivalent = relation == Relation::Equivalent;
    let t = tally(n, want_equivalent, !want_equivalent);
    let map = if want_equivalent { t.equivalent } else { t.similar };
    Ok(build(n, relation, map, t.cycles))
}

/// Both classifications from a single enumeration pass: `(equivalent, similar)`.
pub fn classify_all(n: u32) -> Result<(Classification, Classification)> {
    check_size(n)?;
    let t = tally(n, true, true);
    let (equivalent, similar) = rayon::join(
        || build(n, Relation::Equivalent, t.equivalent, t.cycles),
        || build(n, Relation::Similar, t.similar, t.cycles),
    );
    Ok((equivalent, similar))
}

/// Number of `≡E` classes with exactly `n/2` axes.
pub fn oracle_count_m_symmetric(n: u32) -> Result<u64> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::NotEvenPolygon(n));
    }
    Ok(classify(n, Relation::Equivalent)?.histogram.count(n / 2))
}

/// Runs the oracle for `n` and checks it against every formula.
pub fn cross_check(n: u32) -> Result<CensusReport> {
    let (equivalent, similar) = classify_all(n)?;
    let report = CensusReport::from_formulas(n)?;
    Ok(report.with_oracle(
        oracle_counts(&equivalent, &similar)?,
        Some(Histograms {
            equivalent: equivalent.histogram.counts.clone(),
            similar: similar.histogram.counts.clone(),
        }),
    ))
}

fn oracle_counts(equivalent: &Classification, similar: &Classification) -> Result<OracleCounts> {
    let n = equivalent.n;
    let mut counts = OracleCounts {
        labelled_cycles: equivalent.labelled_cycles,
        equivalence: equivalent.histogram.total,
        similarity: similar.histogram.total,
        m_symmetric: None,
        alternating_representatives: None,
        family_keys_match: None,
    };
    if n >= 4 && n % 2 == 0 {
        let m = n / 2;
        counts.m_symmetric = Some(equivalent.histogram.count(m));
        if n >= 6 {
            let found: BTreeSet<&CanonicalKey> = equivalent.classes_with_axes(m).map(|c| &c.key).collect();
            counts.alternating_representatives = Some(found.iter().all(|k| k.is_alternating()));
            let family = enumerate_representatives(n)?;
            let generated: BTreeSet<&CanonicalKey> = family.entries.iter().map(|r| &r.key).collect();
            counts.family_keys_match =
                Some(generated.len() == family.len() && generated == found && family.len() as u64 == count_m_symmetric(n)?);
        }
    }
    Ok(counts)
}
